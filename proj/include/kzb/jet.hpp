#ifndef KZB_JET_HPP
#define KZB_JET_HPP

#include "kzb/linalg.hpp"

#include <vector>

namespace kzb
{

  /// Value of a scalar function at a point together with its gradient
  /// along the r flat directions x_1..x_r
  class Jet1
  {
  public:
    Jet1() = default;
    Jet1(cd value, std::vector<cd> grad) : m_value(value), m_grad(std::move(grad)) {}

    /// Constant jet
    static Jet1 constant(cd value, size_t rank) { return Jet1(value, std::vector<cd>(rank, cd(0.0, 0.0))); }

    cd value() const { return m_value; }
    const std::vector<cd> & grad() const { return m_grad; }
    cd grad(size_t j) const { return m_grad[j]; }
    size_t rank() const { return m_grad.size(); }

    Jet1 & operator+=(const Jet1 & o);
    Jet1 & operator-=(const Jet1 & o);
    Jet1 & operator*=(const Jet1 & o);
    Jet1 & operator*=(cd s);

    Jet1 inverse() const;

  private:
    cd m_value{0.0, 0.0};
    std::vector<cd> m_grad;
  };

  Jet1 operator+(Jet1 a, const Jet1 & b);
  Jet1 operator-(Jet1 a, const Jet1 & b);
  Jet1 operator-(const Jet1 & a);
  Jet1 operator*(Jet1 a, const Jet1 & b);
  Jet1 operator*(Jet1 a, cd s);
  Jet1 operator*(cd s, Jet1 a);
  Jet1 operator/(const Jet1 & a, const Jet1 & b);
  Jet1 operator+(Jet1 a, cd s);
  Jet1 operator+(cd s, Jet1 a);
  Jet1 operator-(cd s, const Jet1 & a);

  /// Largest modulus among value and gradient entries
  double max_abs(const Jet1 & a);

  /// Matrix whose entries are jets, stored as value and gradient matrices
  struct JetMatrix
  {
    CMatrix value;
    std::vector<CMatrix> grad;

    JetMatrix() = default;
    JetMatrix(Eigen::Index rows, Eigen::Index cols, size_t rank);

    /// Constant matrix with zero gradient
    static JetMatrix constant(const CMatrix & M, size_t rank);

    Eigen::Index rows() const { return value.rows(); }
    Eigen::Index cols() const { return value.cols(); }
    size_t rank() const { return grad.size(); }

    Jet1 entry(Eigen::Index i, Eigen::Index j) const;
    void set_entry(Eigen::Index i, Eigen::Index j, const Jet1 & x);
    void add_entry(Eigen::Index i, Eigen::Index j, const Jet1 & x);

    /// this += s * M for a constant matrix M
    void add_scaled(const Jet1 & s, const CMatrix & M);

    JetMatrix & operator+=(const JetMatrix & o);
    JetMatrix & operator-=(const JetMatrix & o);
    JetMatrix & operator*=(cd s);

    JetMatrix transpose() const;
  };

  JetMatrix operator+(JetMatrix a, const JetMatrix & b);
  JetMatrix operator-(JetMatrix a, const JetMatrix & b);
  JetMatrix operator*(const Jet1 & s, const JetMatrix & M);
  JetMatrix operator*(cd s, JetMatrix M);

  /// Product with the Leibniz rule on gradients
  JetMatrix operator*(const JetMatrix & A, const JetMatrix & B);

  /// Constant matrices acting from the left or right
  JetMatrix operator*(const CMatrix & A, const JetMatrix & B);
  JetMatrix operator*(const JetMatrix & A, const CMatrix & B);

  JetMatrix commutator(const JetMatrix & A, const JetMatrix & B);

  /// Largest modulus over value and gradients
  double max_abs(const JetMatrix & M);

} // namespace kzb

#endif
