#ifndef KZB_LINALG_HPP
#define KZB_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace kzb
{
  using cd = std::complex<double>;
  using CMatrix = Eigen::MatrixXcd;
  using CVector = Eigen::VectorXcd;

  /// Error carrying a short machine-readable code ("shape", "near-singular", ...)
  class KzbError : public std::runtime_error
  {
  public:
    KzbError(const std::string & code, const std::string & detail = "")
      : std::runtime_error(detail.empty() ? code : code + ": " + detail), m_code(code) {}

    const std::string & code() const { return m_code; }

  private:
    std::string m_code;
  };

  /// Kronecker product, (A⊗B)[i*rB+k, j*cB+l] = A[i,j] B[k,l]
  CMatrix kron(const CMatrix & A, const CMatrix & B);

  /// AB - BA; throws "shape" unless both are square of equal size
  CMatrix commutator(const CMatrix & A, const CMatrix & B);

  /// Orthonormal basis of the numerical kernel {v : |Av| <= tol |A| |v|}.
  /// The basis is canonical for the subspace: columns are obtained by
  /// Gram-Schmidt on projected unit vectors in index order.
  CMatrix null_space(const CMatrix & A, double tol = 1e-10);

  /// Largest entry modulus, 0 for empty matrices
  double max_abs(const CMatrix & A);

  /// Identity of size n
  CMatrix identity(Eigen::Index n);

  /// Dense multi-leg tensor, row-major over the leg multi-index
  class CTensor
  {
  public:
    CTensor() = default;
    explicit CTensor(std::vector<Eigen::Index> legs);

    const std::vector<Eigen::Index> & legs() const { return m_legs; }
    Eigen::Index size() const { return static_cast<Eigen::Index>(m_data.size()); }

    cd & at(const std::vector<Eigen::Index> & idx);
    cd at(const std::vector<Eigen::Index> & idx) const;

    const std::vector<cd> & data() const { return m_data; }
    std::vector<cd> & data() { return m_data; }

    /// Reorder legs: result leg k is this leg perm[k]
    CTensor permute(const std::vector<int> & perm) const;

    /// Outer product, legs of this followed by legs of other
    CTensor outer(const CTensor & other) const;

    /// Apply a linear map on one leg: T'[..,a,..] = sum_b M(a,b) T[..,b,..]
    CTensor apply_on_leg(const CMatrix & M, int leg) const;

    /// View a two-leg tensor as a matrix
    CMatrix to_matrix() const;
    static CTensor from_matrix(const CMatrix & M);

  private:
    Eigen::Index flat(const std::vector<Eigen::Index> & idx) const;

    std::vector<Eigen::Index> m_legs;
    std::vector<cd> m_data;
  };

} // namespace kzb

#endif
