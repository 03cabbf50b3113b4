#ifndef KZB_UG_HPP
#define KZB_UG_HPP

#include "kzb/dynamical.hpp"
#include "kzb/jet.hpp"
#include "kzb/real_form.hpp"

#include <vector>

namespace kzb
{

  /// Element of the degree <= 2 filtration of U(g) in PBW normal form
  /// over the g-basis, with jet coefficients. c2 is upper triangular.
  class UgElement2
  {
  public:
    UgElement2() = default;
    UgElement2(const RealFormData & data, size_t rank);

    static UgElement2 scalar(const RealFormData & data, const Jet1 & c);
    static UgElement2 generator(const RealFormData & data, int a, size_t rank);
    /// Degree one element from a coordinate vector of jets (dim x 1)
    static UgElement2 linear(const RealFormData & data, const JetMatrix & c);
    /// Degree one element from a constant g-element
    static UgElement2 linear(const RealFormData & data, const CMatrix & X, size_t rank);
    /// mu(T) = sum T_ab b_a b_b for a two-leg coefficient matrix
    static UgElement2 mu(const RealFormData & data, const JetMatrix & T);

    const Jet1 & c0() const { return m_c0; }
    const JetMatrix & c1() const { return m_c1; }
    const JetMatrix & c2() const { return m_c2; }
    size_t rank() const { return m_c0.rank(); }
    const RealFormData & data() const { return *m_data; }

    /// Highest degree with a nonzero coefficient
    int degree() const;

    /// Straighten b_i b_j with i > j into b_j b_i + [b_i, b_j]
    void normalize();

    UgElement2 & operator+=(const UgElement2 & o);
    UgElement2 & operator-=(const UgElement2 & o);

    /// Ad_{a^{-1}} through the restricted grading: b_a -> xi_{-wt(a)} b_a
    UgElement2 ad_inverse_grading(const BasePoint & a) const;

    /// Image under a representation given by its matrices on the basis
    JetMatrix evaluate(const std::vector<CMatrix> & act) const;

    double max_abs() const;

    friend UgElement2 operator*(const Jet1 & s, const UgElement2 & u);
    friend UgElement2 multiply(const UgElement2 & u, const UgElement2 & v);

  private:
    const RealFormData * m_data = nullptr;
    Jet1 m_c0;
    JetMatrix m_c1;
    JetMatrix m_c2;
  };

  UgElement2 operator+(UgElement2 a, const UgElement2 & b);
  UgElement2 operator-(UgElement2 a, const UgElement2 & b);
  UgElement2 operator*(const Jet1 & s, const UgElement2 & u);
  UgElement2 operator*(cd s, const UgElement2 & u);

  /// PBW product; throws "degree>2" if the result would exceed degree 2
  UgElement2 multiply(const UgElement2 & u, const UgElement2 & v);

} // namespace kzb

#endif
