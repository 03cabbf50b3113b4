#include "kzb/ug.hpp"

#include <algorithm>

namespace kzb
{

  namespace
  {
    bool is_zero(const JetMatrix & M)
    {
      if (!M.value.isZero(0.0))
        return false;
      for (const auto & g : M.grad)
        if (!g.isZero(0.0))
          return false;
      return true;
    }

    bool is_zero(const Jet1 & x)
    {
      if (x.value() != cd(0.0, 0.0))
        return false;
      for (const auto & g : x.grad())
        if (g != cd(0.0, 0.0))
          return false;
      return true;
    }

    /// Outer product of two jet column vectors
    JetMatrix outer(const JetMatrix & a, const JetMatrix & b)
    {
      JetMatrix T;
      T.value = a.value * b.value.transpose();
      for (size_t k = 0; k < a.grad.size(); ++k)
        T.grad.push_back(a.grad[k] * b.value.transpose() + a.value * b.grad[k].transpose());
      return T;
    }
  } // namespace

  UgElement2::UgElement2(const RealFormData & data, size_t rank)
    : m_data(&data), m_c0(Jet1::constant(0.0, rank)), m_c1(data.dim(), 1, rank), m_c2(data.dim(), data.dim(), rank)
  {
  }

  UgElement2 UgElement2::scalar(const RealFormData & data, const Jet1 & c)
  {
    UgElement2 u(data, c.rank());
    u.m_c0 = c;
    return u;
  }

  UgElement2 UgElement2::generator(const RealFormData & data, int a, size_t rank)
  {
    UgElement2 u(data, rank);
    u.m_c1.value(a, 0) = 1.0;
    return u;
  }

  UgElement2 UgElement2::linear(const RealFormData & data, const JetMatrix & c)
  {
    UgElement2 u(data, c.rank());
    u.m_c1 = c;
    return u;
  }

  UgElement2 UgElement2::linear(const RealFormData & data, const CMatrix & X, size_t rank)
  {
    UgElement2 u(data, rank);
    u.m_c1.value = data.coords(X);
    return u;
  }

  UgElement2 UgElement2::mu(const RealFormData & data, const JetMatrix & T)
  {
    UgElement2 u(data, T.rank());
    u.m_c2 = T;
    u.normalize();
    return u;
  }

  int UgElement2::degree() const
  {
    if (!is_zero(m_c2))
      return 2;
    if (!is_zero(m_c1))
      return 1;
    return 0;
  }

  void UgElement2::normalize()
  {
    const int dim = m_data->dim();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < i; ++j) {
        const Jet1 t = m_c2.entry(i, j);
        if (is_zero(t))
          continue;
        m_c2.add_entry(j, i, t);
        m_c2.set_entry(i, j, Jet1::constant(0.0, rank()));
        m_c1.add_scaled(t, m_data->ad[static_cast<size_t>(i)].col(j));
      }
  }

  UgElement2 & UgElement2::operator+=(const UgElement2 & o)
  {
    m_c0 += o.m_c0;
    m_c1 += o.m_c1;
    m_c2 += o.m_c2;
    return *this;
  }

  UgElement2 & UgElement2::operator-=(const UgElement2 & o)
  {
    m_c0 -= o.m_c0;
    m_c1 -= o.m_c1;
    m_c2 -= o.m_c2;
    return *this;
  }

  UgElement2 UgElement2::ad_inverse_grading(const BasePoint & a) const
  {
    const int dim = m_data->dim();
    std::vector<Jet1> s;
    for (int k = 0; k < dim; ++k)
      s.push_back(xi(*m_data, scale_weight(m_data->basisWeight[static_cast<size_t>(k)], -1), a));
    UgElement2 out(*m_data, rank());
    out.m_c0 = m_c0;
    for (int i = 0; i < dim; ++i) {
      out.m_c1.set_entry(i, 0, s[static_cast<size_t>(i)] * m_c1.entry(i, 0));
      for (int j = i; j < dim; ++j) {
        const Jet1 c = m_c2.entry(i, j);
        if (!is_zero(c))
          out.m_c2.set_entry(i, j, s[static_cast<size_t>(i)] * s[static_cast<size_t>(j)] * c);
      }
    }
    return out;
  }

  JetMatrix UgElement2::evaluate(const std::vector<CMatrix> & act) const
  {
    const Eigen::Index d = act.front().rows();
    JetMatrix out(d, d, rank());
    out.add_scaled(m_c0, identity(d));
    const int dim = m_data->dim();
    for (int i = 0; i < dim; ++i) {
      const Jet1 c = m_c1.entry(i, 0);
      if (!is_zero(c))
        out.add_scaled(c, act[static_cast<size_t>(i)]);
      for (int j = i; j < dim; ++j) {
        const Jet1 c2 = m_c2.entry(i, j);
        if (!is_zero(c2))
          out.add_scaled(c2, act[static_cast<size_t>(i)] * act[static_cast<size_t>(j)]);
      }
    }
    return out;
  }

  double UgElement2::max_abs() const
  {
    return std::max({kzb::max_abs(m_c0), kzb::max_abs(m_c1), kzb::max_abs(m_c2)});
  }

  UgElement2 operator+(UgElement2 a, const UgElement2 & b) { return a += b; }
  UgElement2 operator-(UgElement2 a, const UgElement2 & b) { return a -= b; }

  UgElement2 operator*(const Jet1 & s, const UgElement2 & u)
  {
    UgElement2 out(u.data(), u.rank());
    out.m_c0 = s * u.m_c0;
    out.m_c1 = s * u.m_c1;
    out.m_c2 = s * u.m_c2;
    return out;
  }

  UgElement2 operator*(cd s, const UgElement2 & u)
  {
    return Jet1::constant(s, u.rank()) * u;
  }

  UgElement2 multiply(const UgElement2 & u, const UgElement2 & v)
  {
    const int du = u.degree(), dv = v.degree();
    if (du + dv > 2)
      throw KzbError("degree>2", "product leaves the degree 2 filtration");
    UgElement2 out(u.data(), u.rank());
    out.m_c0 = u.m_c0 * v.m_c0;
    out.m_c1 = u.m_c0 * v.m_c1 + v.m_c0 * u.m_c1;
    out.m_c2 = u.m_c0 * v.m_c2 + v.m_c0 * u.m_c2 + outer(u.m_c1, v.m_c1);
    out.normalize();
    return out;
  }

} // namespace kzb
