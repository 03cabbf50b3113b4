#include "kzb/jet.hpp"

#include <algorithm>

namespace kzb
{

  namespace
  {
    void check_rank(size_t a, size_t b)
    {
      if (a != b)
        throw KzbError("shape", "jet rank mismatch");
    }
  } // namespace

  Jet1 & Jet1::operator+=(const Jet1 & o)
  {
    check_rank(rank(), o.rank());
    m_value += o.m_value;
    for (size_t j = 0; j < m_grad.size(); ++j)
      m_grad[j] += o.m_grad[j];
    return *this;
  }

  Jet1 & Jet1::operator-=(const Jet1 & o)
  {
    check_rank(rank(), o.rank());
    m_value -= o.m_value;
    for (size_t j = 0; j < m_grad.size(); ++j)
      m_grad[j] -= o.m_grad[j];
    return *this;
  }

  Jet1 & Jet1::operator*=(const Jet1 & o)
  {
    check_rank(rank(), o.rank());
    for (size_t j = 0; j < m_grad.size(); ++j)
      m_grad[j] = m_grad[j] * o.m_value + m_value * o.m_grad[j];
    m_value *= o.m_value;
    return *this;
  }

  Jet1 & Jet1::operator*=(cd s)
  {
    m_value *= s;
    for (auto & g : m_grad)
      g *= s;
    return *this;
  }

  Jet1 Jet1::inverse() const
  {
    const cd inv = 1.0 / m_value;
    Jet1 out(inv, m_grad);
    for (auto & g : out.m_grad)
      g *= -inv * inv;
    return out;
  }

  Jet1 operator+(Jet1 a, const Jet1 & b) { return a += b; }
  Jet1 operator-(Jet1 a, const Jet1 & b) { return a -= b; }
  Jet1 operator-(const Jet1 & a) { return a * cd(-1.0, 0.0); }
  Jet1 operator*(Jet1 a, const Jet1 & b) { return a *= b; }
  Jet1 operator*(Jet1 a, cd s) { return a *= s; }
  Jet1 operator*(cd s, Jet1 a) { return a *= s; }
  Jet1 operator/(const Jet1 & a, const Jet1 & b) { return a * b.inverse(); }
  Jet1 operator+(Jet1 a, cd s) { return a += Jet1::constant(s, a.rank()); }
  Jet1 operator+(cd s, Jet1 a) { return a += Jet1::constant(s, a.rank()); }
  Jet1 operator-(cd s, const Jet1 & a) { return Jet1::constant(s, a.rank()) - a; }

  double max_abs(const Jet1 & a)
  {
    double m = std::abs(a.value());
    for (const auto & g : a.grad())
      m = std::max(m, std::abs(g));
    return m;
  }

  //------------------------------------------------------------------------------
  // JetMatrix
  //------------------------------------------------------------------------------

  JetMatrix::JetMatrix(Eigen::Index rows, Eigen::Index cols, size_t rank)
    : value(CMatrix::Zero(rows, cols)), grad(rank, CMatrix::Zero(rows, cols))
  {
  }

  JetMatrix JetMatrix::constant(const CMatrix & M, size_t rank)
  {
    JetMatrix J;
    J.value = M;
    J.grad.assign(rank, CMatrix::Zero(M.rows(), M.cols()));
    return J;
  }

  Jet1 JetMatrix::entry(Eigen::Index i, Eigen::Index j) const
  {
    std::vector<cd> g(grad.size());
    for (size_t k = 0; k < grad.size(); ++k)
      g[k] = grad[k](i, j);
    return Jet1(value(i, j), g);
  }

  void JetMatrix::set_entry(Eigen::Index i, Eigen::Index j, const Jet1 & x)
  {
    check_rank(rank(), x.rank());
    value(i, j) = x.value();
    for (size_t k = 0; k < grad.size(); ++k)
      grad[k](i, j) = x.grad(k);
  }

  void JetMatrix::add_entry(Eigen::Index i, Eigen::Index j, const Jet1 & x)
  {
    check_rank(rank(), x.rank());
    value(i, j) += x.value();
    for (size_t k = 0; k < grad.size(); ++k)
      grad[k](i, j) += x.grad(k);
  }

  void JetMatrix::add_scaled(const Jet1 & s, const CMatrix & M)
  {
    check_rank(rank(), s.rank());
    value += s.value() * M;
    for (size_t k = 0; k < grad.size(); ++k)
      if (s.grad(k) != cd(0.0, 0.0))
        grad[k] += s.grad(k) * M;
  }

  JetMatrix & JetMatrix::operator+=(const JetMatrix & o)
  {
    check_rank(rank(), o.rank());
    value += o.value;
    for (size_t k = 0; k < grad.size(); ++k)
      grad[k] += o.grad[k];
    return *this;
  }

  JetMatrix & JetMatrix::operator-=(const JetMatrix & o)
  {
    check_rank(rank(), o.rank());
    value -= o.value;
    for (size_t k = 0; k < grad.size(); ++k)
      grad[k] -= o.grad[k];
    return *this;
  }

  JetMatrix & JetMatrix::operator*=(cd s)
  {
    value *= s;
    for (auto & g : grad)
      g *= s;
    return *this;
  }

  JetMatrix JetMatrix::transpose() const
  {
    JetMatrix T;
    T.value = value.transpose();
    for (const auto & g : grad)
      T.grad.push_back(g.transpose());
    return T;
  }

  JetMatrix operator+(JetMatrix a, const JetMatrix & b) { return a += b; }
  JetMatrix operator-(JetMatrix a, const JetMatrix & b) { return a -= b; }
  JetMatrix operator*(cd s, JetMatrix M) { return M *= s; }

  JetMatrix operator*(const Jet1 & s, const JetMatrix & M)
  {
    check_rank(s.rank(), M.rank());
    JetMatrix out;
    out.value = s.value() * M.value;
    for (size_t k = 0; k < M.grad.size(); ++k)
      out.grad.push_back(s.value() * M.grad[k] + s.grad(k) * M.value);
    return out;
  }

  JetMatrix operator*(const JetMatrix & A, const JetMatrix & B)
  {
    check_rank(A.rank(), B.rank());
    JetMatrix out;
    out.value = A.value * B.value;
    for (size_t k = 0; k < A.grad.size(); ++k)
      out.grad.push_back(A.grad[k] * B.value + A.value * B.grad[k]);
    return out;
  }

  JetMatrix operator*(const CMatrix & A, const JetMatrix & B)
  {
    JetMatrix out;
    out.value = A * B.value;
    for (const auto & g : B.grad)
      out.grad.push_back(A * g);
    return out;
  }

  JetMatrix operator*(const JetMatrix & A, const CMatrix & B)
  {
    JetMatrix out;
    out.value = A.value * B;
    for (const auto & g : A.grad)
      out.grad.push_back(g * B);
    return out;
  }

  JetMatrix commutator(const JetMatrix & A, const JetMatrix & B)
  {
    return A * B - B * A;
  }

  double max_abs(const JetMatrix & M)
  {
    double m = max_abs(M.value);
    for (const auto & g : M.grad)
      m = std::max(m, max_abs(g));
    return m;
  }

} // namespace kzb
