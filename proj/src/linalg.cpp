#include "kzb/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace kzb
{

  CMatrix kron(const CMatrix & A, const CMatrix & B)
  {
    CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      for (Eigen::Index j = 0; j < A.cols(); ++j)
        K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
  }

  CMatrix commutator(const CMatrix & A, const CMatrix & B)
  {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
      throw KzbError("shape", "commutator needs square matrices of equal size");
    return A * B - B * A;
  }

  double max_abs(const CMatrix & A)
  {
    return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
  }

  CMatrix identity(Eigen::Index n)
  {
    return CMatrix::Identity(n, n);
  }

  CMatrix null_space(const CMatrix & A, double tol)
  {
    const Eigen::Index n = A.cols();
    if (n == 0)
      return CMatrix(0, 0);
    CMatrix V;
    Eigen::Index rank = 0;
    if (A.rows() > 0) {
      Eigen::BDCSVD<CMatrix> svd(A, Eigen::ComputeFullV);
      const auto & s = svd.singularValues();
      const double smax = s.size() > 0 ? s(0) : 0.0;
      if (smax > 0.0)
        for (Eigen::Index k = 0; k < s.size(); ++k)
          if (s(k) > tol * smax)
            ++rank;
      V = svd.matrixV();
    } else {
      V = identity(n);
    }
    const Eigen::Index k = n - rank;
    if (k == 0)
      return CMatrix(n, 0);

    // Projector onto the kernel; its columns span the kernel
    const CMatrix Vk = V.rightCols(k);
    const CMatrix P = Vk * Vk.adjoint();

    // Pivot on the largest columns, then orthonormalize in index order
    Eigen::ColPivHouseholderQR<CMatrix> pqr(P);
    std::vector<Eigen::Index> pivots(static_cast<size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j)
      pivots[static_cast<size_t>(j)] = pqr.colsPermutation().indices()(j);
    std::sort(pivots.begin(), pivots.end());

    CMatrix S(n, k);
    for (Eigen::Index j = 0; j < k; ++j)
      S.col(j) = P.col(pivots[static_cast<size_t>(j)]);
    Eigen::HouseholderQR<CMatrix> qr(S);
    CMatrix Q = qr.householderQ() * CMatrix::Identity(n, k);
    const CMatrix R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < k; ++j) {
      const cd d = R(j, j);
      if (std::abs(d) > 0.0)
        Q.col(j) *= d / std::abs(d);
    }
    return Q;
  }

  //------------------------------------------------------------------------------
  // CTensor
  //------------------------------------------------------------------------------

  CTensor::CTensor(std::vector<Eigen::Index> legs) : m_legs(std::move(legs))
  {
    Eigen::Index total = 1;
    for (auto d : m_legs)
      total *= d;
    m_data.assign(static_cast<size_t>(total), cd(0.0, 0.0));
  }

  Eigen::Index CTensor::flat(const std::vector<Eigen::Index> & idx) const
  {
    if (idx.size() != m_legs.size())
      throw KzbError("shape", "multi-index length does not match legs");
    Eigen::Index f = 0;
    for (size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= m_legs[k])
        throw KzbError("shape", "multi-index out of range");
      f = f * m_legs[k] + idx[k];
    }
    return f;
  }

  cd & CTensor::at(const std::vector<Eigen::Index> & idx)
  {
    return m_data[static_cast<size_t>(flat(idx))];
  }

  cd CTensor::at(const std::vector<Eigen::Index> & idx) const
  {
    return m_data[static_cast<size_t>(flat(idx))];
  }

  CTensor CTensor::permute(const std::vector<int> & perm) const
  {
    if (perm.size() != m_legs.size())
      throw KzbError("shape", "permutation length");
    std::vector<Eigen::Index> newLegs;
    for (int p : perm)
      newLegs.push_back(m_legs.at(static_cast<size_t>(p)));
    CTensor out(newLegs);
    std::vector<Eigen::Index> idx(m_legs.size(), 0), src(m_legs.size(), 0);
    for (Eigen::Index f = 0; f < out.size(); ++f) {
      Eigen::Index rem = f;
      for (size_t k = newLegs.size(); k-- > 0;) {
        idx[k] = rem % newLegs[k];
        rem /= newLegs[k];
      }
      for (size_t k = 0; k < perm.size(); ++k)
        src[static_cast<size_t>(perm[k])] = idx[k];
      out.m_data[static_cast<size_t>(f)] = at(src);
    }
    return out;
  }

  CTensor CTensor::outer(const CTensor & other) const
  {
    std::vector<Eigen::Index> legs = m_legs;
    legs.insert(legs.end(), other.m_legs.begin(), other.m_legs.end());
    CTensor out(legs);
    size_t pos = 0;
    for (const cd & a : m_data)
      for (const cd & b : other.m_data)
        out.m_data[pos++] = a * b;
    return out;
  }

  CTensor CTensor::apply_on_leg(const CMatrix & M, int leg) const
  {
    const size_t l = static_cast<size_t>(leg);
    if (l >= m_legs.size() || M.cols() != m_legs[l])
      throw KzbError("shape", "apply_on_leg");
    Eigen::Index before = 1, after = 1;
    for (size_t k = 0; k < l; ++k)
      before *= m_legs[k];
    for (size_t k = l + 1; k < m_legs.size(); ++k)
      after *= m_legs[k];
    std::vector<Eigen::Index> legs = m_legs;
    legs[l] = M.rows();
    CTensor out(legs);
    for (Eigen::Index b = 0; b < before; ++b)
      for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
          const cd m = M(i, j);
          if (m == cd(0.0, 0.0))
            continue;
          for (Eigen::Index a = 0; a < after; ++a)
            out.m_data[static_cast<size_t>((b * M.rows() + i) * after + a)] +=
              m * m_data[static_cast<size_t>((b * M.cols() + j) * after + a)];
        }
    return out;
  }

  CMatrix CTensor::to_matrix() const
  {
    if (m_legs.size() != 2)
      throw KzbError("shape", "to_matrix needs two legs");
    CMatrix M(m_legs[0], m_legs[1]);
    for (Eigen::Index i = 0; i < m_legs[0]; ++i)
      for (Eigen::Index j = 0; j < m_legs[1]; ++j)
        M(i, j) = m_data[static_cast<size_t>(i * m_legs[1] + j)];
    return M;
  }

  CTensor CTensor::from_matrix(const CMatrix & M)
  {
    CTensor T({M.rows(), M.cols()});
    for (Eigen::Index i = 0; i < M.rows(); ++i)
      for (Eigen::Index j = 0; j < M.cols(); ++j)
        T.m_data[static_cast<size_t>(i * M.cols() + j)] = M(i, j);
    return T;
  }

} // namespace kzb
