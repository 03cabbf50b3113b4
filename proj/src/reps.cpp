#include "kzb/reps.hpp"

#include <algorithm>
#include <sstream>

namespace kzb
{

  namespace
  {
    std::vector<CMatrix> k_basis(const RealFormData & data)
    {
      std::vector<CMatrix> out = data.mBasis;
      out.insert(out.end(), data.qBasis.begin(), data.qBasis.end());
      return out;
    }

    std::vector<std::string> split_label(const std::string & label)
    {
      std::vector<std::string> parts;
      std::stringstream ss(label);
      std::string part;
      while (std::getline(ss, part, '*'))
        parts.push_back(part);
      if (!label.empty() && label.back() == '*')
        parts.emplace_back();
      return parts;
    }

    Rep single_rep(const RealFormData & data, const std::string & name)
    {
      if (name == "def")
        return defining_rep(data);
      if (name == "dual")
        return dual_rep(defining_rep(data));
      if (name == "adj")
        return adjoint_rep(data);
      if (name == "triv")
        return trivial_rep(data);
      throw KzbError("invalid-argument", "unknown representation '" + name + "'");
    }
  } // namespace

  std::vector<CMatrix> KRep::on_g(const RealFormData & data) const
  {
    std::vector<CMatrix> out;
    out.reserve(static_cast<size_t>(data.dim()));
    for (int a = 0; a < data.dim(); ++a) {
      CMatrix M = CMatrix::Zero(dim, dim);
      for (int c = 0; c < data.dim_k(); ++c)
        M += data.kFromG(c, a) * act[static_cast<size_t>(c)];
      out.push_back(std::move(M));
    }
    return out;
  }

  CMatrix KRep::apply(const RealFormData & data, const CMatrix & X) const
  {
    const CVector kc = data.kFromG * data.coords(X);
    CMatrix M = CMatrix::Zero(dim, dim);
    for (int c = 0; c < data.dim_k(); ++c)
      M += kc(c) * act[static_cast<size_t>(c)];
    return M;
  }

  Rep defining_rep(const RealFormData & data)
  {
    return Rep{data.n, data.basis, "def"};
  }

  Rep adjoint_rep(const RealFormData & data)
  {
    return Rep{data.dim(), data.ad, "adj"};
  }

  Rep trivial_rep(const RealFormData & data)
  {
    return Rep{1, std::vector<CMatrix>(static_cast<size_t>(data.dim()), CMatrix::Zero(1, 1)), "triv"};
  }

  Rep dual_rep(const Rep & R)
  {
    Rep out{R.dim, {}, dual_label(R.label)};
    for (const auto & A : R.act)
      out.act.push_back(-A.transpose());
    return out;
  }

  Rep tensor_rep(const Rep & R1, const Rep & R2)
  {
    Rep out{R1.dim * R2.dim, {}, R1.label + "*" + R2.label};
    const CMatrix I1 = identity(R1.dim), I2 = identity(R2.dim);
    for (size_t a = 0; a < R1.act.size(); ++a)
      out.act.push_back(kron(R1.act[a], I2) + kron(I1, R2.act[a]));
    return out;
  }

  CMatrix rep_apply(const RealFormData & data, const Rep & R, const CMatrix & X)
  {
    const CVector c = data.coords(X);
    CMatrix M = CMatrix::Zero(R.dim, R.dim);
    for (int a = 0; a < data.dim(); ++a)
      if (c(a) != cd(0.0, 0.0))
        M += c(a) * R.act[static_cast<size_t>(a)];
    return M;
  }

  KRep restrict_to_k(const RealFormData & data, const Rep & R)
  {
    KRep out{R.dim, {}, R.label};
    for (const auto & K : k_basis(data))
      out.act.push_back(rep_apply(data, R, K));
    return out;
  }

  KRep trivial_krep(const RealFormData & data)
  {
    return KRep{1, std::vector<CMatrix>(static_cast<size_t>(data.dim_k()), CMatrix::Zero(1, 1)), "triv"};
  }

  KRep dual_krep(const KRep & R)
  {
    KRep out{R.dim, {}, dual_label(R.label)};
    for (const auto & A : R.act)
      out.act.push_back(-A.transpose());
    return out;
  }

  KRep tensor_krep(const KRep & R1, const KRep & R2)
  {
    KRep out{R1.dim * R2.dim, {}, R1.label + "*" + R2.label};
    const CMatrix I1 = identity(R1.dim), I2 = identity(R2.dim);
    for (size_t a = 0; a < R1.act.size(); ++a)
      out.act.push_back(kron(R1.act[a], I2) + kron(I1, R2.act[a]));
    return out;
  }

  KRep sigma_ell_n(const RealFormData & data, const KRep & sigmaL, const std::vector<Rep> & taus)
  {
    KRep out = sigmaL;
    for (const auto & tau : taus)
      out = tensor_krep(out, restrict_to_k(data, tau));
    return out;
  }

  InvariantSubspace m_invariants(const std::vector<CMatrix> & mAction, Eigen::Index ambientDim)
  {
    InvariantSubspace out;
    out.ambientDim = ambientDim;
    if (mAction.empty()) {
      out.basis = identity(ambientDim);
      return out;
    }
    CMatrix stacked(static_cast<Eigen::Index>(mAction.size()) * ambientDim, ambientDim);
    for (size_t k = 0; k < mAction.size(); ++k)
      stacked.middleRows(static_cast<Eigen::Index>(k) * ambientDim, ambientDim) = mAction[k];
    out.basis = null_space(stacked);
    return out;
  }

  InvariantSubspace m_invariants(const RealFormData & data, const Rep & R)
  {
    std::vector<CMatrix> mAction;
    for (int idx : data.mIndices)
      mAction.push_back(R.act[static_cast<size_t>(idx)]);
    return m_invariants(mAction, R.dim);
  }

  InvariantSubspace m_invariants(const RealFormData & data, const KRep & R)
  {
    std::vector<CMatrix> mAction(R.act.begin(), R.act.begin() + static_cast<long>(data.mBasis.size()));
    return m_invariants(mAction, R.dim);
  }

  Rep rep_from_label(const RealFormData & data, const std::string & label)
  {
    const auto parts = split_label(label);
    if (parts.empty())
      throw KzbError("invalid-argument", "empty representation label");
    Rep out = single_rep(data, parts.front());
    for (size_t k = 1; k < parts.size(); ++k)
      out = tensor_rep(out, single_rep(data, parts[k]));
    return out;
  }

  KRep krep_from_label(const RealFormData & data, const std::string & label)
  {
    return restrict_to_k(data, rep_from_label(data, label));
  }

  std::string dual_label(const std::string & label)
  {
    std::string out;
    for (const auto & part : split_label(label)) {
      if (!out.empty())
        out += "*";
      if (part == "def")
        out += "dual";
      else if (part == "dual")
        out += "def";
      else
        out += part;
    }
    return out;
  }

  double homomorphism_error(const RealFormData & data, const Rep & R)
  {
    double err = 0.0;
    for (int a = 0; a < data.dim(); ++a)
      for (int b = 0; b < data.dim(); ++b) {
        const CMatrix lhs = rep_apply(data, R, commutator(data.basis[static_cast<size_t>(a)], data.basis[static_cast<size_t>(b)]));
        const CMatrix rhs = commutator(R.act[static_cast<size_t>(a)], R.act[static_cast<size_t>(b)]);
        err = std::max(err, max_abs(lhs - rhs));
      }
    return err;
  }

  double homomorphism_error(const RealFormData & data, const KRep & R)
  {
    const auto kb = k_basis(data);
    double err = 0.0;
    for (size_t a = 0; a < kb.size(); ++a)
      for (size_t b = 0; b < kb.size(); ++b) {
        const CMatrix lhs = R.apply(data, commutator(kb[a], kb[b]));
        err = std::max(err, max_abs(lhs - commutator(R.act[a], R.act[b])));
      }
    return err;
  }

} // namespace kzb
