#include "kzb/operators.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <map>

namespace kzb
{

  namespace
  {
    size_t rank_of(const RealFormData & data) { return static_cast<size_t>(data.r); }

    std::vector<double> unit(const RealFormData & data, int j)
    {
      std::vector<double> h(static_cast<size_t>(data.r), 0.0);
      h[static_cast<size_t>(j)] = 1.0;
      return h;
    }

    using SMatrix = Eigen::SparseMatrix<cd>;

    /// Products with a mostly-zero factor (embedded single-leg operators, scalar matrices)
    CMatrix sparse_left(const CMatrix & S, const CMatrix & B)
    {
      const SMatrix s = S.sparseView();
      return s * B;
    }

    CMatrix sparse_right(const CMatrix & B, const CMatrix & S)
    {
      const SMatrix s = S.sparseView();
      return B * s;
    }

    /// [S, B] with S mostly zero
    CMatrix sparse_commutator(const CMatrix & S, const CMatrix & B) { return sparse_left(S, B) - sparse_right(B, S); }

    CMatrix value_commutator(const JetMatrix & A, const JetMatrix & B) { return A.value * B.value - B.value * A.value; }

    /// Inverse Gram matrix of the Killing form on the g-basis
    CMatrix inverse_gram(const RealFormData & data)
    {
      const int dim = data.dim();
      CMatrix G(dim, dim);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          G(a, b) = killing_form(data.basis[static_cast<size_t>(a)], data.basis[static_cast<size_t>(b)]);
      return G.inverse();
    }

    void check_index(const KzbSpace & S, int i)
    {
      if (i < 1 || i > S.n())
        throw KzbError("index-out-of-range", "tensor slot " + std::to_string(i));
    }

    /// (xi_lambda - xi_{-lambda})^{-1}
    Jet1 inverse_difference(const RealFormData & data, const Weight & lambda, const BasePoint & a)
    {
      return (xi(data, lambda, a) - xi(data, scale_weight(lambda, -1), a)).inverse();
    }

    /// (xi_lambda + xi_{-lambda}) / (xi_lambda - xi_{-lambda})
    Jet1 coth_a(const RealFormData & data, const Weight & lambda, const BasePoint & a)
    {
      return (xi(data, lambda, a) + xi(data, scale_weight(lambda, -1), a)) * inverse_difference(data, lambda, a);
    }

    /// Terms of H and V built from z_lambda, Upsilon_lambda and upsilon_lambda
    JetMatrix representation_tail(const KzbSpace & S, const BasePoint & a)
    {
      const RealFormData & data = S.data();
      const size_t rk = rank_of(data);
      const int right = S.n() + 1;
      JetMatrix out(S.dim(), S.dim(), rk);
      for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
        const auto & rr = data.restrictedRoots[l];
        const Jet1 c = coth_a(data, rr.lambda, a);
        out.add_scaled(cd(0.5) * c, S.embed({right}, S.leg_apply(right, data.zLambda[l])));

        const DynTensor ups = upsilon_lambda(data, static_cast<int>(l), rk);
        JetMatrix inner = S.pair(ups, right, right);
        JetMatrix mixed(S.dim(), S.dim(), rk);
        for (int u = 0; u <= S.n(); ++u) {
          for (int v = 0; v <= S.n(); ++v)
            inner += S.pair(ups, u, v);
          mixed += S.pair(ups, u, right);
        }
        const Jet1 sum = xi(data, rr.lambda, a) + xi(data, scale_weight(rr.lambda, -1), a);
        inner += sum * mixed;
        const Jet1 d = inverse_difference(data, rr.lambda, a);
        out -= (d * d) * inner;
      }
      return out;
    }

    JetMatrix identity_jet(Eigen::Index d, const Jet1 & s)
    {
      JetMatrix out(d, d, s.rank());
      out.add_scaled(s, identity(d));
      return out;
    }
  } // namespace

  //------------------------------------------------------------------------------
  // Tensor space
  //------------------------------------------------------------------------------

  KzbSpace::KzbSpace(const RealFormData & data, KRep sigmaL, std::vector<Rep> taus, KRep sigmaR)
    : m_data(&data), m_sigmaL(std::move(sigmaL)), m_taus(std::move(taus)), m_sigmaR(std::move(sigmaR))
  {
    m_sigmaRDual = dual_krep(m_sigmaR);
    m_legDims.push_back(m_sigmaL.dim);
    m_legAct.push_back(m_sigmaL.on_g(data));
    for (const auto & t : m_taus) {
      m_legDims.push_back(t.dim);
      m_legAct.push_back(t.act);
    }
    m_legDims.push_back(m_sigmaRDual.dim);
    m_legAct.push_back(m_sigmaRDual.on_g(data));

    m_strides.assign(m_legDims.size(), 1);
    for (int l = static_cast<int>(m_legDims.size()) - 2; l >= 0; --l)
      m_strides[static_cast<size_t>(l)] = m_strides[static_cast<size_t>(l) + 1] * m_legDims[static_cast<size_t>(l) + 1];
    m_total = m_strides.front() * m_legDims.front();
  }

  CMatrix KzbSpace::leg_apply(int leg, const CMatrix & X) const
  {
    const CVector c = m_data->coords(X);
    const auto & act = leg_action(leg);
    CMatrix M = CMatrix::Zero(leg_dim(leg), leg_dim(leg));
    for (int a = 0; a < m_data->dim(); ++a)
      if (c(a) != cd(0.0, 0.0))
        M += c(a) * act[static_cast<size_t>(a)];
    return M;
  }

  CMatrix KzbSpace::embed(const std::vector<int> & legs, const CMatrix & M) const
  {
    std::vector<Eigen::Index> smallStride(legs.size(), 1);
    for (int k = static_cast<int>(legs.size()) - 2; k >= 0; --k)
      smallStride[static_cast<size_t>(k)] = smallStride[static_cast<size_t>(k) + 1] * leg_dim(legs[static_cast<size_t>(k) + 1]);
    const Eigen::Index small = legs.empty() ? 1 : smallStride.front() * leg_dim(legs.front());
    if (M.rows() != small || M.cols() != small)
      throw KzbError("shape", "embedded block does not match its legs");

    std::vector<Eigen::Index> offset(static_cast<size_t>(small), 0);
    for (Eigen::Index c = 0; c < small; ++c)
      for (size_t k = 0; k < legs.size(); ++k) {
        const Eigen::Index digit = (c / smallStride[k]) % leg_dim(legs[k]);
        offset[static_cast<size_t>(c)] += digit * m_strides[static_cast<size_t>(legs[k])];
      }

    CMatrix out = CMatrix::Zero(m_total, m_total);
    for (Eigen::Index R = 0; R < m_total; ++R) {
      Eigen::Index sr = 0;
      for (size_t k = 0; k < legs.size(); ++k) {
        const Eigen::Index digit = (R / m_strides[static_cast<size_t>(legs[k])]) % leg_dim(legs[k]);
        sr += digit * smallStride[k];
      }
      const Eigen::Index rest = R - offset[static_cast<size_t>(sr)];
      for (Eigen::Index c = 0; c < small; ++c) {
        const cd v = M(sr, c);
        if (v != cd(0.0, 0.0))
          out(R, rest + offset[static_cast<size_t>(c)]) = v;
      }
    }
    return out;
  }

  JetMatrix KzbSpace::embed(const std::vector<int> & legs, const JetMatrix & M) const
  {
    JetMatrix out;
    out.value = embed(legs, M.value);
    for (const auto & g : M.grad)
      out.grad.push_back(embed(legs, g));
    return out;
  }

  CMatrix KzbSpace::embed_factors(const std::vector<std::pair<int, CMatrix>> & factors) const
  {
    std::map<int, CMatrix> perLeg;
    for (const auto & [leg, M] : factors) {
      auto it = perLeg.find(leg);
      if (it == perLeg.end())
        perLeg.emplace(leg, M);
      else
        it->second = it->second * M;
    }
    std::vector<int> legs;
    CMatrix block = CMatrix::Identity(1, 1);
    for (const auto & [leg, M] : perLeg) {
      legs.push_back(leg);
      block = kron(block, M);
    }
    return embed(legs, block);
  }

  JetMatrix KzbSpace::pair(const DynTensor & T, int legA, int legB) const
  {
    const auto & actA = leg_action(legA);
    const auto & actB = leg_action(legB);
    const bool same = legA == legB;
    const Eigen::Index dA = leg_dim(legA), dB = leg_dim(legB);
    const Eigen::Index small = same ? dA : dA * dB;
    const int dim = m_data->dim();

    auto contract = [&](const CMatrix & C) {
      CMatrix out = CMatrix::Zero(small, small);
      if (C.isZero(0.0))
        return out;
      for (int a = 0; a < dim; ++a) {
        if (C.row(a).isZero(0.0))
          continue;
        CMatrix W = CMatrix::Zero(dB, dB);
        for (int b = 0; b < dim; ++b)
          if (C(a, b) != cd(0.0, 0.0))
            W += C(a, b) * actB[static_cast<size_t>(b)];
        out += same ? CMatrix(actA[static_cast<size_t>(a)] * W) : kron(actA[static_cast<size_t>(a)], W);
      }
      return out;
    };

    JetMatrix block;
    block.value = contract(T.coeffs.value);
    for (const auto & g : T.coeffs.grad)
      block.grad.push_back(contract(g));
    if (same)
      return embed(std::vector<int>{legA}, block);
    return embed(std::vector<int>{legA, legB}, block);
  }

  JetMatrix KzbSpace::on_leg(const UgElement2 & u, int leg) const
  {
    return embed(std::vector<int>{leg}, u.evaluate(leg_action(leg)));
  }

  std::vector<CMatrix> KzbSpace::m_action() const
  {
    std::vector<CMatrix> out;
    for (int idx : m_data->mIndices) {
      CMatrix M = CMatrix::Zero(m_total, m_total);
      for (int l = 0; l < legs(); ++l)
        M += embed({l}, leg_action(l)[static_cast<size_t>(idx)]);
      out.push_back(std::move(M));
    }
    return out;
  }

  const InvariantSubspace & KzbSpace::invariants() const
  {
    if (!m_haveInvariants) {
      m_invariants = kzb::m_invariants(m_action(), m_total);
      m_haveInvariants = true;
    }
    return m_invariants;
  }

  //------------------------------------------------------------------------------
  // First-order operators
  //------------------------------------------------------------------------------

  PointTensors point_tensors(const RealFormData & data, const BasePoint & a, Perturbation control)
  {
    auto [rp, rm] = build_r_pm(data, a);
    return PointTensors{a, std::move(rp), std::move(rm), build_kappa(data, a, control)};
  }

  JetMatrix kappa_on_space(const KzbSpace & S, const PointTensors & P, int i, Core core)
  {
    check_index(S, i);
    JetMatrix K = S.on_leg(core == Core::Plain ? P.kappa.core : P.kappa.coreHat, i);
    K -= S.pair(P.kappa.left, 0, i);
    K -= S.pair(P.kappa.right, i, S.n() + 1);
    return K;
  }

  FirstOrderOp build_D(const KzbSpace & S, const PointTensors & P, int i, Core core)
  {
    check_index(S, i);
    const RealFormData & data = S.data();
    FirstOrderOp D;
    for (int j = 0; j < data.r; ++j)
      D.symbol.push_back(S.embed({i}, S.leg_action(i)[static_cast<size_t>(j)]));
    D.zeroth = cd(-1.0) * kappa_on_space(S, P, i, core);
    for (int k = 1; k < i; ++k)
      D.zeroth -= S.pair(P.rPlus, k, i);
    for (int k = i + 1; k <= S.n(); ++k)
      D.zeroth -= S.pair(P.rMinus, i, k);
    return D;
  }

  FirstOrderOp build_D(const KzbSpace & S, const BasePoint & a, int i, Core core)
  {
    return build_D(S, point_tensors(S.data(), a), i, core);
  }

  FirstOrderOp build_D_oracle(const KzbSpace & S, const BasePoint & a, int i)
  {
    check_index(S, i);
    const RealFormData & data = S.data();
    const size_t rk = rank_of(data);
    const int n = S.n();
    const int right = n + 1;
    const auto & tau = S.leg_action(i);

    FirstOrderOp D;
    for (int j = 0; j < data.r; ++j)
      D.symbol.push_back(S.embed({i}, tau[static_cast<size_t>(j)]));
    D.zeroth = JetMatrix(S.dim(), S.dim(), rk);

    // tau_i(A) sigma_{l;n}(X)
    auto with_sigma_ln = [&](const CMatrix & A, const CMatrix & X) {
      const CMatrix tA = S.leg_apply(i, A);
      CMatrix M = CMatrix::Zero(S.dim(), S.dim());
      for (int l = 0; l <= n; ++l)
        M += S.embed_factors({{i, tA}, {l, S.leg_apply(l, X)}});
      return M;
    };

    // imaginary Cartan directions z_s
    for (int s = data.r; s < data.nCartan; ++s) {
      const CMatrix & z = data.basis[static_cast<size_t>(s)];
      const CMatrix & zDual = data.basis[static_cast<size_t>(data.dual_index(s))];
      D.zeroth.add_scaled(Jet1::constant(1.0, rk), with_sigma_ln(z, zDual));
    }

    for (size_t k = 0; k < data.roots.size(); ++k) {
      const Root & al = data.roots[k];
      const CMatrix & eNeg = data.basis[static_cast<size_t>(data.roots[static_cast<size_t>(al.negative)].basisIndex)];
      if (al.imaginary) {
        D.zeroth.add_scaled(Jet1::constant(1.0, rk), with_sigma_ln(eNeg, data.basis[static_cast<size_t>(al.basisIndex)]));
        continue;
      }
      const Weight & lambda = al.weight;
      const Jet1 g = inv_one_minus_xi(data, scale_weight(lambda, 2), a);
      const CMatrix & y = data.yAlpha[k];
      D.zeroth.add_scaled(g, with_sigma_ln(eNeg, y));
      D.zeroth.add_scaled(xi(data, lambda, a) * g,
                          S.embed_factors({{i, S.leg_apply(i, eNeg)}, {right, S.leg_apply(right, y)}}));
    }

    // Casimir terms through the dual basis of the Killing form
    const CMatrix Ginv = inverse_gram(data);
    const int dim = data.dim();
    CMatrix omega = CMatrix::Zero(S.leg_dim(i), S.leg_dim(i));
    for (int a1 = 0; a1 < dim; ++a1)
      for (int b1 = 0; b1 < dim; ++b1)
        if (std::abs(Ginv(a1, b1)) > 0.0)
          omega += Ginv(a1, b1) * tau[static_cast<size_t>(a1)] * tau[static_cast<size_t>(b1)];
    D.zeroth.add_scaled(Jet1::constant(-0.5, rk), S.embed({i}, omega));

    for (int k = i + 1; k <= n; ++k) {
      const auto & tauK = S.leg_action(k);
      CMatrix block = CMatrix::Zero(S.leg_dim(i) * S.leg_dim(k), S.leg_dim(i) * S.leg_dim(k));
      for (int a1 = 0; a1 < dim; ++a1) {
        CMatrix W = CMatrix::Zero(S.leg_dim(k), S.leg_dim(k));
        for (int b1 = 0; b1 < dim; ++b1)
          if (std::abs(Ginv(a1, b1)) > 0.0)
            W += Ginv(a1, b1) * tauK[static_cast<size_t>(b1)];
        block += kron(tau[static_cast<size_t>(a1)], W);
      }
      D.zeroth.add_scaled(Jet1::constant(-1.0, rk), S.embed({i, k}, block));
    }
    return D;
  }

  FirstOrderOp gauge_first_order(const RealFormData & data, const FirstOrderOp & D, const BasePoint & a, double sign)
  {
    FirstOrderOp out = D;
    for (int j = 0; j < data.r; ++j)
      out.zeroth.add_scaled(cd(sign) * gauge_shift(data, unit(data, j), a), D.symbol[static_cast<size_t>(j)]);
    return out;
  }

  Jet1 gauge_shift_derivative(const RealFormData & data, int j, const BasePoint & a)
  {
    Jet1 s = Jet1::constant(0.0, rank_of(data));
    for (const RestrictedRoot & rr : data.restrictedRoots) {
      const double lx = data.lambda_on_x(rr.lambda, j);
      if (lx == 0.0)
        continue;
      const Weight two = scale_weight(rr.lambda, 2);
      const Jet1 g = inv_one_minus_xi(data, two, a);
      s += cd(rr.mtp * lx * lx) * (xi(data, two, a) * g * g);
    }
    return s;
  }

  //------------------------------------------------------------------------------
  // Second-order operators
  //------------------------------------------------------------------------------

  double potential_k(const RealFormData & data, int lambdaIndex)
  {
    const auto & rr = data.restrictedRoots[static_cast<size_t>(lambdaIndex)];
    const int twice = data.restricted_index(scale_weight(rr.lambda, 2));
    const double mtp2 = twice < 0 ? 0.0 : data.restrictedRoots[static_cast<size_t>(twice)].mtp;
    const CMatrix & t = data.tLambda[static_cast<size_t>(lambdaIndex)];
    return rr.mtp * (mtp2 + 0.5 * rr.mtp - 1.0) * killing_form(t, t).real();
  }

  SecondOrderOp build_H(const KzbSpace & S, const BasePoint & a)
  {
    const RealFormData & data = S.data();
    const size_t rk = rank_of(data);
    SecondOrderOp H;
    for (int j = 0; j < data.r; ++j) {
      Jet1 F = Jet1::constant(0.0, rk);
      for (const RestrictedRoot & rr : data.restrictedRoots)
        F += cd(0.5 * rr.mtp * data.lambda_on_x(rr.lambda, j)) * coth_a(data, rr.lambda, a);
      H.first.push_back(identity_jet(S.dim(), F));
    }
    H.zeroth = S.pair(varpi_m(data, rk), S.n() + 1, S.n() + 1) + representation_tail(S, a);
    return H;
  }

  JetMatrix build_potential(const KzbSpace & S, const BasePoint & a)
  {
    const RealFormData & data = S.data();
    Jet1 scalar = Jet1::constant(0.0, rank_of(data));
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const Jet1 d = inverse_difference(data, data.restrictedRoots[l].lambda, a);
      scalar -= cd(potential_k(data, static_cast<int>(l))) * (d * d);
    }
    return identity_jet(S.dim(), scalar) + representation_tail(S, a);
  }

  SecondOrderOp build_H_tilde(const KzbSpace & S, const BasePoint & a)
  {
    const RealFormData & data = S.data();
    const size_t rk = rank_of(data);
    SecondOrderOp H;
    for (int j = 0; j < data.r; ++j)
      H.first.emplace_back(S.dim(), S.dim(), rk);
    H.zeroth = build_potential(S, a) + S.pair(varpi_m(data, rk), S.n() + 1, S.n() + 1);
    H.zeroth.add_scaled(Jet1::constant(-data.tRhoNormSq, rk), identity(S.dim()));
    return H;
  }

  SecondOrderOp gauge_second_order(const RealFormData & data, const SecondOrderOp & H, const BasePoint & a)
  {
    SecondOrderOp out = H;
    const Eigen::Index d = H.space();
    for (int j = 0; j < data.r; ++j) {
      const Jet1 s = gauge_shift(data, unit(data, j), a);
      out.first[static_cast<size_t>(j)].add_scaled(cd(2.0 * H.laplacian) * s, identity(d));
      out.zeroth.add_scaled(cd(H.laplacian) * (gauge_shift_derivative(data, j, a) + s * s), identity(d));
      out.zeroth += s * H.first[static_cast<size_t>(j)];
    }
    return out;
  }

  //------------------------------------------------------------------------------
  // Commutators
  //------------------------------------------------------------------------------

  CommutatorValue commutator_first_order(const FirstOrderOp & D, const FirstOrderOp & E)
  {
    if (D.space() != E.space() || D.symbol.size() != E.symbol.size())
      throw KzbError("shape", "operators act on different spaces");
    const size_t r = D.symbol.size();
    CommutatorValue out;
    for (size_t j = 0; j < r; ++j)
      for (size_t k = 0; k < r; ++k)
        out.second.push_back(sparse_commutator(D.symbol[j], E.symbol[k]));
    for (size_t j = 0; j < r; ++j)
      out.first.push_back(sparse_commutator(D.symbol[j], E.zeroth.value) - sparse_commutator(E.symbol[j], D.zeroth.value));
    out.zeroth = value_commutator(D.zeroth, E.zeroth);
    for (size_t j = 0; j < r; ++j)
      out.zeroth += sparse_left(D.symbol[j], E.zeroth.grad[j]) - sparse_left(E.symbol[j], D.zeroth.grad[j]);
    return out;
  }

  CommutatorValue commutator_with_second_order(const std::function<FirstOrderOp(const BasePoint &)> & builder,
                                               const SecondOrderOp & H, const BasePoint & a, double step)
  {
    const FirstOrderOp D = builder(a);
    if (D.space() != H.space() || D.symbol.size() != H.first.size())
      throw KzbError("shape", "operators act on different spaces");
    const size_t r = D.symbol.size();
    const CMatrix & B = D.zeroth.value;
    const CMatrix & C = H.zeroth.value;

    auto shifted_grad = [&](size_t k, double h) {
      BasePoint p = a, m = a;
      p.coords[k] += h;
      m.coords[k] -= h;
      p.margin = m.margin = 0.0;
      return CMatrix((builder(p).zeroth.grad[k] - builder(m).zeroth.grad[k]) / (2.0 * h));
    };

    CommutatorValue out;
    for (size_t j = 0; j < r; ++j)
      for (size_t k = 0; k < r; ++k)
        out.second.push_back(sparse_commutator(D.symbol[j], H.first[k].value));
    out.zeroth = commutator(B, C);
    for (size_t k = 0; k < r; ++k) {
      const CMatrix & F = H.first[k].value;
      CMatrix first = sparse_commutator(D.symbol[k], C) - 2.0 * H.laplacian * D.zeroth.grad[k] - sparse_commutator(F, B);
      for (size_t j = 0; j < r; ++j)
        first += sparse_left(D.symbol[j], H.first[k].grad[j]);
      out.first.push_back(std::move(first));

      const CMatrix second = (4.0 * shifted_grad(k, 0.5 * step) - shifted_grad(k, step)) / 3.0;
      out.zeroth += sparse_left(D.symbol[k], H.zeroth.grad[k]) - H.laplacian * second - sparse_left(F, D.zeroth.grad[k]);
    }
    return out;
  }

  CMatrix ReflectionTerms::total() const
  {
    CMatrix out = A;
    for (const auto * list : {&myb1, &myb2, &myb3})
      for (const auto & M : *list)
        out += M;
    return out;
  }

  ReflectionTerms reflection_and_myb(const KzbSpace & S, const PointTensors & P, int i, int j, Core core)
  {
    check_index(S, i);
    check_index(S, j);
    if (i >= j)
      throw KzbError("index-out-of-range", "need i < j");
    const RealFormData & data = S.data();
    const size_t r = rank_of(data);

    // sum_s (x_s)_u d_s(Y) as a value
    auto x_d = [&](int u, const JetMatrix & Y) {
      CMatrix out = CMatrix::Zero(S.dim(), S.dim());
      for (size_t s = 0; s < r; ++s)
        out += sparse_left(S.embed({u}, S.leg_action(u)[s]), Y.grad[s]);
      return out;
    };
    auto rp = [&](int u, int v) { return S.pair(P.rPlus, u, v); };
    auto rm = [&](int u, int v) { return S.pair(P.rMinus, u, v); };

    ReflectionTerms T;
    const JetMatrix L = kappa_on_space(S, P, i, core) + rm(i, j);
    const JetMatrix R = kappa_on_space(S, P, j, core) + rp(i, j);
    T.A = value_commutator(L, R) - (x_d(i, R) - x_d(j, L));

    for (int k = 1; k < i; ++k) {
      const JetMatrix r12p = rp(k, i), r13p = rp(k, j), r23p = rp(i, j), r23m = rm(i, j);
      T.myb1.push_back(value_commutator(r12p, r13p) + value_commutator(r12p, r23p) - value_commutator(r13p, r23m) -
                       (x_d(i, r13p) - x_d(j, r12p)));
    }
    for (int k = i + 1; k < j; ++k) {
      const JetMatrix r12m = rm(i, k), r13p = rp(i, j), r23p = rp(k, j), r13m = rm(i, j);
      T.myb2.push_back(value_commutator(r12m, r13p) + value_commutator(r12m, r23p) + value_commutator(r13m, r23p) -
                       (x_d(i, r23p) - x_d(j, r12m)));
    }
    for (int k = j + 1; k <= S.n(); ++k) {
      const JetMatrix r12p = rp(i, j), r13m = rm(i, k), r12m = rm(i, j), r23m = rm(j, k);
      T.myb3.push_back(-value_commutator(r12p, r13m) + value_commutator(r12m, r23m) + value_commutator(r13m, r23m) -
                       (x_d(i, r23m) - x_d(j, r13m)));
    }
    return T;
  }

  double restricted_norm(const CMatrix & X, const InvariantSubspace & inv)
  {
    if (inv.dim() == 0)
      return 0.0;
    return max_abs(X * inv.basis);
  }

  double delta_conjugation_error(const KzbSpace & S, const BasePoint & a, const std::vector<double> & mu)
  {
    const RealFormData & data = S.data();
    const SecondOrderOp H = build_H(S, a);
    const SecondOrderOp Ht = build_H_tilde(S, a);
    const Eigen::Index d = S.dim();

    // H~(delta f) and delta H f for f = xi_mu v, divided by delta xi_mu
    CMatrix lhs = Ht.zeroth.value;
    CMatrix rhs = H.zeroth.value;
    for (int j = 0; j < data.r; ++j) {
      const double m = mu[static_cast<size_t>(j)] * data.fScale;
      const Jet1 dl = dlog_delta(data, j, a);
      const cd phi = dl.value() + m;
      lhs += (dl.grad(static_cast<size_t>(j)) + phi * phi) * identity(d);
      rhs += m * m * identity(d) + m * H.first[static_cast<size_t>(j)].value;
    }
    const double weight = delta(data, a) * xi(data, mu, a).value().real();
    const double err = weight * max_abs(lhs - rhs);
    const double scale = weight * std::max(max_abs(lhs), max_abs(rhs));
    return err / (1.0 + scale);
  }

} // namespace kzb
