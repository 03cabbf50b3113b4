#include "kzb/tensors.hpp"

#include <algorithm>

namespace kzb
{

  //------------------------------------------------------------------------------
  // DynTensor
  //------------------------------------------------------------------------------

  DynTensor::DynTensor(const RealFormData & data, size_t rank) : coeffs(data.dim(), data.dim(), rank) {}

  DynTensor DynTensor::swapped() const
  {
    DynTensor T;
    T.legs = {legs[1], legs[0]};
    T.coeffs = coeffs.transpose();
    return T;
  }

  DynTensor DynTensor::left(const CMatrix & M) const
  {
    DynTensor T;
    T.legs = legs;
    T.coeffs = M * coeffs;
    return T;
  }

  DynTensor DynTensor::right(const CMatrix & M) const
  {
    DynTensor T;
    T.legs = legs;
    T.coeffs = coeffs * CMatrix(M.transpose());
    return T;
  }

  DynTensor & DynTensor::operator+=(const DynTensor & o)
  {
    coeffs += o.coeffs;
    return *this;
  }

  DynTensor & DynTensor::operator-=(const DynTensor & o)
  {
    coeffs -= o.coeffs;
    return *this;
  }

  DynTensor operator+(DynTensor a, const DynTensor & b) { return a += b; }
  DynTensor operator-(DynTensor a, const DynTensor & b) { return a -= b; }

  DynTensor operator*(const Jet1 & s, const DynTensor & T)
  {
    DynTensor out;
    out.legs = T.legs;
    out.coeffs = s * T.coeffs;
    return out;
  }

  DynTensor operator*(cd s, DynTensor T)
  {
    T.coeffs *= s;
    return T;
  }

  UgElement2 mu(const RealFormData & data, const DynTensor & T)
  {
    return UgElement2::mu(data, T.coeffs);
  }

  CMatrix theta_matrix(const RealFormData & data) { return data.theta; }

  CMatrix pr_k_matrix(const RealFormData & data)
  {
    return 0.5 * (identity(data.dim()) + data.theta);
  }

  CMatrix pr_p_matrix(const RealFormData & data)
  {
    return 0.5 * (identity(data.dim()) - data.theta);
  }

  namespace
  {
    double invariance_error(const RealFormData & data, const DynTensor & T, const std::vector<int> & idx)
    {
      double err = 0.0;
      for (int m : idx) {
        const CMatrix & A = data.ad[static_cast<size_t>(m)];
        err = std::max(err, max_abs(A * T.coeffs.value + T.coeffs.value * A.transpose()));
        for (const auto & g : T.coeffs.grad)
          err = std::max(err, max_abs(A * g + g * A.transpose()));
      }
      return err;
    }

    size_t rank_of(const RealFormData & data) { return static_cast<size_t>(data.r); }

  } // namespace

  double m_invariance_error(const RealFormData & data, const DynTensor & T)
  {
    return invariance_error(data, T, data.mIndices);
  }

  double ad_invariance_error(const RealFormData & data, const DynTensor & T)
  {
    std::vector<int> all(static_cast<size_t>(data.dim()));
    for (int a = 0; a < data.dim(); ++a)
      all[static_cast<size_t>(a)] = a;
    return invariance_error(data, T, all);
  }

  //------------------------------------------------------------------------------
  // Invariant tensors
  //------------------------------------------------------------------------------

  DynTensor varpi(const RealFormData & data, size_t rank)
  {
    DynTensor T(data, rank);
    for (int s = 0; s < data.nCartan; ++s)
      T.coeffs.value(s, s) = 1.0;
    for (const Root & a : data.roots)
      T.coeffs.value(data.roots[static_cast<size_t>(a.negative)].basisIndex, a.basisIndex) = 1.0;
    return T;
  }

  DynTensor varpi_m(const RealFormData & data, size_t rank)
  {
    DynTensor T(data, rank);
    for (int s = data.r; s < data.nCartan; ++s)
      T.coeffs.value(s, s) = 1.0;
    for (const Root & a : data.roots)
      if (a.imaginary)
        T.coeffs.value(data.roots[static_cast<size_t>(a.negative)].basisIndex, a.basisIndex) = 1.0;
    return T;
  }

  DynTensor varpi_x(const RealFormData & data, size_t rank)
  {
    DynTensor T(data, rank);
    for (int s = 0; s < data.r; ++s)
      T.coeffs.value(s, s) = 1.0;
    return T;
  }

  DynTensor varpi_lambda(const RealFormData & data, int lambdaIndex, size_t rank)
  {
    DynTensor T(data, rank);
    for (int k : data.restrictedRoots[static_cast<size_t>(lambdaIndex)].roots) {
      const Root & a = data.roots[static_cast<size_t>(k)];
      T.coeffs.value(data.roots[static_cast<size_t>(a.negative)].basisIndex, a.basisIndex) = 1.0;
    }
    return T;
  }

  DynTensor upsilon_lambda(const RealFormData & data, int lambdaIndex, size_t rank)
  {
    DynTensor T(data, rank);
    T.legs = {Leg::K, Leg::K};
    for (int k : data.restrictedRoots[static_cast<size_t>(lambdaIndex)].roots) {
      const Root & a = data.roots[static_cast<size_t>(k)];
      const CVector ym = data.coords(data.yAlpha[static_cast<size_t>(a.negative)]);
      const CVector yp = data.coords(data.yAlpha[static_cast<size_t>(k)]);
      T.coeffs.value += ym * yp.transpose();
    }
    return T;
  }

  InvariantTensors invariant_tensors(const RealFormData & data, const Weight & lambda, size_t rank)
  {
    const int idx = data.restricted_index(lambda);
    if (idx < 0)
      throw KzbError("not-restricted-root", weight_label(lambda));
    InvariantTensors out{varpi_lambda(data, idx, rank), UgElement2(), upsilon_lambda(data, idx, rank), UgElement2()};
    out.OmegaLambda = mu(data, out.varpiLambda);
    out.UpsilonLambda = mu(data, out.upsilonLambda);
    return out;
  }

  UgElement2 casimir(const RealFormData & data, size_t rank) { return mu(data, varpi(data, rank)); }
  UgElement2 casimir_m(const RealFormData & data, size_t rank) { return mu(data, varpi_m(data, rank)); }

  UgElement2 casimir_prime(const RealFormData & data, size_t rank)
  {
    DynTensor T = varpi_x(data, rank);
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l)
      T += varpi_lambda(data, static_cast<int>(l), rank);
    return mu(data, T);
  }

  //------------------------------------------------------------------------------
  // r-matrices
  //------------------------------------------------------------------------------

  DynTensor build_r(const RealFormData & data, const BasePoint & a)
  {
    const size_t rk = rank_of(data);
    DynTensor T = cd(-0.5) * (varpi_m(data, rk) + varpi_x(data, rk));
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const auto & rr = data.restrictedRoots[l];
      T -= inv_one_minus_xi(data, scale_weight(rr.lambda, -2), a) * varpi_lambda(data, static_cast<int>(l), rk);
    }
    return T;
  }

  std::pair<DynTensor, DynTensor> build_r_pm(const RealFormData & data, const BasePoint & a)
  {
    const size_t rk = rank_of(data);
    const CMatrix Pk = pr_k_matrix(data), Pp = pr_p_matrix(data);
    DynTensor rp = cd(-1.0) * varpi_m(data, rk);
    DynTensor rm = varpi_x(data, rk);
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const auto & rr = data.restrictedRoots[l];
      const Jet1 f = cd(2.0) * inv_one_minus_xi(data, scale_weight(rr.lambda, -2), a);
      const DynTensor w = varpi_lambda(data, static_cast<int>(l), rk);
      rp -= f * w.left(Pk);
      rm += f * w.left(Pp);
    }
    rp.legs = {Leg::K, Leg::G};
    rm.legs = {Leg::P, Leg::G};
    return {rp, rm};
  }

  UgElement2 quarter_coth_z(const RealFormData & data, const BasePoint & a)
  {
    UgElement2 u(data, rank_of(data));
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const auto & rr = data.restrictedRoots[l];
      u += (cd(0.25) * coth_coeff(data, rr.lambda, a)) * UgElement2::linear(data, data.zLambda[l], rank_of(data));
    }
    return u;
  }

  UgElement2 quarter_coth_t(const RealFormData & data, const BasePoint & a)
  {
    UgElement2 u(data, rank_of(data));
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const auto & rr = data.restrictedRoots[l];
      u += (cd(0.25 * rr.mtp) * coth_coeff(data, rr.lambda, a)) * UgElement2::linear(data, data.tLambda[l], rank_of(data));
    }
    return u;
  }

  Kappa build_kappa(const RealFormData & data, const BasePoint & a, Perturbation control)
  {
    const size_t rk = rank_of(data);
    const auto [rp, rm] = build_r_pm(data, a);
    const DynTensor r = build_r(data, a);
    const UgElement2 qz = quarter_coth_z(data, a);
    const UgElement2 qt = quarter_coth_t(data, a);

    Kappa k;
    k.core = cd(0.5) * casimir(data, rk) + mu(data, rp.swapped());

    k.coreAlt = qz - cd(0.5) * casimir_m(data, rk) + cd(0.5) * mu(data, varpi_x(data, rk)) + qt;
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const auto & rr = data.restrictedRoots[l];
      const DynTensor w = varpi_lambda(data, static_cast<int>(l), rk).right(data.theta);
      k.coreAlt -= inv_one_minus_xi(data, scale_weight(rr.lambda, 2), a) * mu(data, w);
    }

    k.coreFold = mu(data, r.swapped().right(data.theta)) + qz + qt;

    k.coreHat = k.core - qt;
    if (control == Perturbation::Z)
      k.coreHat -= cd(2.0) * qz;
    if (control == Perturbation::T)
      k.coreHat += cd(2.0) * qt;

    k.left = cd(-1.0) * rp;
    k.left.legs = {Leg::K, Leg::G};

    k.right = DynTensor(data, rk);
    k.right.legs = {Leg::G, Leg::K};
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const auto & rr = data.restrictedRoots[l];
      const Jet1 f = (xi(data, scale_weight(rr.lambda, -1), a) - xi(data, rr.lambda, a)).inverse();
      DynTensor w(data, rk);
      for (int idx : rr.roots) {
        const Root & al = data.roots[static_cast<size_t>(idx)];
        const int neg = data.roots[static_cast<size_t>(al.negative)].basisIndex;
        w.coeffs.value.row(neg) += data.coords(data.yAlpha[static_cast<size_t>(idx)]).transpose();
      }
      k.right += f * w;
    }
    return k;
  }

  //------------------------------------------------------------------------------
  // Enveloping algebra identities
  //------------------------------------------------------------------------------

  double check_casimir_factorisation(const RealFormData & data, const BasePoint & a, Perturbation control)
  {
    const size_t rk = rank_of(data);
    UgElement2 rhs = mu(data, varpi_x(data, rk));
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const auto & rr = data.restrictedRoots[l];
      const Jet1 c = coth_coeff(data, rr.lambda, a);
      if (control != Perturbation::Z)
        rhs += (cd(0.5) * c) * UgElement2::linear(data, data.zLambda[l], rk);
      if (control != Perturbation::T)
        rhs += (cd(0.5 * rr.mtp) * c) * UgElement2::linear(data, data.tLambda[l], rk);
      rhs += (cd(2.0) * inv_one_minus_xi(data, scale_weight(rr.lambda, 2), a)) *
             mu(data, varpi_lambda(data, static_cast<int>(l), rk));
    }
    return (rhs - casimir_prime(data, rk)).max_abs();
  }

  double check_radial_casimir_identity(const RealFormData & data, const BasePoint & a, Perturbation control)
  {
    const size_t rk = rank_of(data);
    UgElement2 rhs = mu(data, varpi_x(data, rk));
    CMatrix gradeInv = CMatrix::Zero(data.dim(), data.dim());
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const auto & rr = data.restrictedRoots[l];
      const Jet1 xp = xi(data, rr.lambda, a), xm = xi(data, scale_weight(rr.lambda, -1), a);
      const Jet1 den = (xp - xm).inverse();
      const Jet1 coth = (xp + xm) * den;
      if (control != Perturbation::T)
        rhs += (cd(0.5 * rr.mtp) * coth) * UgElement2::linear(data, data.tLambda[l], rk);
      if (control != Perturbation::Z)
        rhs -= (cd(0.5) * coth) * UgElement2::linear(data, data.zLambda[l], rk);

      const DynTensor ups = upsilon_lambda(data, static_cast<int>(l), rk);
      // (Ad_{a^{-1}} (x) Id) through the grading of the first leg
      DynTensor graded(data, rk);
      for (int s = 0; s < data.dim(); ++s) {
        const Jet1 g = xi(data, scale_weight(data.basisWeight[static_cast<size_t>(s)], -1), a);
        for (int t = 0; t < data.dim(); ++t) {
          const cd v = ups.coeffs.value(s, t);
          if (v != cd(0.0, 0.0))
            graded.coeffs.add_entry(s, t, v * g);
        }
      }
      const UgElement2 Ups = mu(data, ups);
      const UgElement2 bracket = (xp + xm) * mu(data, graded) - Ups.ad_inverse_grading(a) - Ups;
      rhs += (den * den) * bracket;
    }
    return (rhs - casimir_prime(data, rk)).max_abs();
  }

  double check_bracket_cancellation(const RealFormData & data, const BasePoint & a)
  {
    const size_t rk = rank_of(data);
    JetMatrix total(data.dim(), 1, rk);
    for (const auto & rr : data.restrictedRoots) {
      const Jet1 xp = xi(data, rr.lambda, a), xm = xi(data, scale_weight(rr.lambda, -1), a);
      const Jet1 den = (xp - xm).inverse();
      const Jet1 pre = xm * den * den;
      for (int idx : rr.roots) {
        const Root & al = data.roots[static_cast<size_t>(idx)];
        const CMatrix & e = data.basis[static_cast<size_t>(al.basisIndex)];
        const CMatrix & em = data.basis[static_cast<size_t>(data.roots[static_cast<size_t>(al.negative)].basisIndex)];
        const CVector b1 = data.coords(commutator(data.theta_of(e), em));
        const CVector b2 = data.coords(commutator(e, data.theta_of(em)));
        total.add_scaled(pre * xp, b1);
        total.add_scaled(pre * xm, b2);
      }
    }
    return max_abs(total);
  }

  double check_symmetric_tensor(const RealFormData & data, int lambdaIndex)
  {
    CMatrix T = CMatrix::Zero(data.dim(), data.dim());
    for (int idx : data.restrictedRoots[static_cast<size_t>(lambdaIndex)].roots) {
      const Root & al = data.roots[static_cast<size_t>(idx)];
      const CMatrix & em = data.basis[static_cast<size_t>(data.roots[static_cast<size_t>(al.negative)].basisIndex)];
      T.row(al.basisIndex) += data.coords(data.theta_of(em)).transpose();
    }
    return max_abs(T - T.transpose());
  }

} // namespace kzb
