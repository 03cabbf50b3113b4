#include "kzb/real_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kzb
{

  namespace
  {
    CMatrix unit(int n, int i, int j)
    {
      CMatrix E = CMatrix::Zero(n, n);
      E(i, j) = 1.0;
      return E;
    }

    Weight index_weight(int i, int p, int r, int n)
    {
      Weight v(static_cast<size_t>(r), 0);
      if (i < r)
        v[static_cast<size_t>(i)] = 1;
      else if (i >= p)
        v[static_cast<size_t>(n - 1 - i)] = -1;
      return v;
    }

    bool is_positive(const Weight & w)
    {
      for (int c : w)
        if (c != 0)
          return c > 0;
      return false;
    }

    Weight negate(Weight w)
    {
      for (int & c : w)
        c = -c;
      return w;
    }
  } // namespace

  cd killing_form(const CMatrix & X, const CMatrix & Y)
  {
    if (X.rows() != X.cols() || Y.rows() != Y.cols() || X.rows() != Y.rows())
      throw KzbError("shape", "killing_form");
    return 2.0 * static_cast<double>(X.rows()) * (X * Y).trace();
  }

  std::string weight_label(const Weight & lambda)
  {
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < lambda.size(); ++k) {
      const int c = lambda[k];
      if (c == 0)
        continue;
      if (c < 0)
        os << "-";
      else if (!first)
        os << "+";
      if (std::abs(c) != 1)
        os << std::abs(c);
      os << "f" << (k + 1);
      first = false;
    }
    return first ? std::string("0") : os.str();
  }

  CVector RealFormData::coords(const CMatrix & X) const
  {
    CVector c = CVector::Zero(dim());
    const double twoN = 2.0 * n;
    for (int s = 0; s < nCartan; ++s) {
      cd acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += X(k, k) * basis[static_cast<size_t>(s)](k, k);
      c(s) = twoN * acc;
    }
    const double sq = std::sqrt(twoN);
    for (const Root & a : roots)
      c(a.basisIndex) = sq * X(a.i, a.j);
    return c;
  }

  CMatrix RealFormData::from_coords(const CVector & c) const
  {
    CMatrix X = CMatrix::Zero(n, n);
    for (int a = 0; a < dim(); ++a)
      if (c(a) != cd(0.0, 0.0))
        X += c(a) * basis[static_cast<size_t>(a)];
    return X;
  }

  int RealFormData::dual_index(int a) const
  {
    if (a < nCartan)
      return a;
    const Root & rt = roots[static_cast<size_t>(a - nCartan)];
    return roots[static_cast<size_t>(rt.negative)].basisIndex;
  }

  int RealFormData::root_index(int i, int j) const
  {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
      return -1;
    // lexicographic order over ordered pairs with i != j
    return i * (n - 1) + (j < i ? j : j - 1);
  }

  int RealFormData::restricted_index(const Weight & lambda) const
  {
    for (size_t k = 0; k < restrictedRoots.size(); ++k)
      if (restrictedRoots[k].lambda == lambda)
        return static_cast<int>(k);
    return -1;
  }

  std::vector<CMatrix> normalize_root_vectors(const RealFormData & data)
  {
    std::vector<CMatrix> e;
    const double s = 1.0 / std::sqrt(2.0 * data.n);
    for (const Root & a : data.roots)
      e.push_back(s * unit(data.n, a.i, a.j));
    return e;
  }

  std::vector<cd> theta_coefficients(const RealFormData & data)
  {
    std::vector<cd> c;
    for (const Root & a : data.roots) {
      const CMatrix & e = data.basis[static_cast<size_t>(a.basisIndex)];
      const Root & b = data.roots[static_cast<size_t>(a.thetaRoot)];
      const CMatrix & eb = data.basis[static_cast<size_t>(b.basisIndex)];
      const CMatrix te = data.theta_of(e);
      const cd coeff = te(b.i, b.j) / eb(b.i, b.j);
      if (max_abs(te - coeff * eb) > 1e-13 || std::abs(coeff) < 1e-13)
        throw KzbError("realization-bug", "theta(e_alpha) not proportional to e_{theta alpha}");
      c.push_back(coeff);
    }
    return c;
  }

  CMatrix sum_h_alpha(const RealFormData & data, int lambdaIndex)
  {
    CMatrix S = CMatrix::Zero(data.n, data.n);
    for (int k : data.restrictedRoots[static_cast<size_t>(lambdaIndex)].roots)
      S += data.hAlpha[static_cast<size_t>(k)];
    return S;
  }

  CMatrix k_center_element(const RealFormData & data)
  {
    const int n = data.n, p = data.p, r = data.r;
    const double a = 1.0 / (2.0 * p) - 1.0 / (2.0 * r);
    const double b = 1.0 / (2.0 * p) + 1.0 / (2.0 * r);
    CMatrix Z = CMatrix::Zero(n, n);
    for (int i = 0; i < r; ++i) {
      const int ip = n - 1 - i;
      Z += a * (unit(n, i, i) + unit(n, ip, ip));
      Z -= b * (unit(n, i, ip) + unit(n, ip, i));
    }
    for (int j = r; j < p; ++j)
      Z += (1.0 / p) * unit(n, j, j);
    return Z;
  }

  RealFormData build_real_form(int p, int r)
  {
    if (r < 1 || r > p || p + r < 3)
      throw KzbError("unsupported-signature", "need 1 <= r <= p and p + r >= 3");

    RealFormData d;
    d.p = p;
    d.r = r;
    d.n = p + r;
    const int n = d.n;
    d.fScale = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));

    d.J = CMatrix::Zero(n, n);
    for (int j = 0; j < r; ++j) {
      d.J(j, n - 1 - j) = -1.0;
      d.J(n - 1 - j, j) = -1.0;
    }
    for (int l = r; l < p; ++l)
      d.J(l, l) = 1.0;

    // Cartan part: x_j, then a K-orthonormal basis of t
    for (int j = 0; j < r; ++j) {
      CMatrix x = d.fScale * (unit(n, j, j) - unit(n, n - 1 - j, n - 1 - j));
      d.basis.push_back(x);
      d.aBasis.push_back(x);
    }
    std::vector<CMatrix> span;
    for (int i = 0; i < r; ++i)
      span.push_back(unit(n, i, i) + unit(n, n - 1 - i, n - 1 - i));
    for (int l = r; l < p; ++l)
      span.push_back(unit(n, l, l));
    const int ns = static_cast<int>(span.size());
    std::vector<CMatrix> ortho;
    std::vector<Eigen::VectorXd> coeffs;
    for (int k = 0; k < ns; ++k) {
      CMatrix v = span[static_cast<size_t>(k)] - (span[static_cast<size_t>(k)].trace() / static_cast<double>(n)) * identity(n);
      Eigen::VectorXd cv = Eigen::VectorXd::Zero(ns);
      cv(k) = 1.0;
      for (size_t m = 0; m < ortho.size(); ++m) {
        const double proj = killing_form(ortho[m], v).real();
        v -= proj * ortho[m];
        cv -= proj * coeffs[m];
      }
      const double nrm = killing_form(v, v).real();
      if (nrm < 1e-12)
        continue;
      ortho.push_back(v / std::sqrt(nrm));
      coeffs.push_back(cv / std::sqrt(nrm));
    }
    d.tTransform = CMatrix::Zero(static_cast<Eigen::Index>(ortho.size()), ns);
    for (size_t m = 0; m < ortho.size(); ++m) {
      d.basis.push_back(ortho[m]);
      d.tTransform.row(static_cast<Eigen::Index>(m)) = coeffs[m].cast<cd>().transpose();
    }
    d.nCartan = static_cast<int>(d.basis.size());
    for (int s = 0; s < d.nCartan; ++s)
      d.basisWeight.push_back(Weight(static_cast<size_t>(r), 0));

    // Roots in lexicographic (i,j) order
    const double scale = 1.0 / std::sqrt(2.0 * n);
    auto sigma = [n, r, p](int i) { return (i < r || i >= p) ? n - 1 - i : i; };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j)
          continue;
        Root a;
        a.i = i;
        a.j = j;
        a.basisIndex = static_cast<int>(d.basis.size());
        a.positive = i < j;
        Weight wi = index_weight(i, p, r, n), wj = index_weight(j, p, r, n);
        a.weight.resize(static_cast<size_t>(r));
        for (int k = 0; k < r; ++k)
          a.weight[static_cast<size_t>(k)] = wi[static_cast<size_t>(k)] - wj[static_cast<size_t>(k)];
        a.imaginary = std::all_of(a.weight.begin(), a.weight.end(), [](int c) { return c == 0; });
        d.roots.push_back(a);
        d.basis.push_back(scale * unit(n, i, j));
        d.basisWeight.push_back(a.weight);
        d.hAlpha.push_back((unit(n, i, i) - unit(n, j, j)) / (2.0 * n));
      }
    for (Root & a : d.roots) {
      a.negative = d.root_index(a.j, a.i);
      a.thetaRoot = d.root_index(sigma(a.i), sigma(a.j));
    }
    const std::vector<cd> c = theta_coefficients(d);
    for (size_t k = 0; k < d.roots.size(); ++k)
      d.roots[k].c = c[k];

    // Restricted roots, positives first in descending lexicographic order
    std::vector<Weight> pos;
    for (const Root & a : d.roots)
      if (!a.imaginary && is_positive(a.weight) && std::find(pos.begin(), pos.end(), a.weight) == pos.end())
        pos.push_back(a.weight);
    std::sort(pos.begin(), pos.end(), std::greater<Weight>());
    const int np = static_cast<int>(pos.size());
    for (const Weight & w : pos) {
      RestrictedRoot rr;
      rr.lambda = w;
      rr.positive = true;
      d.restrictedRoots.push_back(rr);
    }
    for (const Weight & w : pos) {
      RestrictedRoot rr;
      rr.lambda = negate(w);
      rr.positive = false;
      d.restrictedRoots.push_back(rr);
    }
    for (int k = 0; k < np; ++k) {
      d.restrictedRoots[static_cast<size_t>(k)].negative = k + np;
      d.restrictedRoots[static_cast<size_t>(k + np)].negative = k;
    }
    for (size_t k = 0; k < d.roots.size(); ++k) {
      Root & a = d.roots[k];
      if (a.imaginary)
        continue;
      a.restricted = d.restricted_index(a.weight);
      auto & rr = d.restrictedRoots[static_cast<size_t>(a.restricted)];
      rr.roots.push_back(static_cast<int>(k));
      rr.mtp += 1;
    }

    // y_alpha, t_lambda, z_lambda
    d.yAlpha.resize(d.roots.size());
    for (const Root & a : d.roots)
      if (!a.imaginary) {
        const CMatrix & e = d.basis[static_cast<size_t>(a.basisIndex)];
        d.yAlpha[static_cast<size_t>(&a - d.roots.data())] = e + d.theta_of(e);
      }
    for (const RestrictedRoot & rr : d.restrictedRoots) {
      CMatrix t = CMatrix::Zero(n, n);
      for (int j = 0; j < r; ++j)
        t += d.lambda_on_x(rr.lambda, j) * d.aBasis[static_cast<size_t>(j)];
      d.tLambda.push_back(t);
      CMatrix z = CMatrix::Zero(n, n);
      for (int k : rr.roots)
        z += d.pr_k(d.hAlpha[static_cast<size_t>(k)]);
      d.zLambda.push_back(z);
    }

    // m, q
    for (int s = r; s < d.nCartan; ++s)
      d.mIndices.push_back(s);
    for (const Root & a : d.roots)
      if (a.imaginary)
        d.mIndices.push_back(a.basisIndex);
    for (int idx : d.mIndices)
      d.mBasis.push_back(d.basis[static_cast<size_t>(idx)]);
    for (size_t k = 0; k < d.roots.size(); ++k)
      if (d.roots[k].positive && !d.roots[k].imaginary) {
        d.qRoots.push_back(static_cast<int>(k));
        d.qBasis.push_back(d.yAlpha[k]);
      }

    // Coordinate matrices of theta, ad and pr_k
    const int dim = d.dim();
    d.theta = CMatrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a)
      d.theta.col(a) = d.coords(d.theta_of(d.basis[static_cast<size_t>(a)]));
    for (int a = 0; a < dim; ++a) {
      CMatrix A(dim, dim);
      for (int b = 0; b < dim; ++b)
        A.col(b) = d.coords(commutator(d.basis[static_cast<size_t>(a)], d.basis[static_cast<size_t>(b)]));
      d.ad.push_back(A);
    }
    CMatrix Kc(dim, d.dim_k());
    int col = 0;
    for (const auto & m : d.mBasis)
      Kc.col(col++) = d.coords(m);
    for (const auto & q : d.qBasis)
      Kc.col(col++) = d.coords(q);
    CMatrix rhs(dim, dim);
    for (int a = 0; a < dim; ++a)
      rhs.col(a) = d.coords(d.pr_k(d.basis[static_cast<size_t>(a)]));
    d.kFromG = Kc.colPivHouseholderQr().solve(rhs);

    // rho and (t_rho, t_rho)
    d.rho.assign(static_cast<size_t>(r), 0.0);
    for (const RestrictedRoot & rr : d.restrictedRoots)
      if (rr.positive)
        for (int j = 0; j < r; ++j)
          d.rho[static_cast<size_t>(j)] += 0.5 * rr.mtp * rr.lambda[static_cast<size_t>(j)];
    d.tRhoNormSq = 0.0;
    for (double v : d.rho)
      d.tRhoNormSq += (v * d.fScale) * (v * d.fScale);
    return d;
  }

} // namespace kzb
