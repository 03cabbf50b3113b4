#include "kzb/dynamical.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace kzb
{

  Weight scale_weight(const Weight & w, int s)
  {
    Weight out = w;
    for (int & c : out)
      c *= s;
    return out;
  }

  Jet1 xi(const RealFormData & data, const std::vector<double> & lambda, const BasePoint & a)
  {
    const size_t r = static_cast<size_t>(data.r);
    if (lambda.size() != r || a.coords.size() != r)
      throw KzbError("shape", "weight or point of wrong rank");
    double e = 0.0;
    for (size_t j = 0; j < r; ++j)
      e += lambda[j] * data.fScale * a.coords[j];
    const double v = std::exp(e);
    std::vector<cd> g(r);
    for (size_t j = 0; j < r; ++j)
      g[j] = lambda[j] * data.fScale * v;
    return Jet1(v, g);
  }

  Jet1 xi(const RealFormData & data, const Weight & lambda, const BasePoint & a)
  {
    return xi(data, std::vector<double>(lambda.begin(), lambda.end()), a);
  }

  bool is_regular(const RealFormData & data, const BasePoint & a)
  {
    for (const RestrictedRoot & rr : data.restrictedRoots)
      if (std::abs(xi(data, scale_weight(rr.lambda, 2), a).value() - 1.0) < a.margin)
        return false;
    return true;
  }

  Jet1 inv_one_minus_xi(const RealFormData & data, const Weight & mu, const BasePoint & a)
  {
    const Jet1 den = 1.0 - xi(data, mu, a);
    if (std::abs(den.value()) < a.margin)
      throw KzbError("near-singular", "1 - xi within the margin");
    return den.inverse();
  }

  Jet1 coth_coeff(const RealFormData & data, const Weight & lambda, const BasePoint & a)
  {
    const Weight two = scale_weight(lambda, 2);
    const Jet1 x2 = xi(data, two, a);
    return (1.0 + x2) * inv_one_minus_xi(data, two, a);
  }

  Jet1 gauge_shift(const RealFormData & data, const std::vector<double> & h, const BasePoint & a)
  {
    Jet1 s = Jet1::constant(0.0, static_cast<size_t>(data.r));
    for (const RestrictedRoot & rr : data.restrictedRoots) {
      double lh = 0.0;
      for (int j = 0; j < data.r; ++j)
        lh += data.lambda_on_x(rr.lambda, j) * h[static_cast<size_t>(j)];
      if (lh == 0.0)
        continue;
      s += (0.25 * lh * rr.mtp) * coth_coeff(data, rr.lambda, a);
    }
    return s;
  }

  Jet1 dlog_delta(const RealFormData & data, int j, const BasePoint & a)
  {
    Jet1 s = Jet1::constant(data.rho[static_cast<size_t>(j)] * data.fScale, static_cast<size_t>(data.r));
    for (const RestrictedRoot & rr : data.restrictedRoots) {
      if (!rr.positive)
        continue;
      const Weight m2 = scale_weight(rr.lambda, -2);
      const Jet1 q = xi(data, m2, a) * inv_one_minus_xi(data, m2, a);
      s += (rr.mtp * data.lambda_on_x(rr.lambda, j)) * q;
    }
    return s;
  }

  double delta(const RealFormData & data, const BasePoint & a)
  {
    double v = xi(data, data.rho, a).value().real();
    for (const RestrictedRoot & rr : data.restrictedRoots)
      if (rr.positive)
        v *= std::pow(1.0 - xi(data, scale_weight(rr.lambda, -2), a).value().real(), 0.5 * rr.mtp);
    return v;
  }

  std::vector<BasePoint> sample_points(const RealFormData & data, std::uint64_t seed, int count,
                                       bool positiveChamber, double margin)
  {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<BasePoint> pts;
    while (static_cast<int>(pts.size()) < count) {
      BasePoint a;
      a.margin = margin;
      for (int j = 0; j < data.r; ++j)
        a.coords.push_back(0.3 + 1.2 * uniform());
      if (positiveChamber)
        std::sort(a.coords.begin(), a.coords.end(), std::greater<double>());
      if (is_regular(data, a))
        pts.push_back(a);
    }
    return pts;
  }

} // namespace kzb
