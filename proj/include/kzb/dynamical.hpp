#ifndef KZB_DYNAMICAL_HPP
#define KZB_DYNAMICAL_HPP

#include "kzb/jet.hpp"
#include "kzb/real_form.hpp"

#include <cstdint>
#include <vector>

namespace kzb
{

  /// Point a = exp(sum_j coords[j] x_j) of the flat torus
  struct BasePoint
  {
    std::vector<double> coords;
    double margin = 0.05;
  };

  /// |xi_{2 lambda}(a) - 1| >= margin for every restricted root
  bool is_regular(const RealFormData & data, const BasePoint & a);

  /// Multiplicative character xi_lambda with exact gradient
  Jet1 xi(const RealFormData & data, const Weight & lambda, const BasePoint & a);
  Jet1 xi(const RealFormData & data, const std::vector<double> & lambda, const BasePoint & a);

  /// (1 + xi_{2 lambda}) / (1 - xi_{2 lambda}); throws "near-singular" inside the margin
  Jet1 coth_coeff(const RealFormData & data, const Weight & lambda, const BasePoint & a);

  /// 1 / (1 - xi_mu); throws "near-singular" inside the margin
  Jet1 inv_one_minus_xi(const RealFormData & data, const Weight & mu, const BasePoint & a);

  /// (1/4) sum_{lambda in Sigma} lambda(h) mtp(lambda) coth_coeff(lambda), h given over the x-basis
  Jet1 gauge_shift(const RealFormData & data, const std::vector<double> & h, const BasePoint & a);

  /// d/dx_j log delta, with delta(a) = a^rho prod_{Sigma+} (1 - a^{-2 lambda})^{mtp/2}
  Jet1 dlog_delta(const RealFormData & data, int j, const BasePoint & a);

  /// delta(a) on the positive chamber
  double delta(const RealFormData & data, const BasePoint & a);

  /// Seeded regular points with coords uniform in [0.3, 1.5]; positive chamber points
  /// are obtained by sorting the coordinates in decreasing order
  std::vector<BasePoint> sample_points(const RealFormData & data, std::uint64_t seed, int count,
                                       bool positiveChamber = false, double margin = 0.05);

  Weight scale_weight(const Weight & w, int s);

} // namespace kzb

#endif
