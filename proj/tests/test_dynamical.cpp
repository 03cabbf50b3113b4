#include "kzb/dynamical.hpp"

#include <doctest.h>

using namespace kzb;

namespace
{
  BasePoint shifted(BasePoint a, int j, double h)
  {
    a.coords[static_cast<size_t>(j)] += h;
    return a;
  }

  template <class F>
  double central_difference(F f, const BasePoint & a, int j, double h = 1e-5)
  {
    return (f(shifted(a, j, h)) - f(shifted(a, j, -h))) / (2.0 * h);
  }
} // namespace

TEST_CASE("xi gradients against finite differences")
{
  const RealFormData data = build_real_form(3, 2);
  const BasePoint a{{0.7, 0.4}};
  const Weight w{1, -2};
  const Jet1 x = xi(data, w, a);
  CHECK(std::abs(x.value() - std::exp(data.fScale * (0.7 - 0.8))) < 1e-15);
  for (int j = 0; j < 2; ++j) {
    const double fd = central_difference([&](const BasePoint & b) { return xi(data, w, b).value().real(); }, a, j);
    CHECK(std::abs(x.grad(static_cast<size_t>(j)) - fd) < 1e-9);
  }
}

TEST_CASE("gauge shift is minus the logarithmic derivative of delta")
{
  for (auto [p, r] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {2, 2}}) {
    const RealFormData data = build_real_form(p, r);
    for (const BasePoint & a : sample_points(data, 7, 3, true)) {
      for (int j = 0; j < data.r; ++j) {
        std::vector<double> h(static_cast<size_t>(data.r), 0.0);
        h[static_cast<size_t>(j)] = 1.0;
        const double fd =
            central_difference([&](const BasePoint & b) { return std::log(delta(data, b)); }, a, j, 1e-6);
        CHECK(std::abs(dlog_delta(data, j, a).value() - fd) < 1e-8);
        CHECK(std::abs(gauge_shift(data, h, a).value() + dlog_delta(data, j, a).value()) < 1e-13);
      }
    }
  }
}

TEST_CASE("coth coefficient")
{
  const RealFormData data = build_real_form(2, 1);
  const BasePoint a{{0.9}};
  const double u = 2.0 * data.fScale * 0.9;
  CHECK(std::abs(coth_coeff(data, Weight{1}, a).value() + 1.0 / std::tanh(u / 2.0)) < 1e-14);
  const BasePoint wall{{0.0}};
  CHECK_FALSE(is_regular(data, wall));
  CHECK_THROWS_AS(coth_coeff(data, Weight{1}, wall), KzbError);
}

TEST_CASE("sampled points are seeded and regular")
{
  const RealFormData data = build_real_form(3, 2);
  const auto a = sample_points(data, 42, 5);
  const auto b = sample_points(data, 42, 5);
  REQUIRE(a.size() == 5);
  for (size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].coords == b[k].coords);
    CHECK(is_regular(data, a[k]));
  }
  CHECK(sample_points(data, 43, 1)[0].coords != a[0].coords);
  for (const auto & c : sample_points(data, 42, 5, true))
    CHECK(c.coords[0] >= c.coords[1]);
}
