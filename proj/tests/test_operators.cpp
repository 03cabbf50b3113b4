#include "kzb/suite.hpp"

#include <doctest.h>

using namespace kzb;

namespace
{
  KzbSpace space(const RealFormData & data, const std::string & l, std::vector<std::string> taus, const std::string & r)
  {
    return make_space(data, Menu{l, std::move(taus), r});
  }

  double rel_diff(const JetMatrix & A, const JetMatrix & B) { return max_abs(A - B) / (1.0 + max_abs(A)); }
} // namespace

TEST_CASE("tensor space layout")
{
  const RealFormData data = build_real_form(2, 1);
  const KzbSpace S = space(data, "def", {"adj", "def"}, "triv");
  CHECK(S.n() == 2);
  CHECK(S.legs() == 4);
  CHECK(S.dim() == 3 * 8 * 3 * 1);
  // embedding in permuted leg order agrees with the Kronecker product
  const CMatrix A = data.basis[3], B = adjoint_rep(data).act[4];
  const CMatrix AB = kron(A, B);
  const CMatrix BA = kron(B, A);
  CHECK(max_abs(S.embed({0, 1}, AB) - S.embed({1, 0}, BA)) < 1e-15);
  CHECK(max_abs(S.embed({0, 1}, AB) - S.embed_factors({{0, A}, {1, B}})) < 1e-15);
  CHECK(max_abs(S.embed({2}, identity(3)) - identity(S.dim())) == 0.0);
}

TEST_CASE("oracle pair on the full tensor space")
{
  const RealFormData data = build_real_form(2, 1);
  for (const auto & taus : std::vector<std::vector<std::string>>{{"def"}, {"def", "dual"}, {"dual", "def", "def"}}) {
    const KzbSpace S = space(data, "def", taus, "def");
    for (const auto & a : sample_points(data, 11, 2))
      for (int i = 1; i <= S.n(); ++i) {
        CAPTURE(i);
        CHECK(rel_diff(build_D(S, a, i).zeroth, build_D_oracle(S, a, i).zeroth) <= 1e-9);
      }
  }
}

TEST_CASE("index checks")
{
  const RealFormData data = build_real_form(2, 1);
  const KzbSpace S = space(data, "def", {"def", "dual"}, "def");
  const BasePoint a{{0.8}};
  for (int i : {0, 3}) {
    try {
      build_D(S, a, i);
      FAIL("expected an error");
    } catch (const KzbError & e) {
      CHECK(e.code() == "index-out-of-range");
    }
  }
  const PointTensors P = point_tensors(data, a);
  CHECK_THROWS_AS(reflection_and_myb(S, P, 2, 1, Core::Plain), KzbError);
}

TEST_CASE("gauge and commutators on su(2,1)")
{
  const RealFormData data = build_real_form(2, 1);
  const KzbSpace S = space(data, "def", {"def", "dual"}, "def");
  const InvariantSubspace & inv = S.invariants();
  REQUIRE(inv.dim() > 0);
  for (const auto & a : sample_points(data, 3, 2)) {
    const PointTensors P = point_tensors(data, a);
    const FirstOrderOp D1 = build_D(S, P, 1), D2 = build_D(S, P, 2);
    const FirstOrderOp H1 = build_D(S, P, 1, Core::Hat), H2 = build_D(S, P, 2, Core::Hat);
    CHECK(rel_diff(gauge_first_order(data, D1, a).zeroth, H1.zeroth) <= 1e-11);
    CHECK(rel_diff(gauge_first_order(data, D2, a).zeroth, H2.zeroth) <= 1e-11);

    for (const Core core : {Core::Plain, Core::Hat}) {
      const FirstOrderOp & A = core == Core::Hat ? H1 : D1;
      const FirstOrderOp & B = core == Core::Hat ? H2 : D2;
      const CommutatorValue C = commutator_first_order(A, B);
      for (const auto & M : C.second)
        CHECK(max_abs(M) <= 1e-11);
      for (const auto & M : C.first)
        CHECK(max_abs(M) <= 1e-11);
      const ReflectionTerms T = reflection_and_myb(S, P, 1, 2, core);
      CHECK(T.myb1.empty());
      CHECK(T.myb2.empty());
      CHECK(T.myb3.empty());
      CHECK(max_abs(C.zeroth - T.total()) <= 1e-9);
      CHECK(restricted_norm(T.A, inv) <= 1e-9);
      // the full-space commutator does not vanish
      CHECK(max_abs(C.zeroth) > 1e-3);
    }
  }
}

TEST_CASE("m-equivariance of the operators")
{
  const RealFormData data = build_real_form(3, 1);
  const KzbSpace S = space(data, "def", {"def", "dual"}, "def");
  const BasePoint a{{0.6}};
  const FirstOrderOp D = build_D(S, a, 2);
  const SecondOrderOp H = build_H(S, a);
  for (const auto & M : S.m_action()) {
    CHECK(max_abs(commutator(M, D.zeroth.value)) < 1e-12);
    CHECK(max_abs(commutator(M, H.zeroth.value)) < 1e-12);
  }
}

TEST_CASE("Schroedinger operator")
{
  const RealFormData data = build_real_form(2, 2);
  const KzbSpace S = space(data, "def", {"def", "dual"}, "triv");
  for (const auto & a : sample_points(data, 8, 2)) {
    const SecondOrderOp G = gauge_second_order(data, build_H(S, a), a);
    const SecondOrderOp Ht = build_H_tilde(S, a);
    CHECK(rel_diff(G.zeroth, Ht.zeroth) <= 1e-9);
    for (size_t j = 0; j < G.first.size(); ++j)
      CHECK(max_abs(G.first[j]) <= 1e-12);
  }
  for (const auto & a : sample_points(data, 8, 2, true))
    CHECK(delta_conjugation_error(S, a, {0.3, -0.2}) <= 1e-9);
}

TEST_CASE("gauge shift derivative against finite differences")
{
  const RealFormData data = build_real_form(3, 2);
  const BasePoint a{{0.9, 0.5}};
  for (int j = 0; j < 2; ++j) {
    std::vector<double> h(2, 0.0);
    h[static_cast<size_t>(j)] = 1.0;
    BasePoint up = a, down = a;
    up.coords[static_cast<size_t>(j)] += 1e-5;
    down.coords[static_cast<size_t>(j)] -= 1e-5;
    const cd fd = (gauge_shift(data, h, up).value() - gauge_shift(data, h, down).value()) / 2e-5;
    CHECK(std::abs(gauge_shift_derivative(data, j, a).value() - fd) < 1e-8);
  }
}

TEST_CASE("scalar potential of su(2,1)")
{
  const RealFormData data = build_real_form(2, 1);
  // k(f1) = 1/6 and k(2 f1) = -1/6 through (t_lambda, t_lambda) = lambda(x_1)^2
  for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
    const auto & rr = data.restrictedRoots[l];
    const double expected = std::abs(rr.lambda[0]) == 1 ? 1.0 / 6.0 : -1.0 / 6.0;
    CHECK(std::abs(potential_k(data, static_cast<int>(l)) - expected) < 1e-12);
    CHECK(std::abs(t_lambda_norm_sq_by_solve(data, static_cast<int>(l)) -
                   std::pow(rr.lambda[0] * data.fScale, 2)) < 1e-14);
  }
  const KzbSpace S = space(data, "triv", {}, "triv");
  REQUIRE(S.dim() == 1);
  for (double t : {0.4, 1.3, 2.9}) {
    const double u = data.fScale * t;
    const double v = -2.0 * ((1.0 / 6.0) / std::pow(2.0 * std::sinh(u), 2) - (1.0 / 6.0) / std::pow(2.0 * std::sinh(2.0 * u), 2));
    CHECK(std::abs(build_potential(S, BasePoint{{t}}).value(0, 0) - v) < 1e-12);
  }
}

TEST_CASE("commutator with the Schroedinger operator on invariants")
{
  const RealFormData data = build_real_form(2, 1);
  const KzbSpace S = space(data, "def", {"def", "dual"}, "def");
  const BasePoint a{{0.7}};
  const SecondOrderOp Ht = build_H_tilde(S, a);
  for (int i = 1; i <= 2; ++i) {
    auto builder = [&](const BasePoint & b) { return build_D(S, point_tensors(data, b), i, Core::Hat); };
    const CommutatorValue C = commutator_with_second_order(builder, Ht, a);
    double err = restricted_norm(C.zeroth, S.invariants());
    for (const auto & M : C.first)
      err = std::max(err, restricted_norm(M, S.invariants()));
    CHECK(err <= 1e-8);
  }
}
