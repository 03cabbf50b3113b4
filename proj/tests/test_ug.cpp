#include "kzb/reps.hpp"
#include "kzb/tensors.hpp"
#include "kzb/ug.hpp"

#include <doctest.h>

using namespace kzb;

TEST_CASE("PBW products evaluate to matrix products")
{
  const RealFormData data = build_real_form(2, 1);
  const Rep def = defining_rep(data);
  const size_t rk = 1;
  for (int a = 0; a < data.dim(); ++a)
    for (int b = 0; b < data.dim(); ++b) {
      UgElement2 u = multiply(UgElement2::generator(data, a, rk), UgElement2::generator(data, b, rk));
      const CMatrix expected = def.act[static_cast<size_t>(a)] * def.act[static_cast<size_t>(b)];
      CHECK(max_abs(u.evaluate(def.act).value - expected) < 1e-14);
      u.normalize();
      CHECK(max_abs(u.evaluate(def.act).value - expected) < 1e-14);
      CHECK(u.degree() == 2);
    }
}

TEST_CASE("PBW product beyond degree two")
{
  const RealFormData data = build_real_form(2, 1);
  const UgElement2 u = multiply(UgElement2::generator(data, 0, 1), UgElement2::generator(data, 1, 1));
  try {
    multiply(u, UgElement2::generator(data, 2, 1));
    FAIL("expected an error");
  } catch (const KzbError & e) {
    CHECK(e.code() == "degree>2");
  }
}

TEST_CASE("Casimir scalars")
{
  for (auto [p, r] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    const RealFormData data = build_real_form(p, r);
    const int N = p + r;
    const UgElement2 C = casimir(data, static_cast<size_t>(r));
    // defining rep: the trace is dim g / (2N), spread evenly
    const CMatrix def = C.evaluate(defining_rep(data).act).value;
    CHECK(std::abs(def.trace() - double(N * N - 1) / (2.0 * N)) < 1e-13);
    CHECK(max_abs(def - def.trace() / double(N) * identity(N)) < 1e-13);
    // adjoint rep: Killing normalization gives 1
    const CMatrix adj = C.evaluate(adjoint_rep(data).act).value;
    CHECK(max_abs(adj - identity(data.dim())) < 1e-12);
  }
}

TEST_CASE("su(2,1) defining Casimir is trace over three")
{
  const RealFormData data = build_real_form(2, 1);
  const CMatrix C = casimir(data, 1).evaluate(defining_rep(data).act).value;
  CHECK(std::abs(C(0, 0) - C.trace() / 3.0) < 1e-15);
  CHECK(std::abs(C(0, 0) - 4.0 / 9.0) < 1e-14);
}

TEST_CASE("Casimir of m is central in m")
{
  const RealFormData data = build_real_form(3, 2);
  const UgElement2 Cm = casimir_m(data, 2);
  const Rep def = defining_rep(data);
  const CMatrix M = Cm.evaluate(def.act).value;
  for (const auto & m : data.mBasis)
    CHECK(max_abs(commutator(M, rep_apply(data, def, m))) < 1e-13);
}

TEST_CASE("grading by Ad of the inverse torus element")
{
  const RealFormData data = build_real_form(2, 1);
  const BasePoint a{{0.8}};
  const Rep def = defining_rep(data);
  const CMatrix ainv = CMatrix((-0.8 * data.basis[0].diagonal()).array().exp().matrix().asDiagonal());
  const CMatrix aa = CMatrix((0.8 * data.basis[0].diagonal()).array().exp().matrix().asDiagonal());
  for (int b = 0; b < data.dim(); ++b) {
    const UgElement2 g = UgElement2::generator(data, b, 1).ad_inverse_grading(a);
    CHECK(max_abs(g.evaluate(def.act).value - ainv * data.basis[static_cast<size_t>(b)] * aa) < 1e-14);
  }
}
