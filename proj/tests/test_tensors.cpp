#include "kzb/suite.hpp"

#include <doctest.h>

using namespace kzb;

namespace
{
  const std::vector<std::pair<int, int>> kSignatures{{2, 1}, {2, 2}, {3, 1}, {3, 2}};
}

TEST_CASE("r-matrix identities at seeded points")
{
  for (auto [p, r] : kSignatures) {
    CAPTURE(p);
    CAPTURE(r);
    const RealFormData data = build_real_form(p, r);
    for (const auto & a : sample_points(data, 42, 5)) {
      const RMatrixErrors e = rmatrix_errors(data, a);
      CHECK(e.quasiUnitarity <= 1e-11);
      CHECK(e.foldingPlus <= 1e-11);
      CHECK(e.foldingMinus <= 1e-11);
      CHECK(e.thetaSymmetry <= 1e-11);
      CHECK(e.mInvariance <= 1e-11);
      CHECK(e.symbolIdentity <= 1e-11);
    }
  }
}

TEST_CASE("Casimir tensor is invariant and splits over restricted roots")
{
  const RealFormData data = build_real_form(3, 2);
  CHECK(ad_invariance_error(data, varpi(data, 2)) < 1e-13);
  DynTensor sum = varpi_m(data, 2) + varpi_x(data, 2);
  for (size_t l = 0; l < data.restrictedRoots.size(); ++l)
    sum += varpi_lambda(data, static_cast<int>(l), 2);
  CHECK(max_abs((sum - varpi(data, 2)).coeffs) < 1e-13);
  for (size_t l = 0; l < data.restrictedRoots.size(); ++l)
    CHECK(check_symmetric_tensor(data, static_cast<int>(l)) < 1e-13);
}

TEST_CASE("invariant tensors reject non-roots")
{
  const RealFormData data = build_real_form(2, 2);
  try {
    invariant_tensors(data, Weight{1, 0}, 2);
    FAIL("f1 is not a restricted root of su(2,2)");
  } catch (const KzbError & e) {
    CHECK(e.code() == "not-restricted-root");
  }
  CHECK_NOTHROW(invariant_tensors(data, Weight{1, 1}, 2));
}

TEST_CASE("dynamical Casimir and the explicit radial identity")
{
  for (auto [p, r] : kSignatures) {
    CAPTURE(p);
    CAPTURE(r);
    const RealFormData data = build_real_form(p, r);
    for (const auto & a : sample_points(data, 5, 2)) {
      CHECK(check_casimir_factorisation(data, a) <= 1e-9);
      CHECK(check_radial_casimir_identity(data, a) <= 1e-9);
      CHECK(check_bracket_cancellation(data, a) <= 1e-9);
      const Kappa k = build_kappa(data, a);
      CHECK((k.core - k.coreAlt).max_abs() <= 1e-9);
      CHECK((k.core - k.coreFold).max_abs() <= 1e-9);
    }
  }
}

TEST_CASE("negative controls")
{
  const RealFormData data = build_real_form(2, 1);
  const BasePoint a{{0.9}};
  CHECK(check_casimir_factorisation(data, a, Perturbation::T) >= 1e-3);
  CHECK(check_radial_casimir_identity(data, a, Perturbation::T) >= 1e-3);
  // z_lambda vanishes for su(p,r): omitting it is not a defect
  CHECK(check_casimir_factorisation(data, a, Perturbation::Z) < 1e-12);
  CHECK(check_radial_casimir_identity(data, a, Perturbation::Z) < 1e-12);
  CHECK(quarter_coth_z(data, a).max_abs() == 0.0);
}
