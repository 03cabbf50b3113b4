#include "kzb/real_form.hpp"
#include "kzb/suite.hpp"

#include <doctest.h>

#include <map>

using namespace kzb;

namespace
{
  const std::vector<std::pair<int, int>> kSignatures{{2, 1}, {2, 2}, {3, 1}, {3, 2}};

  CMatrix unit(int n, int i, int j)
  {
    CMatrix M = CMatrix::Zero(n, n);
    M(i, j) = 1.0;
    return M;
  }

  /// Positive restricted roots by counting: f_i +- f_j (mtp 2), 2 f_k (mtp 1), f_k (mtp 2(p-r))
  std::map<std::string, int> counted_positive_roots(int p, int r)
  {
    std::map<std::string, int> out;
    auto f = [](int k) { return "f" + std::to_string(k + 1); };
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) {
        out[f(i) + "+" + f(j)] = 2;
        out[f(i) + "-" + f(j)] = 2;
      }
      out["2" + f(i)] = 1;
      if (p > r)
        out[f(i)] = 2 * (p - r);
    }
    return out;
  }
} // namespace

TEST_CASE("Killing form normalization")
{
  const RealFormData data = build_real_form(2, 1);
  CHECK(std::abs(killing_form(unit(3, 0, 1), unit(3, 1, 0)) - 6.0) < 1e-14);
  CHECK(std::abs(data.fScale - 1.0 / (2.0 * std::sqrt(3.0))) < 1e-15);
}

TEST_CASE("unsupported signatures")
{
  for (auto [p, r] : std::vector<std::pair<int, int>>{{1, 2}, {1, 1}, {2, 0}, {3, 4}}) {
    CAPTURE(p);
    CAPTURE(r);
    try {
      build_real_form(p, r);
      FAIL("expected an error");
    } catch (const KzbError & e) {
      CHECK(e.code() == "unsupported-signature");
    }
  }
}

TEST_CASE("dimensions and multiplicities by counting")
{
  for (auto [p, r] : kSignatures) {
    CAPTURE(p);
    CAPTURE(r);
    const RealFormData data = build_real_form(p, r);
    const int N = p + r;
    CHECK(data.dim() == N * N - 1);
    CHECK(data.dim_k() == p * p + r * r - 1);
    CHECK(static_cast<int>(data.mBasis.size()) == (p - r) * (p - r) + r - 1);
    CHECK(static_cast<int>(data.aBasis.size()) == r);
    std::map<std::string, int> found;
    int total = 0;
    for (const auto & rr : data.restrictedRoots) {
      total += rr.mtp;
      if (rr.positive)
        found[weight_label(rr.lambda)] = rr.mtp;
    }
    CHECK(found == counted_positive_roots(p, r));
    CHECK(total + data.r + static_cast<int>(data.mBasis.size()) == data.dim());
  }
}

TEST_CASE("su(2,1) restricted roots")
{
  const RealFormData data = build_real_form(2, 1);
  CHECK(counted_positive_roots(2, 1) == std::map<std::string, int>{{"f1", 2}, {"2f1", 1}});
  CHECK(data.mBasis.size() == 1);
  CHECK(data.rho.size() == 1);
  CHECK(std::abs(data.rho[0] - 2.0) < 1e-15);
}

TEST_CASE("structure invariants")
{
  for (auto [p, r] : kSignatures) {
    CAPTURE(p);
    CAPTURE(r);
    const RealFormData data = build_real_form(p, r);
    const StructureErrors e = structure_errors(data);
    CHECK(e.thetaInvolution <= 1e-14);
    CHECK(e.bracketNormalization <= 1e-12);
    CHECK(e.cartanOrthonormal <= 1e-12);
    CHECK(e.cAlphaRelations <= 1e-12);
    CHECK(e.dimensionMismatches == 0.0);
    CHECK(e.hAlphaSum <= 1e-12);
    CHECK(e.zLambda <= 1e-12);
    CHECK(e.rho <= 1e-12);
    CHECK(e.kCenter <= 1e-12);
    CHECK(e.tableProportionality <= 1e-12);
    CHECK(e.restrictionMap == 0.0);
  }
}

TEST_CASE("theta is conjugation by J and the realization preserves J")
{
  const RealFormData data = build_real_form(3, 2);
  for (const auto & X : data.basis)
    CHECK(max_abs(data.theta_of(X) - data.J * X * data.J) == 0.0);
  CHECK(max_abs(data.J * data.J - identity(data.n)) == 0.0);
  // the Cartan part is traceless and diagonal
  for (int s = 0; s < data.nCartan; ++s) {
    const CMatrix & z = data.basis[static_cast<size_t>(s)];
    CHECK(std::abs(z.trace()) < 1e-15);
    CHECK(max_abs(CMatrix(z.diagonal().asDiagonal()) - z) == 0.0);
  }
}

TEST_CASE("coordinates round trip")
{
  const RealFormData data = build_real_form(3, 1);
  std::srand(3);
  CMatrix X = CMatrix::Random(4, 4);
  X -= X.trace() / 4.0 * identity(4);
  CHECK(max_abs(data.from_coords(data.coords(X)) - X) < 1e-13);
  for (int a = 0; a < data.dim(); ++a)
    CHECK(std::abs(killing_form(data.basis[static_cast<size_t>(a)], data.basis[static_cast<size_t>(data.dual_index(a))]) -
                   1.0) < 1e-13);
}
