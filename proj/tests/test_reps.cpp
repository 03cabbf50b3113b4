#include "kzb/reps.hpp"

#include <doctest.h>

#include <map>

using namespace kzb;

namespace
{
  /// sum of squared multiplicities of the joint eigenvalues of the commuting diagonal part of m
  /// on the defining module; m is abelian for su(2,1), so this is the invariant count of def (x) dual
  int squared_weight_multiplicities(const RealFormData & data)
  {
    std::map<std::vector<long long>, int> mult;
    for (int i = 0; i < data.n; ++i) {
      std::vector<long long> key;
      for (const auto & m : data.mBasis) {
        key.push_back(std::llround(1e8 * m(i, i).real()));
        key.push_back(std::llround(1e8 * m(i, i).imag()));
      }
      ++mult[key];
    }
    int s = 0;
    for (const auto & [k, c] : mult)
      s += c * c;
    return s;
  }
} // namespace

TEST_CASE("representations are homomorphisms")
{
  const RealFormData data = build_real_form(2, 2);
  for (const std::string label : {"def", "dual", "adj", "triv", "def*dual", "def*def"}) {
    CAPTURE(label);
    const Rep R = rep_from_label(data, label);
    CHECK(R.label == label);
    CHECK(homomorphism_error(data, R) < 1e-12);
    CHECK(homomorphism_error(data, restrict_to_k(data, R)) < 1e-12);
  }
  CHECK(rep_from_label(data, "def*adj").dim == 4 * 15);
}

TEST_CASE("unknown labels")
{
  const RealFormData data = build_real_form(2, 1);
  for (const std::string label : {"spin", "", "def*", "def**dual"}) {
    CAPTURE(label);
    try {
      rep_from_label(data, label);
      FAIL("expected an error");
    } catch (const KzbError & e) {
      CHECK(e.code() == "invalid-argument");
    }
  }
  CHECK(dual_label("def*dual*adj") == "dual*def*adj");
}

TEST_CASE("m-invariants of def (x) dual for su(2,1)")
{
  const RealFormData data = build_real_form(2, 1);
  REQUIRE(data.mBasis.size() == 1);
  CHECK(max_abs(CMatrix(data.mBasis[0].diagonal().asDiagonal()) - data.mBasis[0]) == 0.0);
  const Rep R = rep_from_label(data, "def*dual");
  const InvariantSubspace inv = m_invariants(data, R);
  CHECK(inv.dim() == 5);
  CHECK(inv.dim() == squared_weight_multiplicities(data));
  CHECK(max_abs(inv.basis.adjoint() * inv.basis - identity(5)) < 1e-12);
}

TEST_CASE("k-invariants of def (x) dual are the commutant of k")
{
  const RealFormData data = build_real_form(2, 1);
  const Rep R = rep_from_label(data, "def*dual");
  // C^3 = C^2 (+) C^1 under s(u(2) + u(1)): a two-dimensional commutant
  std::vector<CMatrix> action;
  for (const auto * list : {&data.mBasis, &data.qBasis})
    for (const auto & X : *list)
      action.push_back(rep_apply(data, R, X));
  CHECK(m_invariants(action, R.dim).dim() == 2);
  // g-invariants: only the identity
  CHECK(m_invariants(R.act, R.dim).dim() == 1);
}

TEST_CASE("empty action leaves everything invariant")
{
  CHECK(max_abs(m_invariants({}, 4).basis - identity(4)) == 0.0);
}

TEST_CASE("tensor and dual modules")
{
  const RealFormData data = build_real_form(3, 1);
  const Rep D = defining_rep(data);
  const Rep Dd = dual_rep(D);
  for (int a = 0; a < data.dim(); ++a)
    CHECK(max_abs(Dd.act[static_cast<size_t>(a)] + D.act[static_cast<size_t>(a)].transpose()) == 0.0);
  const Rep T = tensor_rep(D, Dd);
  const CMatrix X = data.basis[5];
  CHECK(max_abs(rep_apply(data, T, X) - (kron(X, identity(4)) + kron(identity(4), -X.transpose()))) < 1e-13);
  const KRep K = restrict_to_k(data, D);
  CHECK(K.dim == 4);
  CHECK(static_cast<int>(K.act.size()) == data.dim_k());
  const KRep S = sigma_ell_n(data, K, {D, Dd});
  CHECK(S.dim == 64);
  CHECK(homomorphism_error(data, S) < 1e-12);
  CHECK(homomorphism_error(data, dual_krep(K)) < 1e-12);
  CHECK(trivial_krep(data).dim == 1);
}
