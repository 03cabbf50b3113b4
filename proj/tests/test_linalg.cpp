#include "kzb/linalg.hpp"

#include <doctest.h>

using namespace kzb;

namespace
{
  CMatrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j)
  {
    CMatrix M = CMatrix::Zero(n, n);
    M(i, j) = 1.0;
    return M;
  }

  CMatrix seeded_random(Eigen::Index rows, Eigen::Index cols, unsigned seed)
  {
    std::srand(seed);
    return CMatrix::Random(rows, cols);
  }
} // namespace

TEST_CASE("kron of identities is the identity")
{
  CHECK(max_abs(kron(identity(2), identity(3)) - identity(6)) == 0.0);
}

TEST_CASE("kron with a scalar second factor")
{
  CMatrix A(2, 2);
  A << 0, 1, 0, 0;
  CMatrix B(1, 1);
  B << 2;
  CMatrix expected(2, 2);
  expected << 0, 2, 0, 0;
  CHECK(max_abs(kron(A, B) - expected) == 0.0);
}

TEST_CASE("kron matches a four-index loop")
{
  const CMatrix A = seeded_random(2, 3, 1);
  const CMatrix B = seeded_random(3, 2, 2);
  const CMatrix P = kron(A, B);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      for (Eigen::Index k = 0; k < 3; ++k)
        for (Eigen::Index l = 0; l < 2; ++l)
          CHECK(std::abs(P(i * 3 + k, j * 2 + l) - A(i, j) * B(k, l)) == 0.0);
  // E12 (x) E21 has its single entry at row 1, column 2
  const CMatrix E = kron(unit(2, 0, 1), unit(2, 1, 0));
  CHECK(std::abs(E(1, 2) - 1.0) == 0.0);
  CHECK(max_abs(E) == 1.0);
}

TEST_CASE("kron is associative")
{
  const CMatrix A = seeded_random(2, 2, 3), B = seeded_random(3, 1, 4), C = seeded_random(2, 3, 5);
  CHECK(max_abs(kron(kron(A, B), C) - kron(A, kron(B, C))) < 1e-15);
}

TEST_CASE("commutator")
{
  const CMatrix A = seeded_random(4, 4, 6);
  CHECK(max_abs(commutator(identity(4), A)) == 0.0);
  CHECK(max_abs(commutator(A, A * A)) < 1e-14);
  CHECK(max_abs(commutator(A, seeded_random(4, 4, 7)) + commutator(seeded_random(4, 4, 7), A)) == 0.0);
  CMatrix h(2, 2);
  h << 1, 0, 0, -1;
  CHECK(max_abs(commutator(unit(2, 0, 1), unit(2, 1, 0)) - h) == 0.0);
  CHECK_THROWS_AS(commutator(identity(2), identity(3)), KzbError);
  try {
    commutator(identity(2), seeded_random(2, 3, 8));
  } catch (const KzbError & e) {
    CHECK(e.code() == "shape");
  }
}

TEST_CASE("null space")
{
  CHECK(null_space(identity(3)).cols() == 0);

  CMatrix A(2, 2);
  A << 1, 1, 1, 1;
  const CMatrix N = null_space(A);
  REQUIRE(N.cols() == 1);
  CHECK(std::abs(std::abs(N(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(N(0, 0) + N(1, 0)) < 1e-14);

  // rank 15 from known factors
  const CMatrix L = seeded_random(20, 15, 9), R = seeded_random(15, 20, 10);
  const CMatrix B = L * R;
  const CMatrix K = null_space(B);
  CHECK(K.cols() == 5);
  CHECK(max_abs(K.adjoint() * K - identity(5)) < 1e-12);
  CHECK(max_abs(B * K) / max_abs(B) < 1e-10);
  CHECK(max_abs(null_space(B) - K) == 0.0);
}

TEST_CASE("tensor legs")
{
  CTensor T({2, 3, 4});
  CHECK(T.size() == 24);
  T.at({1, 2, 3}) = cd(5.0, 1.0);
  const CTensor P = T.permute({2, 0, 1});
  CHECK(P.legs() == std::vector<Eigen::Index>{4, 2, 3});
  CHECK(P.at({3, 1, 2}) == cd(5.0, 1.0));
  const CMatrix M = seeded_random(3, 3, 11);
  const CTensor Q = T.apply_on_leg(M, 1);
  CHECK(std::abs(Q.at({1, 0, 3}) - M(0, 2) * cd(5.0, 1.0)) < 1e-15);
  const CMatrix X = seeded_random(2, 3, 12);
  CHECK(max_abs(CTensor::from_matrix(X).to_matrix() - X) == 0.0);
}
