#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kc/intlinalg.hpp"
#include "oracles.hpp"

using namespace kc;
using kc::testing::det_cofactor;
using kc::testing::inverse_adjugate;
using kc::testing::random_matrix;
using kc::testing::solve_brute;

namespace {

IntMatrix diag_of(const SnfResult& snf, Eigen::Index rows, Eigen::Index cols) {
  IntMatrix d = IntMatrix::Constant(rows, cols, Int(0));
  for (std::size_t k = 0; k < snf.d.size(); ++k)
    d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = snf.d[k];
  return d;
}

void check_snf(const IntMatrix& a) {
  SnfResult snf = smith_normal_form(a);
  IntMatrix lhs = snf.u * a * snf.w;
  CHECK(mat_equal(lhs, diag_of(snf, a.rows(), a.cols())));
  CHECK(abs(det_exact(snf.u)) == Int(1));
  CHECK(abs(det_exact(snf.w)) == Int(1));
  for (std::size_t k = 0; k + 1 < snf.d.size(); ++k) {
    CHECK(snf.d[k] >= Int(0));
    if (!snf.d[k].is_zero()) CHECK((snf.d[k + 1] % snf.d[k]).is_zero());
    if (snf.d[k].is_zero()) CHECK(snf.d[k + 1].is_zero());
  }
}

}  // namespace

TEST_CASE("smith normal form: pinned examples") {
  SnfResult id2 = smith_normal_form(int_mat({{1, 0}, {0, 1}}));
  CHECK(id2.d == std::vector<Int>{Int(1), Int(1)});
  CHECK(mat_equal(id2.u, IntMatrix::Identity(2, 2)));
  CHECK(mat_equal(id2.w, IntMatrix::Identity(2, 2)));

  // Hand reduction: diag(2,3) ~ diag(1,6).
  SnfResult s23 = smith_normal_form(int_mat({{2, 0}, {0, 3}}));
  CHECK(s23.d == std::vector<Int>{Int(1), Int(6)});

  // Hand reduction: the trefoil relation matrix has cokernel Z_3.
  SnfResult tre = smith_normal_form(int_mat({{-2, 1}, {1, -2}}));
  CHECK(tre.d == std::vector<Int>{Int(1), Int(3)});
}

TEST_CASE("smith normal form: transform and chain invariants on random input") {
  std::mt19937 rng(20240811);
  for (int iter = 0; iter < 300; ++iter) {
    Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 5);
    Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 5);
    check_snf(random_matrix(rng, m, n, -6, 6));
  }
  check_snf(IntMatrix(0, 0));
  check_snf(IntMatrix::Constant(3, 2, Int(0)));
}

TEST_CASE("det_exact matches pinned values and the cofactor oracle") {
  CHECK(det_exact(IntMatrix::Identity(3, 3)) == Int(1));
  CHECK(det_exact(int_mat({{-2, 1}, {1, -2}})) == Int(3));
  CHECK(det_exact(int_mat({{-2, 1}, {1, 4}})) == Int(-9));
  CHECK_THROWS_AS(det_exact(IntMatrix(2, 3)), DimensionError);

  std::mt19937 rng(7);
  for (int iter = 0; iter < 10000; ++iter) {
    Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 4);
    IntMatrix a = random_matrix(rng, n, n, -5, 5);
    CHECK(det_exact(a) == det_cofactor(a));
  }
}

TEST_CASE("inverse_rational: pinned examples and adjugate oracle") {
  RatMatrix id = inverse_rational(IntMatrix::Identity(2, 2));
  CHECK(id(0, 0) == Rat(1));
  CHECK(id(0, 1) == Rat(0));

  RatMatrix a = inverse_rational(int_mat({{-2, 1}, {1, -2}}));
  CHECK(a(0, 0) == Rat(Int(-2), Int(3)));
  CHECK(a(0, 1) == Rat(Int(-1), Int(3)));
  CHECK(a(1, 1) == Rat(Int(-2), Int(3)));

  RatMatrix b = inverse_rational(int_mat({{-2, 1}, {1, 4}}));
  CHECK(b(0, 0) == Rat(Int(-4), Int(9)));
  CHECK(b(0, 1) == Rat(Int(1), Int(9)));
  CHECK(b(1, 1) == Rat(Int(2), Int(9)));

  CHECK_THROWS_AS(inverse_rational(int_mat({{1, 1}, {1, 1}})), SingularMatrixError);

  std::mt19937 rng(11);
  int done = 0;
  while (done < 50) {
    IntMatrix m = random_matrix(rng, 3, 3, -4, 4);
    if (det_cofactor(m).is_zero()) continue;
    CHECK(mat_equal(inverse_rational(m), inverse_adjugate(m)));
    ++done;
  }
}

TEST_CASE("solve_integer: pinned cases") {
  // Vacuous system: no rows.
  auto z0 = solve_integer(IntMatrix(0, 3), IntVector(0));
  REQUIRE(z0.has_value());
  CHECK(z0->rows() == 3);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK((*z0)(i).is_zero());

  // 3 does not divide -1.
  auto inf = solve_integer_detailed(int_mat({{3}}), int_vec({-1}));
  CHECK(!inf.feasible());
  CHECK(inf.divisor == Int(3));
  CHECK(!(inf.residue % Int(3)).is_zero());

  // 2x + 3y = 1 has integer solutions.
  auto s = solve_integer(int_mat({{2, 3}}), int_vec({1}));
  REQUIRE(s.has_value());
  CHECK(Int(2) * (*s)(0) + Int(3) * (*s)(1) == Int(1));
  CHECK(solve_brute(int_mat({{2, 3}}), int_vec({1}), 10).has_value());
}

TEST_CASE("solve_integer agrees with bounded brute force on random small systems") {
  std::mt19937 rng(20240812);
  for (int iter = 0; iter < 2000; ++iter) {
    Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 3);
    Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 3);
    IntMatrix a = random_matrix(rng, m, n, -3, 3);
    IntVector b = random_matrix(rng, m, 1, -6, 6).col(0);
    auto exact = solve_integer(a, b);
    auto brute = solve_brute(a, b, 10);
    if (brute.has_value()) {
      // Brute force found one, so the solver must as well.
      REQUIRE(exact.has_value());
    }
    if (exact.has_value()) {
      IntVector check = a * *exact;
      for (Eigen::Index i = 0; i < m; ++i) CHECK(check(i) == b(i));
      // Solutions of small systems tend to be small; brute force with a
      // generous box should agree on solvability.
      bool small = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (abs((*exact)(j)) > Int(10)) small = false;
      if (small) CHECK(brute.has_value());
    }
  }
}

TEST_CASE("integer_kernel spans the kernel") {
  IntMatrix a = int_mat({{2, 3, 1}});
  IntMatrix k = integer_kernel(a);
  CHECK(k.rows() == 2);
  for (Eigen::Index r = 0; r < k.rows(); ++r) {
    Int acc(0);
    for (Eigen::Index j = 0; j < 3; ++j) acc += a(0, j) * k(r, j);
    CHECK(acc.is_zero());
  }
}

TEST_CASE("polynomial canonical form and printing") {
  IntPolynomial zero;
  CHECK(zero.canonical() == zero);
  CHECK(zero.str() == "0");

  // -3t^3 + 7t^2 - 3t = -t(3t^2 - 7t + 3) canonicalizes to 3t^2 - 7t + 3.
  IntPolynomial p({0, -3, 7, -3});
  CHECK(p.canonical() == IntPolynomial({3, -7, 3}));
  CHECK(p.canonical().str() == "3t^2 - 7t + 3");
  CHECK(IntPolynomial({1, -1, 1}).str() == "t^2 - t + 1");
  CHECK(p.canonical().eval(Int(-1)) == Int(13));
}

TEST_CASE("poly_det_pencil: pinned examples") {
  // Constant pencil.
  CHECK(poly_det_pencil(IntMatrix::Identity(2, 2), IntMatrix::Constant(2, 2, Int(0))) ==
        IntPolynomial({1}));

  // Trefoil: det(V - t V^T) = t^2 - t + 1 on the nose.
  IntMatrix v = int_mat({{-1, 1}, {0, -1}});
  IntMatrix b = (-v.transpose()).eval();
  CHECK(poly_det_pencil(v, b) == IntPolynomial({1, -1, 1}));

  // Twisted double with k = 3: ±(3t^2 - 7t + 3).
  IntMatrix v3 = int_mat({{-1, 1}, {0, 3}});
  IntMatrix b3 = (-v3.transpose()).eval();
  CHECK(poly_det_pencil(v3, b3).canonical() == IntPolynomial({3, -7, 3}));

  CHECK_THROWS_AS(poly_det_pencil(IntMatrix(2, 2), IntMatrix(3, 3)), DimensionError);
}

TEST_CASE("poly_det_pencil agrees with det_exact at random points") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 40; ++iter) {
    Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 4);
    IntMatrix a = random_matrix(rng, n, n, -4, 4);
    IntMatrix b = random_matrix(rng, n, n, -4, 4);
    IntPolynomial p = poly_det_pencil(a, b);
    for (int t = 0; t < 10; ++t) {
      long long t0 = static_cast<long long>(rng() % 21) - 10;
      IntMatrix m = a;
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) += Int(t0) * b(i, j);
      CHECK(p.eval(Int(t0)) == det_exact(m));
    }
  }
}
