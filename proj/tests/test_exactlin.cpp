#include <doctest.h>

#include <random>

#include "mqr/matrix.hpp"

using namespace mqr;

namespace {

Mat random_mat(std::mt19937& rng, const Fp& F, int rows, int cols) {
  Mat m(rows, cols);
  std::uniform_int_distribution<uint32_t> d(0, F.p() - 1);
  for (auto& e : m.e) e = d(rng);
  return m;
}

}  // namespace

TEST_CASE("field arithmetic basics") {
  CHECK_THROWS(Fp(1));
  CHECK_THROWS(Fp(4));
  CHECK_THROWS(Fp(65537));
  Fp F(7);
  CHECK(F.mul(3, 5) == 1);
  CHECK(F.inv(3) == 5);
  CHECK(F.reduce(-1) == 6);
  for (uint32_t a = 1; a < 7; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
}

TEST_CASE("row-vector convention: composition is left-to-right matrix product") {
  // alpha: A -> B (dim 2 -> dim 3), beta: B -> C (dim 3 -> dim 1)
  Fp F(5);
  Mat alpha = Mat::from_rows({{1, 2, 0}, {0, 1, 1}});
  Mat beta = Mat::from_rows({{1}, {2}, {3}});
  CHECK(alpha.rows == 2);  // rows = dim of the domain
  Mat comp = mat_mul(F, alpha, beta);
  CHECK(comp.rows == 2);
  CHECK(comp.cols == 1);
  // the element a = (1, 0) of A maps through alpha to (1,2,0), then to 1*1+2*2 = 5 = 0
  Mat a = Mat::from_rows({{1, 0}});
  CHECK(mat_mul(F, a, comp).at(0, 0) == 0);
}

TEST_CASE("rref on the stated examples") {
  Fp F2(2), F5(5);
  auto id3 = rref(F2, Mat::identity(3));
  CHECK(id3.rank == 3);
  CHECK(id3.m == Mat::identity(3));

  auto z = rref(F2, Mat(2, 4));
  CHECK(z.rank == 0);
  CHECK(z.m == Mat(2, 4));

  auto r = rref(F5, Mat::from_rows({{1, 2}, {2, 4}}));
  CHECK(r.rank == 1);
  CHECK(r.m == Mat::from_rows({{1, 2}, {0, 0}}));
  CHECK(r.pivot_cols == std::vector<int>{0});
}

TEST_CASE("left nullspace on the stated examples") {
  Fp F2(2);
  CHECK(left_nullspace(F2, Mat::identity(4)).rows == 0);
  CHECK(left_nullspace(F2, Mat(2, 3)).rows == 2);
  Mat n = left_nullspace(F2, Mat::from_rows({{1, 1}, {1, 1}}));
  REQUIRE(n.rows == 1);
  CHECK(n.at(0, 0) == 1);
  CHECK(n.at(0, 1) == 1);
}

TEST_CASE("inverse on the stated examples") {
  Fp F2(2);
  CHECK(*inverse(F2, Mat::identity(3)) == Mat::identity(3));
  Mat swp = Mat::from_rows({{0, 1}, {1, 0}});
  CHECK(*inverse(F2, swp) == swp);
  CHECK(!inverse(F2, Mat::from_rows({{1, 1}, {1, 1}})));
  CHECK(!inverse(F2, Mat(2, 3)));
  // the empty matrix is invertible with inverse itself
  auto e = inverse(F2, Mat(0, 0));
  REQUIRE(e);
  CHECK(e->rows == 0);
}

TEST_CASE("empty shapes are first class") {
  Fp F3(3);
  Mat a(2, 0), b(0, 3);
  Mat prod = mat_mul(F3, a, b);
  CHECK(prod.rows == 2);
  CHECK(prod.cols == 3);
  CHECK(prod.is_zero());
  CHECK(rank_of(F3, a) == 0);
}

TEST_CASE("randomized properties") {
  std::mt19937 rng(12345);
  for (uint32_t p : {2u, 3u, 5u}) {
    Fp F(p);
    for (int iter = 0; iter < 60; ++iter) {
      int rows = 1 + static_cast<int>(rng() % 5);
      int cols = 1 + static_cast<int>(rng() % 5);
      Mat m = random_mat(rng, F, rows, cols);

      auto r1 = rref(F, m);
      auto r2 = rref(F, r1.m);
      CHECK(r1.m == r2.m);  // idempotent

      Mat null = left_nullspace(F, m);
      CHECK(null.rows == rows - r1.rank);
      for (int i = 0; i < null.rows; ++i) {
        Mat v(1, rows);
        for (int j = 0; j < rows; ++j) v.at(0, j) = null.at(i, j);
        CHECK(mat_mul(F, v, m).is_zero());
      }

      Mat sq = random_mat(rng, F, rows, rows);
      if (auto inv = inverse(F, sq)) {
        CHECK(mat_mul(F, *inv, sq) == Mat::identity(rows));
        CHECK(mat_mul(F, sq, *inv) == Mat::identity(rows));
      }

      Mat b = random_mat(rng, F, cols, 1 + static_cast<int>(rng() % 5));
      int rab = rank_of(F, mat_mul(F, m, b));
      CHECK(rab <= r1.rank);
      CHECK(rab <= rank_of(F, b));
    }
  }
}
