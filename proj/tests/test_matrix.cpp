#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oarl/matrix.hpp"
#include "oarl/rng.hpp"

using oarl::Matrix;
using oarl::Rng;

namespace {

Matrix random_matrix(int r, int c, Rng& rng) {
  Matrix m(r, c);
  for (auto& x : m.d) x = rng.uniform(-1.0, 1.0);
  return m;
}

// Test-local oracle, deliberately the dumbest possible loop order.
Matrix naive_matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      double s = 0;
      for (int k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(k, j);
      c.at(i, j) = s;
    }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

void check_close(const Matrix& got, const Matrix& want, double tol) {
  REQUIRE(got.rows == want.rows);
  REQUIRE(got.cols == want.cols);
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double scale = std::max(1.0, std::abs(want.d[i]));
    REQUIRE(std::abs(got.d[i] - want.d[i]) <= tol * scale);
  }
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("matmul small hand case") {
  Matrix a(2, 2), b(2, 2), c;
  a.d = {1, 2, 3, 4};
  b.d = {5, 6, 7, 8};
  oarl::mat::matmul(a, b, c);
  CHECK(c.at(0, 0) == 19);
  CHECK(c.at(0, 1) == 22);
  CHECK(c.at(1, 0) == 43);
  CHECK(c.at(1, 1) == 50);
}

TEST_CASE("matmul agrees with the naive oracle") {
  Rng rng(17);
  for (auto [m, k, n] : {std::array{3, 5, 4}, {32, 11, 400}, {7, 1, 9}, {1, 300, 13}}) {
    Matrix a = random_matrix(m, k, rng);
    Matrix b = random_matrix(k, n, rng);
    Matrix c;
    oarl::mat::matmul(a, b, c);
    check_close(c, naive_matmul(a, b), 1e-12);
  }
}

TEST_CASE("transposed variants match explicit transposes") {
  Rng rng(23);
  Matrix a = random_matrix(32, 40, rng);
  Matrix b = random_matrix(32, 17, rng);
  Matrix c;
  oarl::mat::matmul_tA(a, b, c);
  check_close(c, naive_matmul(transpose(a), b), 1e-12);

  Matrix x = random_matrix(8, 40, rng);
  Matrix w = random_matrix(25, 40, rng);
  oarl::mat::matmul_tB(x, w, c);
  check_close(c, naive_matmul(x, transpose(w)), 1e-12);
}

TEST_CASE("accumulate adds onto the target") {
  Rng rng(29);
  Matrix a = random_matrix(4, 6, rng);
  Matrix b = random_matrix(6, 5, rng);
  Matrix c;
  oarl::mat::matmul(a, b, c);
  Matrix twice;
  oarl::mat::matmul(a, b, twice);
  oarl::mat::matmul(a, b, twice, /*accumulate=*/true);
  for (std::size_t i = 0; i < c.size(); ++i)
    CHECK(twice.d[i] == doctest::Approx(2 * c.d[i]).epsilon(1e-13));
}

TEST_CASE("parallel and serial paths are bitwise identical") {
  Rng rng(31);
  for (auto [m, k, n] : {std::array{32, 400, 300}, {400, 32, 300}, {33, 257, 129}}) {
    Matrix a = random_matrix(m, k, rng);
    Matrix b = random_matrix(k, n, rng);
    Matrix par, ser;
    oarl::mat::matmul(a, b, par);
    oarl::mat::serial::matmul(a, b, ser);
    REQUIRE(par.d == ser.d);
  }
  Matrix a = random_matrix(64, 300, rng);
  Matrix b = random_matrix(64, 200, rng);
  Matrix par, ser;
  oarl::mat::matmul_tA(a, b, par);
  oarl::mat::serial::matmul_tA(a, b, ser);
  REQUIRE(par.d == ser.d);

  Matrix x = random_matrix(48, 300, rng);
  Matrix w = random_matrix(400, 300, rng);
  oarl::mat::matmul_tB(x, w, par);
  oarl::mat::serial::matmul_tB(x, w, ser);
  REQUIRE(par.d == ser.d);
}

TEST_CASE("thread limit of one still matches") {
  Rng rng(37);
  Matrix a = random_matrix(32, 128, rng);
  Matrix b = random_matrix(128, 64, rng);
  Matrix unlimited;
  oarl::mat::matmul(a, b, unlimited);
  oarl::mat::thread_limit() = 1;
  Matrix limited;
  oarl::mat::matmul(a, b, limited);
  oarl::mat::thread_limit() = 0;
  REQUIRE(unlimited.d == limited.d);
}

TEST_CASE("shape mismatches throw") {
  Matrix a(2, 3), b(4, 2), c;
  CHECK_THROWS_AS(oarl::mat::matmul(a, b, c), std::invalid_argument);
  CHECK_THROWS_AS(oarl::mat::matmul_tA(a, b, c), std::invalid_argument);
  Matrix b2(4, 5);
  CHECK_THROWS_AS(oarl::mat::matmul_tB(a, b2, c), std::invalid_argument);
}

TEST_CASE("row vector add and column sums") {
  Matrix a(3, 2);
  a.d = {1, 2, 3, 4, 5, 6};
  std::vector<double> v = {10, 20};
  oarl::mat::add_row_vector(a, v);
  CHECK(a.at(0, 0) == 11);
  CHECK(a.at(2, 1) == 26);
  std::vector<double> sums(2);
  oarl::mat::col_sums(a, sums);
  CHECK(sums[0] == 39);
  CHECK(sums[1] == 72);
}

}  // TEST_SUITE
