#include <doctest.h>

#include <cmath>
#include <set>

#include "oarl/rng.hpp"

using oarl::Rng;

TEST_SUITE("rng") {

TEST_CASE("same seed reproduces the same stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("named streams are independent of each other") {
  Rng a(7, "env-init"), b(7, "exploration");
  bool all_equal = true;
  for (int i = 0; i < 64; ++i) all_equal &= (a.next_u64() == b.next_u64());
  CHECK_FALSE(all_equal);
}

TEST_CASE("indexed streams differ") {
  Rng a(7, "eval", 0), b(7, "eval", 1);
  CHECK(a.next_u64() != b.next_u64());
}

TEST_CASE("uniform stays in range and covers it") {
  Rng r(3);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);
}

TEST_CASE("normal moments") {
  Rng r(11);
  const int n = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    double x = r.normal(2.0, 3.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.02));
  CHECK(var == doctest::Approx(9.0).epsilon(0.03));
}

TEST_CASE("below is bounded and roughly uniform") {
  Rng r(5);
  std::array<int, 10> counts{};
  for (int i = 0; i < 100000; ++i) {
    auto v = r.below(10);
    REQUIRE(v < 10);
    ++counts[v];
  }
  for (int c : counts) CHECK(c > 8000);
}

TEST_CASE("state round-trip resumes the stream") {
  Rng r(9);
  r.next_u64();
  auto snap = r.state();
  const auto a = r.next_u64();
  Rng other;
  other.set_state(snap);
  CHECK(other.next_u64() == a);
}

}  // TEST_SUITE
