// Times the parallel matrix kernels against the serial reference on the
// shapes that dominate a training step.
#include <chrono>
#include <cstdio>
#include <functional>

#include "oarl/matrix.hpp"
#include "oarl/rng.hpp"

using oarl::Matrix;

namespace {

Matrix random_matrix(int r, int c, oarl::Rng& rng) {
  Matrix m(r, c);
  for (auto& x : m.d) x = rng.uniform(-1.0, 1.0);
  return m;
}

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm-up
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench(const char* name, int m, int k, int n, int variant) {
  oarl::Rng rng(1234);
  Matrix a, b;
  switch (variant) {
    case 0:  // c = a*b
      a = random_matrix(m, k, rng);
      b = random_matrix(k, n, rng);
      break;
    case 1:  // c = a^T*b
      a = random_matrix(k, m, rng);
      b = random_matrix(k, n, rng);
      break;
    default:  // c = a*b^T
      a = random_matrix(m, k, rng);
      b = random_matrix(n, k, rng);
      break;
  }
  Matrix c;
  auto run_par = [&] {
    if (variant == 0) oarl::mat::matmul(a, b, c);
    if (variant == 1) oarl::mat::matmul_tA(a, b, c);
    if (variant == 2) oarl::mat::matmul_tB(a, b, c);
  };
  auto run_ser = [&] {
    if (variant == 0) oarl::mat::serial::matmul(a, b, c);
    if (variant == 1) oarl::mat::serial::matmul_tA(a, b, c);
    if (variant == 2) oarl::mat::serial::matmul_tB(a, b, c);
  };
  const double flops = 2.0 * m * k * n;
  const int reps = static_cast<int>(std::max(8.0, 2e8 / flops));
  const double ser = time_ms(run_ser, reps);
  const double par = time_ms(run_par, reps);
  std::printf("%-28s %4dx%-4dx%-4d  serial %8.3f ms (%6.2f GF/s)  parallel %8.3f ms (%6.2f GF/s)  speedup %.2fx\n",
              name, m, k, n, ser, flops / ser * 1e-6, par, flops / par * 1e-6,
              ser / par);
}

}  // namespace

int main() {
  std::printf("matrix kernel benchmark (training-step shapes)\n\n");
  bench("dense fwd L1 (batch 32)", 32, 11, 400, 0);
  bench("dense fwd L2 (batch 32)", 32, 400, 300, 0);
  bench("dense dW L2", 400, 32, 300, 1);
  bench("dense dX L2", 32, 300, 400, 2);
  bench("lstm gates x (batch 32)", 32, 26, 512, 0);
  bench("lstm gates h (batch 32)", 32, 128, 512, 0);
  bench("actor fwd (batch 1)", 1, 400, 300, 0);
  return 0;
}
