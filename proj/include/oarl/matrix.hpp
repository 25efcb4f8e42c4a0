#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oarl {

// Dense row-major matrix of doubles; the batch dimension is always rows.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> d;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), d(static_cast<std::size_t>(r) * c, 0.0) {}

  void resize(int r, int c) {
    rows = r;
    cols = c;
    d.assign(static_cast<std::size_t>(r) * c, 0.0);
  }

  double* row(int i) { return d.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(int i) const { return d.data() + static_cast<std::size_t>(i) * cols; }
  double& at(int i, int j) { return d[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return d[static_cast<std::size_t>(i) * cols + j]; }
  std::size_t size() const { return d.size(); }
  void zero() { std::fill(d.begin(), d.end(), 0.0); }
};

namespace mat {

// Per-thread cap on OpenMP threads used by the kernels below. 0 means the
// OpenMP default. Harness workers set this to 1 when running several seeds
// concurrently.
int& thread_limit();

// c = a*b (or c += a*b with accumulate). a: m x k, b: k x n.
void matmul(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate = false);
// c = a^T * b. a: k x m, b: k x n.
void matmul_tA(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate = false);
// c = a * b^T. a: m x k, b: n x k.
void matmul_tB(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate = false);

// Single-threaded reference path, kept for the parallel-vs-serial tests and
// the kernel benchmark. Runs the same per-row kernel, so results are bitwise
// identical to the parallel path.
namespace serial {
void matmul(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate = false);
void matmul_tA(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate = false);
void matmul_tB(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate = false);
}  // namespace serial

// c[i,:] += v for every row i.
void add_row_vector(Matrix& c, std::span<const double> v);
// out[j] = sum_i a[i,j] (+= with accumulate).
void col_sums(const Matrix& a, std::span<double> out, bool accumulate = false);

}  // namespace mat
}  // namespace oarl
