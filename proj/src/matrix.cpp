#include "oarl/matrix.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace oarl::mat {

namespace {

// Rows [i0, i1) of c = a*b, row-major, k-unrolled by 4. Every c[i,j] is
// accumulated in ascending-k order, so the result does not depend on how rows
// are split across threads.
void mm_rows(const double* a, const double* b, double* c, int i0, int i1,
             int k, int n, bool accumulate) {
  for (int i = i0; i < i1; ++i) {
    double* ci = c + static_cast<std::size_t>(i) * n;
    if (!accumulate) std::fill(ci, ci + n, 0.0);
    const double* ai = a + static_cast<std::size_t>(i) * k;
    int kk = 0;
    for (; kk + 4 <= k; kk += 4) {
      const double a0 = ai[kk], a1 = ai[kk + 1], a2 = ai[kk + 2], a3 = ai[kk + 3];
      const double* b0 = b + static_cast<std::size_t>(kk) * n;
      const double* b1 = b0 + n;
      const double* b2 = b1 + n;
      const double* b3 = b2 + n;
      for (int j = 0; j < n; ++j) {
        double s = ci[j];
        s += a0 * b0[j];
        s += a1 * b1[j];
        s += a2 * b2[j];
        s += a3 * b3[j];
        ci[j] = s;
      }
    }
    for (; kk < k; ++kk) {
      const double ak = ai[kk];
      const double* bk = b + static_cast<std::size_t>(kk) * n;
      for (int j = 0; j < n; ++j) ci[j] += ak * bk[j];
    }
  }
}

void mm_dispatch(const double* a, const double* b, double* c, int m, int k,
                 int n, bool accumulate, bool parallel) {
  int nt = thread_limit() > 0 ? thread_limit() : omp_get_max_threads();
  const long long macs = static_cast<long long>(m) * k * n;
  if (!parallel || nt <= 1 || m < 2 || macs < 65536) {
    mm_rows(a, b, c, 0, m, k, n, accumulate);
    return;
  }
  nt = std::min(nt, m);
#pragma omp parallel num_threads(nt)
  {
    const int t = omp_get_thread_num();
    const int teams = omp_get_num_threads();
    const int chunk = (m + teams - 1) / teams;
    const int i0 = std::min(m, t * chunk);
    const int i1 = std::min(m, i0 + chunk);
    if (i0 < i1) mm_rows(a, b, c, i0, i1, k, n, accumulate);
  }
}

thread_local std::vector<double> g_scratch;

// Transpose src (r x c) into the thread-local scratch, returning c x r data.
const double* transposed(const double* src, int r, int c) {
  g_scratch.resize(static_cast<std::size_t>(r) * c);
  double* dst = g_scratch.data();
  for (int i = 0; i < r; ++i) {
    const double* s = src + static_cast<std::size_t>(i) * c;
    for (int j = 0; j < c; ++j) dst[static_cast<std::size_t>(j) * r + i] = s[j];
  }
  return dst;
}

void check(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void prepare_out(Matrix& c, int r, int cc, bool accumulate) {
  if (accumulate) {
    check(c.rows == r && c.cols == cc, "matmul: accumulate target shape mismatch");
  } else if (c.rows != r || c.cols != cc) {
    c.rows = r;
    c.cols = cc;
    c.d.resize(static_cast<std::size_t>(r) * cc);
  }
}

void matmul_impl(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate,
                 bool parallel) {
  check(a.cols == b.rows, "matmul: inner dimensions differ");
  check(&c != &a && &c != &b, "matmul: output aliases an input");
  prepare_out(c, a.rows, b.cols, accumulate);
  mm_dispatch(a.d.data(), b.d.data(), c.d.data(), a.rows, a.cols, b.cols,
              accumulate, parallel);
}

void matmul_tA_impl(const Matrix& a, const Matrix& b, Matrix& c,
                    bool accumulate, bool parallel) {
  check(a.rows == b.rows, "matmul_tA: inner dimensions differ");
  check(&c != &a && &c != &b, "matmul_tA: output aliases an input");
  prepare_out(c, a.cols, b.cols, accumulate);
  const double* at = transposed(a.d.data(), a.rows, a.cols);
  mm_dispatch(at, b.d.data(), c.d.data(), a.cols, a.rows, b.cols, accumulate,
              parallel);
}

void matmul_tB_impl(const Matrix& a, const Matrix& b, Matrix& c,
                    bool accumulate, bool parallel) {
  check(a.cols == b.cols, "matmul_tB: inner dimensions differ");
  check(&c != &a && &c != &b, "matmul_tB: output aliases an input");
  prepare_out(c, a.rows, b.rows, accumulate);
  const double* bt = transposed(b.d.data(), b.rows, b.cols);
  mm_dispatch(a.d.data(), bt, c.d.data(), a.rows, a.cols, b.rows, accumulate,
              parallel);
}

}  // namespace

int& thread_limit() {
  thread_local int limit = 0;
  return limit;
}

void matmul(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate) {
  matmul_impl(a, b, c, accumulate, true);
}
void matmul_tA(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate) {
  matmul_tA_impl(a, b, c, accumulate, true);
}
void matmul_tB(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate) {
  matmul_tB_impl(a, b, c, accumulate, true);
}

namespace serial {
void matmul(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate) {
  matmul_impl(a, b, c, accumulate, false);
}
void matmul_tA(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate) {
  matmul_tA_impl(a, b, c, accumulate, false);
}
void matmul_tB(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate) {
  matmul_tB_impl(a, b, c, accumulate, false);
}
}  // namespace serial

void add_row_vector(Matrix& c, std::span<const double> v) {
  check(static_cast<std::size_t>(c.cols) == v.size(), "add_row_vector: width mismatch");
  for (int i = 0; i < c.rows; ++i) {
    double* ci = c.row(i);
    for (int j = 0; j < c.cols; ++j) ci[j] += v[j];
  }
}

void col_sums(const Matrix& a, std::span<double> out, bool accumulate) {
  check(static_cast<std::size_t>(a.cols) == out.size(), "col_sums: width mismatch");
  if (!accumulate) std::fill(out.begin(), out.end(), 0.0);
  for (int i = 0; i < a.rows; ++i) {
    const double* ai = a.row(i);
    for (int j = 0; j < a.cols; ++j) out[j] += ai[j];
  }
}

}  // namespace oarl::mat
