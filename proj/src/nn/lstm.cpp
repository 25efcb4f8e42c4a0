#include "oarl/nn/lstm.hpp"

#include <cmath>
#include <stdexcept>

namespace oarl {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

LstmCell LstmCell::make(int in_dim, int hidden, Rng& rng) {
  if (in_dim <= 0 || hidden <= 0)
    throw std::invalid_argument("LstmCell: widths must be positive");
  LstmCell cell;
  cell.in_dim = in_dim;
  cell.hidden = hidden;
  cell.wx = Matrix(in_dim, 4 * hidden);
  cell.wh = Matrix(hidden, 4 * hidden);
  cell.b.assign(4 * hidden, 0.0);
  const double bound = 1.0 / std::sqrt(static_cast<double>(in_dim + hidden));
  for (auto& v : cell.wx.d) v = rng.uniform(-bound, bound);
  for (auto& v : cell.wh.d) v = rng.uniform(-bound, bound);
  for (auto& v : cell.b) v = rng.uniform(-bound, bound);
  return cell;
}

void LstmCell::forward(std::span<const Matrix> seq, Matrix& out) const {
  LstmCache cache;
  forward(seq, out, cache);
}

void LstmCell::forward(std::span<const Matrix> seq, Matrix& out, LstmCache& cache) const {
  if (seq.empty()) throw std::invalid_argument("LstmCell: empty sequence");
  const int batch = seq[0].rows;
  const int steps = static_cast<int>(seq.size());
  const int hd = hidden;

  cache.steps = steps;
  cache.x.assign(seq.begin(), seq.end());
  cache.gi.resize(steps);
  cache.gf.resize(steps);
  cache.gg.resize(steps);
  cache.go.resize(steps);
  cache.c.resize(steps);
  cache.tc.resize(steps);
  cache.h.resize(steps);

  Matrix z;
  Matrix h_prev(batch, hd);  // zero initial state, fresh per sequence
  Matrix c_prev(batch, hd);
  for (int t = 0; t < steps; ++t) {
    const Matrix& x = seq[t];
    if (x.cols != in_dim) throw std::invalid_argument("LstmCell: input width mismatch");
    if (x.rows != batch) throw std::invalid_argument("LstmCell: batch size varies");
    mat::matmul(x, wx, z);
    mat::matmul(h_prev, wh, z, /*accumulate=*/true);
    mat::add_row_vector(z, b);

    Matrix& gi = cache.gi[t];
    Matrix& gf = cache.gf[t];
    Matrix& gg = cache.gg[t];
    Matrix& go = cache.go[t];
    gi.resize(batch, hd);
    gf.resize(batch, hd);
    gg.resize(batch, hd);
    go.resize(batch, hd);
    Matrix& c = cache.c[t];
    Matrix& tc = cache.tc[t];
    Matrix& h = cache.h[t];
    c.resize(batch, hd);
    tc.resize(batch, hd);
    h.resize(batch, hd);

    for (int i = 0; i < batch; ++i) {
      const double* zi = z.row(i);
      const double* cp = c_prev.row(i);
      for (int j = 0; j < hd; ++j) {
        const double vi = sigmoid(zi[j]);
        const double vf = sigmoid(zi[hd + j]);
        const double vg = std::tanh(zi[2 * hd + j]);
        const double vo = sigmoid(zi[3 * hd + j]);
        const double vc = vf * cp[j] + vi * vg;
        gi.at(i, j) = vi;
        gf.at(i, j) = vf;
        gg.at(i, j) = vg;
        go.at(i, j) = vo;
        c.at(i, j) = vc;
        const double t_c = std::tanh(vc);
        tc.at(i, j) = t_c;
        h.at(i, j) = vo * t_c;
      }
    }
    h_prev = h;
    c_prev = c;
  }
  out = cache.h.back();
}

void LstmCell::ensure_grads(LstmGrads& g) const {
  g.dwx.resize(wx.rows, wx.cols);
  g.dwh.resize(wh.rows, wh.cols);
  g.db.assign(b.size(), 0.0);
}

void LstmCell::backward(const LstmCache& cache, const Matrix& dh_last,
                        LstmGrads& grads) const {
  const int steps = cache.steps;
  if (steps == 0) throw std::invalid_argument("LstmCell: empty cache");
  const int batch = cache.h[0].rows;
  const int hd = hidden;
  ensure_grads(grads);

  Matrix dh = dh_last;
  Matrix dc(batch, hd);
  Matrix dz(batch, 4 * hd);
  Matrix dh_next;
  for (int t = steps - 1; t >= 0; --t) {
    const Matrix& gi = cache.gi[t];
    const Matrix& gf = cache.gf[t];
    const Matrix& gg = cache.gg[t];
    const Matrix& go = cache.go[t];
    const Matrix& tc = cache.tc[t];
    for (int i = 0; i < batch; ++i) {
      const double* cp = t > 0 ? cache.c[t - 1].row(i) : nullptr;
      double* dzi = dz.row(i);
      for (int j = 0; j < hd; ++j) {
        const double vdh = dh.at(i, j);
        const double vo = go.at(i, j);
        const double vtc = tc.at(i, j);
        double vdc = dc.at(i, j) + vdh * vo * (1.0 - vtc * vtc);
        const double vi = gi.at(i, j);
        const double vf = gf.at(i, j);
        const double vg = gg.at(i, j);
        const double c_prev = cp ? cp[j] : 0.0;
        dzi[j] = vdc * vg * vi * (1.0 - vi);                       // input gate
        dzi[hd + j] = vdc * c_prev * vf * (1.0 - vf);              // forget gate
        dzi[2 * hd + j] = vdc * vi * (1.0 - vg * vg);              // candidate
        dzi[3 * hd + j] = vdh * vtc * vo * (1.0 - vo);             // output gate
        dc.at(i, j) = vdc * vf;
      }
    }
    mat::matmul_tA(cache.x[t], dz, grads.dwx, /*accumulate=*/t != steps - 1);
    if (t > 0)
      mat::matmul_tA(cache.h[t - 1], dz, grads.dwh, /*accumulate=*/t != steps - 1);
    else if (steps == 1)
      grads.dwh.zero();
    mat::col_sums(dz, grads.db, /*accumulate=*/t != steps - 1);
    if (t > 0) {
      mat::matmul_tB(dz, wh, dh_next);
      dh = std::move(dh_next);
      dh_next = Matrix();
    }
  }
}

std::vector<std::span<double>> tensors(LstmCell& cell) {
  return {std::span<double>(cell.wx.d), std::span<double>(cell.wh.d),
          std::span<double>(cell.b)};
}

std::vector<std::span<const double>> tensors(const LstmCell& cell) {
  return {std::span<const double>(cell.wx.d), std::span<const double>(cell.wh.d),
          std::span<const double>(cell.b)};
}

std::vector<std::span<const double>> tensors(const LstmGrads& g) {
  return {std::span<const double>(g.dwx.d), std::span<const double>(g.dwh.d),
          std::span<const double>(g.db)};
}

}  // namespace oarl
