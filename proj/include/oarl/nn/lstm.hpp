#pragma once

#include <span>
#include <vector>

#include "oarl/matrix.hpp"
#include "oarl/rng.hpp"

namespace oarl {

struct LstmCache {
  int steps = 0;
  std::vector<Matrix> x;       // inputs per step
  std::vector<Matrix> gi, gf, gg, go;  // gate activations per step
  std::vector<Matrix> c;       // cell state per step
  std::vector<Matrix> tc;      // tanh(c) per step
  std::vector<Matrix> h;       // hidden per step
};

struct LstmGrads {
  Matrix dwx, dwh;
  std::vector<double> db;
};

// Single LSTM layer processing a whole sequence from a fresh zero state.
// Only the final hidden vector is exposed downstream; backward runs BPTT
// from a gradient on that final hidden output.
struct LstmCell {
  int in_dim = 0;
  int hidden = 0;
  Matrix wx;               // in x 4*hidden, gate order [input|forget|cand|out]
  Matrix wh;               // hidden x 4*hidden
  std::vector<double> b;   // 4*hidden

  static LstmCell make(int in_dim, int hidden, Rng& rng);

  // seq must be non-empty; every element is a batch x in_dim matrix with one
  // common batch size. Returns the last hidden state (batch x hidden).
  void forward(std::span<const Matrix> seq, Matrix& out) const;
  void forward(std::span<const Matrix> seq, Matrix& out, LstmCache& cache) const;

  void backward(const LstmCache& cache, const Matrix& dh_last, LstmGrads& grads) const;

  void ensure_grads(LstmGrads& g) const;
};

std::vector<std::span<double>> tensors(LstmCell& cell);
std::vector<std::span<const double>> tensors(const LstmCell& cell);
std::vector<std::span<const double>> tensors(const LstmGrads& g);

}  // namespace oarl
