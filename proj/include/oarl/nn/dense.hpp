#pragma once

#include <span>
#include <utility>
#include <vector>

#include "oarl/matrix.hpp"
#include "oarl/rng.hpp"

namespace oarl {

enum class Act { linear, relu, tanh };

struct DenseLayer {
  Matrix w;               // in x out
  std::vector<double> b;  // out
  Act act = Act::linear;
};

struct DenseCache {
  Matrix x0;              // input batch
  std::vector<Matrix> y;  // post-activation outputs per layer
};

struct DenseGrads {
  std::vector<Matrix> dw;
  std::vector<std::vector<double>> db;
};

// Plain fully connected stack. Forward passes are pure; backward consumes the
// cache written by the forward pass.
struct DenseNet {
  int in_dim = 0;
  std::vector<DenseLayer> layers;

  // Weights and biases uniform in +-1/sqrt(fan_in) of each layer.
  static DenseNet make(int in_dim, std::span<const std::pair<int, Act>> spec, Rng& rng);

  int out_dim() const { return layers.empty() ? in_dim : layers.back().w.cols; }

  void forward(const Matrix& x, Matrix& out) const;
  void forward(const Matrix& x, Matrix& out, DenseCache& cache) const;

  // dy is the gradient of the loss w.r.t. the network output. Fills `grads`
  // when param_grads is set; fills `dx` (gradient w.r.t. the input batch)
  // when dx is non-null.
  void backward(const DenseCache& cache, const Matrix& dy, DenseGrads* grads,
                Matrix* dx) const;

  void ensure_grads(DenseGrads& g) const;
};

// Flat views over all trainable tensors, in a fixed order (per layer: w, b).
std::vector<std::span<double>> tensors(DenseNet& net);
std::vector<std::span<const double>> tensors(const DenseNet& net);
std::vector<std::span<const double>> tensors(const DenseGrads& g);
std::vector<std::span<double>> tensors_mut(DenseGrads& g);

}  // namespace oarl
