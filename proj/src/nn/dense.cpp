#include "oarl/nn/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace oarl {

namespace {

void apply_activation(Matrix& z, Act act) {
  switch (act) {
    case Act::linear:
      return;
    case Act::relu:
      for (auto& v : z.d) v = v > 0.0 ? v : 0.0;
      return;
    case Act::tanh:
      for (auto& v : z.d) v = std::tanh(v);
      return;
  }
}

// dz = dy (*) act'(y), derivative expressed through the post-activation value.
void activation_grad_inplace(Matrix& dy, const Matrix& y, Act act) {
  switch (act) {
    case Act::linear:
      return;
    case Act::relu:
      for (std::size_t i = 0; i < dy.size(); ++i)
        if (y.d[i] <= 0.0) dy.d[i] = 0.0;
      return;
    case Act::tanh:
      for (std::size_t i = 0; i < dy.size(); ++i)
        dy.d[i] *= 1.0 - y.d[i] * y.d[i];
      return;
  }
}

}  // namespace

DenseNet DenseNet::make(int in_dim, std::span<const std::pair<int, Act>> spec, Rng& rng) {
  if (in_dim <= 0) throw std::invalid_argument("DenseNet: input width must be positive");
  DenseNet net;
  net.in_dim = in_dim;
  int prev = in_dim;
  for (const auto& [width, act] : spec) {
    if (width <= 0) throw std::invalid_argument("DenseNet: layer width must be positive");
    DenseLayer layer;
    layer.w = Matrix(prev, width);
    layer.b.assign(width, 0.0);
    layer.act = act;
    const double bound = 1.0 / std::sqrt(static_cast<double>(prev));
    for (auto& v : layer.w.d) v = rng.uniform(-bound, bound);
    for (auto& v : layer.b) v = rng.uniform(-bound, bound);
    net.layers.push_back(std::move(layer));
    prev = width;
  }
  return net;
}

void DenseNet::forward(const Matrix& x, Matrix& out) const {
  if (x.cols != in_dim) throw std::invalid_argument("DenseNet: input width mismatch");
  if (layers.empty()) {
    out = x;
    return;
  }
  Matrix tmp;
  const Matrix* cur = &x;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    Matrix next;
    mat::matmul(*cur, layers[k].w, next);
    mat::add_row_vector(next, layers[k].b);
    apply_activation(next, layers[k].act);
    tmp = std::move(next);
    cur = &tmp;
  }
  out = std::move(tmp);
}

void DenseNet::forward(const Matrix& x, Matrix& out, DenseCache& cache) const {
  if (x.cols != in_dim) throw std::invalid_argument("DenseNet: input width mismatch");
  cache.x0 = x;
  cache.y.resize(layers.size());
  const Matrix* cur = &cache.x0;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    mat::matmul(*cur, layers[k].w, cache.y[k]);
    mat::add_row_vector(cache.y[k], layers[k].b);
    apply_activation(cache.y[k], layers[k].act);
    cur = &cache.y[k];
  }
  out = layers.empty() ? x : cache.y.back();
}

void DenseNet::ensure_grads(DenseGrads& g) const {
  g.dw.resize(layers.size());
  g.db.resize(layers.size());
  for (std::size_t k = 0; k < layers.size(); ++k) {
    g.dw[k].resize(layers[k].w.rows, layers[k].w.cols);
    g.db[k].assign(layers[k].b.size(), 0.0);
  }
}

void DenseNet::backward(const DenseCache& cache, const Matrix& dy,
                        DenseGrads* grads, Matrix* dx) const {
  if (cache.y.size() != layers.size())
    throw std::invalid_argument("DenseNet: cache does not match network");
  if (grads) ensure_grads(*grads);
  Matrix cur = dy;
  Matrix next;
  for (int k = static_cast<int>(layers.size()) - 1; k >= 0; --k) {
    activation_grad_inplace(cur, cache.y[k], layers[k].act);
    const Matrix& x_prev = k == 0 ? cache.x0 : cache.y[k - 1];
    if (grads) {
      mat::matmul_tA(x_prev, cur, grads->dw[k]);
      mat::col_sums(cur, grads->db[k]);
    }
    if (k > 0 || dx) {
      mat::matmul_tB(cur, layers[k].w, next);
      cur = std::move(next);
      next = Matrix();
    }
  }
  if (dx) *dx = std::move(cur);
}

std::vector<std::span<double>> tensors(DenseNet& net) {
  std::vector<std::span<double>> out;
  for (auto& l : net.layers) {
    out.emplace_back(l.w.d);
    out.emplace_back(l.b);
  }
  return out;
}

std::vector<std::span<const double>> tensors(const DenseNet& net) {
  std::vector<std::span<const double>> out;
  for (const auto& l : net.layers) {
    out.emplace_back(l.w.d);
    out.emplace_back(l.b);
  }
  return out;
}

std::vector<std::span<const double>> tensors(const DenseGrads& g) {
  std::vector<std::span<const double>> out;
  for (std::size_t k = 0; k < g.dw.size(); ++k) {
    out.emplace_back(g.dw[k].d);
    out.emplace_back(g.db[k]);
  }
  return out;
}

std::vector<std::span<double>> tensors_mut(DenseGrads& g) {
  std::vector<std::span<double>> out;
  for (std::size_t k = 0; k < g.dw.size(); ++k) {
    out.emplace_back(g.dw[k].d);
    out.emplace_back(g.db[k]);
  }
  return out;
}

}  // namespace oarl
