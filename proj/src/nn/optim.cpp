#include "oarl/nn/optim.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oarl {

namespace {

std::size_t total_size(std::span<const std::span<const double>> spans) {
  std::size_t n = 0;
  for (const auto& s : spans) n += s.size();
  return n;
}

}  // namespace

void adam_step(std::span<std::span<double>> params,
               std::span<const std::span<const double>> grads, AdamState& state) {
  if (params.size() != grads.size())
    throw std::invalid_argument("adam_step: tensor list mismatch");
  std::size_t n = 0;
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (params[k].size() != grads[k].size())
      throw std::invalid_argument("adam_step: tensor shape mismatch");
    n += params[k].size();
  }
  if (state.m.empty()) {
    state.m.assign(n, 0.0);
    state.v.assign(n, 0.0);
  } else if (state.m.size() != n) {
    throw std::invalid_argument("adam_step: state does not match parameters");
  }

  ++state.step;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  std::size_t off = 0;
  for (std::size_t k = 0; k < params.size(); ++k) {
    double* p = params[k].data();
    const double* g = grads[k].data();
    double* m = state.m.data() + off;
    double* v = state.v.data() + off;
    const std::size_t len = params[k].size();
    for (std::size_t i = 0; i < len; ++i) {
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
      const double mhat = m[i] / c1;
      const double vhat = v[i] / c2;
      p[i] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
    }
    off += len;
  }
}

void soft_update(std::span<std::span<double>> target,
                 std::span<const std::span<const double>> online, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument("soft_update: tau outside [0, 1]");
  if (target.size() != online.size())
    throw std::invalid_argument("soft_update: tensor lists differ");
  for (std::size_t k = 0; k < target.size(); ++k) {
    if (target[k].size() != online[k].size())
      throw std::invalid_argument("soft_update: tensor shapes differ");
    double* t = target[k].data();
    const double* o = online[k].data();
    for (std::size_t i = 0; i < target[k].size(); ++i)
      t[i] = tau * o[i] + (1.0 - tau) * t[i];
  }
}

void hard_update(std::span<std::span<double>> target,
                 std::span<const std::span<const double>> online) {
  if (target.size() != online.size())
    throw std::invalid_argument("hard_update: tensor lists differ");
  for (std::size_t k = 0; k < target.size(); ++k) {
    if (target[k].size() != online[k].size())
      throw std::invalid_argument("hard_update: tensor shapes differ");
    std::copy(online[k].begin(), online[k].end(), target[k].begin());
  }
}

bool all_finite(std::span<const std::span<const double>> tensors) {
  for (const auto& s : tensors)
    for (double v : s)
      if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace oarl
