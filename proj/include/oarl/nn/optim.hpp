#pragma once

#include <span>
#include <vector>

namespace oarl {

// Bias-corrected Adam over one flat parameter group. `m` and `v` always have
// exactly the total size of the parameters they track; `step` increases by
// one per apply.
struct AdamState {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long long step = 0;
  std::vector<double> m, v;

  explicit AdamState(double lr_ = 1e-4) : lr(lr_) {}
};

// params and grads are parallel lists of equally-sized spans (one per tensor).
void adam_step(std::span<std::span<double>> params,
               std::span<const std::span<const double>> grads, AdamState& state);

// target <- tau*online + (1-tau)*target, element-wise. tau must be in [0,1].
void soft_update(std::span<std::span<double>> target,
                 std::span<const std::span<const double>> online, double tau);

// Exact copy online -> target (target-network initialization).
void hard_update(std::span<std::span<double>> target,
                 std::span<const std::span<const double>> online);

bool all_finite(std::span<const std::span<const double>> tensors);

}  // namespace oarl
