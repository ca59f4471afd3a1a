#pragma once

#include <string>
#include <vector>

#include "fontgan/tensor.hpp"

namespace fontgan {

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.5;  // adversarial-training setting
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.0;  // applied as g += 2*wd*w before the moments
};

// Per-parameter moment state plus a shared step counter.
struct AdamState {
  Tensor m;
  Tensor v;
};

class AdamOptimizer {
 public:
  AdamOptimizer(std::vector<NamedTensor> params, AdamConfig config);

  // One bias-corrected update from the parameters' accumulated grads.
  // A parameter with no accumulated grad is treated as zero-grad.
  // Throws (before touching anything) if any grad holds a NaN, naming the
  // offending parameter.
  void step();

  void zero_grad();

  int64_t step_count() const { return t_; }
  const AdamConfig& config() const { return config_; }
  const std::vector<NamedTensor>& params() const { return params_; }

  // moment tensors exposed for checkpointing, names prefixed with m./v.
  std::vector<NamedTensor> state_tensors(const std::string& prefix);
  void set_step_count(int64_t t) { t_ = t; }

 private:
  std::vector<NamedTensor> params_;
  std::vector<AdamState> state_;
  AdamConfig config_;
  int64_t t_ = 0;
};

}  // namespace fontgan
