#include "fontgan/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace fontgan {

AdamOptimizer::AdamOptimizer(std::vector<NamedTensor> params, AdamConfig config)
    : params_(std::move(params)), config_(config) {
  state_.reserve(params_.size());
  for (const NamedTensor& p : params_)
    state_.push_back({Tensor::zeros(p.tensor.shape()), Tensor::zeros(p.tensor.shape())});
}

void AdamOptimizer::step() {
  // refuse the whole step before mutating any state
  for (const NamedTensor& p : params_) {
    auto g = p.tensor.grad_view();
    for (double v : g)
      if (std::isnan(v))
        throw std::runtime_error("adam: NaN gradient in parameter '" + p.name +
                                 "', step refused");
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  for (size_t i = 0; i < params_.size(); ++i) {
    Tensor& w = params_[i].tensor;
    AdamState& st = state_[i];
    double* pw = w.data();
    double* pm = st.m.data();
    double* pv = st.v.data();
    auto gv = w.grad_view();
    const int64_t n = w.numel();
    for (int64_t j = 0; j < n; ++j) {
      double g = gv.empty() ? 0.0 : gv[j];
      g += 2.0 * config_.weight_decay * pw[j];
      pm[j] = config_.beta1 * pm[j] + (1.0 - config_.beta1) * g;
      pv[j] = config_.beta2 * pv[j] + (1.0 - config_.beta2) * g * g;
      const double mhat = pm[j] / bc1;
      const double vhat = pv[j] / bc2;
      pw[j] -= config_.learning_rate * mhat / (std::sqrt(vhat) + config_.epsilon);
    }
  }
}

void AdamOptimizer::zero_grad() {
  for (NamedTensor& p : params_) p.tensor.zero_grad();
}

std::vector<NamedTensor> AdamOptimizer::state_tensors(const std::string& prefix) {
  std::vector<NamedTensor> out;
  out.reserve(state_.size() * 2);
  for (size_t i = 0; i < params_.size(); ++i) {
    out.push_back({prefix + ".m." + params_[i].name, state_[i].m});
    out.push_back({prefix + ".v." + params_[i].name, state_[i].v});
  }
  return out;
}

}  // namespace fontgan
