#include "fontgan/losses.hpp"

#include <algorithm>
#include <cmath>

#include "fontgan/ops.hpp"

namespace fontgan {

namespace {

inline double clamp_prob(double p) {
  return std::min(1.0 - kProbClamp, std::max(kProbClamp, p));
}

inline bool clamped(double p) { return p < kProbClamp || p > 1.0 - kProbClamp; }

}  // namespace

Tensor bce(Tape* tape, const Tensor& probs, const Tensor& targets) {
  if (probs.shape() != targets.shape())
    throw_shape_error("bce", "probs " + shape_str(probs.shape()) + " vs targets " +
                                 shape_str(targets.shape()));
  const int64_t n = probs.numel();
  const double inv = 1.0 / static_cast<double>(n);
  double total = 0.0;
  const double* pp = probs.data();
  const double* pt = targets.data();
  for (int64_t i = 0; i < n; ++i) {
    const double p = clamp_prob(pp[i]);
    total -= pt[i] * std::log(p) + (1.0 - pt[i]) * std::log(1.0 - p);
  }
  Tensor out = Tensor::scalar(total * inv);
  if (grad_wanted(tape, {probs, targets})) {
    out.set_requires_grad(true);
    tape->record([probs, targets, out, inv]() mutable {
      if (!out.has_grad()) return;
      const double g = out.grad_view()[0] * inv;
      const double* pp = probs.data();
      const double* pt = targets.data();
      if (probs.requires_grad()) {
        auto gp = probs.grad();
        for (size_t i = 0; i < gp.size(); ++i) {
          if (clamped(pp[i])) continue;  // flat past the clamp
          gp[i] += g * ((1.0 - pt[i]) / (1.0 - pp[i]) - pt[i] / pp[i]);
        }
      }
      if (targets.requires_grad()) {
        auto gt = targets.grad();
        for (size_t i = 0; i < gt.size(); ++i) {
          const double p = clamp_prob(pp[i]);
          gt[i] += g * (std::log(1.0 - p) - std::log(p));
        }
      }
    });
  }
  return out;
}

Tensor bce_const(Tape* tape, const Tensor& probs, double target) {
  return bce(tape, probs, Tensor::full(probs.shape(), target));
}

Tensor l1_loss(Tape* tape, const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape())
    throw_shape_error("l1_loss", "shape mismatch " + shape_str(a.shape()) + " vs " +
                                     shape_str(b.shape()));
  const int64_t n = a.numel();
  const double inv = 1.0 / static_cast<double>(n);
  double total = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (int64_t i = 0; i < n; ++i) total += std::abs(pa[i] - pb[i]);
  Tensor out = Tensor::scalar(total * inv);
  if (grad_wanted(tape, {a, b})) {
    out.set_requires_grad(true);
    tape->record([a, b, out, inv]() mutable {
      if (!out.has_grad()) return;
      const double g = out.grad_view()[0] * inv;
      const double* pa = a.data();
      const double* pb = b.data();
      // sign(0) taken as 0
      if (a.requires_grad()) {
        auto ga = a.grad();
        for (size_t i = 0; i < ga.size(); ++i) {
          const double d = pa[i] - pb[i];
          ga[i] += g * (d > 0.0 ? 1.0 : d < 0.0 ? -1.0 : 0.0);
        }
      }
      if (b.requires_grad()) {
        auto gb = b.grad();
        for (size_t i = 0; i < gb.size(); ++i) {
          const double d = pa[i] - pb[i];
          gb[i] -= g * (d > 0.0 ? 1.0 : d < 0.0 ? -1.0 : 0.0);
        }
      }
    });
  }
  return out;
}

Tensor cross_entropy(Tape* tape, const Tensor& logits, const std::vector<int64_t>& labels) {
  if (logits.rank() != 2)
    throw_shape_error("cross_entropy", "logits must be (N,K), got " + shape_str(logits.shape()));
  const int64_t n = logits.dim(0), k = logits.dim(1);
  if (static_cast<int64_t>(labels.size()) != n)
    throw_shape_error("cross_entropy", std::to_string(labels.size()) + " labels for " +
                                           std::to_string(n) + " rows");
  for (int64_t lb : labels)
    if (lb < 0 || lb >= k)
      throw_shape_error("cross_entropy", "label " + std::to_string(lb) + " outside [0," +
                                             std::to_string(k) + ")");
  const double inv = 1.0 / static_cast<double>(n);
  // stable log-softmax; per-row probabilities kept for the backward rule
  std::vector<double> softmax(static_cast<size_t>(n * k));
  double total = 0.0;
  const double* pl = logits.data();
  for (int64_t r = 0; r < n; ++r) {
    const double* row = pl + r * k;
    double mx = row[0];
    for (int64_t j = 1; j < k; ++j) mx = std::max(mx, row[j]);
    double z = 0.0;
    for (int64_t j = 0; j < k; ++j) z += std::exp(row[j] - mx);
    const double logz = std::log(z) + mx;
    for (int64_t j = 0; j < k; ++j) softmax[r * k + j] = std::exp(row[j] - logz);
    total -= row[labels[r]] - logz;
  }
  Tensor out = Tensor::scalar(total * inv);
  if (grad_wanted(tape, {logits})) {
    out.set_requires_grad(true);
    tape->record([logits, out, labels, softmax = std::move(softmax), inv, n, k]() mutable {
      if (!out.has_grad()) return;
      const double g = out.grad_view()[0] * inv;
      auto gl = logits.grad();
      for (int64_t r = 0; r < n; ++r)
        for (int64_t j = 0; j < k; ++j)
          gl[r * k + j] += g * (softmax[r * k + j] - (labels[r] == j ? 1.0 : 0.0));
    });
  }
  return out;
}

Tensor gan_value(Tape* tape, const Tensor& d_real, const Tensor& d_fake) {
  const int64_t nr = d_real.numel(), nf = d_fake.numel();
  const double inv_r = 1.0 / static_cast<double>(nr);
  const double inv_f = 1.0 / static_cast<double>(nf);
  double vr = 0.0, vf = 0.0;
  for (int64_t i = 0; i < nr; ++i) vr += std::log(clamp_prob(d_real.data()[i]));
  for (int64_t i = 0; i < nf; ++i) vf += std::log(1.0 - clamp_prob(d_fake.data()[i]));
  Tensor out = Tensor::scalar(vr * inv_r + vf * inv_f);
  if (grad_wanted(tape, {d_real, d_fake})) {
    out.set_requires_grad(true);
    tape->record([d_real, d_fake, out, inv_r, inv_f]() mutable {
      if (!out.has_grad()) return;
      const double g = out.grad_view()[0];
      if (d_real.requires_grad()) {
        auto gr = d_real.grad();
        const double* p = d_real.data();
        for (size_t i = 0; i < gr.size(); ++i)
          if (!clamped(p[i])) gr[i] += g * inv_r / p[i];
      }
      if (d_fake.requires_grad()) {
        auto gf = d_fake.grad();
        const double* p = d_fake.data();
        for (size_t i = 0; i < gf.size(); ++i)
          if (!clamped(p[i])) gf[i] -= g * inv_f / (1.0 - p[i]);
      }
    });
  }
  return out;
}

}  // namespace fontgan
