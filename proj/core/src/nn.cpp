#include "fontgan/nn.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "fontgan/gemm.hpp"

namespace fontgan {

namespace {

constexpr int64_t kK = 5;        // kernel extent
constexpr int64_t kStride = 2;
constexpr int64_t kPad = 2;
constexpr int64_t kTap = kK * kK;

inline int64_t conv_out(int64_t extent) { return (extent - 1) / kStride + 1; }

// The conv family is phrased as one geometry: a "large" grid (C_l, H, W) and
// a "small" grid (C_s, conv_out(H), conv_out(W)) connected by 5x5/stride-2/
// pad-2 taps, with kernels stored as (C_s, C_l*25). conv2d maps large->small
// (gather), transposed_conv2d maps small->large (scatter), and each one's
// input gradient is the other's forward, so both directions share these
// helpers and the adjoint identity holds bit-exactly.

// cols (C_l*25, oh*ow) gathered from one large-grid sample
void im2col(const double* img, int64_t c_l, int64_t h, int64_t w, double* cols) {
  const int64_t oh = conv_out(h), ow = conv_out(w), cols_n = oh * ow;
  for (int64_t c = 0; c < c_l; ++c) {
    const double* plane = img + c * h * w;
    for (int64_t kh = 0; kh < kK; ++kh) {
      for (int64_t kw = 0; kw < kK; ++kw) {
        double* row = cols + ((c * kK + kh) * kK + kw) * cols_n;
        for (int64_t y = 0; y < oh; ++y) {
          const int64_t iy = y * kStride - kPad + kh;
          if (iy < 0 || iy >= h) {
            std::memset(row + y * ow, 0, sizeof(double) * ow);
            continue;
          }
          const double* src = plane + iy * w;
          for (int64_t x = 0; x < ow; ++x) {
            const int64_t ix = x * kStride - kPad + kw;
            row[y * ow + x] = (ix < 0 || ix >= w) ? 0.0 : src[ix];
          }
        }
      }
    }
  }
}

// scatter-add cols back onto one large-grid sample
void col2im(const double* cols, int64_t c_l, int64_t h, int64_t w, double* img) {
  const int64_t oh = conv_out(h), ow = conv_out(w), cols_n = oh * ow;
  for (int64_t c = 0; c < c_l; ++c) {
    double* plane = img + c * h * w;
    for (int64_t kh = 0; kh < kK; ++kh) {
      for (int64_t kw = 0; kw < kK; ++kw) {
        const double* row = cols + ((c * kK + kh) * kK + kw) * cols_n;
        for (int64_t y = 0; y < oh; ++y) {
          const int64_t iy = y * kStride - kPad + kh;
          if (iy < 0 || iy >= h) continue;
          double* dst = plane + iy * w;
          for (int64_t x = 0; x < ow; ++x) {
            const int64_t ix = x * kStride - kPad + kw;
            if (ix >= 0 && ix < w) dst[ix] += row[y * ow + x];
          }
        }
      }
    }
  }
}

// small = K * im2col(large), one sample; bias optional (length c_s)
void conv_gather(const double* large, int64_t c_l, int64_t h, int64_t w,
                 const double* kmat, int64_t c_s, const double* bias, double* small,
                 std::vector<double>& scratch) {
  const int64_t oh = conv_out(h), ow = conv_out(w), cols_n = oh * ow;
  scratch.resize(static_cast<size_t>(c_l * kTap * cols_n));
  im2col(large, c_l, h, w, scratch.data());
  gemm_nn(c_s, cols_n, c_l * kTap, kmat, scratch.data(), small, 0.0);
  if (bias)
    for (int64_t f = 0; f < c_s; ++f) {
      double* row = small + f * cols_n;
      for (int64_t i = 0; i < cols_n; ++i) row[i] += bias[f];
    }
}

// large += col2im(K^T * small), one sample
void conv_scatter(const double* small, int64_t c_s, const double* kmat, int64_t c_l,
                  int64_t h, int64_t w, double* large, std::vector<double>& scratch) {
  const int64_t cols_n = conv_out(h) * conv_out(w);
  scratch.resize(static_cast<size_t>(c_l * kTap * cols_n));
  gemm_tn(c_l * kTap, cols_n, c_s, kmat, small, scratch.data(), 0.0);
  col2im(scratch.data(), c_l, h, w, large);
}

// kgrad (c_s, c_l*25) += small * im2col(large)^T, one sample
void conv_weight_grad(const double* small, int64_t c_s, const double* large, int64_t c_l,
                      int64_t h, int64_t w, double* kgrad, std::vector<double>& scratch) {
  const int64_t cols_n = conv_out(h) * conv_out(w);
  scratch.resize(static_cast<size_t>(c_l * kTap * cols_n));
  im2col(large, c_l, h, w, scratch.data());
  gemm_nt(c_s, c_l * kTap, cols_n, small, scratch.data(), kgrad, 1.0);
}

void check_conv_args(const char* op, const Tensor& input, const Tensor& kernels,
                     const Tensor& bias, int64_t want_in_ch, int64_t want_bias_ch) {
  if (input.rank() != 4) throw_shape_error(op, "input must be (N,C,H,W), got " + shape_str(input.shape()));
  if (kernels.rank() != 4 || kernels.dim(2) != kK || kernels.dim(3) != kK)
    throw_shape_error(op, "kernels must be (F,C,5,5), got " + shape_str(kernels.shape()));
  if (input.dim(1) != want_in_ch)
    throw_shape_error(op, "input channels " + shape_str(input.shape()) +
                              " do not match kernels " + shape_str(kernels.shape()));
  if (bias.rank() != 1 || bias.dim(0) != want_bias_ch)
    throw_shape_error(op, "bias " + shape_str(bias.shape()) + " does not match kernels " +
                              shape_str(kernels.shape()));
}

}  // namespace

Tensor conv2d(Tape* tape, const Tensor& input, const Tensor& kernels, const Tensor& bias) {
  check_conv_args("conv2d", input, kernels, bias, kernels.dim(1), kernels.dim(0));
  const int64_t n = input.dim(0), c = input.dim(1), h = input.dim(2), w = input.dim(3);
  const int64_t f = kernels.dim(0), oh = conv_out(h), ow = conv_out(w);
  Tensor out = Tensor::zeros({n, f, oh, ow});
  {
    const double* pk = kernels.data();
    const double* pb = bias.data();
#pragma omp parallel
    {
      std::vector<double> scratch;
#pragma omp for schedule(static)
      for (int64_t i = 0; i < n; ++i)
        conv_gather(input.data() + i * c * h * w, c, h, w, pk, f, pb,
                    out.data() + i * f * oh * ow, scratch);
    }
  }
  if (grad_wanted(tape, {input, kernels, bias})) {
    out.set_requires_grad(true);
    tape->record([input, kernels, bias, out, n, c, h, w, f, oh, ow]() mutable {
      if (!out.has_grad()) return;
      const double* go = out.grad_view().data();
      if (bias.requires_grad()) {
        double* gb = bias.grad_data();
        for (int64_t i = 0; i < n; ++i)
          for (int64_t ch = 0; ch < f; ++ch) {
            const double* src = go + (i * f + ch) * oh * ow;
            double s = 0.0;
            for (int64_t j = 0; j < oh * ow; ++j) s += src[j];
            gb[ch] += s;
          }
      }
      if (kernels.requires_grad()) {
        double* gk = kernels.grad_data();
        std::vector<double> scratch;
        for (int64_t i = 0; i < n; ++i)
          conv_weight_grad(go + i * f * oh * ow, f, input.data() + i * c * h * w, c, h, w,
                           gk, scratch);
      }
      if (input.requires_grad()) {
        double* gi = input.grad_data();
        const double* pk = kernels.data();
#pragma omp parallel
        {
          std::vector<double> scratch;
#pragma omp for schedule(static)
          for (int64_t i = 0; i < n; ++i)
            conv_scatter(go + i * f * oh * ow, f, pk, c, h, w, gi + i * c * h * w, scratch);
        }
      }
    });
  }
  return out;
}

Tensor transposed_conv2d(Tape* tape, const Tensor& input, const Tensor& kernels,
                         const Tensor& bias) {
  check_conv_args("transposed_conv2d", input, kernels, bias, kernels.dim(0), kernels.dim(1));
  const int64_t n = input.dim(0), f = input.dim(1), sh = input.dim(2), sw = input.dim(3);
  const int64_t c = kernels.dim(1), h = 2 * sh, w = 2 * sw;
  Tensor out = Tensor::zeros({n, c, h, w});
  {
    const double* pk = kernels.data();
    const double* pb = bias.data();
#pragma omp parallel
    {
      std::vector<double> scratch;
#pragma omp for schedule(static)
      for (int64_t i = 0; i < n; ++i) {
        double* po = out.data() + i * c * h * w;
        conv_scatter(input.data() + i * f * sh * sw, f, pk, c, h, w, po, scratch);
        for (int64_t ch = 0; ch < c; ++ch) {
          double* plane = po + ch * h * w;
          for (int64_t j = 0; j < h * w; ++j) plane[j] += pb[ch];
        }
      }
    }
  }
  if (grad_wanted(tape, {input, kernels, bias})) {
    out.set_requires_grad(true);
    tape->record([input, kernels, bias, out, n, c, f, h, w, sh, sw]() mutable {
      if (!out.has_grad()) return;
      const double* go = out.grad_view().data();
      if (bias.requires_grad()) {
        double* gb = bias.grad_data();
        for (int64_t i = 0; i < n; ++i)
          for (int64_t ch = 0; ch < c; ++ch) {
            const double* src = go + (i * c + ch) * h * w;
            double s = 0.0;
            for (int64_t j = 0; j < h * w; ++j) s += src[j];
            gb[ch] += s;
          }
      }
      if (kernels.requires_grad()) {
        double* gk = kernels.grad_data();
        std::vector<double> scratch;
        for (int64_t i = 0; i < n; ++i)
          conv_weight_grad(input.data() + i * f * sh * sw, f, go + i * c * h * w, c, h, w,
                           gk, scratch);
      }
      if (input.requires_grad()) {
        double* gi = input.grad_data();
        const double* pk = kernels.data();
#pragma omp parallel
        {
          std::vector<double> scratch;
          std::vector<double> tmp(static_cast<size_t>(f * sh * sw));
#pragma omp for schedule(static)
          for (int64_t i = 0; i < n; ++i) {
            conv_gather(go + i * c * h * w, c, h, w, pk, f, nullptr, tmp.data(), scratch);
            double* dst = gi + i * f * sh * sw;
            for (size_t j = 0; j < tmp.size(); ++j) dst[j] += tmp[j];
          }
        }
      }
    });
  }
  return out;
}

Tensor dense(Tape* tape, const Tensor& input, const Tensor& weight, const Tensor& bias) {
  if (input.rank() != 2 || weight.rank() != 2 || input.dim(1) != weight.dim(0))
    throw_shape_error("dense", "inner dimensions disagree: " + shape_str(input.shape()) +
                                   " x " + shape_str(weight.shape()));
  if (bias.rank() != 1 || bias.dim(0) != weight.dim(1))
    throw_shape_error("dense", "bias " + shape_str(bias.shape()) + " vs weight " +
                                   shape_str(weight.shape()));
  return add_row_vector(tape, matmul(tape, input, weight), bias);
}

Tensor leaky_relu(Tape* tape, const Tensor& input, double slope) {
  Tensor out = Tensor::zeros(input.shape());
  const double* pi = input.data();
  double* po = out.data();
  const int64_t n = input.numel();
  for (int64_t i = 0; i < n; ++i) po[i] = pi[i] >= 0.0 ? pi[i] : slope * pi[i];
  if (grad_wanted(tape, {input})) {
    out.set_requires_grad(true);
    tape->record([input, out, slope]() mutable {
      if (!out.has_grad()) return;
      auto go = out.grad_view();
      auto gi = input.grad();
      const double* pi = input.data();
      for (size_t i = 0; i < go.size(); ++i) gi[i] += (pi[i] >= 0.0 ? 1.0 : slope) * go[i];
    });
  }
  return out;
}

Tensor tanh_op(Tape* tape, const Tensor& input) {
  Tensor out = Tensor::zeros(input.shape());
  const double* pi = input.data();
  double* po = out.data();
  const int64_t n = input.numel();
  for (int64_t i = 0; i < n; ++i) po[i] = std::tanh(pi[i]);
  if (grad_wanted(tape, {input})) {
    out.set_requires_grad(true);
    tape->record([input, out]() mutable {
      if (!out.has_grad()) return;
      auto go = out.grad_view();
      auto gi = input.grad();
      const double* po = out.data();
      for (size_t i = 0; i < go.size(); ++i) gi[i] += (1.0 - po[i] * po[i]) * go[i];
    });
  }
  return out;
}

Tensor sigmoid(Tape* tape, const Tensor& input) {
  Tensor out = Tensor::zeros(input.shape());
  const double* pi = input.data();
  double* po = out.data();
  const int64_t n = input.numel();
  for (int64_t i = 0; i < n; ++i) po[i] = 1.0 / (1.0 + std::exp(-pi[i]));
  if (grad_wanted(tape, {input})) {
    out.set_requires_grad(true);
    tape->record([input, out]() mutable {
      if (!out.has_grad()) return;
      auto go = out.grad_view();
      auto gi = input.grad();
      const double* po = out.data();
      for (size_t i = 0; i < go.size(); ++i) gi[i] += po[i] * (1.0 - po[i]) * go[i];
    });
  }
  return out;
}

Tensor batch_norm(Tape* tape, const Tensor& input, const Tensor& gamma, const Tensor& beta,
                  BatchNormState& state, bool train) {
  if (input.rank() < 2) throw_shape_error("batch_norm", "input must be (N,C,...), got " + shape_str(input.shape()));
  const int64_t n = input.dim(0), c = input.dim(1);
  if (gamma.rank() != 1 || gamma.dim(0) != c || beta.rank() != 1 || beta.dim(0) != c)
    throw_shape_error("batch_norm", "gamma/beta must have " + std::to_string(c) + " channels");
  int64_t spatial = 1;
  for (size_t i = 2; i < input.rank(); ++i) spatial *= input.dim(i);
  const int64_t m = n * spatial;  // samples per channel
  constexpr double kEps = 1e-5;
  constexpr double kMomentum = 0.9;

  Tensor out = Tensor::zeros(input.shape());
  std::vector<double> mean_c(c), invstd_c(c);

  if (train) {
    if (m < 2)
      throw std::invalid_argument(
          "batch_norm: degenerate statistics, " + std::to_string(m) +
          " sample(s) per channel in train mode (need >= 2)");
    for (int64_t ch = 0; ch < c; ++ch) {
      double s = 0.0;
      for (int64_t i = 0; i < n; ++i) {
        const double* src = input.data() + (i * c + ch) * spatial;
        for (int64_t j = 0; j < spatial; ++j) s += src[j];
      }
      const double mu = s / m;
      double var = 0.0;
      for (int64_t i = 0; i < n; ++i) {
        const double* src = input.data() + (i * c + ch) * spatial;
        for (int64_t j = 0; j < spatial; ++j) {
          const double d = src[j] - mu;
          var += d * d;
        }
      }
      var /= m;
      mean_c[ch] = mu;
      invstd_c[ch] = 1.0 / std::sqrt(var + kEps);
      state.running_mean.data()[ch] = kMomentum * state.running_mean.data()[ch] + (1.0 - kMomentum) * mu;
      state.running_var.data()[ch] = kMomentum * state.running_var.data()[ch] + (1.0 - kMomentum) * var;
    }
  } else {
    for (int64_t ch = 0; ch < c; ++ch) {
      mean_c[ch] = state.running_mean.data()[ch];
      invstd_c[ch] = 1.0 / std::sqrt(state.running_var.data()[ch] + kEps);
    }
  }

  for (int64_t i = 0; i < n; ++i)
    for (int64_t ch = 0; ch < c; ++ch) {
      const double* src = input.data() + (i * c + ch) * spatial;
      double* dst = out.data() + (i * c + ch) * spatial;
      const double g = gamma.data()[ch], bta = beta.data()[ch];
      const double mu = mean_c[ch], is = invstd_c[ch];
      for (int64_t j = 0; j < spatial; ++j) dst[j] = g * (src[j] - mu) * is + bta;
    }

  if (grad_wanted(tape, {input, gamma, beta})) {
    out.set_requires_grad(true);
    tape->record([input, gamma, beta, out, mean_c, invstd_c, n, c, spatial, m, train]() mutable {
      if (!out.has_grad()) return;
      const double* go = out.grad_view().data();
      const double* pi = input.data();
      for (int64_t ch = 0; ch < c; ++ch) {
        const double mu = mean_c[ch], is = invstd_c[ch], g = gamma.data()[ch];
        // channel reductions: sum(dy), sum(dy * xhat)
        double sum_dy = 0.0, sum_dy_xhat = 0.0;
        for (int64_t i = 0; i < n; ++i) {
          const double* gsrc = go + (i * c + ch) * spatial;
          const double* xsrc = pi + (i * c + ch) * spatial;
          for (int64_t j = 0; j < spatial; ++j) {
            sum_dy += gsrc[j];
            sum_dy_xhat += gsrc[j] * (xsrc[j] - mu) * is;
          }
        }
        if (gamma.requires_grad()) gamma.grad()[ch] += sum_dy_xhat;
        if (beta.requires_grad()) beta.grad()[ch] += sum_dy;
        if (input.requires_grad()) {
          double* gi = input.grad_data();
          if (train) {
            const double inv_m = 1.0 / static_cast<double>(m);
            for (int64_t i = 0; i < n; ++i) {
              const double* gsrc = go + (i * c + ch) * spatial;
              const double* xsrc = pi + (i * c + ch) * spatial;
              double* gdst = gi + (i * c + ch) * spatial;
              for (int64_t j = 0; j < spatial; ++j) {
                const double xhat = (xsrc[j] - mu) * is;
                gdst[j] += g * is * (gsrc[j] - inv_m * sum_dy - xhat * inv_m * sum_dy_xhat);
              }
            }
          } else {
            // running stats are constants in infer mode
            for (int64_t i = 0; i < n; ++i) {
              const double* gsrc = go + (i * c + ch) * spatial;
              double* gdst = gi + (i * c + ch) * spatial;
              for (int64_t j = 0; j < spatial; ++j) gdst[j] += g * is * gsrc[j];
            }
          }
        }
      }
    });
  }
  return out;
}

std::pair<Tensor, Tensor> lstm_cell(Tape* tape, const Tensor& x, const Tensor& h_prev,
                                    const Tensor& c_prev, const LstmCellParams& p) {
  if (h_prev.rank() != 2 || p.wh[0].rank() != 2 || h_prev.dim(1) != p.wh[0].dim(0))
    throw_shape_error("lstm_cell", "hidden size mismatch: state " + shape_str(h_prev.shape()) +
                                       " vs recurrent weights " + shape_str(p.wh[0].shape()));
  Tensor pre[4];
  for (int g = 0; g < 4; ++g) {
    Tensor s = add(tape, matmul(tape, x, p.wx[g]), matmul(tape, h_prev, p.wh[g]));
    pre[g] = add_row_vector(tape, s, p.b[g]);
  }
  Tensor i_gate = sigmoid(tape, pre[0]);
  Tensor f_gate = sigmoid(tape, pre[1]);
  Tensor g_cand = tanh_op(tape, pre[2]);
  Tensor o_gate = sigmoid(tape, pre[3]);
  Tensor c_next = add(tape, mul(tape, f_gate, c_prev), mul(tape, i_gate, g_cand));
  Tensor h_next = mul(tape, o_gate, tanh_op(tape, c_next));
  return {h_next, c_next};
}

}  // namespace fontgan
