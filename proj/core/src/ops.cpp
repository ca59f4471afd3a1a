#include "fontgan/ops.hpp"

#include <cstring>
#include <stdexcept>

#include "fontgan/gemm.hpp"

namespace fontgan {

bool grad_wanted(const Tape* tape, std::initializer_list<Tensor> inputs) {
  if (!tape) return false;
  for (const Tensor& t : inputs)
    if (t.requires_grad()) return true;
  return false;
}

static void check_same_shape(const char* op, const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape())
    throw_shape_error(op, "shape mismatch " + shape_str(a.shape()) + " vs " +
                              shape_str(b.shape()));
}

Tensor add(Tape* tape, const Tensor& a, const Tensor& b) {
  check_same_shape("add", a, b);
  Tensor out = Tensor::zeros(a.shape());
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  const int64_t n = a.numel();
  for (int64_t i = 0; i < n; ++i) po[i] = pa[i] + pb[i];
  if (grad_wanted(tape, {a, b})) {
    out.set_requires_grad(true);
    tape->record([a, b, out]() mutable {
      if (!out.has_grad()) return;
      auto go = out.grad_view();
      if (a.requires_grad()) {
        auto ga = a.grad();
        for (size_t i = 0; i < go.size(); ++i) ga[i] += go[i];
      }
      if (b.requires_grad()) {
        auto gb = b.grad();
        for (size_t i = 0; i < go.size(); ++i) gb[i] += go[i];
      }
    });
  }
  return out;
}

Tensor sub(Tape* tape, const Tensor& a, const Tensor& b) {
  check_same_shape("sub", a, b);
  Tensor out = Tensor::zeros(a.shape());
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  const int64_t n = a.numel();
  for (int64_t i = 0; i < n; ++i) po[i] = pa[i] - pb[i];
  if (grad_wanted(tape, {a, b})) {
    out.set_requires_grad(true);
    tape->record([a, b, out]() mutable {
      if (!out.has_grad()) return;
      auto go = out.grad_view();
      if (a.requires_grad()) {
        auto ga = a.grad();
        for (size_t i = 0; i < go.size(); ++i) ga[i] += go[i];
      }
      if (b.requires_grad()) {
        auto gb = b.grad();
        for (size_t i = 0; i < go.size(); ++i) gb[i] -= go[i];
      }
    });
  }
  return out;
}

Tensor mul(Tape* tape, const Tensor& a, const Tensor& b) {
  check_same_shape("mul", a, b);
  Tensor out = Tensor::zeros(a.shape());
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  const int64_t n = a.numel();
  for (int64_t i = 0; i < n; ++i) po[i] = pa[i] * pb[i];
  if (grad_wanted(tape, {a, b})) {
    out.set_requires_grad(true);
    tape->record([a, b, out]() mutable {
      if (!out.has_grad()) return;
      auto go = out.grad_view();
      if (a.requires_grad()) {
        auto ga = a.grad();
        const double* vb = b.data();
        for (size_t i = 0; i < go.size(); ++i) ga[i] += go[i] * vb[i];
      }
      if (b.requires_grad()) {
        auto gb = b.grad();
        const double* va = a.data();
        for (size_t i = 0; i < go.size(); ++i) gb[i] += go[i] * va[i];
      }
    });
  }
  return out;
}

Tensor scale(Tape* tape, const Tensor& a, double c) {
  Tensor out = Tensor::zeros(a.shape());
  const double* pa = a.data();
  double* po = out.data();
  const int64_t n = a.numel();
  for (int64_t i = 0; i < n; ++i) po[i] = c * pa[i];
  if (grad_wanted(tape, {a})) {
    out.set_requires_grad(true);
    tape->record([a, out, c]() mutable {
      if (!out.has_grad()) return;
      auto go = out.grad_view();
      auto ga = a.grad();
      for (size_t i = 0; i < go.size(); ++i) ga[i] += c * go[i];
    });
  }
  return out;
}

Tensor add_row_vector(Tape* tape, const Tensor& a, const Tensor& bias) {
  if (a.rank() < 1 || bias.rank() != 1 || a.dim(a.rank() - 1) != bias.dim(0))
    throw_shape_error("add_row_vector", "input " + shape_str(a.shape()) +
                                            " vs bias " + shape_str(bias.shape()));
  Tensor out = Tensor::zeros(a.shape());
  const int64_t cols = bias.dim(0);
  const int64_t rows = a.numel() / cols;
  const double* pa = a.data();
  const double* pb = bias.data();
  double* po = out.data();
  for (int64_t r = 0; r < rows; ++r)
    for (int64_t c = 0; c < cols; ++c) po[r * cols + c] = pa[r * cols + c] + pb[c];
  if (grad_wanted(tape, {a, bias})) {
    out.set_requires_grad(true);
    tape->record([a, bias, out, rows, cols]() mutable {
      if (!out.has_grad()) return;
      auto go = out.grad_view();
      if (a.requires_grad()) {
        auto ga = a.grad();
        for (size_t i = 0; i < go.size(); ++i) ga[i] += go[i];
      }
      if (bias.requires_grad()) {
        auto gb = bias.grad();
        for (int64_t r = 0; r < rows; ++r)
          for (int64_t c = 0; c < cols; ++c) gb[c] += go[r * cols + c];
      }
    });
  }
  return out;
}

Tensor matmul(Tape* tape, const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0))
    throw_shape_error("matmul", "inner dimensions disagree: " + shape_str(a.shape()) +
                                    " x " + shape_str(b.shape()));
  const int64_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  Tensor out = Tensor::zeros({m, n});
  gemm_nn(m, n, k, a.data(), b.data(), out.data(), 0.0);
  if (grad_wanted(tape, {a, b})) {
    out.set_requires_grad(true);
    tape->record([a, b, out, m, n, k]() mutable {
      if (!out.has_grad()) return;
      const double* go = out.grad_view().data();
      if (a.requires_grad()) gemm_nt(m, k, n, go, b.data(), a.grad_data(), 1.0);
      if (b.requires_grad()) gemm_tn(k, n, m, a.data(), go, b.grad_data(), 1.0);
    });
  }
  return out;
}

Tensor reshape(Tape* tape, const Tensor& a, Shape new_shape) {
  if (shape_numel(new_shape) != a.numel())
    throw_shape_error("reshape", "cannot view " + shape_str(a.shape()) + " as " +
                                     shape_str(new_shape));
  Tensor out = Tensor::zeros(new_shape);
  std::memcpy(out.data(), a.data(), sizeof(double) * a.numel());
  if (grad_wanted(tape, {a})) {
    out.set_requires_grad(true);
    tape->record([a, out]() mutable {
      if (!out.has_grad()) return;
      auto go = out.grad_view();
      auto ga = a.grad();
      for (size_t i = 0; i < go.size(); ++i) ga[i] += go[i];
    });
  }
  return out;
}

Tensor narrow_rows(Tape* tape, const Tensor& a, int64_t start, int64_t count) {
  if (a.rank() != 2) throw_shape_error("narrow_rows", "expects rank 2, got " + shape_str(a.shape()));
  if (start < 0 || count <= 0 || start + count > a.dim(0))
    throw_shape_error("narrow_rows", "rows [" + std::to_string(start) + "," +
                                         std::to_string(start + count) + ") out of " +
                                         std::to_string(a.dim(0)));
  const int64_t cols = a.dim(1);
  Tensor out = Tensor::zeros({count, cols});
  std::memcpy(out.data(), a.data() + start * cols, sizeof(double) * count * cols);
  if (grad_wanted(tape, {a})) {
    out.set_requires_grad(true);
    tape->record([a, out, start, cols]() mutable {
      if (!out.has_grad()) return;
      auto go = out.grad_view();
      double* ga = a.grad_data() + start * cols;
      for (size_t i = 0; i < go.size(); ++i) ga[i] += go[i];
    });
  }
  return out;
}

Tensor concat_rows(Tape* tape, const std::vector<Tensor>& parts) {
  if (parts.empty()) throw_shape_error("concat_rows", "empty input list");
  const int64_t cols = parts[0].rank() == 2 ? parts[0].dim(1) : -1;
  int64_t rows = 0;
  bool want = false;
  for (const Tensor& p : parts) {
    if (p.rank() != 2 || p.dim(1) != cols)
      throw_shape_error("concat_rows", "column mismatch at " + shape_str(p.shape()));
    rows += p.dim(0);
    want = want || (tape && p.requires_grad());
  }
  Tensor out = Tensor::zeros({rows, cols});
  int64_t r = 0;
  for (const Tensor& p : parts) {
    std::memcpy(out.data() + r * cols, p.data(), sizeof(double) * p.numel());
    r += p.dim(0);
  }
  if (want) {
    out.set_requires_grad(true);
    auto held = parts;
    tape->record([held, out, cols]() mutable {
      if (!out.has_grad()) return;
      const double* go = out.grad_view().data();
      int64_t r = 0;
      for (Tensor& p : held) {
        if (p.requires_grad()) {
          double* gp = p.grad_data();
          const double* src = go + r * cols;
          for (int64_t i = 0; i < p.numel(); ++i) gp[i] += src[i];
        }
        r += p.dim(0);
      }
    });
  }
  return out;
}

Tensor concat_cols(Tape* tape, const std::vector<Tensor>& parts) {
  if (parts.empty()) throw_shape_error("concat_cols", "empty input list");
  const int64_t rows = parts[0].rank() == 2 ? parts[0].dim(0) : -1;
  int64_t cols = 0;
  bool want = false;
  for (const Tensor& p : parts) {
    if (p.rank() != 2 || p.dim(0) != rows)
      throw_shape_error("concat_cols", "row mismatch at " + shape_str(p.shape()));
    cols += p.dim(1);
    want = want || (tape && p.requires_grad());
  }
  Tensor out = Tensor::zeros({rows, cols});
  double* po = out.data();
  int64_t off = 0;
  for (const Tensor& p : parts) {
    const int64_t pc = p.dim(1);
    const double* pp = p.data();
    for (int64_t r = 0; r < rows; ++r)
      std::memcpy(po + r * cols + off, pp + r * pc, sizeof(double) * pc);
    off += pc;
  }
  if (want) {
    out.set_requires_grad(true);
    auto held = parts;
    tape->record([held, out, rows, cols]() mutable {
      if (!out.has_grad()) return;
      const double* go = out.grad_view().data();
      int64_t off = 0;
      for (Tensor& p : held) {
        const int64_t pc = p.dim(1);
        if (p.requires_grad()) {
          double* gp = p.grad_data();
          for (int64_t r = 0; r < rows; ++r)
            for (int64_t c = 0; c < pc; ++c) gp[r * pc + c] += go[r * cols + off + c];
        }
        off += pc;
      }
    });
  }
  return out;
}

Tensor sum(Tape* tape, const Tensor& a) {
  double s = 0.0;
  const double* pa = a.data();
  for (int64_t i = 0; i < a.numel(); ++i) s += pa[i];
  Tensor out = Tensor::scalar(s);
  if (grad_wanted(tape, {a})) {
    out.set_requires_grad(true);
    tape->record([a, out]() mutable {
      if (!out.has_grad()) return;
      const double g = out.grad_view()[0];
      auto ga = a.grad();
      for (size_t i = 0; i < ga.size(); ++i) ga[i] += g;
    });
  }
  return out;
}

Tensor mean(Tape* tape, const Tensor& a) {
  const double inv = 1.0 / static_cast<double>(a.numel());
  double s = 0.0;
  const double* pa = a.data();
  for (int64_t i = 0; i < a.numel(); ++i) s += pa[i];
  Tensor out = Tensor::scalar(s * inv);
  if (grad_wanted(tape, {a})) {
    out.set_requires_grad(true);
    tape->record([a, out, inv]() mutable {
      if (!out.has_grad()) return;
      const double g = out.grad_view()[0] * inv;
      auto ga = a.grad();
      for (size_t i = 0; i < ga.size(); ++i) ga[i] += g;
    });
  }
  return out;
}

Tensor embedding(Tape* tape, const Tensor& table, const std::vector<int64_t>& ids) {
  if (table.rank() != 2) throw_shape_error("embedding", "table must be rank 2");
  const int64_t k = table.dim(0), e = table.dim(1);
  for (int64_t id : ids)
    if (id < 0 || id >= k)
      throw_shape_error("embedding", "id " + std::to_string(id) + " outside table of " +
                                         std::to_string(k) + " rows");
  const int64_t n = static_cast<int64_t>(ids.size());
  if (n == 0) throw_shape_error("embedding", "empty id list");
  Tensor out = Tensor::zeros({n, e});
  for (int64_t r = 0; r < n; ++r)
    std::memcpy(out.data() + r * e, table.data() + ids[r] * e, sizeof(double) * e);
  if (grad_wanted(tape, {table})) {
    out.set_requires_grad(true);
    tape->record([table, out, ids, e]() mutable {
      if (!out.has_grad()) return;
      const double* go = out.grad_view().data();
      double* gt = table.grad_data();
      for (size_t r = 0; r < ids.size(); ++r) {
        double* row = gt + ids[r] * e;
        const double* src = go + r * e;
        for (int64_t c = 0; c < e; ++c) row[c] += src[c];
      }
    });
  }
  return out;
}

Tensor detach(const Tensor& a) {
  Tensor out = a.clone();
  out.set_requires_grad(false);
  return out;
}

}  // namespace fontgan
