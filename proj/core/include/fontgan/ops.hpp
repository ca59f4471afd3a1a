#pragma once

#include <vector>

#include "fontgan/tensor.hpp"

namespace fontgan {

// Differentiable primitives. Every op computes its forward result and, when
// `tape` is non-null and some input requires grad, records a backward rule.
// Passing tape == nullptr gives a plain (inference) evaluation.

Tensor add(Tape* tape, const Tensor& a, const Tensor& b);
Tensor sub(Tape* tape, const Tensor& a, const Tensor& b);
Tensor mul(Tape* tape, const Tensor& a, const Tensor& b);
Tensor scale(Tape* tape, const Tensor& a, double c);

// rows of `bias` (length = last dim of `a`) added to every row of `a`
Tensor add_row_vector(Tape* tape, const Tensor& a, const Tensor& bias);

// (N,K) x (K,M) -> (N,M)
Tensor matmul(Tape* tape, const Tensor& a, const Tensor& b);

Tensor reshape(Tape* tape, const Tensor& a, Shape new_shape);

// rows [start, start+count) of a rank-2 tensor
Tensor narrow_rows(Tape* tape, const Tensor& a, int64_t start, int64_t count);

// stack rank-2 tensors with equal column counts along dim 0
Tensor concat_rows(Tape* tape, const std::vector<Tensor>& parts);

// concatenate rank-2 tensors with equal row counts along dim 1
Tensor concat_cols(Tape* tape, const std::vector<Tensor>& parts);

Tensor sum(Tape* tape, const Tensor& a);
Tensor mean(Tape* tape, const Tensor& a);

// table (K,E), ids in [0,K) -> (ids.size(), E); grads scatter-add into rows
Tensor embedding(Tape* tape, const Tensor& table, const std::vector<int64_t>& ids);

// stops gradient flow: shares no tape history with `a`
Tensor detach(const Tensor& a);

bool grad_wanted(const Tape* tape, std::initializer_list<Tensor> inputs);

}  // namespace fontgan
