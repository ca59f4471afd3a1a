#pragma once

#include <utility>

#include "fontgan/ops.hpp"

namespace fontgan {

// Layer primitives for the 5x5 / stride-2 / pad-2 architecture family.
// Convolutions halve spatial extent (ceil), transposed convolutions double it.

// input (N,C,H,W), kernels (F,C,5,5), bias (F) -> (N,F,ceil(H/2),ceil(W/2))
Tensor conv2d(Tape* tape, const Tensor& input, const Tensor& kernels, const Tensor& bias);

// input (N,F,H,W), kernels (F,C,5,5), bias (C) -> (N,C,2H,2W)
// Forward is exactly conv2d's input-gradient with the same kernels
// (stride 2, pad 2, output padding 1).
Tensor transposed_conv2d(Tape* tape, const Tensor& input, const Tensor& kernels,
                         const Tensor& bias);

// input (N,Din), weight (Din,Dout), bias (Dout) -> (N,Dout)
Tensor dense(Tape* tape, const Tensor& input, const Tensor& weight, const Tensor& bias);

Tensor leaky_relu(Tape* tape, const Tensor& input, double slope = 0.2);
Tensor tanh_op(Tape* tape, const Tensor& input);
Tensor sigmoid(Tape* tape, const Tensor& input);

// Running statistics owned by the layer; updated only in train mode.
struct BatchNormState {
  Tensor running_mean;  // (C)
  Tensor running_var;   // (C)
};

// input (N,C,...) normalized per channel. Train mode uses batch statistics
// (requires >= 2 samples per channel) and updates running stats with
// momentum 0.9; infer mode uses the running stats. epsilon 1e-5.
Tensor batch_norm(Tape* tape, const Tensor& input, const Tensor& gamma,
                  const Tensor& beta, BatchNormState& state, bool train);

// Four-gate LSTM parameters for one direction. Gate order: input, forget,
// candidate, output.
struct LstmCellParams {
  Tensor wx[4];  // (D,U) each
  Tensor wh[4];  // (U,U) each
  Tensor b[4];   // (U) each
};

// x (N,D), h_prev/c_prev (N,U) -> (h, c), standard LSTM equations
std::pair<Tensor, Tensor> lstm_cell(Tape* tape, const Tensor& x, const Tensor& h_prev,
                                    const Tensor& c_prev, const LstmCellParams& p);

}  // namespace fontgan
