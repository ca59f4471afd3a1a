#pragma once

#include <vector>

#include "fontgan/tensor.hpp"

namespace fontgan {

// Scalar losses. Probabilities fed to the log-based losses are clamped to
// [1e-7, 1-1e-7] rather than rejected, so a saturated discriminator yields a
// large-but-finite loss with zero gradient past the clamp.
constexpr double kProbClamp = 1e-7;

// -[y log p + (1-y) log(1-p)], mean over all elements; target same shape
Tensor bce(Tape* tape, const Tensor& probs, const Tensor& targets);
// same with a constant target (0 or 1) for every element
Tensor bce_const(Tape* tape, const Tensor& probs, double target);

// mean |a - b|
Tensor l1_loss(Tape* tape, const Tensor& a, const Tensor& b);

// logits (N,K), labels in [0,K): mean negative log softmax probability
Tensor cross_entropy(Tape* tape, const Tensor& logits, const std::vector<int64_t>& labels);

// mean log D(real) + mean log(1 - D(fake)): the bracketed min-max value,
// evaluated as batch means
Tensor gan_value(Tape* tape, const Tensor& d_real, const Tensor& d_fake);

}  // namespace fontgan
