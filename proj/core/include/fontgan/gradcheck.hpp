#pragma once

#include <functional>
#include <vector>

#include "fontgan/tensor.hpp"

namespace fontgan {

// Independent gradient oracle. `build_loss` must rebuild the same scalar
// computation from the current contents of `wrt` each time it is called;
// with a tape it records the graph, with nullptr it is a plain evaluation.
//
// Returns max over all coordinates of
//   |analytic - central_difference| / max(1e-8, |analytic| + |central|).
// The reference side uses only forward evaluations at perturbed points, so
// it stays independent of the backward implementation it checks.
double finite_diff_check(const std::function<Tensor(Tape*)>& build_loss,
                         std::vector<Tensor> wrt, double step = 1e-5);

}  // namespace fontgan
