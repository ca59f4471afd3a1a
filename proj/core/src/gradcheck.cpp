#include "fontgan/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace fontgan {

double finite_diff_check(const std::function<Tensor(Tape*)>& build_loss,
                         std::vector<Tensor> wrt, double step) {
  // analytic side
  for (Tensor& t : wrt) t.zero_grad();
  Tape tape;
  Tensor loss = build_loss(&tape);
  backward_pass(loss, tape);
  std::vector<std::vector<double>> analytic;
  analytic.reserve(wrt.size());
  for (Tensor& t : wrt) {
    auto g = t.grad_view();
    analytic.emplace_back(g.begin(), g.end());
    if (analytic.back().empty()) analytic.back().assign(t.numel(), 0.0);
  }

  // central differences, one coordinate at a time
  double worst = 0.0;
  for (size_t ti = 0; ti < wrt.size(); ++ti) {
    double* vals = wrt[ti].data();
    for (int64_t i = 0; i < wrt[ti].numel(); ++i) {
      const double keep = vals[i];
      vals[i] = keep + step;
      const double up = build_loss(nullptr).value();
      vals[i] = keep - step;
      const double down = build_loss(nullptr).value();
      vals[i] = keep;
      const double central = (up - down) / (2.0 * step);
      const double a = analytic[ti][i];
      const double err = std::abs(a - central) / std::max(1e-8, std::abs(a) + std::abs(central));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace fontgan
