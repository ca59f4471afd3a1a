#include "fontgan/tensor.hpp"

#include <sstream>
#include <stdexcept>

namespace fontgan {

std::string shape_str(const Shape& s) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << ",";
    os << s[i];
  }
  os << ")";
  return os.str();
}

int64_t shape_numel(const Shape& s) {
  int64_t n = 1;
  for (int64_t e : s) n *= e;
  return n;
}

void throw_shape_error(const std::string& op, const std::string& detail) {
  throw std::invalid_argument(op + ": " + detail);
}

static void check_shape_positive(const Shape& s) {
  for (int64_t e : s) {
    if (e <= 0) throw_shape_error("Tensor", "non-positive extent in " + shape_str(s));
  }
}

Tensor Tensor::zeros(Shape shape, bool requires_grad) {
  check_shape_positive(shape);
  auto d = std::make_shared<Data>();
  d->values.assign(static_cast<size_t>(shape_numel(shape)), 0.0);
  d->shape = std::move(shape);
  d->requires_grad = requires_grad;
  return Tensor(std::move(d));
}

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  Tensor t = zeros(std::move(shape), requires_grad);
  for (double& v : t.d_->values) v = value;
  return t;
}

Tensor Tensor::from_values(Shape shape, std::vector<double> values, bool requires_grad) {
  check_shape_positive(shape);
  if (shape_numel(shape) != static_cast<int64_t>(values.size()))
    throw_shape_error("Tensor::from_values",
                      "shape " + shape_str(shape) + " does not match " +
                          std::to_string(values.size()) + " values");
  auto d = std::make_shared<Data>();
  d->shape = std::move(shape);
  d->values = std::move(values);
  d->requires_grad = requires_grad;
  return Tensor(std::move(d));
}

Tensor Tensor::scalar(double value, bool requires_grad) {
  return from_values({1}, {value}, requires_grad);
}

const Shape& Tensor::shape() const { return d_->shape; }
int64_t Tensor::dim(size_t i) const { return d_->shape.at(i); }
size_t Tensor::rank() const { return d_->shape.size(); }
int64_t Tensor::numel() const { return static_cast<int64_t>(d_->values.size()); }

double* Tensor::data() { return d_->values.data(); }
const double* Tensor::data() const { return d_->values.data(); }
std::span<double> Tensor::values() { return d_->values; }
std::span<const double> Tensor::values() const { return d_->values; }

double Tensor::value() const {
  if (numel() != 1)
    throw std::logic_error("Tensor::value: tensor has " + std::to_string(numel()) +
                           " elements, expected a scalar");
  return d_->values[0];
}

bool Tensor::requires_grad() const { return d_->requires_grad; }
void Tensor::set_requires_grad(bool v) { d_->requires_grad = v; }

bool Tensor::has_grad() const { return !d_->grad.empty(); }

std::span<double> Tensor::grad() {
  if (d_->grad.empty()) d_->grad.assign(d_->values.size(), 0.0);
  return d_->grad;
}

double* Tensor::grad_data() { return grad().data(); }

std::span<const double> Tensor::grad_view() const { return d_->grad; }

void Tensor::zero_grad() {
  if (!d_->grad.empty()) d_->grad.assign(d_->values.size(), 0.0);
}

Tensor Tensor::clone() const {
  auto d = std::make_shared<Data>();
  d->shape = d_->shape;
  d->values = d_->values;
  d->requires_grad = d_->requires_grad;
  return Tensor(std::move(d));
}

void Tape::replay_backward() {
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) (*it)();
  nodes_.clear();
}

void backward_pass(Tensor loss, Tape& tape) {
  if (!loss.defined() || loss.numel() != 1)
    throw std::logic_error("backward_pass: loss must be a scalar tensor");
  loss.grad()[0] += 1.0;
  tape.replay_backward();
}

}  // namespace fontgan
