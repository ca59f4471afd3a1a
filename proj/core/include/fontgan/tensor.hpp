#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fontgan {

using Shape = std::vector<int64_t>;

std::string shape_str(const Shape& s);
int64_t shape_numel(const Shape& s);

// Dense 64-bit float tensor. Copying a Tensor copies the handle, not the
// storage: two copies see each other's mutations. This is what makes
// parameter sharing between networks (one trunk, two heads) work.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor from_values(Shape shape, std::vector<double> values,
                            bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  bool defined() const { return d_ != nullptr; }
  const Shape& shape() const;
  int64_t dim(size_t i) const;
  size_t rank() const;
  int64_t numel() const;

  double* data();
  const double* data() const;
  std::span<double> values();
  std::span<const double> values() const;

  // scalar accessor; throws unless numel() == 1
  double value() const;

  bool requires_grad() const;
  void set_requires_grad(bool v);

  bool has_grad() const;
  // allocates (zero-filled) on first use
  std::span<double> grad();
  double* grad_data();
  // empty span when no grad has been accumulated yet
  std::span<const double> grad_view() const;
  void zero_grad();

  bool same_storage(const Tensor& other) const { return d_ == other.d_; }

  // deep copy (fresh storage, no grad)
  Tensor clone() const;

 private:
  struct Data {
    Shape shape;
    std::vector<double> values;
    std::vector<double> grad;  // empty until first accumulation
    bool requires_grad = false;
  };
  std::shared_ptr<Data> d_;

  explicit Tensor(std::shared_ptr<Data> d) : d_(std::move(d)) {}
};

// Record of executed differentiable operations. Each entry is a backward
// rule closure; replaying them in reverse execution order propagates
// gradients from the loss to every requires_grad tensor that fed it.
class Tape {
 public:
  void record(std::function<void()> backward_rule) {
    nodes_.push_back(std::move(backward_rule));
  }
  size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  // runs every rule exactly once, newest first, then clears the tape
  void replay_backward();

 private:
  std::vector<std::function<void()>> nodes_;
};

// Seeds d(loss)/d(loss) = 1 and replays the tape. Gradients accumulate:
// repeated calls without zero_grad() in between add up. The tape is
// consumed (cleared) by the call. Throws if loss is not a scalar.
void backward_pass(Tensor loss, Tape& tape);

[[noreturn]] void throw_shape_error(const std::string& op, const std::string& detail);

}  // namespace fontgan
