#pragma once

#include <cmath>

namespace twinlab {

/// Neumaier's compensated summation. Result depends only on the order in
/// which terms are added.
template <class T>
class CompensatedSum {
 public:
  void add(T x) noexcept {
    const T t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(T x) noexcept {
    add(x);
    return *this;
  }
  T value() const noexcept { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

}  // namespace twinlab
