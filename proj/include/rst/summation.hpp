#pragma once

#include <cmath>

namespace rst {

// Neumaier's variant of Kahan summation. Keeps a running correction term so
// that long sums of terms with mixed magnitudes lose O(eps) rather than
// O(n eps) relative accuracy.
template <typename T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T initial) : sum_(initial) {}

  CompensatedSum& operator+=(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      correction_ += (sum_ - t) + x;
    } else {
      correction_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator-=(T x) { return *this += -x; }

  T value() const { return sum_ + correction_; }

 private:
  T sum_{0};
  T correction_{0};
};

}  // namespace rst
