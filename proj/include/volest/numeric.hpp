#pragma once

#include <cmath>
#include <span>

namespace volest {

// Neumaier's compensated summation.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar v) {
    using std::abs;
    const Scalar t = sum_ + v;
    if (abs(sum_) >= abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_{0};
  Scalar comp_{0};
};

// Recursive pairwise sum; the result depends only on the order of `v`.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double e : v) s += e;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace volest
