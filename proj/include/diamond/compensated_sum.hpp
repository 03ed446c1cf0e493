#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace diamond {

/// Neumaier's variant of Kahan summation. The running compensation also
/// captures the case where the addend is larger than the partial sum.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// Pairwise-tree reduction; the association order depends only on xs.size().
inline double pairwise_total(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  if (xs.size() <= 8) return compensated_total(xs);
  const std::size_t half = xs.size() / 2;
  return pairwise_total(xs.first(half)) + pairwise_total(xs.subspan(half));
}

}  // namespace diamond
