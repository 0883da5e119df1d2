#ifndef NASHZERO_STATISTICS_H_
#define NASHZERO_STATISTICS_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace nashzero {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Per-coordinate Welford mean/variance over a stream of equal-length vectors.
class VectorMoments {
 public:
  explicit VectorMoments(std::size_t dim) : mean_(dim, 0.0), m2_(dim, 0.0) {}

  void Add(std::span<const double> x) {
    ++count_;
    const double inv = 1.0 / static_cast<double>(count_);
    for (std::size_t k = 0; k < mean_.size(); ++k) {
      const double delta = x[k] - mean_[k];
      mean_[k] += delta * inv;
      m2_[k] += delta * (x[k] - mean_[k]);
    }
  }

  std::size_t count() const { return count_; }
  const std::vector<double>& mean() const { return mean_; }

  // Unbiased sample variance per coordinate.
  std::vector<double> Variance() const {
    std::vector<double> var(mean_.size(), 0.0);
    if (count_ < 2) return var;
    for (std::size_t k = 0; k < var.size(); ++k) {
      var[k] = m2_[k] / static_cast<double>(count_ - 1);
    }
    return var;
  }

  std::vector<double> StandardError() const {
    std::vector<double> se = Variance();
    for (double& v : se) v = std::sqrt(v / static_cast<double>(count_));
    return se;
  }

  // Sum of per-coordinate variances: mean squared distance to the mean.
  double TotalVariance() const {
    double total = 0.0;
    for (double v : Variance()) total += v;
    return total;
  }

 private:
  std::size_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

}  // namespace nashzero

#endif  // NASHZERO_STATISTICS_H_
