#pragma once

// Error-free accumulation. The running sum is kept as a list of
// non-overlapping doubles (Shewchuk partials), so addition is exact,
// associative and commutative; value() rounds once at the end. Ensemble
// statistics therefore do not depend on how paths are split across threads.

#include <cstdint>
#include <vector>

namespace signet {

class ExactSum {
 public:
  void add(double x);
  void merge(const ExactSum& other);
  /// Correctly rounded value of the exact sum.
  double value() const;
  const std::vector<double>& partials() const noexcept { return partials_; }

 private:
  std::vector<double> partials_;
};

/// Exact first and second moments of a stream of samples.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::uint64_t count() const noexcept { return n_; }
  double mean() const;
  /// Unbiased sample variance, computed from the exact sums with a single
  /// final rounding; exactly 0 when all samples are equal.
  double variance() const;

 private:
  ExactSum sum_;
  ExactSum sum_sq_;
  std::uint64_t n_ = 0;
};

}  // namespace signet
