#include "signet/exact_sum.hpp"

#include <cmath>
#include <utility>

namespace signet {

void ExactSum::add(double x) {
  std::size_t i = 0;
  for (double y : partials_) {
    if (std::abs(x) < std::abs(y)) std::swap(x, y);
    const double hi = x + y;
    const double lo = y - (hi - x);
    if (lo != 0.0) partials_[i++] = lo;
    x = hi;
  }
  partials_.resize(i);
  partials_.push_back(x);
}

void ExactSum::merge(const ExactSum& other) {
  for (double p : other.partials_) add(p);
}

double ExactSum::value() const {
  std::size_t n = partials_.size();
  if (n == 0) return 0.0;
  double hi = partials_[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials_[--n];
    hi = x + y;
    lo = y - (hi - x);
    if (lo != 0.0) break;
  }
  // Round-half-even fix-up when the remaining partials push the tail past a
  // halfway point.
  if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

void MomentAccumulator::add(double x) {
  sum_.add(x);
  const double sq = x * x;
  sum_sq_.add(sq);
  sum_sq_.add(std::fma(x, x, -sq));
  ++n_;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  sum_.merge(other.sum_);
  sum_sq_.merge(other.sum_sq_);
  n_ += other.n_;
}

double MomentAccumulator::mean() const {
  return n_ == 0 ? 0.0 : sum_.value() / static_cast<double>(n_);
}

double MomentAccumulator::variance() const {
  if (n_ < 2) return 0.0;
  // n * sum(x^2) - (sum x)^2, expanded with error-free products.
  const double n = static_cast<double>(n_);
  ExactSum numer;
  auto add_product = [&numer](double a, double b, double sign) {
    const double p = a * b;
    numer.add(sign * p);
    numer.add(sign * std::fma(a, b, -p));
  };
  for (double a : sum_sq_.partials()) add_product(a, n, 1.0);
  const auto& s1 = sum_.partials();
  for (double a : s1)
    for (double b : s1) add_product(a, b, -1.0);
  const double v = numer.value() / (n * (n - 1.0));
  return v > 0.0 ? v : 0.0;
}

}  // namespace signet
