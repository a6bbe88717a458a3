#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "signet/linalg.hpp"

namespace signet {

/// Multiplicative-noise intensity f(x) applied to relative states x_j - x_i.
/// Linear(kappa) is f(x) = kappa * x; Custom wraps an arbitrary map together
/// with its claimed Lipschitz-type bound ||f(x)|| <= bound * ||x||.
class NoiseIntensity {
 public:
  using Fn = std::function<void(std::span<const double> x, std::span<double> out)>;

  static NoiseIntensity linear(double kappa);
  static NoiseIntensity custom(std::string tag, double bound, Fn fn);

  bool is_linear() const noexcept { return !fn_; }
  double kappa() const noexcept { return kappa_; }
  double bound() const noexcept { return bound_; }
  const std::string& tag() const noexcept { return tag_; }
  bool is_zero() const noexcept { return is_linear() && kappa_ == 0.0; }

  void apply(std::span<const double> x, std::span<double> out) const;

 private:
  double kappa_ = 0.0;
  double bound_ = 0.0;
  std::string tag_ = "linear";
  Fn fn_;
};

struct LipschitzReport {
  bool ok = false;
  double observed_ratio_max = 0.0;
  bool empirical = false;  // true when only sampled, never for Linear
};

/// Throws Errc::InvalidInput for an empty sample set or a zero sample.
LipschitzReport check_lipschitz(const NoiseIntensity& f, std::span<const Vector> samples);

}  // namespace signet
