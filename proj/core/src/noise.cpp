#include "signet/noise.hpp"

#include <algorithm>

#include "signet/error.hpp"

namespace signet {

NoiseIntensity NoiseIntensity::linear(double kappa) {
  if (!(kappa >= 0.0)) throw Error(Errc::InvalidInput, "noise intensity kappa must be >= 0");
  NoiseIntensity f;
  f.kappa_ = kappa;
  f.bound_ = kappa;
  return f;
}

NoiseIntensity NoiseIntensity::custom(std::string tag, double bound, Fn fn) {
  if (!fn) throw Error(Errc::InvalidInput, "custom noise intensity needs a function");
  if (!(bound >= 0.0)) throw Error(Errc::InvalidInput, "noise intensity bound must be >= 0");
  NoiseIntensity f;
  f.bound_ = bound;
  f.tag_ = std::move(tag);
  f.fn_ = std::move(fn);
  return f;
}

void NoiseIntensity::apply(std::span<const double> x, std::span<double> out) const {
  if (fn_) {
    fn_(x, out);
    return;
  }
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = kappa_ * x[k];
}

LipschitzReport check_lipschitz(const NoiseIntensity& f, std::span<const Vector> samples) {
  if (samples.empty()) throw Error(Errc::InvalidInput, "check_lipschitz: no samples");
  for (const auto& x : samples)
    if (norm2(x) == 0.0) throw Error(Errc::InvalidInput, "check_lipschitz: zero sample");

  if (f.is_linear()) return {true, f.kappa(), false};

  LipschitzReport r;
  r.empirical = true;
  Vector fx;
  for (const auto& x : samples) {
    fx.assign(x.size(), 0.0);
    f.apply(x, fx);
    r.observed_ratio_max = std::max(r.observed_ratio_max, norm2(fx) / norm2(x));
  }
  r.ok = r.observed_ratio_max <= f.bound() * (1.0 + 1e-12);
  return r;
}

}  // namespace signet
