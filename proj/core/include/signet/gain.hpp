#pragma once

// Time-varying control gains c(t) and the integral conditions the
// convergence results place on them.

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace signet {

struct PowerGain {
  double c0 = 1.0;
  double alpha = 1.0;  // c(t) = c0 (1 + t)^-alpha
};

struct ConstantGain {
  double c0 = 1.0;
};

/// Piecewise-linear interpolation of (t, c) samples, clamped at both ends.
struct TableGain {
  std::vector<std::pair<double, double>> points;  // strictly increasing t
  std::string source;
};

class GainSpec {
 public:
  using Family = std::variant<PowerGain, ConstantGain, TableGain>;

  /// Throws Errc::InvalidInput on c0 <= 0, alpha < 0, an empty or
  /// non-monotone table, or negative table values.
  explicit GainSpec(Family family);

  static GainSpec power(double c0, double alpha) { return GainSpec(PowerGain{c0, alpha}); }
  static GainSpec constant(double c0) { return GainSpec(ConstantGain{c0}); }

  /// power:c0=1,alpha=1 | const:c0=1 | table:<path to CSV of t,c rows>
  /// Numeric values may be written as fractions (alpha=1/3).
  static GainSpec parse(std::string_view text);

  const Family& family() const noexcept { return family_; }
  std::string describe() const;

 private:
  Family family_;
};

/// Throws Errc::InvalidInput for t < 0.
double eval_gain(const GainSpec& g, double t);

enum class GainTarget { MeanSquare, AlmostSure };

std::string_view to_string(GainTarget t) noexcept;

struct ConditionReport {
  bool divergent_integral = false;  // int_0^inf c = inf
  bool vanishing = false;           // c(t) -> 0
  bool square_integrable = false;   // int_0^inf c^2 < inf
  bool heuristic = false;           // flags estimated from a finite table
  double horizon = 0.0;             // table support end when heuristic
  double integral = 0.0;            // int over the table support when heuristic
  double square_integral = 0.0;
  bool passes = false;
};

/// Mean-square results need a divergent integral and a vanishing gain;
/// almost-sure results additionally need square integrability. Table gains
/// never pass: the conditions concern t -> infinity.
ConditionReport validate_gain(const GainSpec& g, GainTarget target);

}  // namespace signet
