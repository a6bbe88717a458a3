#pragma once

// Euler-Maruyama integration of the semi-autonomous network with additive
// and multiplicative measurement noise on every edge:
//
//   dx = c(t) [-L_B x + (Delta kron I_d) B x0] dt
//        + c(t) sum_{(i,j)} e_i kron (sigma |A_ij| 1_d) dw1_ji
//        + c(t) sum_{(i,j)} e_i kron (|A_ij| f(x_j - x_i)) dw2_ji
//
// Coefficients are evaluated at the left end of each step (Ito).

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <variant>

#include "signet/gain.hpp"
#include "signet/linalg.hpp"
#include "signet/noise.hpp"
#include "signet/schedule.hpp"

namespace signet {

/// x_i(0) drawn independently and uniformly from [lo, hi]^d per path.
struct UniformInit {
  double lo = -5.0;
  double hi = 5.0;
};

using InitialCondition = std::variant<Vector, UniformInit>;

inline constexpr double kBlowupNorm = 1e12;

struct SimConfig {
  std::shared_ptr<const TopologySchedule> schedule;
  GainSpec gain = GainSpec::power(1.0, 1.0);
  double sigma_add = 0.0;
  NoiseIntensity intensity = NoiseIntensity::linear(0.0);
  double dt = 1e-3;
  double horizon = 1.0;
  InitialCondition initial = UniformInit{};
  std::uint64_t seed = 0;

  /// Throws Errc::InvalidInput when a field is out of range, dt exceeds the
  /// shortest schedule segment or the horizon is not a whole number of steps.
  void validate() const;
  std::size_t steps() const;
};

struct Trajectory {
  std::size_t n_agents = 0;
  std::size_t dim = 0;
  Vector times;
  Matrix states;  // one row per recorded time, N * d columns
  Vector theta;
};

/// c(t) [-L_B x + (Delta kron I_d) B x0] for the given topology.
Vector drift(double t, std::span<const double> x, const Topology& topology, const GainSpec& gain);

/// Stochastic increment over one step. `draws[e]` holds the two standard
/// normals (additive, multiplicative channel) for the e-th stored edge of the
/// graph in its iteration order.
Vector diffusion_step(double t, std::span<const double> x, double dt, const MatrixGraph& graph,
                      double sigma_add, const NoiseIntensity& intensity, const GainSpec& gain,
                      std::span<const std::pair<double, double>> draws);

/// Initial state of `path` under the configured initial condition.
Vector initial_state(const SimConfig& cfg, std::uint32_t path);

/// Stream index reserved for initial-state draws.
inline constexpr std::uint32_t kInitialStream = 0xFFFFFFFFu;

using StateObserver = std::function<void(std::size_t step, double t, std::span<const double> x)>;

/// Integrates one path and calls `observe` at step 0, every `record_every`
/// steps and at the final step. Throws Errc::NumericalBlowup when the state
/// norm exceeds 1e12 or becomes non-finite.
void integrate_path(const SimConfig& cfg, std::uint32_t path, std::size_t record_every,
                    const StateObserver& observe);

Trajectory simulate_path(const SimConfig& cfg, std::uint32_t path = 0, std::size_t record_every = 1);

/// Entry (k, i) is ||x_i(t_k) - theta||^2.
Matrix error_process(const Trajectory& traj);

}  // namespace signet
