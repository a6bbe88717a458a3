#pragma once

// Monte-Carlo ensembles of sample paths and the mean-square error curves
// E||x_i(t) - theta||^2 estimated from them.

#include <cstdint>
#include <string_view>
#include <vector>

#include "signet/exact_sum.hpp"
#include "signet/linalg.hpp"
#include "signet/sde.hpp"

namespace signet {

struct EnsembleStats {
  std::size_t n_agents = 0;
  Vector times;
  Matrix ms_error;   // rows: recorded times, cols: agents
  Matrix std_error;  // sample standard deviation / sqrt(m)
  std::size_t n_paths = 0;
  std::uint64_t master_seed = 0;
};

/// Per-cell exact moment sums; merging is exact, so any split of the paths
/// into partial ensembles yields bit-identical statistics.
class EnsembleAccumulator {
 public:
  EnsembleAccumulator() = default;
  EnsembleAccumulator(std::size_t n_agents, Vector times);

  void add_sample(std::size_t grid_index, std::size_t agent, double squared_error);
  void count_path() { ++paths_; }
  void merge(const EnsembleAccumulator& other);

  std::size_t paths() const noexcept { return paths_; }
  EnsembleStats finalize(std::uint64_t master_seed) const;

 private:
  std::size_t n_agents_ = 0;
  Vector times_;
  std::vector<MomentAccumulator> cells_;
  std::size_t paths_ = 0;
};

/// Worker threads for path-level parallelism: SIGNET_THREADS when set,
/// otherwise the hardware concurrency.
unsigned default_thread_count();

/// Runs paths [first_path, first_path + count) with `threads` workers
/// (0 = default_thread_count()), keeping every `subsample`-th grid point.
EnsembleAccumulator accumulate_paths(const SimConfig& cfg, std::uint32_t first_path,
                                     std::size_t count, std::size_t subsample,
                                     unsigned threads = 0);

/// Throws Errc::InvalidInput when m < 2 or subsample == 0, and propagates
/// Errc::NumericalBlowup naming the failing path.
EnsembleStats run_ensemble(const SimConfig& cfg, std::size_t m, std::size_t subsample = 100,
                           unsigned threads = 0);

enum class Verdict { Converging, Plateau, Diverging };

std::string_view to_string(Verdict v) noexcept;

struct AgentConvergence {
  double initial_mean = 0.0;
  double mid_mean = 0.0;
  double final_mean = 0.0;
  double ratio = 0.0;  // final / initial window means
  bool monotone_trend = false;
  Verdict verdict = Verdict::Plateau;
};

struct ConvergenceReport {
  double window = 0.1;
  std::vector<AgentConvergence> agents;
  Verdict overall = Verdict::Plateau;
};

/// Window means over the first, middle and last `window` fraction of the
/// grid. Converging: ratio < 0.1 with a strictly decreasing trend (or an
/// error that is identically zero); Diverging: final > 10 x initial;
/// otherwise Plateau. The overall verdict is Converging only when every agent
/// converges and Diverging when any agent diverges.
ConvergenceReport convergence_report(const EnsembleStats& stats, double window = 0.1);

}  // namespace signet
