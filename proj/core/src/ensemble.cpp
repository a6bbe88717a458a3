#include "signet/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "signet/error.hpp"

namespace signet {

EnsembleAccumulator::EnsembleAccumulator(std::size_t n_agents, Vector times)
    : n_agents_(n_agents), times_(std::move(times)), cells_(n_agents * times_.size()) {}

void EnsembleAccumulator::add_sample(std::size_t grid_index, std::size_t agent,
                                     double squared_error) {
  cells_[grid_index * n_agents_ + agent].add(squared_error);
}

void EnsembleAccumulator::merge(const EnsembleAccumulator& other) {
  if (cells_.empty()) {
    *this = other;
    return;
  }
  if (other.cells_.empty()) return;
  if (other.times_ != times_ || other.n_agents_ != n_agents_)
    throw Error(Errc::DimensionMismatch, "cannot merge ensembles with different grids");
  for (std::size_t k = 0; k < cells_.size(); ++k) cells_[k].merge(other.cells_[k]);
  paths_ += other.paths_;
}

EnsembleStats EnsembleAccumulator::finalize(std::uint64_t master_seed) const {
  EnsembleStats s;
  s.n_agents = n_agents_;
  s.times = times_;
  s.n_paths = paths_;
  s.master_seed = master_seed;
  const std::size_t grid = times_.size();
  s.ms_error = Matrix(grid, n_agents_);
  s.std_error = Matrix(grid, n_agents_);
  const double root_m = std::sqrt(static_cast<double>(std::max<std::size_t>(paths_, 1)));
  for (std::size_t g = 0; g < grid; ++g)
    for (std::size_t i = 0; i < n_agents_; ++i) {
      const auto& cell = cells_[g * n_agents_ + i];
      s.ms_error(g, i) = cell.mean();
      s.std_error(g, i) = std::sqrt(cell.variance()) / root_m;
    }
  return s;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("SIGNET_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Matches the recording rule of integrate_path.
Vector recorded_times(const SimConfig& cfg, std::size_t subsample) {
  const std::size_t steps = cfg.steps();
  Vector t;
  for (std::size_t k = 0; k <= steps; ++k)
    if (k % subsample == 0 || k == steps) t.push_back(static_cast<double>(k) * cfg.dt);
  return t;
}

}  // namespace

EnsembleAccumulator accumulate_paths(const SimConfig& cfg, std::uint32_t first_path,
                                     std::size_t count, std::size_t subsample, unsigned threads) {
  cfg.validate();
  if (subsample == 0) throw Error(Errc::InvalidInput, "subsample must be >= 1");
  const std::size_t n = cfg.schedule->n_agents();
  const std::size_t d = cfg.schedule->dim();
  const Vector times = recorded_times(cfg, subsample);
  const Vector& theta = cfg.schedule->theta();

  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

  std::vector<EnsembleAccumulator> partial(threads, EnsembleAccumulator(n, times));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::size_t failed_path = SIZE_MAX;

  auto worker = [&](unsigned w) {
    EnsembleAccumulator& acc = partial[w];
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      const auto path = static_cast<std::uint32_t>(first_path + k);
      try {
        std::size_t g = 0;
        integrate_path(cfg, path, subsample, [&](std::size_t, double, std::span<const double> x) {
          for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t q = 0; q < d; ++q) {
              const double e = x[i * d + q] - theta[q];
              s += e * e;
            }
            acc.add_sample(g, i, s);
          }
          ++g;
        });
        acc.count_path();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (path < failed_path) {
          failed_path = path;
          failure = std::current_exception();
        }
        stop = true;
        return;
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  if (failure) std::rethrow_exception(failure);

  EnsembleAccumulator total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

EnsembleStats run_ensemble(const SimConfig& cfg, std::size_t m, std::size_t subsample,
                           unsigned threads) {
  if (m < 2) throw Error(Errc::InvalidInput, "an ensemble needs at least 2 paths");
  return accumulate_paths(cfg, 0, m, subsample, threads).finalize(cfg.seed);
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Converging: return "Converging";
    case Verdict::Plateau: return "Plateau";
    case Verdict::Diverging: return "Diverging";
  }
  return "Unknown";
}

ConvergenceReport convergence_report(const EnsembleStats& stats, double window) {
  if (!(window > 0.0 && window < 1.0))
    throw Error(Errc::InvalidInput, "convergence window must lie in (0, 1)");
  const std::size_t grid = stats.times.size();
  if (grid == 0) throw Error(Errc::InvalidInput, "empty ensemble statistics");

  const auto w = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(window * grid)));
  const std::size_t mid_start = grid / 2 >= w / 2 ? grid / 2 - w / 2 : 0;
  auto window_mean = [&](std::size_t agent, std::size_t start) {
    ExactSum s;
    const std::size_t end = std::min(grid, start + w);
    for (std::size_t g = start; g < end; ++g) s.add(stats.ms_error(g, agent));
    return s.value() / static_cast<double>(end - start);
  };

  ConvergenceReport r;
  r.window = window;
  bool all_converging = true;
  bool any_diverging = false;
  for (std::size_t i = 0; i < stats.n_agents; ++i) {
    AgentConvergence a;
    a.initial_mean = window_mean(i, 0);
    a.mid_mean = window_mean(i, mid_start);
    a.final_mean = window_mean(i, grid - std::min(w, grid));
    a.monotone_trend = a.final_mean < a.mid_mean && a.mid_mean < a.initial_mean;
    if (a.initial_mean == 0.0 && a.final_mean == 0.0) {
      a.ratio = 0.0;
      a.verdict = Verdict::Converging;
    } else {
      a.ratio = a.initial_mean > 0.0 ? a.final_mean / a.initial_mean
                                     : std::numeric_limits<double>::infinity();
      if (a.ratio < 0.1 && a.monotone_trend) a.verdict = Verdict::Converging;
      else if (a.final_mean > 10.0 * a.initial_mean) a.verdict = Verdict::Diverging;
      else a.verdict = Verdict::Plateau;
    }
    all_converging = all_converging && a.verdict == Verdict::Converging;
    any_diverging = any_diverging || a.verdict == Verdict::Diverging;
    r.agents.push_back(a);
  }
  r.overall = any_diverging ? Verdict::Diverging
              : all_converging ? Verdict::Converging
                               : Verdict::Plateau;
  return r;
}

}  // namespace signet
