#include "signet/sde.hpp"

#include <cmath>
#include <sstream>

#include "signet/error.hpp"
#include "signet/rng.hpp"

namespace signet {

namespace {

// Flattened form of one topology for the inner loop.
struct Kernel {
  struct Block {
    std::size_t row;  // agent i
    std::size_t col;  // agent j
    std::size_t offset;
  };
  struct Edge {
    std::size_t to;
    std::size_t from;
    std::size_t offset;  // |A_ij| values
    Vector additive;     // sigma |A_ij| 1_d
  };
  std::size_t d = 0;
  std::vector<Block> blocks;  // nonzero d x d blocks of L_B
  Vector values;
  Vector forcing;             // (Delta kron I_d) B x0
  std::vector<Edge> edges;
};

Kernel compile(const Topology& top, double sigma_add) {
  Kernel k;
  const std::size_t d = top.graph.dim();
  const std::size_t n = top.graph.n_agents();
  k.d = d;
  const Matrix& lb = top.design.grounded_laplacian;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix b = lb.block(i, j, d);
      if (b.max_abs() == 0.0) continue;
      k.blocks.push_back({i, j, k.values.size()});
      k.values.insert(k.values.end(), b.data().begin(), b.data().end());
    }
  k.forcing = forcing_vector(top.design);
  for (const auto& [key, w] : top.graph.edges()) {
    const SymMatrix a = w.abs();
    Kernel::Edge e{key.first, key.second, k.values.size(), Vector(d, 0.0)};
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) e.additive[r] += sigma_add * a(r, c);
    k.values.insert(k.values.end(), a.matrix().data().begin(), a.matrix().data().end());
    k.edges.push_back(std::move(e));
  }
  return k;
}

[[noreturn]] void blowup(std::uint32_t path, std::size_t step, double t) {
  std::ostringstream os;
  os << "state diverged on path " << path << " at step " << step << " (t = " << t
     << "); the protocol is probably not stabilizing";
  throw Error(Errc::NumericalBlowup, os.str());
}

}  // namespace

void SimConfig::validate() const {
  if (!schedule) throw Error(Errc::InvalidInput, "simulation needs a schedule");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(Errc::InvalidInput, "dt must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw Error(Errc::InvalidInput, "horizon must be positive");
  if (!(sigma_add >= 0.0)) throw Error(Errc::InvalidInput, "sigma must be >= 0");
  if (dt > schedule->min_duration() * (1.0 + 1e-12))
    throw Error(Errc::InvalidInput, "dt exceeds the shortest schedule segment");
  const double ratio = horizon / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-6 * std::max(1.0, ratio) || std::round(ratio) < 1.0)
    throw Error(Errc::InvalidInput, "horizon must be a whole number of steps");
  if (const auto* fixed = std::get_if<Vector>(&initial)) {
    if (fixed->size() != schedule->n_agents() * schedule->dim())
      throw Error(Errc::InvalidInput, "initial state must have N * d entries");
  } else {
    const auto& u = std::get<UniformInit>(initial);
    if (!(u.lo <= u.hi)) throw Error(Errc::InvalidInput, "uniform initial range is empty");
  }
}

std::size_t SimConfig::steps() const { return static_cast<std::size_t>(std::llround(horizon / dt)); }

Vector drift(double t, std::span<const double> x, const Topology& topology, const GainSpec& gain) {
  const Matrix& lb = topology.design.grounded_laplacian;
  if (x.size() != lb.cols()) throw Error(Errc::DimensionMismatch, "drift: state has wrong size");
  const double c = eval_gain(gain, t);
  Vector out = lb * x;
  const Vector f = forcing_vector(topology.design);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = c * (f[k] - out[k]);
  return out;
}

Vector diffusion_step(double t, std::span<const double> x, double dt, const MatrixGraph& graph,
                      double sigma_add, const NoiseIntensity& intensity, const GainSpec& gain,
                      std::span<const std::pair<double, double>> draws) {
  const std::size_t d = graph.dim();
  if (x.size() != graph.n_agents() * d)
    throw Error(Errc::DimensionMismatch, "diffusion: state has wrong size");
  if (draws.size() != graph.edge_count())
    throw Error(Errc::DimensionMismatch, "diffusion: one draw pair per edge required");

  const double scale = eval_gain(gain, t) * std::sqrt(dt);
  Vector out(x.size(), 0.0);
  Vector rel(d);
  Vector frel(d);
  std::size_t e = 0;
  for (const auto& [key, w] : graph.edges()) {
    const auto [i, j] = key;
    const auto [z1, z2] = draws[e++];
    const SymMatrix a = w.abs();
    for (std::size_t k = 0; k < d; ++k) rel[k] = x[j * d + k] - x[i * d + k];
    intensity.apply(rel, frel);
    const Vector afrel = a.matrix() * frel;
    for (std::size_t r = 0; r < d; ++r) {
      double row_sum = 0.0;
      for (std::size_t c = 0; c < d; ++c) row_sum += a(r, c);
      out[i * d + r] += scale * (sigma_add * row_sum * z1 + afrel[r] * z2);
    }
  }
  return out;
}

Vector initial_state(const SimConfig& cfg, std::uint32_t path) {
  if (const auto* fixed = std::get_if<Vector>(&cfg.initial)) return *fixed;
  const auto& u = std::get<UniformInit>(cfg.initial);
  const std::size_t size = cfg.schedule->n_agents() * cfg.schedule->dim();
  const CounterNormal rng(cfg.seed);
  Vector x(size);
  for (std::size_t k = 0; k < size; k += 2) {
    const auto [a, b] = rng.uniform_pair(path, k / 2, kInitialStream);
    x[k] = u.lo + (u.hi - u.lo) * a;
    if (k + 1 < size) x[k + 1] = u.lo + (u.hi - u.lo) * b;
  }
  return x;
}

void integrate_path(const SimConfig& cfg, std::uint32_t path, std::size_t record_every,
                    const StateObserver& observe) {
  cfg.validate();
  if (record_every == 0) throw Error(Errc::InvalidInput, "record interval must be >= 1");
  const TopologySchedule& sched = *cfg.schedule;

  std::vector<Kernel> kernels;
  for (const auto& top : sched.topologies()) kernels.push_back(compile(top, cfg.sigma_add));

  const CounterNormal rng(cfg.seed);
  const std::size_t steps = cfg.steps();
  const double sqrt_dt = std::sqrt(cfg.dt);
  const bool multiplicative = !cfg.intensity.is_zero();
  const bool additive = cfg.sigma_add != 0.0;

  Vector x = initial_state(cfg, path);
  const std::size_t size = x.size();
  Vector dx(size);
  Vector rel;
  Vector frel;

  observe(0, 0.0, x);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = static_cast<double>(step) * cfg.dt;
    const Kernel& k = kernels[sched.segments()[sched.segment_at(t)].topology];
    const std::size_t d = k.d;
    rel.resize(d);
    frel.resize(d);
    const double c = eval_gain(cfg.gain, t);

    // Drift: c (f - L_B x) dt
    for (std::size_t r = 0; r < size; ++r) dx[r] = k.forcing[r];
    for (const auto& b : k.blocks) {
      const double* m = &k.values[b.offset];
      const double* xj = &x[b.col * d];
      double* out = &dx[b.row * d];
      for (std::size_t r = 0; r < d; ++r) {
        double s = 0.0;
        for (std::size_t q = 0; q < d; ++q) s += m[r * d + q] * xj[q];
        out[r] -= s;
      }
    }
    const double cdt = c * cfg.dt;
    for (std::size_t r = 0; r < size; ++r) dx[r] *= cdt;

    if (additive || multiplicative) {
      const double noise = c * sqrt_dt;
      for (std::size_t e = 0; e < k.edges.size(); ++e) {
        const auto& edge = k.edges[e];
        const auto [z1, z2] = rng.normal_pair(path, step, static_cast<std::uint32_t>(e));
        double* out = &dx[edge.to * d];
        if (additive)
          for (std::size_t r = 0; r < d; ++r) out[r] += noise * z1 * edge.additive[r];
        if (multiplicative) {
          for (std::size_t q = 0; q < d; ++q) rel[q] = x[edge.from * d + q] - x[edge.to * d + q];
          cfg.intensity.apply(rel, frel);
          const double* m = &k.values[edge.offset];
          for (std::size_t r = 0; r < d; ++r) {
            double s = 0.0;
            for (std::size_t q = 0; q < d; ++q) s += m[r * d + q] * frel[q];
            out[r] += noise * z2 * s;
          }
        }
      }
    }

    double sq = 0.0;
    for (std::size_t r = 0; r < size; ++r) {
      x[r] += dx[r];
      sq += x[r] * x[r];
    }
    if (!(sq <= kBlowupNorm * kBlowupNorm)) blowup(path, step + 1, t + cfg.dt);

    const std::size_t next = step + 1;
    if (next % record_every == 0 || next == steps)
      observe(next, static_cast<double>(next) * cfg.dt, x);
  }
}

Trajectory simulate_path(const SimConfig& cfg, std::uint32_t path, std::size_t record_every) {
  cfg.validate();
  const std::size_t n = cfg.schedule->n_agents();
  const std::size_t d = cfg.schedule->dim();
  const std::size_t steps = cfg.steps();
  const std::size_t rows = steps / std::max<std::size_t>(record_every, 1) + 2;

  Trajectory traj;
  traj.n_agents = n;
  traj.dim = d;
  traj.theta = cfg.schedule->theta();
  Matrix states(rows, n * d);
  std::size_t row = 0;
  integrate_path(cfg, path, record_every, [&](std::size_t, double t, std::span<const double> x) {
    traj.times.push_back(t);
    std::copy(x.begin(), x.end(), states.row(row++).begin());
  });
  traj.states = Matrix(row, n * d);
  for (std::size_t r = 0; r < row; ++r)
    std::copy(states.row(r).begin(), states.row(r).end(), traj.states.row(r).begin());
  return traj;
}

Matrix error_process(const Trajectory& traj) {
  const std::size_t n = traj.n_agents;
  const std::size_t d = traj.dim;
  Matrix err(traj.states.rows(), n);
  for (std::size_t k = 0; k < traj.states.rows(); ++k) {
    const auto row = traj.states.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t q = 0; q < d; ++q) {
        const double e = row[i * d + q] - traj.theta[q];
        s += e * e;
      }
      err(k, i) = s;
    }
  }
  return err;
}

}  // namespace signet
