#include "signet/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "signet/error.hpp"

namespace signet {

namespace {

std::string label(AgentId i) { return "v" + std::to_string(i + 1); }

bool contains(const AgentSet& s, AgentId a) { return std::binary_search(s.begin(), s.end(), a); }

}  // namespace

double compute_ci(const MatrixGraph& g, AgentId i) {
  const NeighborSets s = neighbor_sets(g, i);
  if (s.negative_in.empty())
    throw Error(Errc::OmegaSumNotPD, label(i) + " has no incoming negative edge");

  const SymMatrix omega_sum = sum_abs_in(g, i, s.negative_in);
  const SymEigen se = sym_eigen(omega_sum);
  if (classify_definiteness(omega_sum) != Definiteness::PositiveDefinite)
    throw Error(Errc::OmegaSumNotPD,
                "sum of |A_ij| over negative in-edges of " + label(i) + " is not positive definite");

  // S^-1/2 = V diag(lambda^-1/2) V^T
  const std::size_t d = g.dim();
  Matrix inv_sqrt(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const double w = 1.0 / std::sqrt(se.values[k]);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) inv_sqrt(r, c) += w * se.vectors(r, k) * se.vectors(c, k);
  }
  const SymMatrix m = sum_abs_out(g, i, s.out) - sum_abs_in(g, i, s.in);
  const SymMatrix similar(inv_sqrt * m.matrix() * inv_sqrt);
  return 0.5 * sym_eigen(similar).values.back();
}

Matrix grounded_laplacian(const MatrixGraph& g, const std::map<AgentId, SymMatrix>& coupling,
                          double delta) {
  Matrix lb = laplacian(g);
  for (const auto& [i, b] : coupling) {
    if (i >= g.n_agents()) throw Error(Errc::IndexOutOfRange, "coupling names an unknown agent");
    if (b.dim() != g.dim())
      throw Error(Errc::DimensionMismatch, "coupling matrix dimension differs from graph");
    lb.add_block(i, i, b.matrix(), delta);
  }
  return lb;
}

ProtocolDesign synthesize(const MatrixGraph& g, const Decomposition& dec, const Vector& theta,
                          const SynthesisOptions& opts) {
  if (theta.size() != g.dim())
    throw Error(Errc::InvalidInput, "theta must have " + std::to_string(g.dim()) + " entries");
  if (!(norm2(theta) > 0.0) || !std::all_of(theta.begin(), theta.end(), [](double v) { return std::isfinite(v); }))
    throw Error(Errc::InvalidInput, "theta must be a finite nonzero vector");
  if (!opts.delta && !(opts.margin > 0.0))
    throw Error(Errc::InvalidInput, "delta margin must be positive");

  const DecompositionCheck check = verify_decomposition(g, dec);
  if (!check.ok) {
    std::ostringstream os;
    os << "decomposition violates the structural assumption:";
    for (const auto& f : check.failures) os << ' ' << label(f.vertex) << '(' << to_string(f.clause) << ')';
    throw Error(Errc::InvalidInput, os.str());
  }

  ProtocolDesign d;
  d.n_agents = g.n_agents();
  d.dim = g.dim();
  d.decomposition = dec;
  d.theta = theta;
  d.informed = antagonized_set(g);

  if (d.informed.empty()) {
    d.lemma_applicable = false;
    d.delta = opts.delta.value_or(opts.margin);
    d.notes.push_back("no antagonistic edge: no informed agents, consensus on theta not certified");
  } else {
    // C_i is only defined where the negative in-degree sum can be inverted.
    // V1 agents without negative in-edges receive no external signal and do
    // not constrain delta.
    std::optional<double> c;
    for (AgentId i : dec.v1) {
      if (!contains(d.informed, i)) continue;
      const double ci = compute_ci(g, i);
      c = c ? std::max(*c, ci) : ci;
    }
    if (!c)
      throw Error(Errc::EmptyV1WithAntagonism,
                  "no V1 agent has an incoming negative edge, so the coupling bound C is undefined");
    d.lower_bound = c;
    if (opts.delta) {
      if (!(*opts.delta > *c)) {
        std::ostringstream os;
        os << "delta " << *opts.delta << " does not exceed the bound C = " << *c;
        throw Error(Errc::DeltaBelowBound, os.str());
      }
      d.delta = *opts.delta;
    } else {
      // C can be negative when the antagonistic in-weights dominate; delta
      // must stay positive for k1 to exist.
      d.delta = std::max(*c, 0.0) + opts.margin;
      if (*c < 0.0) d.notes.push_back("C is negative; delta taken as margin above zero");
    }
  }
  if (!(d.delta > 0.0)) throw Error(Errc::InvalidInput, "delta must be positive");

  d.k1 = 1.0 + 2.0 / d.delta;
  d.x0.resize(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) d.x0[k] = d.k1 * theta[k];

  for (AgentId i : d.informed) {
    const NeighborSets s = neighbor_sets(g, i);
    SymMatrix b = sum_abs_in(g, i, s.negative_in);
    if (!contains(dec.v1, i) && classify_definiteness(b) != Definiteness::PositiveDefinite)
      d.notes.push_back("coupling |B_" + std::to_string(i + 1) +
                        "| is only positive semidefinite (agent outside V1)");
    d.coupling.emplace(i, std::move(b));
  }
  d.grounded_laplacian = grounded_laplacian(g, d.coupling, d.delta);
  return d;
}

Vector forcing_vector(const ProtocolDesign& design) {
  const std::size_t dd = design.dim;
  Vector f(design.n_agents * dd, 0.0);
  for (const auto& [i, b] : design.coupling) {
    const Vector bx = b.matrix() * design.x0;
    for (std::size_t k = 0; k < dd; ++k) f[i * dd + k] = design.delta * bx[k];
  }
  return f;
}

double stationarity_residual(const ProtocolDesign& design) {
  const std::size_t dd = design.dim;
  Vector stacked(design.n_agents * dd);
  for (std::size_t i = 0; i < design.n_agents; ++i)
    std::copy(design.theta.begin(), design.theta.end(), stacked.begin() + static_cast<std::ptrdiff_t>(i * dd));
  Vector r = design.grounded_laplacian * stacked;
  for (double& v : r) v = -v;
  for (const auto& [i, b] : design.coupling) {
    const Vector bt = b.matrix() * design.theta;
    for (std::size_t k = 0; k < dd; ++k) r[i * dd + k] += design.k1 * design.delta * bt[k];
  }
  return norm2(r);
}

double stationarity_tolerance(const ProtocolDesign& design) {
  return 1e-9 * static_cast<double>(design.n_agents) * norm2(design.theta);
}

std::string_view to_string(CertificationMode m) noexcept {
  return m == CertificationMode::Fixed ? "fixed" : "time-varying";
}

CertificationReport certify_design(const ProtocolDesign& design, CertificationMode mode) {
  CertificationReport r;
  r.mode = mode;
  r.hurwitz = is_hurwitz(-1.0 * design.grounded_laplacian);
  const Matrix& lb = design.grounded_laplacian;
  r.symmetric_part_pd = cholesky(SymMatrix(lb + lb.transpose())).has_value();
  r.stationarity = stationarity_residual(design);
  r.stationarity_ok = r.stationarity <= stationarity_tolerance(design);

  const bool stability = mode == CertificationMode::Fixed ? r.hurwitz.hurwitz() : r.symmetric_part_pd;
  r.passed = design.lemma_applicable && stability && r.stationarity_ok;

  if (!design.lemma_applicable) r.notes.push_back("no informed agents: design is not certified");
  if (mode == CertificationMode::Fixed && !r.hurwitz.hurwitz())
    r.notes.push_back(std::string("-L_B Hurwitz test: ") + std::string(to_string(r.hurwitz.verdict)));
  if (mode == CertificationMode::TimeVarying && !r.symmetric_part_pd)
    r.notes.push_back("L_B + L_B^T is not positive definite");
  if (!r.stationarity_ok) r.notes.push_back("stationarity identity violated");
  return r;
}

}  // namespace signet
