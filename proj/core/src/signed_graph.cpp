#include "signet/signed_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "signet/error.hpp"

namespace signet {

SignedWeight::SignedWeight(SymMatrix m) : m_(std::move(m)), cls_(classify_definiteness(m_)) {
  if (cls_ == Definiteness::Indefinite)
    throw Error(Errc::InvalidInput, "edge weight is indefinite");
}

int SignedWeight::sign() const noexcept {
  switch (cls_) {
    case Definiteness::PositiveDefinite:
    case Definiteness::PositiveSemiDefinite:
      return 1;
    case Definiteness::NegativeDefinite:
    case Definiteness::NegativeSemiDefinite:
      return -1;
    default:
      return 0;
  }
}

SymMatrix SignedWeight::abs() const {
  const int s = sign();
  if (s == 0) return SymMatrix::zero(m_.dim());
  return s > 0 ? m_ : -m_;
}

std::string_view to_string(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::AgentOutOfRange: return "agent-out-of-range";
    case ViolationKind::SelfLoop: return "self-loop";
    case ViolationKind::DuplicateEdge: return "duplicate-edge";
    case ViolationKind::DimensionMismatch: return "dimension-mismatch";
    case ViolationKind::NonFinite: return "non-finite";
    case ViolationKind::Asymmetric: return "asymmetric";
    case ViolationKind::Indefinite: return "indefinite";
  }
  return "unknown";
}

namespace {

std::string edge_label(const RawEdge& e) {
  std::ostringstream os;
  os << "A_" << e.to + 1 << "," << e.from + 1 << " (v" << e.from + 1 << " -> v" << e.to + 1
     << ")";
  return os.str();
}

}  // namespace

std::vector<Violation> validate_graph(const RawGraph& raw) {
  std::vector<Violation> out;
  std::set<std::pair<AgentId, AgentId>> seen;
  auto flag = [&](std::size_t idx, const RawEdge& e, ViolationKind k, std::string detail) {
    out.push_back({idx, e.to, e.from, k, edge_label(e) + ": " + std::move(detail)});
  };

  for (std::size_t idx = 0; idx < raw.edges.size(); ++idx) {
    const RawEdge& e = raw.edges[idx];
    if (e.to >= raw.n_agents || e.from >= raw.n_agents) {
      flag(idx, e, ViolationKind::AgentOutOfRange, "agent index outside 1..N");
      continue;
    }
    if (e.to == e.from) {
      flag(idx, e, ViolationKind::SelfLoop, "self-loops are not allowed");
      continue;
    }
    if (!seen.insert({e.to, e.from}).second) {
      flag(idx, e, ViolationKind::DuplicateEdge, "edge listed more than once");
      continue;
    }
    if (e.matrix.rows() != raw.dim || e.matrix.cols() != raw.dim) {
      flag(idx, e, ViolationKind::DimensionMismatch,
           "expected " + std::to_string(raw.dim) + "x" + std::to_string(raw.dim) + " matrix");
      continue;
    }
    if (!e.matrix.all_finite()) {
      flag(idx, e, ViolationKind::NonFinite, "matrix has non-finite entries");
      continue;
    }
    const double tol = 1e-12 * (1.0 + e.matrix.max_abs());
    if ((e.matrix - e.matrix.transpose()).max_abs() > tol) {
      flag(idx, e, ViolationKind::Asymmetric, "matrix is not symmetric");
      continue;
    }
    if (classify_definiteness(SymMatrix(e.matrix)) == Definiteness::Indefinite) {
      flag(idx, e, ViolationKind::Indefinite,
           "matrix is indefinite (must be positive/negative (semi-)definite or zero)");
    }
  }
  return out;
}

MatrixGraph::MatrixGraph(std::size_t n_agents, std::size_t dim) : n_(n_agents), d_(dim) {
  if (n_agents == 0 || dim == 0)
    throw Error(Errc::InvalidInput, "graph needs at least one agent and dimension >= 1");
}

MatrixGraph MatrixGraph::from_raw(const RawGraph& raw) {
  const auto violations = validate_graph(raw);
  if (!violations.empty()) {
    std::string msg = "invalid graph:";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw Error(Errc::InvalidInput, msg);
  }
  MatrixGraph g(raw.n_agents, raw.dim);
  for (const auto& e : raw.edges) g.add_edge(e.to, e.from, SymMatrix(e.matrix));
  return g;
}

void MatrixGraph::add_edge(AgentId to, AgentId from, const SymMatrix& weight) {
  if (to >= n_ || from >= n_) throw Error(Errc::IndexOutOfRange, "edge agent index out of range");
  if (to == from) throw Error(Errc::InvalidInput, "self-loops are not allowed");
  if (weight.dim() != d_)
    throw Error(Errc::DimensionMismatch, "edge weight dimension differs from graph dimension");
  SignedWeight w(weight);
  if (w.sign() == 0) return;
  if (!edges_.emplace(EdgeKey{to, from}, std::move(w)).second)
    throw Error(Errc::InvalidInput, "duplicate edge");
}

const SignedWeight* MatrixGraph::weight(AgentId to, AgentId from) const {
  auto it = edges_.find({to, from});
  return it == edges_.end() ? nullptr : &it->second;
}

RawGraph MatrixGraph::to_raw() const {
  RawGraph raw{n_, d_, {}};
  for (const auto& [key, w] : edges_) raw.edges.push_back({key.first, key.second, w.matrix().matrix()});
  return raw;
}

NeighborSets neighbor_sets(const MatrixGraph& g, AgentId i) {
  if (i >= g.n_agents()) throw Error(Errc::IndexOutOfRange, "agent index out of range");
  NeighborSets s;
  for (const auto& [key, w] : g.edges()) {
    const auto [to, from] = key;
    if (to == i) {
      s.in.push_back(from);
      (w.sign() < 0 ? s.negative_in : s.positive_in).push_back(from);
    }
    if (from == i) s.out.push_back(to);
  }
  // Map order is (to, from) so `in` lists come out sorted; `out` does not.
  std::sort(s.out.begin(), s.out.end());
  return s;
}

AgentSet antagonized_set(const MatrixGraph& g) {
  AgentSet u;
  for (const auto& [key, w] : g.edges())
    if (w.sign() < 0 && (u.empty() || u.back() != key.first)) u.push_back(key.first);
  return u;
}

Matrix laplacian(const MatrixGraph& g) {
  const std::size_t d = g.dim();
  Matrix l(g.n_agents() * d, g.n_agents() * d);
  for (const auto& [key, w] : g.edges()) {
    const auto [to, from] = key;
    l.add_block(to, from, w.matrix().matrix(), -1.0);
    l.add_block(to, to, w.abs().matrix());
  }
  return l;
}

SymMatrix sum_abs_in(const MatrixGraph& g, AgentId i, const AgentSet& senders) {
  SymMatrix s = SymMatrix::zero(g.dim());
  for (AgentId j : senders)
    if (const auto* w = g.weight(i, j)) s += w->abs();
  return s;
}

SymMatrix sum_abs_out(const MatrixGraph& g, AgentId i, const AgentSet& receivers) {
  SymMatrix s = SymMatrix::zero(g.dim());
  for (AgentId j : receivers)
    if (const auto* w = g.weight(j, i)) s += w->abs();
  return s;
}

}  // namespace signet
