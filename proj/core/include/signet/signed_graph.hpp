#pragma once

// Signed matrix-weighted directed graphs.
//
// Agents are indexed 0..N-1 in the API. Files and reports use the 1-based
// labels v_1..v_N.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "signet/linalg.hpp"

namespace signet {

using AgentId = std::size_t;
using AgentSet = std::vector<AgentId>;  // sorted ascending, no duplicates

/// A symmetric, sign-definite edge weight. Indefinite matrices are rejected.
class SignedWeight {
 public:
  /// Throws Errc::InvalidInput when the matrix is indefinite.
  explicit SignedWeight(SymMatrix m);

  const SymMatrix& matrix() const noexcept { return m_; }
  Definiteness definiteness() const noexcept { return cls_; }
  std::size_t dim() const noexcept { return m_.dim(); }

  /// +1, 0 or -1.
  int sign() const noexcept;
  /// sign() * matrix(); positive semidefinite or zero.
  SymMatrix abs() const;

  bool strictly_definite() const noexcept {
    return cls_ == Definiteness::PositiveDefinite || cls_ == Definiteness::NegativeDefinite;
  }

 private:
  SymMatrix m_;
  Definiteness cls_;
};

inline int msgn(const SignedWeight& w) noexcept { return w.sign(); }
inline SymMatrix mabs(const SignedWeight& w) { return w.abs(); }

/// Unvalidated graph as read from a file: matrices may be asymmetric,
/// indefinite or zero.
struct RawEdge {
  AgentId to = 0;    // receiving agent i
  AgentId from = 0;  // sending agent j
  Matrix matrix;     // A_ij
};

struct RawGraph {
  std::size_t n_agents = 0;
  std::size_t dim = 0;
  std::vector<RawEdge> edges;
};

enum class ViolationKind {
  AgentOutOfRange,
  SelfLoop,
  DuplicateEdge,
  DimensionMismatch,
  NonFinite,
  Asymmetric,
  Indefinite,
};

std::string_view to_string(ViolationKind k) noexcept;

struct Violation {
  std::size_t edge_index = 0;
  AgentId to = 0;
  AgentId from = 0;
  ViolationKind kind = ViolationKind::Indefinite;
  std::string message;
};

/// Empty iff every edge is in range, square d x d, exactly symmetric and not
/// indefinite.
std::vector<Violation> validate_graph(const RawGraph& raw);

struct NeighborSets {
  AgentSet in;           // N_i: senders j with A_ij != 0
  AgentSet out;          // N'_i: receivers j with A_ji != 0
  AgentSet negative_in;  // Omega_i
  AgentSet positive_in;  // Gamma_i
};

class MatrixGraph {
 public:
  using EdgeKey = std::pair<AgentId, AgentId>;  // (to, from)

  MatrixGraph(std::size_t n_agents, std::size_t dim);

  /// Validates the raw input and drops zero-class edges. Throws
  /// Errc::InvalidInput listing the violations when validation fails.
  static MatrixGraph from_raw(const RawGraph& raw);

  /// Adds the directed edge from -> to with weight A_{to,from}. A zero matrix
  /// is ignored. Throws on self-loops, out-of-range agents, dimension
  /// mismatch, duplicates and indefinite weights.
  void add_edge(AgentId to, AgentId from, const SymMatrix& weight);

  std::size_t n_agents() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }
  const std::map<EdgeKey, SignedWeight>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// nullptr when (to, from) carries no edge.
  const SignedWeight* weight(AgentId to, AgentId from) const;

  RawGraph to_raw() const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::map<EdgeKey, SignedWeight> edges_;
};

NeighborSets neighbor_sets(const MatrixGraph& g, AgentId i);

/// U: agents with at least one incoming negative edge.
AgentSet antagonized_set(const MatrixGraph& g);

/// Block Laplacian: L_ij = -A_ij (j != i), L_ii = sum_k |A_ik|.
Matrix laplacian(const MatrixGraph& g);

/// sum_{j in set} |A_ij| over incoming edges of i (d x d).
SymMatrix sum_abs_in(const MatrixGraph& g, AgentId i, const AgentSet& senders);
/// sum_{j in set} |A_ji| over outgoing edges of i (d x d).
SymMatrix sum_abs_out(const MatrixGraph& g, AgentId i, const AgentSet& receivers);

}  // namespace signet
