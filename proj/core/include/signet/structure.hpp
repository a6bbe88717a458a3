#pragma once

// Checks for the structural hypotheses behind the consensus protocol:
// in-degree domination, positive-negative paths, the V1/V2 vertex split and
// bounded edge weights.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "signet/signed_graph.hpp"

namespace signet {

struct Decomposition {
  AgentSet v1;
  AgentSet v2;

  /// Builds the complement split from V1.
  static Decomposition from_v1(std::size_t n_agents, AgentSet v1);
};

struct DominanceResult {
  bool dominated = false;
  /// sum_{j in N_i} |A_ij| - sum_{j in N'_i} |A_ji|
  SymMatrix witness;
};

DominanceResult is_in_degree_dominated(const MatrixGraph& g, AgentId i);

/// Agents reachable from `sources` over edges whose weight is strictly
/// positive or strictly negative definite (sources themselves included).
std::vector<bool> pn_reachable(const MatrixGraph& g, const AgentSet& sources);

bool pn_path_exists(const MatrixGraph& g, AgentId from, AgentId to);

enum class DecompositionClause { NotPartition, Unreachable, NotInDegreeDominated };

std::string_view to_string(DecompositionClause c) noexcept;

struct DecompositionDiagnostic {
  AgentId vertex = 0;
  DecompositionClause clause = DecompositionClause::Unreachable;
};

struct DecompositionCheck {
  bool ok = false;
  std::vector<DecompositionDiagnostic> failures;
};

DecompositionCheck verify_decomposition(const MatrixGraph& g, const Decomposition& dec);

inline constexpr std::size_t kDefaultMaxSearchAgents = 16;

/// Exhaustive search for a valid split with the smallest V1, ties broken by
/// lexicographic order of V1. V1 = all agents is always valid, so a split is
/// always returned. Throws Errc::TooLarge when N > max_n.
Decomposition find_decomposition(const MatrixGraph& g,
                                 std::size_t max_n = kDefaultMaxSearchAgents);

struct BoundedWeights {
  double bound = 0.0;  // max |entry| over every edge of every graph
  bool ok = true;
};

BoundedWeights check_bounded_weights(std::span<const MatrixGraph> graphs);

}  // namespace signet
