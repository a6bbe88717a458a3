#include "signet/structure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "signet/error.hpp"

namespace signet {

Decomposition Decomposition::from_v1(std::size_t n_agents, AgentSet v1) {
  std::sort(v1.begin(), v1.end());
  v1.erase(std::unique(v1.begin(), v1.end()), v1.end());
  Decomposition dec{std::move(v1), {}};
  for (AgentId a = 0; a < n_agents; ++a)
    if (!std::binary_search(dec.v1.begin(), dec.v1.end(), a)) dec.v2.push_back(a);
  return dec;
}

DominanceResult is_in_degree_dominated(const MatrixGraph& g, AgentId i) {
  const NeighborSets s = neighbor_sets(g, i);
  SymMatrix witness = sum_abs_in(g, i, s.in) - sum_abs_out(g, i, s.out);
  const Definiteness cls = classify_definiteness(witness);
  const bool ok = cls == Definiteness::PositiveDefinite ||
                  cls == Definiteness::PositiveSemiDefinite || cls == Definiteness::Zero;
  return {ok, std::move(witness)};
}

std::vector<bool> pn_reachable(const MatrixGraph& g, const AgentSet& sources) {
  std::vector<std::vector<AgentId>> adj(g.n_agents());
  for (const auto& [key, w] : g.edges())
    if (w.strictly_definite()) adj[key.second].push_back(key.first);

  std::vector<bool> seen(g.n_agents(), false);
  std::deque<AgentId> queue;
  for (AgentId s : sources) {
    if (s >= g.n_agents()) throw Error(Errc::IndexOutOfRange, "agent index out of range");
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const AgentId u = queue.front();
    queue.pop_front();
    for (AgentId v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
  }
  return seen;
}

bool pn_path_exists(const MatrixGraph& g, AgentId from, AgentId to) {
  if (to >= g.n_agents()) throw Error(Errc::IndexOutOfRange, "agent index out of range");
  return pn_reachable(g, {from})[to];
}

std::string_view to_string(DecompositionClause c) noexcept {
  switch (c) {
    case DecompositionClause::NotPartition: return "not-a-partition";
    case DecompositionClause::Unreachable: return "no-positive-negative-path-from-V1";
    case DecompositionClause::NotInDegreeDominated: return "not-in-degree-dominated";
  }
  return "unknown";
}

DecompositionCheck verify_decomposition(const MatrixGraph& g, const Decomposition& dec) {
  DecompositionCheck out;
  const std::size_t n = g.n_agents();

  std::vector<int> count(n, 0);
  bool partition = true;
  for (const AgentSet* part : {&dec.v1, &dec.v2})
    for (AgentId a : *part) {
      if (a >= n) throw Error(Errc::IndexOutOfRange, "decomposition names an unknown agent");
      ++count[a];
    }
  for (AgentId a = 0; a < n; ++a)
    if (count[a] != 1) {
      out.failures.push_back({a, DecompositionClause::NotPartition});
      partition = false;
    }
  if (!partition) return out;

  const std::vector<bool> reach = pn_reachable(g, dec.v1);
  for (AgentId j : dec.v2) {
    if (!reach[j]) out.failures.push_back({j, DecompositionClause::Unreachable});
    if (!is_in_degree_dominated(g, j).dominated)
      out.failures.push_back({j, DecompositionClause::NotInDegreeDominated});
  }
  out.ok = out.failures.empty();
  return out;
}

Decomposition find_decomposition(const MatrixGraph& g, std::size_t max_n) {
  const std::size_t n = g.n_agents();
  if (n > max_n)
    throw Error(Errc::TooLarge, "decomposition search limited to " + std::to_string(max_n) +
                                    " agents, graph has " + std::to_string(n));

  std::vector<bool> dominated(n);
  for (AgentId a = 0; a < n; ++a) dominated[a] = is_in_degree_dominated(g, a).dominated;

  // Combinations of size k in lexicographic order via a selector mask.
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      AgentSet v1;
      bool feasible = true;
      for (AgentId a = 0; a < n; ++a) {
        if (pick[a]) v1.push_back(a);
        else if (!dominated[a]) feasible = false;
      }
      if (!feasible) continue;
      const std::vector<bool> reach = pn_reachable(g, v1);
      if (std::all_of(reach.begin(), reach.end(), [](bool b) { return b; }))
        return Decomposition::from_v1(n, std::move(v1));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return Decomposition::from_v1(n, {});  // unreachable: k == n always succeeds
}

BoundedWeights check_bounded_weights(std::span<const MatrixGraph> graphs) {
  BoundedWeights out;
  for (const auto& g : graphs)
    for (const auto& [key, w] : g.edges()) out.bound = std::max(out.bound, w.matrix().matrix().max_abs());
  out.ok = std::isfinite(out.bound);
  return out;
}

}  // namespace signet
