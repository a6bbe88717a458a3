#pragma once

// Piecewise-constant switching topologies: each segment pairs a graph with
// the protocol designed for it.

#include <cstddef>
#include <string>
#include <vector>

#include "signet/protocol.hpp"
#include "signet/signed_graph.hpp"
#include "signet/structure.hpp"

namespace signet {

enum class ScheduleMode {
  Fixed,     // a single (graph, design) pair for all time
  Cyclic,    // segments repeat with period = sum of durations
  Explicit,  // segments play once, then the last one holds
};

std::string_view to_string(ScheduleMode m) noexcept;

struct Segment {
  std::size_t topology = 0;  // index into TopologySchedule::topologies
  double duration = 0.0;
};

struct Topology {
  std::string id;
  MatrixGraph graph;
  ProtocolDesign design;
};

class TopologySchedule {
 public:
  static TopologySchedule fixed(Topology topology);
  /// Throws Errc::InvalidInput on empty/zero-duration segments, mixed (N, d),
  /// differing theta or unknown topology indices.
  TopologySchedule(std::vector<Topology> topologies, std::vector<Segment> segments,
                   ScheduleMode mode);

  ScheduleMode mode() const noexcept { return mode_; }
  const std::vector<Topology>& topologies() const noexcept { return topologies_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::size_t n_agents() const noexcept { return topologies_.front().graph.n_agents(); }
  std::size_t dim() const noexcept { return topologies_.front().graph.dim(); }
  const Vector& theta() const noexcept { return topologies_.front().design.theta; }
  double period() const noexcept { return period_; }
  double min_duration() const noexcept;

  /// Index of the segment active at t under half-open [t_k, t_{k+1})
  /// semantics. Times within 1e-9 * period of a switching instant are
  /// treated as that instant.
  std::size_t segment_at(double t) const;
  const Topology& at_time(double t) const {
    return topologies_[segments_[segment_at(t)].topology];
  }

 private:
  std::vector<Topology> topologies_;
  std::vector<Segment> segments_;
  std::vector<double> starts_;  // start offset of each segment
  ScheduleMode mode_;
  double period_ = 0.0;
};

struct TopologyCertificate {
  std::string id;
  CertificationReport certification;
  DecompositionCheck decomposition;
};

struct ScheduleReport {
  CertificationMode mode = CertificationMode::Fixed;
  std::vector<TopologyCertificate> topologies;
  BoundedWeights weights;
  bool passed = false;
  std::vector<std::string> failures;  // named failing topologies
};

/// Fixed schedules use the Fixed certificate; switching schedules require the
/// TimeVarying certificate on every topology. Also checks each topology's
/// decomposition and the entry bound over all graphs.
ScheduleReport certify_schedule(const TopologySchedule& s);

BoundedWeights check_bounded_weights(const TopologySchedule& s);

}  // namespace signet
