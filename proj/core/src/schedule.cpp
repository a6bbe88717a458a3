#include "signet/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "signet/error.hpp"

namespace signet {

std::string_view to_string(ScheduleMode m) noexcept {
  switch (m) {
    case ScheduleMode::Fixed: return "fixed";
    case ScheduleMode::Cyclic: return "cyclic";
    case ScheduleMode::Explicit: return "explicit";
  }
  return "unknown";
}

TopologySchedule TopologySchedule::fixed(Topology topology) {
  std::vector<Topology> tops;
  tops.push_back(std::move(topology));
  return TopologySchedule(std::move(tops), {Segment{0, 1.0}}, ScheduleMode::Fixed);
}

TopologySchedule::TopologySchedule(std::vector<Topology> topologies, std::vector<Segment> segments,
                                   ScheduleMode mode)
    : topologies_(std::move(topologies)), segments_(std::move(segments)), mode_(mode) {
  if (topologies_.empty() || segments_.empty())
    throw Error(Errc::InvalidInput, "schedule needs at least one topology and one segment");
  if (mode_ == ScheduleMode::Fixed && segments_.size() != 1)
    throw Error(Errc::InvalidInput, "fixed schedule has exactly one segment");

  const auto& first = topologies_.front();
  for (const auto& t : topologies_) {
    if (t.graph.n_agents() != first.graph.n_agents() || t.graph.dim() != first.graph.dim())
      throw Error(Errc::InvalidInput, "topology '" + t.id + "' has a different (N, d)");
    if (t.design.n_agents != t.graph.n_agents() || t.design.dim != t.graph.dim())
      throw Error(Errc::InvalidInput, "design of '" + t.id + "' does not match its graph");
    if (t.design.theta != first.design.theta)
      throw Error(Errc::InvalidInput, "topology '" + t.id + "' uses a different theta");
  }
  for (const auto& s : segments_) {
    if (s.topology >= topologies_.size())
      throw Error(Errc::InvalidInput, "segment refers to an unknown topology");
    if (!(s.duration > 0.0) || !std::isfinite(s.duration))
      throw Error(Errc::InvalidInput, "segment durations must be positive and finite");
    starts_.push_back(period_);
    period_ += s.duration;
  }
}

double TopologySchedule::min_duration() const noexcept {
  if (mode_ == ScheduleMode::Fixed) return std::numeric_limits<double>::infinity();
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : segments_) m = std::min(m, s.duration);
  return m;
}

std::size_t TopologySchedule::segment_at(double t) const {
  if (mode_ == ScheduleMode::Fixed || segments_.size() == 1) return 0;
  const double eps = 1e-9 * period_;
  double phase = t;
  if (mode_ == ScheduleMode::Cyclic) {
    phase = t - std::floor(t / period_) * period_;
    if (period_ - phase <= eps) phase = 0.0;
  } else if (phase >= period_ - eps) {
    return segments_.size() - 1;
  }
  // Last segment whose start is <= phase (with snapping).
  auto it = std::upper_bound(starts_.begin(), starts_.end(), phase + eps);
  return static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - starts_.begin()) - 1));
}

BoundedWeights check_bounded_weights(const TopologySchedule& s) {
  std::vector<MatrixGraph> graphs;
  for (const auto& t : s.topologies()) graphs.push_back(t.graph);
  return check_bounded_weights(graphs);
}

ScheduleReport certify_schedule(const TopologySchedule& s) {
  ScheduleReport r;
  r.mode = s.mode() == ScheduleMode::Fixed ? CertificationMode::Fixed : CertificationMode::TimeVarying;
  r.weights = check_bounded_weights(s);
  r.passed = r.weights.ok;
  if (!r.weights.ok) r.failures.push_back("edge weights are not bounded");

  for (const auto& t : s.topologies()) {
    TopologyCertificate c{t.id, certify_design(t.design, r.mode),
                          verify_decomposition(t.graph, t.design.decomposition)};
    if (!c.certification.passed) r.failures.push_back(t.id + ": protocol certificate failed");
    if (!c.decomposition.ok) r.failures.push_back(t.id + ": decomposition check failed");
    r.passed = r.passed && c.certification.passed && c.decomposition.ok;
    r.topologies.push_back(std::move(c));
  }
  return r;
}

}  // namespace signet
