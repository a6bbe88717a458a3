#pragma once

// File formats: graphs, designs and schedules as JSON documents; trajectories
// and ensemble statistics as CSV; a manifest echoing every run.
//
// Agents are 1-based in every file.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signet/ensemble.hpp"
#include "signet/protocol.hpp"
#include "signet/schedule.hpp"
#include "signet/sde.hpp"
#include "signet/signed_graph.hpp"

namespace signet::io {

/// Parses {"n_agents", "dim", "edges": [{"to", "from", "matrix"}]} without
/// validating the weights. Throws Errc::Parse naming the line/column or the
/// offending field.
RawGraph parse_graph(std::string_view text, std::string_view source = "<input>");
RawGraph read_raw_graph(const std::filesystem::path& path);

/// read_raw_graph followed by MatrixGraph::from_raw.
MatrixGraph read_graph(const std::filesystem::path& path);

/// Edges in (to, from) order; numbers in shortest round-trip form.
std::string graph_to_json(const MatrixGraph& g);
void write_graph(const std::filesystem::path& path, const MatrixGraph& g);

/// Decomposition found (or checked, when v1 is given) and protocol
/// synthesized for one graph.
Topology design_topology(std::string id, MatrixGraph graph, const Vector& theta,
                         const SynthesisOptions& opts,
                         const std::optional<AgentSet>& v1 = std::nullopt);

/// Design export: delta, k1, x0, informed set, |B_i| and, when given, the
/// certification verdicts.
std::string design_to_json(const ProtocolDesign& design,
                           const CertificationReport* certification = nullptr);
void write_design(const std::filesystem::path& path, const ProtocolDesign& design,
                  const CertificationReport* certification = nullptr);

/// Rebuilds a design from its export and the graph it was made for. The
/// grounded Laplacian, k1 and x0 are recomputed from delta and |B_i|.
ProtocolDesign parse_design(std::string_view text, const MatrixGraph& g,
                            std::string_view source = "<input>");
ProtocolDesign read_design(const std::filesystem::path& path, const MatrixGraph& g);

/// Schedule document:
///   {"theta": [...], "mode": "fixed" | "cyclic" | "explicit",
///    "topologies": [{"id", "graph": file, "margin" | "delta" | "design": file,
///                    "v1": [...]}],
///    "segments": [{"topology": id, "duration": t}]}
/// File names resolve relative to the schedule file. Fixed schedules take a
/// single topology and no segments. `theta_override` replaces the document's
/// theta.
TopologySchedule read_schedule(const std::filesystem::path& path,
                               const std::optional<Vector>& theta_override = std::nullopt);
TopologySchedule parse_schedule(std::string_view text, const std::filesystem::path& base_dir,
                                const std::optional<Vector>& theta_override = std::nullopt,
                                std::string_view source = "<input>");

/// Shortest decimal string that reads back to the same double.
std::string format_exact(double v);

enum class TrajectoryFormat { Long, Wide };

/// Long: `t,agent,dim,value`; wide: `t,x_1_1,...,x_N_d`.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, TrajectoryFormat format);

/// `t,agent,ms_error,stderr`, one row per (time, agent).
void write_stats_csv(std::ostream& os, const EnsembleStats& stats);

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> options;
  std::vector<std::string> outputs;
  std::optional<std::uint64_t> seed;
  std::string version;
};

std::string manifest_to_json(const RunManifest& m);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);

/// Whole file as a string. Throws Errc::Io when unreadable.
std::string read_file(const std::filesystem::path& path);
/// Throws Errc::Io when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace signet::io
