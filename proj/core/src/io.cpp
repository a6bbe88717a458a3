#include "signet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "signet/error.hpp"

namespace signet::io {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(std::string_view source, const std::string& where,
                             const std::string& what) {
  std::string msg(source);
  msg += ": ";
  if (!where.empty()) msg += where + ": ";
  msg += what;
  throw Error(Errc::Parse, msg);
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    parse_fail(source, "line " + std::to_string(line) + ", column " + std::to_string(col), what);
  }
}

const json& field(const json& obj, const std::string& key, const std::string& where,
                  std::string_view source) {
  if (!obj.is_object()) parse_fail(source, where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(source, where, "missing field '" + key + "'");
  return *it;
}

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double as_number(const json& v, const std::string& where, std::string_view source) {
  if (!v.is_number()) parse_fail(source, where, "expected a number");
  return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& where, std::string_view source) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    parse_fail(source, where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

// 1-based label in the file, 0-based id in memory.
AgentId as_agent(const json& v, const std::string& where, std::string_view source) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
    parse_fail(source, where, "expected a 1-based agent index");
  return v.get<std::size_t>() - 1;
}

std::string as_string(const json& v, const std::string& where, std::string_view source) {
  if (!v.is_string()) parse_fail(source, where, "expected a string");
  return v.get<std::string>();
}

Vector as_vector(const json& v, const std::string& where, std::string_view source) {
  if (!v.is_array()) parse_fail(source, where, "expected an array of numbers");
  Vector out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(as_number(v[k], where + "[" + std::to_string(k) + "]", source));
  return out;
}

AgentSet as_agent_set(const json& v, const std::string& where, std::string_view source) {
  if (!v.is_array()) parse_fail(source, where, "expected an array of agent indices");
  std::set<AgentId> s;
  for (std::size_t k = 0; k < v.size(); ++k)
    s.insert(as_agent(v[k], where + "[" + std::to_string(k) + "]", source));
  return {s.begin(), s.end()};
}

Matrix as_matrix(const json& v, const std::string& where, std::string_view source) {
  if (!v.is_array() || v.empty()) parse_fail(source, where, "expected a non-empty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  std::vector<Vector> data;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string w = where + "[" + std::to_string(r) + "]";
    data.push_back(as_vector(v[r], w, source));
    if (r == 0) cols = data.back().size();
    if (data.back().size() != cols || cols == 0) parse_fail(source, w, "ragged matrix row");
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = data[r][c];
  return m;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json agents_json(const AgentSet& s) {
  json a = json::array();
  for (AgentId i : s) a.push_back(i + 1);
  return a;
}

json vector_json(const Vector& v) { return json(v); }

json certification_json(const CertificationReport& c) {
  json j;
  j["mode"] = std::string(to_string(c.mode));
  j["hurwitz"] = std::string(to_string(c.hurwitz.verdict));
  j["lyapunov_residual"] = c.hurwitz.residual;
  j["symmetric_part_pd"] = c.symmetric_part_pd;
  j["stationarity_residual"] = c.stationarity;
  j["stationarity_ok"] = c.stationarity_ok;
  j["passed"] = c.passed;
  j["notes"] = c.notes;
  return j;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

RawGraph parse_graph(std::string_view text, std::string_view source) {
  const json doc = parse_json(text, source);
  RawGraph g;
  g.n_agents = as_count(field(doc, "n_agents", "", source), "n_agents", source);
  g.dim = as_count(field(doc, "dim", "", source), "dim", source);
  if (g.n_agents == 0) parse_fail(source, "n_agents", "must be at least 1");
  if (g.dim == 0) parse_fail(source, "dim", "must be at least 1");
  const json& edges = field(doc, "edges", "", source);
  if (!edges.is_array()) parse_fail(source, "edges", "expected an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string w = "edges[" + std::to_string(k) + "]";
    RawEdge e;
    e.to = as_agent(field(edges[k], "to", w, source), join(w, "to"), source);
    e.from = as_agent(field(edges[k], "from", w, source), join(w, "from"), source);
    e.matrix = as_matrix(field(edges[k], "matrix", w, source), join(w, "matrix"), source);
    g.edges.push_back(std::move(e));
  }
  return g;
}

RawGraph read_raw_graph(const std::filesystem::path& path) {
  return parse_graph(read_file(path), path.string());
}

MatrixGraph read_graph(const std::filesystem::path& path) {
  return MatrixGraph::from_raw(read_raw_graph(path));
}

std::string graph_to_json(const MatrixGraph& g) {
  json doc;
  doc["n_agents"] = g.n_agents();
  doc["dim"] = g.dim();
  json edges = json::array();
  for (const auto& [key, w] : g.edges()) {
    json e;
    e["to"] = key.first + 1;
    e["from"] = key.second + 1;
    e["matrix"] = matrix_json(w.matrix().matrix());
    edges.push_back(std::move(e));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

void write_graph(const std::filesystem::path& path, const MatrixGraph& g) {
  write_file(path, graph_to_json(g));
}

Topology design_topology(std::string id, MatrixGraph graph, const Vector& theta,
                         const SynthesisOptions& opts, const std::optional<AgentSet>& v1) {
  const Decomposition dec =
      v1 ? Decomposition::from_v1(graph.n_agents(), *v1) : find_decomposition(graph);
  ProtocolDesign design = synthesize(graph, dec, theta, opts);
  return Topology{std::move(id), std::move(graph), std::move(design)};
}

std::string design_to_json(const ProtocolDesign& d, const CertificationReport* certification) {
  json doc;
  doc["n_agents"] = d.n_agents;
  doc["dim"] = d.dim;
  doc["theta"] = vector_json(d.theta);
  doc["lower_bound"] = d.lower_bound ? json(*d.lower_bound) : json(nullptr);
  doc["delta"] = d.delta;
  doc["k1"] = d.k1;
  doc["x0"] = vector_json(d.x0);
  doc["decomposition"] = {{"v1", agents_json(d.decomposition.v1)},
                          {"v2", agents_json(d.decomposition.v2)}};
  doc["informed"] = agents_json(d.informed);
  json coupling = json::array();
  for (const auto& [i, b] : d.coupling)
    coupling.push_back({{"agent", i + 1}, {"matrix", matrix_json(b.matrix())}});
  doc["coupling"] = std::move(coupling);
  doc["lemma_applicable"] = d.lemma_applicable;
  doc["notes"] = d.notes;
  if (certification) doc["certification"] = certification_json(*certification);
  return doc.dump(2) + "\n";
}

void write_design(const std::filesystem::path& path, const ProtocolDesign& design,
                  const CertificationReport* certification) {
  write_file(path, design_to_json(design, certification));
}

ProtocolDesign parse_design(std::string_view text, const MatrixGraph& g, std::string_view source) {
  const json doc = parse_json(text, source);
  ProtocolDesign d;
  d.n_agents = as_count(field(doc, "n_agents", "", source), "n_agents", source);
  d.dim = as_count(field(doc, "dim", "", source), "dim", source);
  if (d.n_agents != g.n_agents() || d.dim != g.dim())
    throw Error(Errc::DimensionMismatch, std::string(source) + ": design does not match the graph");
  d.theta = as_vector(field(doc, "theta", "", source), "theta", source);
  if (d.theta.size() != d.dim) parse_fail(source, "theta", "must have dim entries");
  d.delta = as_number(field(doc, "delta", "", source), "delta", source);
  if (!(d.delta > 0.0)) parse_fail(source, "delta", "must be positive");
  if (auto it = doc.find("lower_bound"); it != doc.end() && !it->is_null())
    d.lower_bound = as_number(*it, "lower_bound", source);
  const json& dec = field(doc, "decomposition", "", source);
  d.decomposition = Decomposition::from_v1(
      d.n_agents, as_agent_set(field(dec, "v1", "decomposition", source), "decomposition.v1", source));
  const json& coupling = field(doc, "coupling", "", source);
  if (!coupling.is_array()) parse_fail(source, "coupling", "expected an array");
  for (std::size_t k = 0; k < coupling.size(); ++k) {
    const std::string w = "coupling[" + std::to_string(k) + "]";
    const AgentId i = as_agent(field(coupling[k], "agent", w, source), join(w, "agent"), source);
    if (i >= d.n_agents) parse_fail(source, join(w, "agent"), "agent out of range");
    const Matrix m = as_matrix(field(coupling[k], "matrix", w, source), join(w, "matrix"), source);
    if (!m.square() || m.rows() != d.dim) parse_fail(source, join(w, "matrix"), "must be dim x dim");
    d.coupling.emplace(i, SymMatrix(m));
    d.informed.push_back(i);
  }
  std::sort(d.informed.begin(), d.informed.end());
  if (auto it = doc.find("lemma_applicable"); it != doc.end() && it->is_boolean())
    d.lemma_applicable = it->get<bool>();
  else
    d.lemma_applicable = !d.coupling.empty();
  d.k1 = 1.0 + 2.0 / d.delta;
  d.x0 = d.theta;
  for (double& v : d.x0) v *= d.k1;
  d.grounded_laplacian = grounded_laplacian(g, d.coupling, d.delta);
  return d;
}

ProtocolDesign read_design(const std::filesystem::path& path, const MatrixGraph& g) {
  return parse_design(read_file(path), g, path.string());
}

TopologySchedule parse_schedule(std::string_view text, const std::filesystem::path& base_dir,
                                const std::optional<Vector>& theta_override,
                                std::string_view source) {
  const json doc = parse_json(text, source);
  const Vector theta =
      theta_override ? *theta_override : as_vector(field(doc, "theta", "", source), "theta", source);

  const json& tops = field(doc, "topologies", "", source);
  if (!tops.is_array() || tops.empty()) parse_fail(source, "topologies", "expected a non-empty array");

  std::string mode_name = "fixed";
  if (auto it = doc.find("mode"); it != doc.end()) mode_name = as_string(*it, "mode", source);
  ScheduleMode mode;
  if (mode_name == "fixed") mode = ScheduleMode::Fixed;
  else if (mode_name == "cyclic") mode = ScheduleMode::Cyclic;
  else if (mode_name == "explicit") mode = ScheduleMode::Explicit;
  else parse_fail(source, "mode", "expected fixed, cyclic or explicit");

  std::vector<Topology> topologies;
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < tops.size(); ++k) {
    const std::string w = "topologies[" + std::to_string(k) + "]";
    const json& t = tops[k];
    const std::string id = as_string(field(t, "id", w, source), join(w, "id"), source);
    if (index.contains(id)) parse_fail(source, join(w, "id"), "duplicate topology id '" + id + "'");
    const auto graph_path =
        base_dir / as_string(field(t, "graph", w, source), join(w, "graph"), source);
    MatrixGraph graph = read_graph(graph_path);

    const int choices = static_cast<int>(t.contains("margin")) +
                        static_cast<int>(t.contains("delta")) + static_cast<int>(t.contains("design"));
    if (choices > 1) parse_fail(source, w, "give at most one of margin, delta and design");

    if (t.contains("design")) {
      const auto design_path = base_dir / as_string(t["design"], join(w, "design"), source);
      ProtocolDesign design = read_design(design_path, graph);
      if (theta_override || design.theta != theta) {
        // Re-target the stored coupling to this schedule's theta.
        design.theta = theta;
        design.x0 = theta;
        for (double& v : design.x0) v *= design.k1;
      }
      topologies.push_back(Topology{id, std::move(graph), std::move(design)});
    } else {
      SynthesisOptions opts;
      if (t.contains("margin")) opts.margin = as_number(t["margin"], join(w, "margin"), source);
      if (t.contains("delta")) opts.delta = as_number(t["delta"], join(w, "delta"), source);
      std::optional<AgentSet> v1;
      if (t.contains("v1")) v1 = as_agent_set(t["v1"], join(w, "v1"), source);
      topologies.push_back(design_topology(id, std::move(graph), theta, opts, v1));
    }
    index.emplace(id, k);
  }

  if (mode == ScheduleMode::Fixed) {
    if (topologies.size() != 1) parse_fail(source, "topologies", "fixed mode takes one topology");
    return TopologySchedule::fixed(std::move(topologies.front()));
  }

  const json& segs = field(doc, "segments", "", source);
  if (!segs.is_array() || segs.empty()) parse_fail(source, "segments", "expected a non-empty array");
  std::vector<Segment> segments;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const std::string w = "segments[" + std::to_string(k) + "]";
    const std::string id = as_string(field(segs[k], "topology", w, source), join(w, "topology"), source);
    auto it = index.find(id);
    if (it == index.end()) parse_fail(source, join(w, "topology"), "unknown topology '" + id + "'");
    const double duration =
        as_number(field(segs[k], "duration", w, source), join(w, "duration"), source);
    if (!(duration > 0.0)) parse_fail(source, join(w, "duration"), "must be positive");
    segments.push_back(Segment{it->second, duration});
  }
  return TopologySchedule(std::move(topologies), std::move(segments), mode);
}

TopologySchedule read_schedule(const std::filesystem::path& path,
                               const std::optional<Vector>& theta_override) {
  return parse_schedule(read_file(path), path.parent_path(), theta_override, path.string());
}

std::string format_exact(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, TrajectoryFormat format) {
  const std::size_t n = traj.n_agents;
  const std::size_t d = traj.dim;
  if (format == TrajectoryFormat::Long) {
    os << "t,agent,dim,value\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const std::string t = format_exact(traj.times[k]);
      const auto row = traj.states.row(k);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < d; ++q)
          os << t << ',' << i + 1 << ',' << q + 1 << ',' << format_exact(row[i * d + q]) << '\n';
    }
    return;
  }
  os << 't';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < d; ++q) os << ",x_" << i + 1 << '_' << q + 1;
  os << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_exact(traj.times[k]);
    for (double v : traj.states.row(k)) os << ',' << format_exact(v);
    os << '\n';
  }
}

void write_stats_csv(std::ostream& os, const EnsembleStats& stats) {
  os << "t,agent,ms_error,stderr\n";
  for (std::size_t k = 0; k < stats.times.size(); ++k) {
    const std::string t = format_exact(stats.times[k]);
    for (std::size_t i = 0; i < stats.n_agents; ++i)
      os << t << ',' << i + 1 << ',' << format_exact(stats.ms_error(k, i)) << ','
         << format_exact(stats.std_error(k, i)) << '\n';
  }
}

std::string manifest_to_json(const RunManifest& m) {
  json doc;
  doc["command"] = m.command;
  doc["version"] = m.version;
  doc["inputs"] = m.inputs;
  doc["options"] = m.options;
  doc["outputs"] = m.outputs;
  doc["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  return doc.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  write_file(path, manifest_to_json(m));
}

}  // namespace signet::io
