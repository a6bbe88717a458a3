#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "signet/ensemble.hpp"
#include "signet/error.hpp"
#include "signet/gain.hpp"
#include "signet/io.hpp"
#include "signet/protocol.hpp"
#include "signet/schedule.hpp"
#include "signet/sde.hpp"
#include "signet/structure.hpp"
#include "signet/version.hpp"

namespace signet::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Four decimals in reports, without a "-0.0000".
std::string fixed4(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << (std::abs(v) < 5e-5 ? 0.0 : v);
  return os.str();
}

std::string vec4(const Vector& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + fixed4(v[k]);
  return s + "]";
}

std::string agents1(const AgentSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? ", " : "") + std::to_string(s[k] + 1);
  return out + "}";
}

std::string mat4(const Matrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? ", [" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + fixed4(m(r, c));
    s += "]";
  }
  return s + "]";
}

std::string join_exact(const Vector& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + io::format_exact(v[k]);
  return s;
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty())
    throw Error(Errc::Parse, std::string(what) + ": cannot parse '" + std::string(s) + "'");
  return v;
}

Vector parse_list(std::string_view s, std::string_view what) {
  Vector out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse_double(s.substr(0, comma), what));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

AgentSet parse_agents(std::string_view s, std::size_t n_agents) {
  AgentSet out;
  for (double v : parse_list(s, "--v1")) {
    if (v != std::floor(v) || v < 1 || v > static_cast<double>(n_agents))
      throw Error(Errc::InvalidInput, "--v1: agent " + io::format_exact(v) + " is not in 1.." +
                                          std::to_string(n_agents));
    out.push_back(static_cast<AgentId>(v) - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

InitialCondition parse_init(std::string_view s, std::size_t n_agents, std::size_t dim) {
  const auto colon = s.find(':');
  const std::string_view kind = s.substr(0, colon);
  if (colon == std::string_view::npos)
    throw Error(Errc::Parse, "--init: expected uniform:lo,hi or fixed:values");
  const Vector vals = parse_list(s.substr(colon + 1), "--init");
  if (kind == "uniform") {
    if (vals.size() != 2 || !(vals[0] < vals[1]))
      throw Error(Errc::InvalidInput, "--init uniform needs lo,hi with lo < hi");
    return UniformInit{vals[0], vals[1]};
  }
  if (kind == "fixed") {
    if (vals.size() == n_agents * dim) return vals;
    if (vals.size() == dim) {
      Vector x;
      for (std::size_t i = 0; i < n_agents; ++i) x.insert(x.end(), vals.begin(), vals.end());
      return x;
    }
    throw Error(Errc::InvalidInput, "--init fixed needs d or N*d values");
  }
  throw Error(Errc::Parse, "--init: unknown kind '" + std::string(kind) + "'");
}

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::Parse:
    case Errc::Io:
    case Errc::InvalidInput:
    case Errc::DimensionMismatch:
    case Errc::IndexOutOfRange: return kExitUsage;
    default: return kExitFailure;
  }
}

std::string_view hint_for(Errc c) {
  switch (c) {
    case Errc::DeltaBelowBound: return "pass a --delta above C, or use --margin";
    case Errc::OmegaSumNotPD:
      return "an agent in V1 has negative in-edges whose sum is only semidefinite; choose a "
             "different --v1";
    case Errc::EmptyV1WithAntagonism: return "include an agent with a negative in-edge in --v1";
    case Errc::TooLarge: return "the exhaustive search is capped; pass --v1 explicitly";
    case Errc::NumericalBlowup: return "reduce --dt or check the schedule with `signet certify`";
    default: return {};
  }
}

struct SimOptions {
  std::string schedule;
  std::vector<double> theta;
  std::string gain = "power:c0=1,alpha=1";
  double sigma = 0.4;
  double kappa = 0.3;
  double dt = 1e-3;
  double horizon = 100.0;
  std::uint64_t seed = 1;
  std::size_t subsample = 100;
  std::string init = "uniform:-5,5";
  std::string out = "signet_out";
  bool allow_uncertified = false;
};

void add_sim_options(CLI::App* sub, SimOptions& o) {
  sub->add_option("schedule", o.schedule, "Schedule file")->required();
  sub->add_option("--theta", o.theta, "Override the consensus target (comma separated)")
      ->delimiter(',');
  sub->add_option("--gain", o.gain, "power:c0=..,alpha=.. | const:c0=.. | table:<csv>")
      ->capture_default_str();
  sub->add_option("--sigma", o.sigma, "Additive noise level on every edge")->capture_default_str();
  sub->add_option("--kappa", o.kappa, "Multiplicative intensity f(x) = kappa x")
      ->capture_default_str();
  sub->add_option("--dt", o.dt, "Euler-Maruyama step")->capture_default_str();
  sub->add_option("--horizon", o.horizon, "Final time T")->capture_default_str();
  sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  sub->add_option("--subsample", o.subsample, "Keep every k-th grid point")->capture_default_str();
  sub->add_option("--init", o.init, "uniform:lo,hi | fixed:v,... (d or N*d values)")
      ->capture_default_str();
  sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  sub->add_flag("--allow-uncertified", o.allow_uncertified,
                "Simulate even when the schedule certificate fails");
}

std::optional<Vector> theta_override(const std::vector<double>& t) {
  if (t.empty()) return std::nullopt;
  return Vector(t.begin(), t.end());
}

std::map<std::string, std::string> sim_manifest_options(const SimOptions& o) {
  std::map<std::string, std::string> m{
      {"gain", o.gain},
      {"sigma", io::format_exact(o.sigma)},
      {"kappa", io::format_exact(o.kappa)},
      {"dt", io::format_exact(o.dt)},
      {"horizon", io::format_exact(o.horizon)},
      {"subsample", std::to_string(o.subsample)},
      {"init", o.init},
      {"allow_uncertified", o.allow_uncertified ? "true" : "false"},
  };
  if (!o.theta.empty()) m["theta"] = join_exact(Vector(o.theta.begin(), o.theta.end()));
  return m;
}

void print_schedule_report(const ScheduleReport& r, std::ostream& out) {
  out << "mode: " << to_string(r.mode) << "\n";
  for (const auto& t : r.topologies) {
    const auto& c = t.certification;
    out << t.id << ": decomposition " << (t.decomposition.ok ? "ok" : "FAILED");
    if (r.mode == CertificationMode::Fixed)
      out << ", -L_B Hurwitz " << to_string(c.hurwitz.verdict);
    else
      out << ", L_B + L_B^T PD " << (c.symmetric_part_pd ? "yes" : "no");
    out << ", stationarity " << (c.stationarity_ok ? "ok" : "FAILED") << " -> "
        << (c.passed && t.decomposition.ok ? "certified" : "NOT certified") << "\n";
  }
  out << "entry bound: " << fixed4(r.weights.bound) << "\n";
  for (const auto& f : r.failures) out << "failure: " << f << "\n";
  out << "verdict: " << (r.passed ? "certified" : "NOT certified") << "\n";
}

struct Prepared {
  std::shared_ptr<const TopologySchedule> schedule;
  SimConfig cfg;
};

// Loads the schedule and builds the simulation config; returns nullopt after
// printing the failures when the certificate fails and is not waived.
std::optional<Prepared> prepare(const SimOptions& o, std::ostream& out, std::ostream& err) {
  auto sched = std::make_shared<const TopologySchedule>(
      io::read_schedule(o.schedule, theta_override(o.theta)));
  const ScheduleReport rep = certify_schedule(*sched);
  if (!rep.passed) {
    if (!o.allow_uncertified) {
      print_schedule_report(rep, err);
      err << "error: schedule is not certified (pass --allow-uncertified to run anyway)\n";
      return std::nullopt;
    }
    out << "warning: schedule is not certified\n";
  }
  Prepared p;
  p.schedule = sched;
  p.cfg.schedule = sched;
  p.cfg.gain = GainSpec::parse(o.gain);
  p.cfg.sigma_add = o.sigma;
  p.cfg.intensity = NoiseIntensity::linear(o.kappa);
  p.cfg.dt = o.dt;
  p.cfg.horizon = o.horizon;
  p.cfg.seed = o.seed;
  p.cfg.initial = parse_init(o.init, sched->n_agents(), sched->dim());
  p.cfg.validate();
  if (o.subsample == 0) throw Error(Errc::InvalidInput, "--subsample must be positive");
  return p;
}

std::string open_output(const std::string& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create output directory " + dir + ": " + ec.message());
  return (fs::path(dir) / name).string();
}

void write_stream_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(Errc::Io, "cannot write " + path);
  fn(os);
  if (!os) throw Error(Errc::Io, "write failed for " + path);
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file, bool as_json, std::ostream& out) {
  const RawGraph raw = io::read_raw_graph(file);
  const auto violations = validate_graph(raw);
  if (as_json) {
    json j;
    j["file"] = file;
    j["valid"] = violations.empty();
    j["violations"] = json::array();
    for (const auto& v : violations)
      j["violations"].push_back({{"edge_index", v.edge_index},
                                 {"to", v.to + 1},
                                 {"from", v.from + 1},
                                 {"kind", std::string(to_string(v.kind))},
                                 {"message", v.message}});
    out << j.dump(2) << "\n";
  } else {
    for (const auto& v : violations) out << "error: " << v.message << "\n";
    if (violations.empty()) {
      const MatrixGraph g = MatrixGraph::from_raw(raw);
      out << file << ": valid (" << g.n_agents() << " agents, dim " << g.dim() << ", "
          << g.edge_count() << " edges, antagonized " << agents1(antagonized_set(g)) << ")\n";
    } else {
      out << file << ": " << violations.size() << " violation(s)\n";
    }
  }
  return violations.empty() ? kExitOk : kExitFailure;
}

int cmd_decompose(const std::string& file, const std::string& v1, std::ostream& out) {
  const MatrixGraph g = io::read_graph(file);
  const Decomposition dec = v1.empty() ? find_decomposition(g)
                                       : Decomposition::from_v1(g.n_agents(),
                                                                parse_agents(v1, g.n_agents()));
  const DecompositionCheck chk = verify_decomposition(g, dec);
  out << (v1.empty() ? "minimal split\n" : "given split\n");
  out << "V1 = " << agents1(dec.v1) << "\n";
  out << "V2 = " << agents1(dec.v2) << "\n";
  for (const auto& f : chk.failures)
    out << "failure: v" << f.vertex + 1 << ": " << to_string(f.clause) << "\n";
  out << "verified: " << (chk.ok ? "yes" : "no") << "\n";
  return chk.ok ? kExitOk : kExitFailure;
}

struct DesignOptions {
  std::string graph;
  std::vector<double> theta;
  std::optional<double> margin;
  std::optional<double> delta;
  std::string v1;
  std::string mode = "fixed";
  std::string out;
};

int cmd_design(const DesignOptions& o, std::ostream& out) {
  MatrixGraph g = io::read_graph(o.graph);
  if (o.theta.empty()) throw Error(Errc::InvalidInput, "--theta is required");
  SynthesisOptions so;
  if (o.margin) so.margin = *o.margin;
  so.delta = o.delta;
  std::optional<AgentSet> v1;
  if (!o.v1.empty()) v1 = parse_agents(o.v1, g.n_agents());
  const CertificationMode mode =
      o.mode == "fixed" ? CertificationMode::Fixed : CertificationMode::TimeVarying;
  const Topology top = io::design_topology(fs::path(o.graph).stem().string(), std::move(g),
                                           Vector(o.theta.begin(), o.theta.end()), so, v1);
  const ProtocolDesign& d = top.design;
  const CertificationReport cert = certify_design(d, mode);

  out << "V1 = " << agents1(d.decomposition.v1) << "\n";
  out << "V2 = " << agents1(d.decomposition.v2) << "\n";
  out << "C = " << (d.lower_bound ? fixed4(*d.lower_bound) : std::string("undefined")) << "\n";
  out << "delta = " << fixed4(d.delta) << "\n";
  out << "k1 = " << fixed4(d.k1) << "\n";
  out << "x0 = " << vec4(d.x0) << "\n";
  out << "informed = " << agents1(d.informed) << "\n";
  for (const auto& [i, b] : d.coupling) out << "B_" << i + 1 << " = " << mat4(b.matrix()) << "\n";
  for (const auto& n : d.notes) out << "note: " << n << "\n";
  out << "certification (" << to_string(mode) << "):\n";
  out << "  -L_B Hurwitz: " << to_string(cert.hurwitz.verdict) << " (Lyapunov residual "
      << cert.hurwitz.residual << ")\n";
  out << "  L_B + L_B^T positive definite: " << (cert.symmetric_part_pd ? "yes" : "no") << "\n";
  out << "  stationarity residual: " << cert.stationarity << " ("
      << (cert.stationarity_ok ? "ok" : "FAILED") << ")\n";
  for (const auto& n : cert.notes) out << "  note: " << n << "\n";
  out << "verdict: " << (cert.passed ? "certified" : "NOT certified") << "\n";
  if (!o.out.empty()) {
    io::write_design(o.out, d, &cert);
    out << "wrote " << o.out << "\n";
  }
  return cert.passed ? kExitOk : kExitFailure;
}

int cmd_certify(const std::string& file, const std::vector<double>& theta, std::ostream& out) {
  const TopologySchedule s = io::read_schedule(file, theta_override(theta));
  const ScheduleReport r = certify_schedule(s);
  print_schedule_report(r, out);
  return r.passed ? kExitOk : kExitFailure;
}

int cmd_gain_check(const std::string& spec, const std::string& target, std::ostream& out) {
  const GainSpec g = GainSpec::parse(spec);
  std::vector<GainTarget> targets;
  if (target == "mean-square" || target == "both") targets.push_back(GainTarget::MeanSquare);
  if (target == "almost-sure" || target == "both") targets.push_back(GainTarget::AlmostSure);
  out << "gain " << g.describe() << "\n";
  bool all = true;
  bool printed = false;
  for (GainTarget t : targets) {
    const ConditionReport r = validate_gain(g, t);
    if (!printed) {
      out << "  divergent integral: " << (r.divergent_integral ? "yes" : "no") << "\n";
      out << "  vanishing: " << (r.vanishing ? "yes" : "no") << "\n";
      out << "  square integrable: " << (r.square_integrable ? "yes" : "no") << "\n";
      if (r.heuristic)
        out << "  table support [0, " << fixed4(r.horizon) << "]: integral " << fixed4(r.integral)
            << ", square integral " << fixed4(r.square_integral) << " (heuristic)\n";
      printed = true;
    }
    out << "  " << to_string(t) << ": " << (r.passes ? "pass" : "FAIL") << "\n";
    all = all && r.passes;
  }
  return all ? kExitOk : kExitFailure;
}

int cmd_simulate(const SimOptions& o, std::uint32_t path, const std::string& format,
                 std::ostream& out, std::ostream& err) {
  auto prep = prepare(o, out, err);
  if (!prep) return kExitFailure;
  const Trajectory tr = simulate_path(prep->cfg, path, o.subsample);
  const std::string csv = open_output(o.out, "trajectory.csv");
  write_stream_file(csv, [&](std::ostream& os) {
    io::write_trajectory_csv(os, tr, format == "wide" ? io::TrajectoryFormat::Wide
                                                      : io::TrajectoryFormat::Long);
  });
  const Matrix e = error_process(tr);
  const std::size_t last = e.rows() - 1;
  out << "final squared error at t = " << fixed4(tr.times[last]) << ":\n";
  for (std::size_t i = 0; i < tr.n_agents; ++i)
    out << "  v" << i + 1 << ": " << fixed4(e(last, i)) << "\n";

  io::RunManifest m;
  m.command = "simulate";
  m.inputs = {o.schedule};
  m.options = sim_manifest_options(o);
  m.options["path"] = std::to_string(path);
  m.options["format"] = format;
  m.outputs = {csv};
  m.seed = o.seed;
  m.version = kVersion;
  const std::string mpath = open_output(o.out, "manifest.json");
  io::write_manifest(mpath, m);
  out << "wrote " << csv << " and " << mpath << "\n";
  return kExitOk;
}

json report_json(const ConvergenceReport& r) {
  json j;
  j["window"] = r.window;
  j["overall"] = std::string(to_string(r.overall));
  j["agents"] = json::array();
  for (std::size_t i = 0; i < r.agents.size(); ++i) {
    const auto& a = r.agents[i];
    j["agents"].push_back({{"agent", i + 1},
                           {"initial_mean", a.initial_mean},
                           {"mid_mean", a.mid_mean},
                           {"final_mean", a.final_mean},
                           {"ratio", a.ratio},
                           {"monotone_trend", a.monotone_trend},
                           {"verdict", std::string(to_string(a.verdict))}});
  }
  return j;
}

int cmd_ensemble(const SimOptions& o, std::size_t m, unsigned threads, double window,
                 const std::string& expect, std::ostream& out, std::ostream& err) {
  auto prep = prepare(o, out, err);
  if (!prep) return kExitFailure;
  const EnsembleStats st = run_ensemble(prep->cfg, m, o.subsample, threads);
  const ConvergenceReport rep = convergence_report(st, window);

  const std::string csv = open_output(o.out, "stats.csv");
  write_stream_file(csv, [&](std::ostream& os) { io::write_stats_csv(os, st); });
  const std::string rpath = open_output(o.out, "report.json");
  io::write_file(rpath, report_json(rep).dump(2) + "\n");

  out << "ensemble of " << m << " paths, T = " << fixed4(o.horizon) << ", dt = " << o.dt << "\n";
  out << "agent  initial     mid         final       ratio    trend  verdict\n";
  for (std::size_t i = 0; i < rep.agents.size(); ++i) {
    const auto& a = rep.agents[i];
    out << "v" << std::left << std::setw(5) << i + 1 << std::setw(12) << fixed4(a.initial_mean)
        << std::setw(12) << fixed4(a.mid_mean) << std::setw(12) << fixed4(a.final_mean)
        << std::setw(9) << fixed4(a.ratio) << std::setw(7) << (a.monotone_trend ? "yes" : "no")
        << to_string(a.verdict) << std::right << "\n";
  }
  out << "overall: " << to_string(rep.overall) << "\n";

  io::RunManifest man;
  man.command = "ensemble";
  man.inputs = {o.schedule};
  man.options = sim_manifest_options(o);
  man.options["m"] = std::to_string(m);
  man.options["window"] = io::format_exact(window);
  if (!expect.empty()) man.options["expect"] = expect;
  man.outputs = {csv, rpath};
  man.seed = o.seed;
  man.version = kVersion;
  const std::string mpath = open_output(o.out, "manifest.json");
  io::write_manifest(mpath, man);
  out << "wrote " << csv << ", " << rpath << " and " << mpath << "\n";

  if (expect == "converge" && rep.overall != Verdict::Converging) {
    err << "error: expected convergence, got " << to_string(rep.overall) << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-trivial consensus on signed matrix-weighted networks", "signet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string graph_file;
  bool as_json = false;
  auto* validate = app.add_subcommand("validate", "Check a graph file for admissible weights");
  validate->add_option("graph", graph_file, "Graph file")->required();
  validate->add_flag("--json", as_json, "Machine-readable diagnostics");

  std::string v1;
  auto* decompose = app.add_subcommand("decompose", "Find or verify a V1/V2 split");
  decompose->add_option("graph", graph_file, "Graph file")->required();
  decompose->add_option("--v1", v1, "Verify this V1 (1-based, comma separated)");

  DesignOptions dopt;
  double margin = 0.1;
  double delta = 0.0;
  auto* design = app.add_subcommand("design", "Synthesize and certify the protocol for a graph");
  design->add_option("graph", dopt.graph, "Graph file")->required();
  design->add_option("--theta", dopt.theta, "Consensus target (comma separated)")
      ->delimiter(',')
      ->required();
  auto* margin_opt = design->add_option("--margin", margin, "delta = C + margin (default 0.1)");
  auto* delta_opt = design->add_option("--delta", delta, "Explicit delta, must exceed C");
  margin_opt->excludes(delta_opt);
  design->add_option("--v1", dopt.v1, "Use this V1 instead of the minimal split");
  design->add_option("--mode", dopt.mode, "Certificate: fixed or time-varying")
      ->check(CLI::IsMember({"fixed", "time-varying"}))
      ->capture_default_str();
  design->add_option("--out", dopt.out, "Write the design file here");

  std::string schedule_file;
  std::vector<double> theta;
  auto* certify = app.add_subcommand("certify", "Certify every topology of a schedule");
  certify->add_option("schedule", schedule_file, "Schedule file")->required();
  certify->add_option("--theta", theta, "Override the consensus target")->delimiter(',');

  std::string gain = "power:c0=1,alpha=1";
  std::string target = "both";
  auto* gain_check = app.add_subcommand("gain-check", "Check the gain conditions");
  gain_check->add_option("--gain", gain, "power:c0=..,alpha=.. | const:c0=.. | table:<csv>")
      ->capture_default_str();
  gain_check->add_option("--target", target, "mean-square, almost-sure or both")
      ->check(CLI::IsMember({"mean-square", "almost-sure", "both"}))
      ->capture_default_str();

  SimOptions sopt;
  std::uint32_t path = 0;
  std::string format = "long";
  auto* simulate = app.add_subcommand("simulate", "Integrate one sample path");
  add_sim_options(simulate, sopt);
  simulate->add_option("--path", path, "Path index (selects the random stream)")
      ->capture_default_str();
  simulate->add_option("--format", format, "CSV layout: long or wide")
      ->check(CLI::IsMember({"long", "wide"}))
      ->capture_default_str();

  SimOptions eopt;
  std::size_t m = 1000;
  unsigned threads = 0;
  double window = 0.1;
  std::string expect;
  auto* ensemble = app.add_subcommand("ensemble", "Monte-Carlo mean-square error curves");
  add_sim_options(ensemble, eopt);
  ensemble->add_option("-m,--paths", m, "Number of sample paths")->capture_default_str();
  ensemble->add_option("--threads", threads, "Worker threads (0: SIGNET_THREADS or all cores)")
      ->capture_default_str();
  ensemble->add_option("--window", window, "Report window fraction")->capture_default_str();
  ensemble->add_option("--expect", expect, "Fail unless the verdict matches")
      ->check(CLI::IsMember({"converge"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(graph_file, as_json, out);
    if (*decompose) return cmd_decompose(graph_file, v1, out);
    if (*design) {
      if (margin_opt->count()) dopt.margin = margin;
      if (delta_opt->count()) dopt.delta = delta;
      return cmd_design(dopt, out);
    }
    if (*certify) return cmd_certify(schedule_file, theta, out);
    if (*gain_check) return cmd_gain_check(gain, target, out);
    if (*simulate) return cmd_simulate(sopt, path, format, out, err);
    if (*ensemble) return cmd_ensemble(eopt, m, threads, window, expect, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (const auto hint = hint_for(e.code()); !hint.empty()) err << "hint: " << hint << "\n";
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace signet::cli
