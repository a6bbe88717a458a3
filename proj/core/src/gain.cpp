#include "signet/gain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "signet/error.hpp"

namespace signet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double parse_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw Error(Errc::Parse, "gain: cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

std::map<std::string, double> parse_params(std::string_view body) {
  std::map<std::string, double> out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view item = body.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(Errc::Parse, "gain: expected key=value, got '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    const std::string_view value = item.substr(eq + 1);
    const auto slash = value.find('/');
    if (slash == std::string_view::npos) {
      out[key] = parse_number(value, key);
    } else {
      const double den = parse_number(value.substr(slash + 1), key);
      if (den == 0.0) throw Error(Errc::Parse, "gain: zero denominator in '" + std::string(item) + "'");
      out[key] = parse_number(value.substr(0, slash), key) / den;
    }
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

TableGain load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "gain: cannot open table " + path);
  TableGain t;
  t.source = path;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double tt = 0.0;
    double c = 0.0;
    if (!(row >> tt >> c)) {
      if (lineno == 1) continue;  // header
      throw Error(Errc::Parse, path + ":" + std::to_string(lineno) + ": expected 't,c'");
    }
    t.points.emplace_back(tt, c);
  }
  return t;
}

}  // namespace

GainSpec::GainSpec(Family family) : family_(std::move(family)) {
  std::visit(overloaded{
                 [](const PowerGain& p) {
                   if (!(p.c0 > 0.0) || !(p.alpha >= 0.0) || !std::isfinite(p.alpha))
                     throw Error(Errc::InvalidInput, "power gain needs c0 > 0 and alpha >= 0");
                 },
                 [](const ConstantGain& c) {
                   if (!(c.c0 > 0.0) || !std::isfinite(c.c0))
                     throw Error(Errc::InvalidInput, "constant gain needs c0 > 0");
                 },
                 [](const TableGain& t) {
                   if (t.points.empty()) throw Error(Errc::InvalidInput, "gain table is empty");
                   for (std::size_t k = 0; k < t.points.size(); ++k) {
                     if (!(t.points[k].second >= 0.0))
                       throw Error(Errc::InvalidInput, "gain table values must be >= 0");
                     if (k > 0 && !(t.points[k].first > t.points[k - 1].first))
                       throw Error(Errc::InvalidInput, "gain table times must increase strictly");
                   }
                 },
             },
             family_);
}

GainSpec GainSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::Parse, "gain: expected '<family>:<params>', got '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);

  if (kind == "table") return GainSpec(load_table(std::string(body)));

  const auto params = parse_params(body);
  auto get = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto reject_unknown = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [k, v] : params)
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
        throw Error(Errc::Parse, "gain: unknown parameter '" + k + "'");
  };
  if (kind == "power") {
    reject_unknown({"c0", "alpha"});
    return power(get("c0", 1.0), get("alpha", 1.0));
  }
  if (kind == "const") {
    reject_unknown({"c0"});
    return constant(get("c0", 1.0));
  }
  throw Error(Errc::Parse, "gain: unknown family '" + std::string(kind) + "'");
}

std::string GainSpec::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const PowerGain& p) { os << "power:c0=" << p.c0 << ",alpha=" << p.alpha; },
                 [&](const ConstantGain& c) { os << "const:c0=" << c.c0; },
                 [&](const TableGain& t) { os << "table:" << t.source; },
             },
             family_);
  return os.str();
}

double eval_gain(const GainSpec& g, double t) {
  if (!(t >= 0.0)) throw Error(Errc::InvalidInput, "gain evaluated at negative time");
  return std::visit(
      overloaded{
          [&](const PowerGain& p) {
            if (p.alpha == 1.0) return p.c0 / (1.0 + t);
            return p.c0 * std::pow(1.0 + t, -p.alpha);
          },
          [](const ConstantGain& c) { return c.c0; },
          [&](const TableGain& tab) {
            const auto& pts = tab.points;
            if (t <= pts.front().first) return pts.front().second;
            if (t >= pts.back().first) return pts.back().second;
            auto hi = std::upper_bound(pts.begin(), pts.end(), t,
                                       [](double v, const auto& p) { return v < p.first; });
            auto lo = hi - 1;
            const double w = (t - lo->first) / (hi->first - lo->first);
            return lo->second + w * (hi->second - lo->second);
          },
      },
      g.family());
}

std::string_view to_string(GainTarget t) noexcept {
  return t == GainTarget::MeanSquare ? "mean-square" : "almost-sure";
}

ConditionReport validate_gain(const GainSpec& g, GainTarget target) {
  ConditionReport r;
  std::visit(overloaded{
                 [&](const PowerGain& p) {
                   // int (1+t)^-a diverges iff a <= 1; int (1+t)^-2a converges iff a > 1/2.
                   r.divergent_integral = p.alpha <= 1.0;
                   r.vanishing = p.alpha > 0.0;
                   r.square_integrable = p.alpha > 0.5;
                 },
                 [&](const ConstantGain&) {
                   r.divergent_integral = true;
                   r.vanishing = false;
                   r.square_integrable = false;
                 },
                 [&](const TableGain& tab) {
                   r.heuristic = true;
                   const auto& pts = tab.points;
                   r.horizon = pts.back().first;
                   // Trapezoid rule on c; c^2 is integrated exactly per linear piece.
                   for (std::size_t k = 1; k < pts.size(); ++k) {
                     const double h = pts[k].first - pts[k - 1].first;
                     const double a = pts[k - 1].second;
                     const double b = pts[k].second;
                     r.integral += 0.5 * h * (a + b);
                     r.square_integral += h * (a * a + a * b + b * b) / 3.0;
                   }
                   // Clamped extension: the tail is the constant last value.
                   const double tail = pts.back().second;
                   r.divergent_integral = tail > 0.0;
                   r.vanishing = tail == 0.0;
                   r.square_integrable = tail == 0.0;
                 },
             },
             g.family());

  if (r.heuristic) {
    r.passes = false;
  } else if (target == GainTarget::MeanSquare) {
    r.passes = r.divergent_integral && r.vanishing;
  } else {
    r.passes = r.divergent_integral && r.vanishing && r.square_integrable;
  }
  return r;
}

}  // namespace signet
