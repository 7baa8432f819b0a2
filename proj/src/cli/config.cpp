#include "wrightstab/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "wrightstab/errors.hpp"

namespace wrightstab::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = [](char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out)) {
    throw ParseError(fmt::format("{}: '{}' is not a finite number", key, v));
  }
  return out;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view v) {
  Int out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) throw ParseError(fmt::format("{}: '{}' is not an integer", key, v));
  return out;
}

std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

struct Accessor {
  KeyInfo info;
  std::function<void(RunConfig&, std::string_view)> set;
  // nullopt when the key is unset and must not be serialized.
  std::function<std::optional<std::string>(const RunConfig&)> get;
};

template <typename F>
Accessor real(std::string name, std::string help, F field) {
  return {{name, std::move(help)},
          [name, field](RunConfig& c, std::string_view v) { c.*field = to_double(name, v); },
          [field](const RunConfig& c) -> std::optional<std::string> { return fmt_double(c.*field); }};
}

Accessor opt_real(std::string name, std::string help, std::optional<double> RunConfig::*field) {
  return {{name, std::move(help)},
          [name, field](RunConfig& c, std::string_view v) { c.*field = to_double(name, v); },
          [field](const RunConfig& c) -> std::optional<std::string> {
            if (!(c.*field)) return std::nullopt;
            return fmt_double(*(c.*field));
          }};
}

Accessor integer(std::string name, std::string help, int RunConfig::*field) {
  return {{name, std::move(help)},
          [name, field](RunConfig& c, std::string_view v) { c.*field = to_int<int>(name, v); },
          [field](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.*field); }};
}

Accessor text(std::string name, std::string help, std::string RunConfig::*field) {
  return {{name, std::move(help)},
          [field](RunConfig& c, std::string_view v) { c.*field = std::string(v); },
          [field](const RunConfig& c) -> std::optional<std::string> { return c.*field; }};
}

const std::vector<Accessor>& accessors() {
  static const std::vector<Accessor> table = [] {
    std::vector<Accessor> t;
    t.push_back(text("command", "check | certify | simulate | returnmap | scan | verify-lemmas", &RunConfig::command));
    t.push_back(text("model", "wright | food | allee | custom (empty: use a, b directly)", &RunConfig::model));
    t.push_back(text("expr", "custom nonlinearity in x, may use the parameters below", &RunConfig::expr));
    t.push_back(opt_real("p", "wright: p", &RunConfig::p));
    t.push_back(opt_real("r", "food: r", &RunConfig::r));
    t.push_back(opt_real("c", "food / allee: c", &RunConfig::c));
    t.push_back(opt_real("a", "allee: a; without a model, f'(0)", &RunConfig::a));
    t.push_back(opt_real("b", "allee: b; without a model, f''(0)/2", &RunConfig::b));
    t.push_back(opt_real("h", "food / allee: delay", &RunConfig::h));
    t.push_back(integer("steps", "integrator steps per unit time (default 256)", &RunConfig::steps));
    t.push_back(real("T", "integration horizon (default 50)", &RunConfig::T));
    t.push_back(text("history", "constant | random (default constant)", &RunConfig::history));
    t.push_back(real("z", "constant history level (default 1)", &RunConfig::z));
    t.push_back(integer("k", "return map: extremum index (default 1)", &RunConfig::k));
    t.push_back(real("transient", "scan: transient before the window (default 400)", &RunConfig::transient));
    t.push_back(real("window", "scan: amplitude window length (default 50)", &RunConfig::window));
    t.push_back(real("lo", "hypothesis scan: left end (default -10)", &RunConfig::lo));
    t.push_back(real("hi", "hypothesis scan: right end (default 10)", &RunConfig::hi));
    t.push_back(integer("grid", "hypothesis scan: points (default 2000)", &RunConfig::grid));
    t.push_back(integer("lemma-grid", "lemma verification points (default 10000)", &RunConfig::lemma_grid));
    t.push_back(text("param", "scan: parameter to sweep (default p)", &RunConfig::param));
    t.push_back(real("from", "scan: first value (default 1.3)", &RunConfig::from));
    t.push_back(real("to", "scan: last value (default 1.8)", &RunConfig::to));
    t.push_back(real("step", "scan: increment (default 0.05)", &RunConfig::step));
    t.push_back(real("zmin", "return map: smallest z (default 0.1)", &RunConfig::zmin));
    t.push_back(real("zmax", "return map: largest z (default 2)", &RunConfig::zmax));
    t.push_back(integer("zcount", "return map: number of z values (default 20)", &RunConfig::zcount));
    t.push_back(integer("max-iter", "certificate iteration cap (default 10000)", &RunConfig::max_iter));
    t.push_back(real("M0", "certificate starting amplitude (default 1)", &RunConfig::M0));
    t.push_back(text("output", "output file (see README for defaults)", &RunConfig::output));
    t.push_back(text("format", "text | csv | json", &RunConfig::format));
    t.push_back({{"seed", "seed for random histories (default 42)"},
                 [](RunConfig& c, std::string_view v) { c.seed = to_int<std::uint64_t>("seed", v); },
                 [](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.seed); }});
    t.push_back(integer("workers", "scan / returnmap worker threads (default 4)", &RunConfig::workers));
    t.push_back(integer("stride", "simulate: write every stride-th step (default 1)", &RunConfig::stride));
    return t;
  }();
  return table;
}

const Accessor& find_accessor(std::string_view key) {
  const auto& t = accessors();
  const auto it = std::find_if(t.begin(), t.end(), [key](const Accessor& a) { return a.info.name == key; });
  if (it == t.end()) throw ParseError(fmt::format("unknown key '{}'", key));
  return *it;
}

}  // namespace

std::map<std::string, double> RunConfig::model_params() const {
  std::map<std::string, double> out;
  for (const auto& [name, field] : {std::pair{"p", &RunConfig::p}, std::pair{"r", &RunConfig::r},
                                    std::pair{"c", &RunConfig::c}, std::pair{"a", &RunConfig::a},
                                    std::pair{"b", &RunConfig::b}, std::pair{"h", &RunConfig::h}}) {
    if (this->*field) out[name] = *(this->*field);
  }
  return out;
}

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys = [] {
    std::vector<KeyInfo> out;
    for (const Accessor& a : accessors()) out.push_back(a.info);
    return out;
  }();
  return keys;
}

void set_key(RunConfig& cfg, std::string_view key, std::string_view value) {
  find_accessor(key).set(cfg, trim(value));
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(fmt::format("line {}: expected key=value", line_no));
    try {
      set_key(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot read config file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

std::string to_text(const RunConfig& cfg) {
  std::string out;
  for (const Accessor& a : accessors()) {
    if (const auto v = a.get(cfg)) out += fmt::format("{}={}\n", a.info.name, *v);
  }
  return out;
}

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> commands = {"check", "certify", "simulate", "returnmap", "scan",
                                                    "verify-lemmas"};
  const auto fail = [](const std::string& msg) { throw PreconditionError(msg); };
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
    fail(fmt::format("unknown command '{}'", cfg.command));
  }
  if (cfg.steps < 16) fail("steps must be >= 16");
  if (!(cfg.T > 0.0)) fail("T must be positive");
  if (cfg.history != "constant" && cfg.history != "random") fail("history must be constant or random");
  if (cfg.k < 1) fail("k must be >= 1");
  if (!(cfg.transient > 0.0) || !(cfg.window > 0.0)) fail("transient and window must be positive");
  if (!(cfg.lo < 0.0 && cfg.hi > 0.0)) fail("need lo < 0 < hi");
  if (cfg.grid < 100) fail("grid must be >= 100");
  if (cfg.lemma_grid < 100) fail("lemma-grid must be >= 100");
  if (!(cfg.step > 0.0) || !(cfg.to >= cfg.from)) fail("scan needs step > 0 and to >= from");
  if (!(cfg.zmax >= cfg.zmin) || cfg.zcount < 1) fail("return map needs zmax >= zmin and zcount >= 1");
  if (cfg.max_iter < 1) fail("max-iter must be >= 1");
  if (!(cfg.M0 > 0.0)) fail("M0 must be positive");
  if (cfg.format != "text" && cfg.format != "csv" && cfg.format != "json") fail("format must be text, csv or json");
  if (cfg.workers < 1) fail("workers must be >= 1");
  if (cfg.stride < 1) fail("stride must be >= 1");
  if (cfg.model == "custom" && cfg.expr.empty()) fail("model custom needs expr");
}

}  // namespace wrightstab::cli
