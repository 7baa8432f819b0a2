#include "wrightstab/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "wrightstab/aux_curves.hpp"
#include "wrightstab/certificate.hpp"
#include "wrightstab/dde.hpp"
#include "wrightstab/errors.hpp"
#include "wrightstab/hypotheses.hpp"
#include "wrightstab/lemmas.hpp"
#include "wrightstab/models.hpp"

namespace wrightstab::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- plumbing

std::string describe_params(const std::map<std::string, double>& params) {
  std::string out;
  for (const auto& [k, v] : params) out += fmt::format("{}{}={}", out.empty() ? "" : " ", k, v);
  return out;
}

ModelSpec resolve_model(const RunConfig& cfg, const std::map<std::string, double>& params) {
  if (cfg.model.empty()) throw PreconditionError("no model given (--model wright|food|allee|custom)");
  if (cfg.model != "custom") return make_model(cfg.model, params);
  ModelSpec m;
  m.name = "custom";
  m.params = params;
  m.f = parse_expression(cfg.expr, params);
  m.slope0 = m.f.jet(0.0).d1;
  m.criterion_value = -m.slope0;
  m.transform = {[](double x) { return x; }, [](double y) { return y; }, "identity"};
  return m;
}

ModelSpec resolve_model(const RunConfig& cfg) { return resolve_model(cfg, cfg.model_params()); }

std::string model_label(const ModelSpec& m) {
  const std::string params = describe_params(m.params);
  return m.name == "custom" ? fmt::format("custom f(x) = {}{}{}", m.f.to_string(), params.empty() ? "" : " with ", params)
                            : fmt::format("{} {}", m.name, params);
}

std::filesystem::path data_path(const RunConfig& cfg, const std::string& default_name) {
  if (!cfg.output.empty()) return cfg.output;
  const char* dir = std::getenv(kOutputDirEnv);
  return std::filesystem::path(dir && *dir ? dir : ".") / default_name;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
}

// Report commands print to stdout unless an output file is named.
void emit_report(const RunConfig& cfg, std::ostream& out, const std::string& content) {
  if (cfg.output.empty()) {
    out << content;
  } else {
    write_file(cfg.output, content);
  }
}

std::string g17(double v) { return fmt::format("{:.17g}", v); }

json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

// Runs fn(i) for i < n on a bounded pool; results are stored by index so the
// caller sees them in order regardless of completion order.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t pool = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < pool; ++t) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();
}

// ------------------------------------------------------------------- check

json condition_json(const ConditionResult& c) {
  return {{"pass", c.pass}, {"witness", number_or_null(c.witness)}, {"detail", c.detail}};
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelSpec m = resolve_model(cfg);
  const ScanDomain dom{cfg.lo, cfg.hi, static_cast<std::size_t>(cfg.grid)};
  HypothesisReport rep;
  try {
    rep = check_hypotheses(m.f, dom);
  } catch (const Error& e) {
    // not evaluatable on the window or inconclusive: the check does not pass
    err << "check failed: " << e.what() << "\n";
    return kExitFailed;
  }
  if (cfg.format == "json") {
    json j = {{"schemaVersion", 1},
              {"command", "check"},
              {"model", m.name},
              {"params", m.params},
              {"evidence", rep.evidence_note()},
              {"h1", condition_json(rep.h1)},
              {"h2", condition_json(rep.h2)},
              {"h3", condition_json(rep.h3)},
              {"f1_0", rep.f1_0},
              {"f2_0", rep.f2_0},
              {"shape", std::string(1, shape_letter(rep.shape))},
              {"inflexions", rep.inflexions},
              {"allPass", rep.all_pass()}};
    j["criticalPoint"] = rep.critical_point
                             ? json{{"x", rep.critical_point->x},
                                    {"kind", rep.critical_point->kind == CriticalPoint::Kind::kMinimum ? "min" : "max"}}
                             : json(nullptr);
    emit_report(cfg, out, j.dump(2) + "\n");
  } else {
    std::string s = fmt::format("check {}\n{}\n", model_label(m), rep.evidence_note());
    const auto line = [&s](const char* name, const ConditionResult& c) {
      s += fmt::format("{} {}: {}\n", name, c.pass ? "pass" : "FAIL", c.detail);
    };
    line("H1", rep.h1);
    line("H2", rep.h2);
    line("H3", rep.h3);
    s += fmt::format("f'(0) = {}\nf''(0) = {}\nshape: {}\n", g17(rep.f1_0), g17(rep.f2_0), shape_letter(rep.shape));
    s += rep.critical_point ? fmt::format("critical point: {} at x* = {:.12g}\n",
                                          rep.critical_point->kind == CriticalPoint::Kind::kMinimum ? "minimum" : "maximum",
                                          rep.critical_point->x)
                            : std::string("critical point: none\n");
    std::string infl;
    for (double c : rep.inflexions) infl += fmt::format(" {:.12g}", c);
    s += fmt::format("inflexions:{}\nresult: {}\n", infl.empty() ? " none" : infl, rep.all_pass() ? "pass" : "FAIL");
    emit_report(cfg, out, s);
  }
  return rep.all_pass() ? kExitOk : kExitFailed;
}

// ----------------------------------------------------------------- certify

const char* map_name(BoundMap m) { return m == BoundMap::kLambda ? "lambda" : "R after D"; }

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelSpec m = resolve_model(cfg);
  const Jet3 at0 = m.f.jet(0.0);
  const double a = at0.d1;
  json j = {{"schemaVersion", 1}, {"command", "certify"}, {"model", m.name}, {"params", m.params},
            {"criterionValue", -a}, {"criterionThreshold", 1.5}, {"slope0", a}};
  std::string s = fmt::format("certify {}\ncriterion -f'(0) = {} (threshold 1.5)\n", model_label(m), g17(-a));
  const auto finish = [&](bool certified) {
    j["certified"] = certified;
    s += fmt::format("result: {}\n", certified ? "certified" : "NOT certified");
    emit_report(cfg, out, cfg.format == "json" ? j.dump(2) + "\n" : s);
    return certified ? kExitOk : kExitFailed;
  };

  if (!(-a <= 1.5)) {
    std::string why = fmt::format("-f'(0) = {} > 1.5 is outside the theorem", g17(-a));
    if (-a < std::numbers::pi / 2) {
      why += fmt::format("; {} < pi/2 = {} lies in the conjectured stability window", g17(-a), g17(std::numbers::pi / 2));
    }
    j["reason"] = why;
    s += why + "\n";
    return finish(false);
  }

  const ScanDomain dom{cfg.lo, cfg.hi, static_cast<std::size_t>(cfg.grid)};
  HypothesisReport hyp;
  try {
    hyp = check_hypotheses(m.f, dom);
  } catch (const Error& e) {
    err << "hypothesis check failed: " << e.what() << "\n";
    j["reason"] = e.what();
    return finish(false);
  }
  j["hypotheses"] = hyp.all_pass();
  s += fmt::format("hypotheses: {} ({})\n", hyp.all_pass() ? "pass" : "FAIL", hyp.evidence_note());
  bool ok = hyp.all_pass();

  if (std::abs(at0.d2) <= derivative_tolerance(a)) {
    // f''(0) = 0: the line a x replaces r
    const LinearCaseReport lin = linear_case_bounds(a, cfg.M0, -cfg.M0);
    const double factor = lin.A_form_applies && a < -1.0 ? lin.factor_A : lin.factor_B;
    j["linearCase"] = {{"factor", factor}, {"stabilitySide", lin.stability_side}};
    s += fmt::format("f''(0) = 0: linear bounds, factor {}\n", g17(factor));
    return finish(ok && lin.stability_side);
  }

  SmoothFunction g = m.f;
  if (at0.d2 < 0.0) {
    g = m.f.reflected();
    s += "f''(0) < 0: working with -f(-x)\n";
    j["reflected"] = true;
  }
  const double b = 0.5 * std::abs(at0.d2);
  const Certificate cert = contraction_certificate(a, b, cfg.M0, cfg.max_iter);
  j["certificate"] = {{"certified", cert.certified}, {"map", map_name(cert.map)},  {"factor", cert.factor},
                      {"iterations", cert.iterations}, {"initial", cert.initial},   {"final", cert.final_value},
                      {"reachedFloor", cert.reached_floor}, {"detail", cert.detail}};
  s += fmt::format("bound map: {}, linearized factor {}\ncertificate: {} ({})\n", map_name(cert.map), g17(cert.factor),
                   cert.certified ? "pass" : "FAIL", cert.detail);
  ok = ok && cert.certified;

  const GridCheck cmp = verify_comparison(g, dom);
  j["comparison"] = {{"pass", cmp.pass}, {"maxViolation", cmp.max_violation}, {"witness", cmp.witness}};
  s += fmt::format("comparison r vs f: {} ({})\n", cmp.pass ? "pass" : "FAIL", cmp.detail);
  ok = ok && cmp.pass;

  if (in_R_window(a)) {
    const GridCheck dr = verify_D_gt_R(AuxCurves(RationalBound(a, b)), 50.0, static_cast<std::size_t>(cfg.lemma_grid));
    j["DgtR"] = {{"pass", dr.pass}, {"maxViolation", dr.max_violation}, {"witness", dr.witness}};
    s += fmt::format("D > R: {} ({})\n", dr.pass ? "pass" : "FAIL", dr.detail);
    ok = ok && dr.pass;
  }
  return finish(ok);
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelSpec m = resolve_model(cfg);
  const double z = cfg.history == "random" ? seeded_levels(cfg.seed, 1).front() : cfg.z;
  const Solution sol = integrate(m.f, History::constant(z), cfg.T, cfg.steps);

  std::string traj = "t,x\n";
  for (std::size_t i = 0; i < sol.node_count() && sol.node_time(i) <= cfg.T + 1e-12;
       i += static_cast<std::size_t>(cfg.stride)) {
    traj += fmt::format("{:.17g},{:.17g}\n", sol.node_time(i), sol.node_value(i));
  }
  std::string ext = "index,t,x,kind\n";
  std::size_t n_ext = 0;
  try {
    for (const ExtremumRecord& e : find_extrema(sol)) {
      ext += fmt::format("{},{:.17g},{:.17g},{}\n", e.index, e.t, e.x, kind_name(e.kind));
      ++n_ext;
    }
  } catch (const NoExtremumError& e) {
    err << "note: " << e.what() << "\n";
  }
  const std::filesystem::path path = data_path(cfg, "simulate.csv");
  std::filesystem::path ext_path = path;
  ext_path.replace_filename(path.stem().string() + "_extrema" + path.extension().string());
  write_file(path, traj);
  write_file(ext_path, ext);
  out << fmt::format("simulate {} from z = {}: wrote {} and {} ({} extrema)\n", model_label(m), g17(z), path.string(),
                     ext_path.string(), n_ext);
  return kExitOk;
}

// --------------------------------------------------------------- returnmap

int cmd_returnmap(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelSpec m = resolve_model(cfg);
  const auto n = static_cast<std::size_t>(cfg.zcount);
  std::vector<double> zs(n);
  for (std::size_t i = 0; i < n; ++i) {
    zs[i] = n == 1 ? cfg.zmin : cfg.zmin + (cfg.zmax - cfg.zmin) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  std::vector<std::optional<double>> fk(n);
  std::vector<std::string> notes(n);
  parallel_for(n, cfg.workers, [&](std::size_t i) {
    try {
      fk[i] = return_map_Fk(m.f, zs[i], cfg.k, cfg.T, cfg.steps);
    } catch (const Error& e) {
      notes[i] = e.what();
    }
  });
  std::string csv = "z,Fk\n";
  for (std::size_t i = 0; i < n; ++i) {
    csv += fk[i] ? fmt::format("{:.17g},{:.17g}\n", zs[i], *fk[i]) : fmt::format("{:.17g},\n", zs[i]);
    if (!notes[i].empty()) err << fmt::format("z = {}: {}\n", g17(zs[i]), notes[i]);
  }
  const std::filesystem::path path = data_path(cfg, "returnmap.csv");
  write_file(path, csv);
  out << fmt::format("returnmap {} k = {}: wrote {} ({} values)\n", model_label(m), cfg.k, path.string(), n);
  return kExitOk;
}

// -------------------------------------------------------------------- scan

inline constexpr double kConvergedSpread = 1e-4;

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::map<std::string, double> base = cfg.model_params();
  static const std::vector<std::string> sweepable = {"p", "r", "c", "a", "b", "h"};
  if (std::find(sweepable.begin(), sweepable.end(), cfg.param) == sweepable.end()) {
    throw PreconditionError(fmt::format("cannot sweep '{}'", cfg.param));
  }
  const auto n = static_cast<std::size_t>(std::floor((cfg.to - cfg.from) / cfg.step + 1e-9)) + 1;
  std::vector<double> values(n);
  std::vector<ModelSpec> models;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = cfg.from + static_cast<double>(i) * cfg.step;
    std::map<std::string, double> params = base;
    params[cfg.param] = values[i];
    models.push_back(resolve_model(cfg, params));  // invalid parameters fail here, before any work
  }
  std::vector<std::string> rows(n);
  parallel_for(n, cfg.workers, [&](std::size_t i) {
    try {
      const Solution sol = integrate(models[i].f, History::constant(cfg.z), cfg.transient + cfg.window, cfg.steps);
      const AmplitudeEstimate est = omega_amplitude(sol, cfg.transient, cfg.window);
      std::string first;
      try {
        first = g17(find_extrema(sol, 1).front().t);
      } catch (const NoExtremumError&) {
      }
      rows[i] = fmt::format("{:.17g},{:.17g},{:.17g},{},{}\n", values[i], est.m, est.M,
                            est.M - est.m < kConvergedSpread ? 1 : 0, first);
    } catch (const Error& e) {
      rows[i] = fmt::format("{:.17g},,,0,\n", values[i]);
      (void)e;
    }
  });
  std::string csv = "param,m,M,converged,firstExtremumT\n";
  for (const std::string& r : rows) csv += r;
  const std::filesystem::path path = data_path(cfg, "scan.csv");
  write_file(path, csv);
  out << fmt::format("scan {} over {} values of {}: wrote {}\n", cfg.model, n, cfg.param, path.string());
  (void)err;
  return kExitOk;
}

// ----------------------------------------------------------- verify-lemmas

inline constexpr double kLCornerZeta = -1.25;
inline constexpr double kLCornerS = -1.0;

json grid_entry(const std::string& name, const GridCheck& c) {
  return {{"lemma", name},
          {"status", c.pass ? "pass" : "fail"},
          {"pass", c.pass},
          {"maxViolation", c.max_violation},
          {"witness", c.witness},
          {"samples", c.samples},
          {"detail", c.detail}};
}

json skipped_entry(const std::string& name, const std::string& reason) {
  return {{"lemma", name},
          {"status", "skipped: " + reason},
          {"pass", nullptr},
          {"maxViolation", nullptr},
          {"witness", nullptr}};
}

int cmd_verify_lemmas(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  SmoothFunction f;
  double a = 0.0;
  double b = 0.0;
  std::string source;
  if (cfg.model.empty()) {
    if (!cfg.a || !cfg.b) throw PreconditionError("verify-lemmas needs --model or both --a and --b");
    a = *cfg.a;
    b = *cfg.b;
    f = exponential_representative(a, b);
    source = "exponential representative";
  } else {
    const ModelSpec m = resolve_model(cfg);
    const Jet3 at0 = m.f.jet(0.0);
    if (std::abs(at0.d2) <= derivative_tolerance(at0.d1)) {
      throw PreconditionError("f''(0) = 0: the rational bounds are undefined (certify reports the linear case)");
    }
    f = at0.d2 > 0.0 ? m.f : m.f.reflected();
    a = at0.d1;
    b = 0.5 * std::abs(at0.d2);
    source = model_label(m) + (at0.d2 > 0.0 ? "" : " (reflected)");
  }
  const AuxCurves ac(RationalBound(a, b));  // PreconditionError unless a < 0 < b
  const auto n = static_cast<std::size_t>(cfg.lemma_grid);
  json entries = json::array();

  const ScanDomain dom{cfg.lo, cfg.hi, n};
  entries.push_back(grid_entry("r_vs_f_comparison", verify_comparison(f, ac.base(), dom)));

  if (ac.has_R()) {
    entries.push_back(grid_entry("A_decreasing_negative_schwarzian", verify_A_decreasing_negative_schwarzian(ac, n)));
    entries.push_back(grid_entry("A_minus_R_times_x_positive", verify_A_minus_R_sign(ac, n)));
  } else {
    entries.push_back(skipped_entry("A_decreasing_negative_schwarzian", "needs f'(0) < -1"));
    entries.push_back(skipped_entry("A_minus_R_times_x_positive", "needs f'(0) < -1"));
  }

  {
    const LGridMax gm = lemma_L_grid_max();
    const double corner = lemma_L(kLCornerZeta, kLCornerS);
    const bool at_corner = gm.zeta == kLCornerZeta && gm.s == kLCornerS;
    json e = {{"lemma", "L_negative_on_grid"},
              {"pass", gm.value < 0.0 && at_corner},
              {"maxViolation", gm.value},
              {"witness", {gm.zeta, gm.s}},
              {"valueAtCorner", corner},
              {"detail", "max of L over 400 x 400 points of [-1.5, -1.25] x [-1, 0]"}};
    e["status"] = e["pass"].get<bool>() ? "pass" : "fail";
    entries.push_back(e);
  }
  {
    GridCheck c;
    for (int i = 0; i < 50; ++i) {
      const double zeta = -1.5 + 0.25 * i / 49.0;
      const double v = lemma_A_pm(zeta).plus + 1.0;
      c.record(zeta, v, !(v < 0.0));
    }
    c.detail = "A+(zeta) < -1 at 50 points of [-1.5, -1.25]";
    json e = grid_entry("A_plus_below_minus_one", c);
    e["valueAtMinus1.5"] = lemma_A_pm(-1.5).plus;
    entries.push_back(e);
  }

  if (in_R_window(a)) {
    entries.push_back(grid_entry("B_gt_R", verify_B_gt_R(ac, 50.0, n)));
    entries.push_back(grid_entry("D_gt_R", verify_D_gt_R(ac, 50.0, n)));
  } else {
    entries.push_back(skipped_entry("B_gt_R", "outside [-1.5, -1.25]"));
    entries.push_back(skipped_entry("D_gt_R", "outside [-1.5, -1.25]"));
  }
  entries.push_back(grid_entry("jensen_chain", verify_jensen_chain(ac, 50.0, n)));
  entries.push_back(grid_entry("closed_forms_vs_quadrature", verify_closed_forms(ac)));

  {
    const LinearCaseReport lin = linear_case_bounds(a, 1.0, -1.0);
    const double factor = a < -1.0 ? lin.factor_A : lin.factor_B;
    entries.push_back({{"lemma", "linear_case_factor"},
                       {"status", lin.stability_side ? "pass" : "fail"},
                       {"pass", lin.stability_side},
                       {"maxViolation", factor - 1.0},
                       {"witness", nullptr},
                       {"factor", factor}});
  }

  bool all = true;
  for (const json& e : entries) {
    if (e["pass"].is_boolean() && !e["pass"].get<bool>()) all = false;
  }
  const json report = {{"schemaVersion", 1}, {"command", "verify-lemmas"}, {"a", a},        {"b", b},
                       {"source", source},   {"gridPoints", n},            {"allPass", all}, {"entries", entries}};
  emit_report(cfg, out, report.dump(2) + "\n");
  return all ? kExitOk : kExitFailed;
}

// Joins "--key value" into "--key=value" so that values starting with '-'
// (negative numbers, expressions such as "-x") are never taken for flags.
std::vector<std::string> join_values(int argc, const char* const* argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    const bool flag = arg.size() > 2 && arg.rfind("--", 0) == 0 && arg.find('=') == std::string::npos &&
                      arg != "--help";
    if (flag && i + 1 < argc) {
      arg += "=";
      arg += argv[++i];
    }
    out.push_back(std::move(arg));
  }
  return out;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    if (cfg.command == "check") return cmd_check(cfg, out, err);
    if (cfg.command == "certify") return cmd_certify(cfg, out, err);
    if (cfg.command == "simulate") return cmd_simulate(cfg, out, err);
    if (cfg.command == "returnmap") return cmd_returnmap(cfg, out, err);
    if (cfg.command == "scan") return cmd_scan(cfg, out, err);
    return cmd_verify_lemmas(cfg, out, err);
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ParseError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Global stability toolkit for x'(t) = f(x(t - 1))", "wrightstab"};
  app.set_help_flag("--help", "print this help");  // -h would clash with the delay key --h
  std::string command;
  std::string config_path;
  std::map<std::string, std::string> flags;
  app.add_option("command", command, "check | certify | simulate | returnmap | scan | verify-lemmas");
  app.add_option("--config", config_path, "key=value file; flags override it");
  for (const KeyInfo& k : config_keys()) {
    if (k.name == "command") continue;
    app.add_option("--" + k.name, flags[k.name], k.help);
  }
  std::vector<std::string> args = join_values(argc, argv);
  std::reverse(args.begin(), args.end());  // CLI11 consumes the vector from the back
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "invalid arguments: " << e.what() << "\n";
    return kExitInvalid;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config_file(config_path);
    if (!command.empty()) cfg.command = command;
    for (const KeyInfo& k : config_keys()) {
      if (k.name == "command") continue;
      if (app.count("--" + k.name) > 0) set_key(cfg, k.name, flags[k.name]);
    }
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  }
  return run_command(cfg, out, err);
}

}  // namespace wrightstab::cli
