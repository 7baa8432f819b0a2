#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wrightstab::cli {

inline constexpr const char* kOutputDirEnv = "WRIGHTSTAB_OUTPUT_DIR";

// Every knob of a run. The same key names are used on the command line
// (--key value) and in config files (key=value); flags override the file.
struct RunConfig {
  std::string command;  // check, certify, simulate, returnmap, scan, verify-lemmas

  std::string model;  // wright, food (= foodLimitation), allee, custom; empty = use (a, b)
  std::string expr;   // custom model, in the variable x
  std::optional<double> p, r, c, a, b, h;

  int steps = 256;  // steps per unit of time
  double T = 50.0;
  std::string history = "constant";  // or random (level drawn with `seed`)
  double z = 1.0;
  int k = 1;
  double transient = 400.0;
  double window = 50.0;

  double lo = -10.0;
  double hi = 10.0;
  int grid = 2000;
  int lemma_grid = 10000;

  std::string param = "p";  // scan parameter
  double from = 1.3;
  double to = 1.8;
  double step = 0.05;

  double zmin = 0.1;
  double zmax = 2.0;
  int zcount = 20;

  int max_iter = 10000;
  double M0 = 1.0;

  std::string output;  // empty: stdout for reports, $WRIGHTSTAB_OUTPUT_DIR/<command>.csv for data
  std::string format = "text";  // text, csv, json
  std::uint64_t seed = 42;
  int workers = 4;
  int stride = 1;  // simulate: write every stride-th node

  bool operator==(const RunConfig&) const = default;

  // Model parameters that are set, by name.
  std::map<std::string, double> model_params() const;
};

struct KeyInfo {
  std::string name;
  std::string help;
};
const std::vector<KeyInfo>& config_keys();

// Sets one key from its textual value. ParseError for unknown keys and
// malformed values; range checks happen in validate().
void set_key(RunConfig& cfg, std::string_view key, std::string_view value);

// key=value lines; '#' starts a comment, blank lines are ignored.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// Canonical key=value text (doubles with 17 significant digits, unset
// optional parameters omitted); parse_config_text(to_text(c)) == c.
std::string to_text(const RunConfig& cfg);

// PreconditionError on out-of-range knobs or an unknown command.
void validate(const RunConfig& cfg);

}  // namespace wrightstab::cli
