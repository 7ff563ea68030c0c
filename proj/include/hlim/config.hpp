#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hlim/harness.hpp"

namespace hlim {

enum class Mode { run_pe, run_sns, converge, verify };
Mode parse_mode(const std::string& name);
const char* to_string(Mode m) noexcept;

struct RunConfig {
  Mode mode = Mode::run_pe;
  int n = 32;
  double l1 = 6.283185307179586;
  double l2 = 6.283185307179586;
  std::vector<double> eps = {0.2, 0.1, 0.05};
  double dt = 5e-4;
  double t_final = 1.0;
  std::size_t output_every = 1;
  RecipeKind recipe = RecipeKind::single_mode;
  double amplitude = 1.0;
  std::uint64_t seed = 42;
  double cfl_safety = 0.5;
  bool checkpoint = true;
  int ratio_samples = 100;
  std::filesystem::path out = "out";

  // Where each key was last set ("file:line" or "--flag"), for error messages.
  std::map<std::string, std::string> origin;

  Grid grid() const;
  InitialDataRecipe initial_data() const;
  PairConfig pair() const;
};

/// Keys accepted in config files, in canonical order.
const std::vector<std::string>& config_keys();

/// Sets one key from its text value; `origin` is recorded for diagnostics.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& origin);

/// Flat key=value text: '#' starts a comment, blank lines are skipped.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& source);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Throws ConfigError naming the offending setting and where it came from.
void validate(const RunConfig& cfg);

/// Mode, then an optional file, then overrides in order; the result is validated.
RunConfig parse_config(Mode mode, const std::filesystem::path* file,
                       const std::vector<std::pair<std::string, std::string>>& overrides);

/// Every key except `out` with its value, one `key=value` per line, doubles
/// to 17 digits.  This is what the manifest hashes.
std::string canonical_config(const RunConfig& cfg);

}  // namespace hlim
