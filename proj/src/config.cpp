#include "hlim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hlim/errors.hpp"
#include "hlim/output.hpp"

namespace hlim {

Mode parse_mode(const std::string& name) {
  if (name == "run-pe") return Mode::run_pe;
  if (name == "run-sns") return Mode::run_sns;
  if (name == "converge") return Mode::converge;
  if (name == "verify") return Mode::verify;
  throw ConfigError("unknown mode '" + name + "'");
}

const char* to_string(Mode m) noexcept {
  switch (m) {
    case Mode::run_pe:
      return "run-pe";
    case Mode::run_sns:
      return "run-sns";
    case Mode::converge:
      return "converge";
    case Mode::verify:
      return "verify";
  }
  return "?";
}

Grid RunConfig::grid() const { return Grid(n, n, n, l1, l2); }

InitialDataRecipe RunConfig::initial_data() const {
  InitialDataRecipe r;
  r.kind = recipe;
  r.amplitude = amplitude;
  r.seed = seed;
  return r;
}

PairConfig RunConfig::pair() const {
  PairConfig p;
  p.grid = grid();
  p.recipe = initial_data();
  p.t_final = t_final;
  p.dt = dt;
  p.output_every = output_every;
  p.cfl_safety = cfl_safety;
  return p;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"mode",   "n",         "l1",        "l2",         "eps",
                                                "dt",     "t_final",   "output_every", "recipe", "amplitude",
                                                "seed",   "cfl_safety", "checkpoint", "ratio_samples", "out"};
  return keys;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& origin) {
  throw ConfigError("invalid value '" + value + "' for " + key + " (" + origin + ")");
}

double to_double(const std::string& key, const std::string& value, const std::string& origin) {
  double x = 0.0;
  const char* end = value.data() + value.size();
  auto [p, ec] = std::from_chars(value.data(), end, x);
  if (ec != std::errc() || p != end) bad_value(key, value, origin);
  return x;
}

long long to_integer(const std::string& key, const std::string& value, const std::string& origin) {
  long long x = 0;
  const char* end = value.data() + value.size();
  auto [p, ec] = std::from_chars(value.data(), end, x);
  if (ec != std::errc() || p != end) bad_value(key, value, origin);
  return x;
}

bool to_bool(const std::string& key, const std::string& value, const std::string& origin) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, origin);
}

std::string where(const RunConfig& cfg, const std::string& key) {
  const auto it = cfg.origin.find(key);
  return it == cfg.origin.end() ? "default" : it->second;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw, const std::string& origin) {
  const std::string value = trim(raw);
  if (key == "mode") {
    cfg.mode = parse_mode(value);
  } else if (key == "n") {
    const long long n = to_integer(key, value, origin);
    if (n <= 0 || n > 4096) bad_value(key, value, origin);
    cfg.n = int(n);
  } else if (key == "l1") {
    cfg.l1 = to_double(key, value, origin);
  } else if (key == "l2") {
    cfg.l2 = to_double(key, value, origin);
  } else if (key == "eps") {
    cfg.eps.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) cfg.eps.push_back(to_double(key, trim(item), origin));
  } else if (key == "dt") {
    cfg.dt = to_double(key, value, origin);
  } else if (key == "t_final") {
    cfg.t_final = to_double(key, value, origin);
  } else if (key == "output_every") {
    const long long k = to_integer(key, value, origin);
    if (k <= 0) bad_value(key, value, origin);
    cfg.output_every = std::size_t(k);
  } else if (key == "recipe") {
    try {
      cfg.recipe = parse_recipe_kind(value);
    } catch (const ConfigError&) {
      bad_value(key, value, origin);
    }
  } else if (key == "amplitude") {
    cfg.amplitude = to_double(key, value, origin);
  } else if (key == "seed") {
    const long long s = to_integer(key, value, origin);
    if (s < 0) bad_value(key, value, origin);
    cfg.seed = std::uint64_t(s);
  } else if (key == "cfl_safety") {
    cfg.cfl_safety = to_double(key, value, origin);
  } else if (key == "checkpoint") {
    cfg.checkpoint = to_bool(key, value, origin);
  } else if (key == "ratio_samples") {
    const long long k = to_integer(key, value, origin);
    if (k <= 0) bad_value(key, value, origin);
    cfg.ratio_samples = int(k);
  } else if (key == "out") {
    if (value.empty()) bad_value(key, value, origin);
    cfg.out = value;
  } else {
    throw ConfigError("unknown key '" + key + "' (" + origin + ")");
  }
  cfg.origin[key] = origin;
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string origin = source + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value (" + origin + ")");
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1), origin);
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str(), path.string());
}

void validate(const RunConfig& cfg) {
  auto fail = [&](const std::string& what, const std::string& key) {
    throw ConfigError(what + " (" + where(cfg, key) + ")");
  };
  if (cfg.n % 2 != 0) fail("N must be even", "n");
  if (cfg.n < 4) fail("N must be at least 4", "n");
  if (!(cfg.l1 > 0.0) || !std::isfinite(cfg.l1)) fail("l1 must be positive", "l1");
  if (!(cfg.l2 > 0.0) || !std::isfinite(cfg.l2)) fail("l2 must be positive", "l2");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) fail("dt must be positive", "dt");
  if (!(cfg.t_final > 0.0) || !std::isfinite(cfg.t_final)) fail("t_final must be positive", "t_final");
  const double steps = cfg.t_final / cfg.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
    fail("t_final must be an integer multiple of dt", "t_final");
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) fail("cfl_safety must lie in (0, 1]", "cfl_safety");
  if (cfg.amplitude == 0.0 || !std::isfinite(cfg.amplitude)) fail("amplitude must be nonzero", "amplitude");
  if (cfg.eps.empty()) fail("eps list is empty", "eps");
  for (std::size_t i = 0; i < cfg.eps.size(); ++i) {
    if (!(cfg.eps[i] > 0.0) || !std::isfinite(cfg.eps[i])) fail("eps must be positive", "eps");
    if (i > 0 && !(cfg.eps[i] < cfg.eps[i - 1])) fail("eps list must be strictly decreasing", "eps");
  }
  if (cfg.mode == Mode::converge && cfg.eps.size() < 3) fail("need ≥ 3 epsilons", "eps");
}

RunConfig parse_config(Mode mode, const std::filesystem::path* file,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig cfg;
  cfg.mode = mode;
  if (file) apply_config_file(cfg, *file);
  for (const auto& [key, value] : overrides) apply_setting(cfg, key, value, "--" + key);
  if (cfg.mode != mode) throw ConfigError(std::string("config file mode does not match subcommand ") + to_string(mode));
  validate(cfg);
  return cfg;
}

std::string canonical_config(const RunConfig& cfg) {
  std::string eps;
  for (std::size_t i = 0; i < cfg.eps.size(); ++i) eps += (i ? "," : "") + format_double(cfg.eps[i]);
  std::ostringstream out;
  out << "mode=" << to_string(cfg.mode) << "\n"
      << "n=" << cfg.n << "\n"
      << "l1=" << format_double(cfg.l1) << "\n"
      << "l2=" << format_double(cfg.l2) << "\n"
      << "eps=" << eps << "\n"
      << "dt=" << format_double(cfg.dt) << "\n"
      << "t_final=" << format_double(cfg.t_final) << "\n"
      << "output_every=" << cfg.output_every << "\n"
      << "recipe=" << to_string(cfg.recipe) << "\n"
      << "amplitude=" << format_double(cfg.amplitude) << "\n"
      << "seed=" << cfg.seed << "\n"
      << "cfl_safety=" << format_double(cfg.cfl_safety) << "\n"
      << "checkpoint=" << (cfg.checkpoint ? "true" : "false") << "\n"
      << "ratio_samples=" << cfg.ratio_samples << "\n";
  return out.str();
}

}  // namespace hlim
