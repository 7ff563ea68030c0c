// Command-line driver: run-pe, run-sns, converge, verify.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "hlim/checkpoint.hpp"
#include "hlim/config.hpp"
#include "hlim/diagnostics.hpp"
#include "hlim/errors.hpp"
#include "hlim/harness.hpp"
#include "hlim/output.hpp"
#include "hlim/pe_solver.hpp"
#include "hlim/sns_solver.hpp"
#include "hlim/verification.hpp"

namespace {

using hlim::RunConfig;
using json = nlohmann::ordered_json;

enum Exit { ok = 0, config_error = 1, blow_up = 2, property_failure = 3 };

json defects_json(const hlim::StepDefects& d) {
  return json{{"parity", hlim::json_number(d.parity)},
              {"divergence", hlim::json_number(d.divergence)},
              {"barotropic", hlim::json_number(d.barotropic)},
              {"mean", hlim::json_number(d.mean)},
              {"max_substeps", d.substeps}};
}

void note_worst(hlim::StepDefects& acc, const hlim::StepDefects& d) {
  acc.parity = std::max(acc.parity, d.parity);
  acc.divergence = std::max(acc.divergence, d.divergence);
  acc.barotropic = std::max(acc.barotropic, d.barotropic);
  acc.mean = std::max(acc.mean, d.mean);
  acc.substeps = std::max(acc.substeps, d.substeps);
}

int run_pe(const RunConfig& cfg) {
  const hlim::Grid grid = cfg.grid();
  hlim::StepperConfig step;
  step.dt = cfg.dt;
  step.cfl_safety = cfg.cfl_safety;
  hlim::BudgetMonitor monitor(false);
  std::vector<hlim::EnergySample> energy;
  hlim::StepDefects worst;
  const hlim::PeState final_state = hlim::simulate_pe(
      hlim::make_initial_data(cfg.initial_data(), grid), step, cfg.t_final, cfg.output_every,
      [&](const hlim::PeState& s, const hlim::StepDefects& d, std::size_t) {
        energy.push_back(hlim::pe_energy_sample(monitor.add(hlim::norm_suite(s))));
        note_worst(worst, d);
      });
  const auto audit = hlim::energy_audit_pe(energy, hlim::lambda1(grid));
  hlim::write_text_file(cfg.out / "pe_diagnostics.csv", hlim::records_csv(monitor.records()));
  hlim::write_text_file(cfg.out / "pe_energy.csv", hlim::pe_energy_csv(audit));
  if (cfg.checkpoint) hlim::save_checkpoint(cfg.out / "pe_final.chk", hlim::to_checkpoint(final_state));

  json m = hlim::manifest_base(cfg);
  m["lambda1"] = hlim::lambda1(grid);
  m["energy_identity_max_relative_residual"] = hlim::json_number(audit.max_relative_residual);
  m["decay_max_ratio"] = hlim::json_number(audit.max_decay_ratio);
  m["budget_max_growth"] = hlim::json_number(monitor.max_growth());
  m["step_defects"] = defects_json(worst);
  hlim::write_text_file(cfg.out / "manifest.json", hlim::dump_manifest(m));
  return ok;
}

int run_sns(const RunConfig& cfg) {
  const hlim::Grid grid = cfg.grid();
  hlim::StepperConfig step;
  step.dt = cfg.dt;
  step.cfl_safety = cfg.cfl_safety;
  const hlim::PeState v0 = hlim::make_initial_data(cfg.initial_data(), grid);
  json runs = json::array();
  for (std::size_t k = 0; k < cfg.eps.size(); ++k) {
    const double eps = cfg.eps[k];
    std::vector<hlim::BudgetRecord> records;
    std::vector<hlim::EnergySample> energy;
    hlim::StepDefects worst;
    const hlim::SnsState final_state = hlim::simulate_sns(
        hlim::make_sns_state(v0, eps), step, cfg.t_final, cfg.output_every,
        [&](const hlim::SnsState& s, const hlim::StepDefects& d, std::size_t) {
          records.push_back(hlim::norm_suite(s));
          energy.push_back(hlim::sns_energy_sample(records.back(), eps));
          note_worst(worst, d);
        });
    const auto audit = hlim::energy_audit_sns(energy);
    const std::string stem = "sns_" + std::to_string(k);
    hlim::write_text_file(cfg.out / (stem + "_diagnostics.csv"), hlim::records_csv(records));
    hlim::write_text_file(cfg.out / (stem + "_energy.csv"), hlim::sns_energy_csv(audit));
    if (cfg.checkpoint) hlim::save_checkpoint(cfg.out / (stem + "_final.chk"), hlim::to_checkpoint(final_state));
    runs.push_back(json{{"index", k},
                        {"eps", eps},
                        {"energy_min_relative_slack", hlim::json_number(audit.min_relative_slack)},
                        {"step_defects", defects_json(worst)}});
  }
  json m = hlim::manifest_base(cfg);
  m["runs"] = runs;
  hlim::write_text_file(cfg.out / "manifest.json", hlim::dump_manifest(m));
  return ok;
}

int converge(const RunConfig& cfg) {
  const hlim::SweepResult sweep = hlim::run_sweep(cfg.pair(), cfg.eps);
  hlim::write_text_file(cfg.out / "rates.csv", hlim::rates_csv(sweep));
  hlim::write_text_file(cfg.out / "differences.csv", hlim::differences_csv(sweep.reports));

  json m = hlim::manifest_base(cfg);
  json floors = json::object(), fits = json::array(), excl = json::array(), failures = json::array();
  for (const auto& [id, f] : sweep.floor) floors[id] = hlim::json_number(f);
  for (const auto& f : sweep.fits)
    fits.push_back(json{{"norm_id", f.norm_id},
                        {"slope", hlim::json_number(f.slope)},
                        {"intercept", hlim::json_number(f.intercept)},
                        {"residual", hlim::json_number(f.residual)},
                        {"points", f.eps.size()}});
  for (const auto& e : sweep.exclusions)
    excl.push_back(json{{"norm_id", e.norm_id},
                        {"eps", e.eps},
                        {"error", hlim::json_number(e.error)},
                        {"floor", hlim::json_number(e.floor)}});
  bool failed = false;
  for (const auto& r : sweep.reports) {
    if (!r.failed) continue;
    failed = true;
    failures.push_back(json{{"eps", r.eps}, {"last_valid_time", r.last_valid_time}, {"reason", r.failure}});
  }
  m["floor_factor"] = hlim::kFloorFactor;
  m["error_floor"] = floors;
  m["fits"] = fits;
  m["exclusions"] = excl;
  m["failures"] = failures;
  hlim::write_text_file(cfg.out / "manifest.json", hlim::dump_manifest(m));
  return failed ? blow_up : ok;
}

int verify(const RunConfig& cfg) {
  const hlim::PropertySuite suite = hlim::run_property_suite(cfg);
  json m = hlim::manifest_base(cfg);
  json props = json::array();
  for (const auto& r : suite.results) {
    std::printf("%s %s value=%s threshold=%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                hlim::format_double(r.value).c_str(), hlim::format_double(r.threshold).c_str());
    props.push_back(json{{"name", r.name},
                         {"passed", r.passed},
                         {"value", hlim::json_number(r.value)},
                         {"threshold", hlim::json_number(r.threshold)},
                         {"detail", r.detail}});
  }
  m["properties"] = props;
  m["passed"] = suite.all_passed();
  hlim::write_text_file(cfg.out / "manifest.json", hlim::dump_manifest(m));
  return suite.all_passed() ? ok : property_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primitive-equation limit of the scaled Navier-Stokes equations"};
  app.require_subcommand(1);

  std::string config_path, n, dt, t_final, eps, recipe, seed, out, output_every;
  for (const char* name : {"run-pe", "run-sns", "converge", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    sub->add_option("--n", n, "grid points per axis (even)");
    sub->add_option("--dt", dt, "time step");
    sub->add_option("--t-final", t_final, "final time");
    sub->add_option("--eps", eps, "eps or a comma separated list");
    sub->add_option("--recipe", recipe, "initial data")->check(CLI::IsMember({"single-mode", "random"}));
    sub->add_option("--seed", seed, "seed for the random recipe");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--output-every", output_every, "steps between outputs");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return config_error;
  }

  const std::string mode_name = app.get_subcommands().front()->get_name();
  std::vector<std::pair<std::string, std::string>> overrides;
  auto add = [&](const char* key, const std::string& value) {
    if (!value.empty()) overrides.emplace_back(key, value);
  };
  add("n", n);
  add("dt", dt);
  add("t_final", t_final);
  add("eps", eps);
  add("recipe", recipe);
  add("seed", seed);
  add("out", out);
  add("output_every", output_every);

  try {
    const std::filesystem::path path = config_path;
    const RunConfig cfg = hlim::parse_config(hlim::parse_mode(mode_name), config_path.empty() ? nullptr : &path,
                                             overrides);
    hlim::preflight_output_dir(cfg.out);
    switch (cfg.mode) {
      case hlim::Mode::run_pe:
        return run_pe(cfg);
      case hlim::Mode::run_sns:
        return run_sns(cfg);
      case hlim::Mode::converge:
        return converge(cfg);
      case hlim::Mode::verify:
        return verify(cfg);
    }
  } catch (const hlim::BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << " (step " << e.step() << ", t = " << e.time() << ")\n";
    return blow_up;
  } catch (const hlim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return config_error;
  }
  return ok;
}
