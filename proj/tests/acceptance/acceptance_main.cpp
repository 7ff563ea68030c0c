// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "hlim/diagnostics.hpp"
#include "hlim/harness.hpp"
#include "hlim/inequalities.hpp"
#include "hlim/output.hpp"
#include "hlim/pe_solver.hpp"
#include "hlim/sns_solver.hpp"
#include "hlim/verification.hpp"
#include "oracles/isotropic_nse.hpp"
#include "oracles/pe_pressure_oracle.hpp"

using namespace hlim;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// Runs a criterion, turning unexpected exceptions into a failure line.
void criterion(int id, const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::fprintf(stderr, "  (criterion %d took %.1f s)\n", id, secs);
}

PairConfig sweep_config() {
  PairConfig c;
  c.grid = Grid::cube(32);
  c.recipe = InitialDataRecipe{};  // single mode, A = 1
  c.t_final = 1.0;
  c.dt = 5e-4;
  c.output_every = 1;
  return c;
}

const RateFit* find_fit(const SweepResult& s, const std::string& id) {
  for (const auto& f : s.fits)
    if (f.norm_id == id) return &f;
  return nullptr;
}

double max_pressure_error(const HVector& v) {
  const PePressure p = pe_pressure_solve(v);
  const auto ref = oracle::pe_pressure(v);
  const Grid& g = v[0].grid();
  double err = 0.0;
  for (int k1 = 0; k1 <= g.n1() / 2; ++k1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      err = std::max(err, std::abs(p.coefficient(k1, Grid::signed_index(i2, g.n2())) - ref[std::size_t(k1) * g.n2() + i2]));
  return err;
}

double oracle_trajectory_error(const PeState& v0, double dt, double t_final) {
  SnsState s = make_sns_state(v0, 1.0);
  oracle::Velocity u{s.v[0], s.v[1], s.w};
  StepperConfig cfg;
  cfg.dt = dt;
  double worst = 0.0;
  for (std::size_t n = 0; n < step_count(t_final, dt); ++n) {
    s = sns_step(s, cfg);
    u = oracle::nse_step(u, dt);
    worst = std::max(worst, std::sqrt(l2_squared(s.v[0] - u[0]) + l2_squared(s.v[1] - u[1]) + l2_squared(s.w - u[2])));
  }
  return worst;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  const PairConfig cfg = sweep_config();
  const std::vector<double> eps = {0.2, 0.1, 0.05};
  SweepResult sweep;
  bool have_sweep = false;
  std::fprintf(stderr, "running the eps sweep (N=32, dt=5e-4, T=1)...\n");
  try {
    sweep = run_sweep(cfg, eps);
    have_sweep = true;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sweep failed: %s\n", e.what());
  }
  auto need_sweep = [&] {
    if (!have_sweep) throw std::runtime_error("eps sweep did not complete");
    for (const auto& r : sweep.reports)
      if (r.failed) throw std::runtime_error("run at eps " + fmt(r.eps) + " failed: " + r.failure);
  };

  criterion(1, [&] {
    need_sweep();
    const RateFit* f = find_fit(sweep, "sup-L2");
    const bool ok = f && f->eps.size() >= 3 && f->slope >= 0.8 && f->residual <= 0.15;
    report(1, ok, "sup ||(V, eps W)||_2 slope " + fmt(f->slope) + " (>= 0.8), residual " + fmt(f->residual) +
                      " (<= 0.15), points " + std::to_string(f->eps.size()) + "/3");
  });

  criterion(2, [&] {
    need_sweep();
    const RateFit* f = find_fit(sweep, "sup-H1");
    bool monotone = true;
    std::string ws;
    for (std::size_t i = 0; i < sweep.reports.size(); ++i) {
      const double w = norm_error(sweep.reports[i], "sup-W-L2");
      ws += (i ? ", " : "") + fmt(w);
      if (i > 0 && w > 1.05 * norm_error(sweep.reports[i - 1], "sup-W-L2")) monotone = false;
    }
    const bool ok = f && f->eps.size() >= 3 && f->slope >= 0.8 && monotone;
    report(2, ok, "sup ||(V, eps W)||_H1 slope " + fmt(f->slope) + " (>= 0.8); sup ||W||_2 = [" + ws + "] " +
                      (monotone ? "decreasing" : "not decreasing"));
  });

  criterion(3, [&] {
    need_sweep();
    const PeEnergyAudit a = energy_audit_pe(sweep.reports.front().pe_energy, lambda1(cfg.grid));
    report(3, a.max_relative_residual <= 1e-4,
           "max relative energy identity residual " + fmt(a.max_relative_residual) + " (<= 1e-4) over " +
               std::to_string(a.t.size()) + " outputs");
  });

  criterion(4, [&] {
    need_sweep();
    const double l1 = lambda1(cfg.grid);
    const PeEnergyAudit a = energy_audit_pe(sweep.reports.front().pe_energy, l1);
    report(4, a.max_decay_ratio <= 1.0 + 1e-3,
           "max ||v||^2 / (e^{-2 lambda1 t} ||v0||^2) = " + fmt(a.max_decay_ratio) + " (<= 1.001), lambda1 = " + fmt(l1));
  });

  criterion(5, [&] {
    need_sweep();
    bool ok = true;
    std::string d;
    for (const auto& r : sweep.reports) {
      const double s = energy_audit_sns(r.sns_energy).min_relative_slack;
      ok = ok && s >= -1e-4;
      d += "eps " + fmt(r.eps) + ": " + fmt(s) + "; ";
    }
    report(5, ok, "min relative slack (>= -1e-4) " + d);
  });

  criterion(6, [&] {
    need_sweep();
    double parity = 0.0, divergence = 0.0, barotropic = 0.0, mean = 0.0;
    for (const auto& r : sweep.reports) {
      parity = std::max({parity, r.pe_defects.parity, r.sns_defects.parity, r.pe_invariants.parity_v,
                         r.sns_invariants.parity_v, r.sns_invariants.parity_w});
      divergence = std::max({divergence, r.sns_defects.divergence, r.sns_invariants.divergence, r.pe_invariants.divergence});
      barotropic = std::max({barotropic, r.pe_defects.barotropic, r.pe_invariants.barotropic});
      mean = std::max({mean, r.pe_invariants.mean_abs, r.sns_invariants.mean_abs});
    }
    const bool ok = parity <= 1e-10 && divergence <= 1e-10 && barotropic <= 1e-9 && mean == 0.0;
    report(6, ok, "parity " + fmt(parity) + " (<= 1e-10), divergence " + fmt(divergence) + " (<= 1e-10), barotropic " +
                      fmt(barotropic) + " (<= 1e-9), mean " + fmt(mean) + " (== 0)");
  });

  criterion(7, [&] {
    InitialDataRecipe random;
    random.kind = RecipeKind::random;
    const PeState a32 = make_initial_data({}, Grid::cube(32));
    const PeState b32 = make_initial_data(random, Grid::cube(32));
    const double traj = std::max(oracle_trajectory_error(a32, 1e-3, 0.1), oracle_trajectory_error(b32, 1e-3, 0.1));

    // Recipe (a) is horizontally solenoidal, so its symbolic w is 0.
    const PhysicalField wa = transform_inverse(diagnostic_w(a32.v));
    double wa_err = 0.0;
    for (double x : wa.values()) wa_err = std::max(wa_err, std::abs(x));
    const double w_err = std::max(wa_err, diagnostic_w_manufactured_error(32));

    const double p_err = std::max(max_pressure_error(make_initial_data(random, Grid::cube(16)).v),
                                  max_pressure_error(b32.v));
    const bool ok = traj <= 1e-8 && w_err <= 1e-12 && p_err <= 1e-10;
    report(7, ok, "eps=1 vs isotropic oracle " + fmt(traj) + " (<= 1e-8); diagnostic_w vs symbolic " + fmt(w_err) +
                      " (<= 1e-12); PE pressure vs quadrature oracle " + fmt(p_err) + " (<= 1e-10)");
  });

  criterion(8, [&] {
    const PeState v0 = make_initial_data({}, Grid::cube(32));
    const double dts[3] = {4e-3, 2e-3, 1e-3};
    std::vector<PeState> pe;
    std::vector<SnsState> sns;
    for (double dt : dts) {
      StepperConfig c;
      c.dt = dt;
      pe.push_back(simulate_pe(v0, c, 0.1, 1000000, nullptr));
      sns.push_back(simulate_sns(make_sns_state(v0, 0.1), c, 0.1, 1000000, nullptr));
    }
    auto dpe = [&](int i, int j) { return std::sqrt(l2_squared(pe[i].v[0] - pe[j].v[0]) + l2_squared(pe[i].v[1] - pe[j].v[1])); };
    auto dsns = [&](int i, int j) {
      return std::sqrt(l2_squared(sns[i].v[0] - sns[j].v[0]) + l2_squared(sns[i].v[1] - sns[j].v[1]) +
                       0.01 * l2_squared(sns[i].w - sns[j].w));
    };
    const double ope = std::log2(dpe(0, 1) / dpe(1, 2));
    const double osns = std::log2(dsns(0, 1) / dsns(1, 2));
    report(8, ope >= 1.9 && osns >= 1.9,
           "Richardson order PE " + fmt(ope) + ", SNS(eps=0.1) " + fmt(osns) + " (>= 1.9), dt 4e-3/2e-3/1e-3, T=0.1");
  });

  criterion(9, [&] {
    const double a = ratio_refinement_change(InequalityId::vertical_a, 16, 100, 2024);
    const double b = ratio_refinement_change(InequalityId::vertical_b, 16, 100, 2024);
    report(9, a < 0.05 && b < 0.05,
           "relative change of max ratio N=16 -> 32 over 100 triples: variant a " + fmt(a) + ", variant b " + fmt(b) + " (< 0.05)");
  });

  criterion(10, [&] {
    const fs::path root = fs::temp_directory_path() / "hlim_acceptance_determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path conf = root / "converge.cfg";
    std::ofstream(conf) << "n = 16\ndt = 1e-3\nt_final = 0.05\neps = 0.2, 0.1, 0.05\nrecipe = single-mode\n";
    int rc[2];
    for (int i = 0; i < 2; ++i) {
      const std::string cmd = std::string(HLIM_CLI) + " converge --config " + conf.string() + " --out " +
                              (root / ("run" + std::to_string(i))).string() + " > /dev/null 2>&1";
      rc[i] = std::system(cmd.c_str());
    }
    const std::string a = slurp(root / "run0" / "rates.csv"), b = slurp(root / "run1" / "rates.csv");
    const bool ok = rc[0] == 0 && rc[1] == 0 && !a.empty() && a == b;
    report(10, ok, "two converge runs: exit " + std::to_string(rc[0]) + "/" + std::to_string(rc[1]) + ", rates.csv " +
                       std::to_string(a.size()) + " bytes, " + (a == b ? "byte-identical" : "different"));
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
