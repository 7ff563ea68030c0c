#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hlim/diagnostics.hpp"
#include "hlim/errors.hpp"
#include "hlim/pe_solver.hpp"
#include "hlim/sns_solver.hpp"

using namespace hlim;
constexpr double pi = std::numbers::pi;

TEST(NormSuite, SingleModeValues) {
  const PeState s = make_initial_data({}, Grid::cube(32));
  const BudgetRecord r = norm_suite(s);
  const double kk = 1.0 + pi * pi;
  EXPECT_NEAR(r.get("v_L2"), 2 * pi, 1e-11);
  EXPECT_NEAR(r.get("gradv_L2"), 2 * pi * std::sqrt(kk), 1e-10);
  EXPECT_NEAR(r.get("lapv_L2"), 2 * pi * kk, 1e-9);
  EXPECT_NEAR(r.get("gradlapv_L2"), 2 * pi * kk * std::sqrt(kk), 1e-8);
  EXPECT_NEAR(r.get("dzv_L2"), 2 * pi * pi, 1e-10);
  EXPECT_NEAR(r.get("graddzv_L2"), 2 * pi * pi * std::sqrt(kk), 1e-9);
  // ||v||_4^4 = int (sin^2 y + sin^2 x)^2 cos^4(pi z) = (3/8 + 3/8 + 2/4) (2 pi)^2 (3/4).
  const double l4 = (0.75 + 0.5) * 4 * pi * pi * 0.75;
  EXPECT_NEAR(r.get("v_L4"), std::pow(l4, 0.25), 1e-11);
  EXPECT_TRUE(r.has("dtv_L2"));
  EXPECT_FALSE(r.has("eps_w_L2"));
  EXPECT_THROW(r.get("nope"), InputError);
}

TEST(NormSuite, TimeDerivativeOfHeatDominatedFlow) {
  // For small amplitude d_t v is essentially Delta v.
  InitialDataRecipe rec;
  rec.amplitude = 1e-6;
  const BudgetRecord r = norm_suite(make_initial_data(rec, Grid::cube(16)));
  EXPECT_NEAR(r.get("dtv_L2"), r.get("lapv_L2"), 1e-9 * r.get("lapv_L2"));
  EXPECT_NEAR(r.get("graddtv_L2"), r.get("gradlapv_L2"), 1e-9 * r.get("gradlapv_L2"));
}

TEST(NormSuite, SnsColumns) {
  InitialDataRecipe rec;
  rec.kind = RecipeKind::random;
  const SnsState s = make_sns_state(make_initial_data(rec, Grid::cube(16)), 0.25);
  const BudgetRecord r = norm_suite(s);
  EXPECT_NEAR(r.get("eps_w_L2"), 0.25 * r.get("w_L2"), 1e-15);
  EXPECT_LT(r.get("divergence_L2"), 1e-12);
  EXPECT_LT(r.get("pressure_odd_part"), 1e-12);
  const EnergySample e = sns_energy_sample(r, 0.25);
  EXPECT_NEAR(e.energy, std::pow(r.get("v_L2"), 2) + std::pow(r.get("eps_w_L2"), 2), 1e-12);
}

TEST(EnergyAudit, ExactExponentialDecay) {
  // E = e^{-2at}, D = a E: the identity holds up to trapezoid error.
  const double a = 2.0;
  std::vector<EnergySample> s;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i * 1e-3;
    s.push_back({t, std::exp(-2 * a * t), a * std::exp(-2 * a * t)});
  }
  // trapezoid error: 2 (h^2/12) (D'(0) - D'(1)) = 1.31e-6
  const PeEnergyAudit pa = energy_audit_pe(s, 1.0);
  EXPECT_NEAR(pa.max_relative_residual, 8 * a * (1e-6 / 12) * (1 - std::exp(-4.0)) / 2 * 2, 2e-8);
  EXPECT_LE(pa.max_decay_ratio, 1.0);
  EXPECT_NEAR(pa.decay_ratio.back(), std::exp(-2.0), 1e-12);
  const SnsEnergyAudit sa = energy_audit_sns(s);
  EXPECT_NEAR(sa.min_relative_slack, -pa.max_relative_residual, 1e-15);
}

TEST(EnergyAudit, DetectsEnergyCreation) {
  std::vector<EnergySample> s = {{0.0, 1.0, 0.0}, {0.1, 1.1, 0.0}};
  EXPECT_NEAR(energy_audit_pe(s, 1.0).max_relative_residual, 0.1, 1e-15);
  EXPECT_NEAR(energy_audit_sns(s).min_relative_slack, -0.1, 1e-15);
}

TEST(EnergyAudit, InputErrors) {
  std::vector<EnergySample> one = {{0.0, 1.0, 1.0}};
  EXPECT_THROW(energy_audit_pe(one, 1.0), InputError);
  std::vector<EnergySample> back = {{0.1, 1.0, 1.0}, {0.1, 1.0, 1.0}};
  EXPECT_THROW(energy_audit_sns(back), InputError);
}

TEST(BudgetMonitor, HeatFlowBudgets) {
  PeState s = make_initial_data({}, Grid::cube(16));
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.nonlinear = false;
  BudgetMonitor m;
  double h1_prev = std::numeric_limits<double>::infinity();
  simulate_pe(s, cfg, 0.1, 1, [&](const PeState& st, const StepDefects&, std::size_t) {
    const BudgetRecord r = m.add(norm_suite(st));
    // current-value energy budget is conserved up to the trapezoid error
    // (about 3.5e-5 relative at t = 0.1), H1 budget does not grow
    EXPECT_NEAR(r.get("budget_energy"), 4 * pi * pi, 5e-5 * 4 * pi * pi);
    EXPECT_LE(r.get("budget_h1"), h1_prev * (1 + 1e-6));
    h1_prev = r.get("budget_h1");
  });
  EXPECT_EQ(m.records().size(), 101u);
  // For heat flow every integral is at most the initial sup term (e.g.
  // int 2 ||Delta v||^2 <= ||grad v0||^2), so no budget can double.
  EXPECT_GT(m.max_growth(), 1.0);
  EXPECT_LE(m.max_growth(), 2.0);
  for (const auto& name : BudgetMonitor::budget_names())
    if (name != "budget_scaled_energy") EXPECT_TRUE(m.records().back().has(name)) << name;
}

TEST(BudgetMonitor, NonlinearRunStaysBounded) {
  InitialDataRecipe rec;
  rec.kind = RecipeKind::random;
  StepperConfig cfg;
  cfg.dt = 1e-3;
  BudgetMonitor m;
  simulate_pe(make_initial_data(rec, Grid::cube(16)), cfg, 0.05, 5,
              [&](const PeState& st, const StepDefects&, std::size_t) { m.add(norm_suite(st)); });
  EXPECT_LT(m.max_growth(), 1e3);
  EXPECT_GE(m.max_growth(), 1.0);
}

TEST(BudgetMonitor, RejectsTimeReversal) {
  BudgetMonitor m;
  const BudgetRecord r = norm_suite(make_initial_data({}, Grid::cube(16)));
  m.add(r);
  EXPECT_THROW(m.add(r), InputError);
}
