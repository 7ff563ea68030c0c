#include "hlim/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hlim/diagnostics.hpp"
#include "hlim/errors.hpp"
#include "hlim/output.hpp"
#include "hlim/pe_solver.hpp"
#include "hlim/sns_solver.hpp"

namespace hlim {

bool PropertySuite::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

double diagnostic_w_manufactured_error(int n) {
  const Grid g = Grid::cube(n);
  constexpr double pi = std::numbers::pi;
  std::vector<double> v1(g.physical_size()), zero(g.physical_size(), 0.0), exact(g.physical_size());
  for (int i3 = 0; i3 < g.n3(); ++i3)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i1 = 0; i1 < g.n1(); ++i1) {
        const std::size_t p = g.physical_index(i1, i2, i3);
        v1[p] = std::sin(g.x(i1)) * std::cos(pi * g.z(i3));
        exact[p] = -std::cos(g.x(i1)) * std::sin(pi * g.z(i3)) / pi;
      }
  HVector v{transform_forward(PhysicalField(g, v1)), transform_forward(PhysicalField(g, zero))};
  v[0] = parity_project(v[0], Parity::even);
  v[1] = parity_project(v[1], Parity::even);
  const PhysicalField w = transform_inverse(diagnostic_w(v));
  double err = 0.0;
  for (std::size_t p = 0; p < exact.size(); ++p) err = std::max(err, std::abs(w.values()[p] - exact[p]));
  return err;
}

double ratio_refinement_change(InequalityId id, int n, int samples, std::uint64_t seed) {
  const double coarse = ratio_family(Grid::cube(n), id, samples, seed).max_ratio;
  const double fine = ratio_family(Grid::cube(2 * n), id, samples, seed).max_ratio;
  if (!(fine > 0.0)) throw NumericalInconsistencyError("ratio family produced no positive ratio");
  return std::abs(coarse - fine) / fine;
}

namespace {

PropertyResult at_most(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

PropertyResult at_least(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value >= threshold, value, threshold, std::move(detail)};
}

}  // namespace

PropertySuite run_property_suite(const RunConfig& cfg) {
  PropertySuite suite;
  auto& out = suite.results;
  const Grid grid = cfg.grid();
  StepperConfig step;
  step.dt = cfg.dt;
  step.cfl_safety = cfg.cfl_safety;

  // Primitive equations with the full norm suite at every output.
  const PeState pe0 = make_initial_data(cfg.initial_data(), grid);
  BudgetMonitor monitor(false);
  std::vector<EnergySample> pe_energy;
  StepDefects pe_worst;
  double pe_mean = 0.0;
  simulate_pe(pe0, step, cfg.t_final, cfg.output_every, [&](const PeState& s, const StepDefects& d, std::size_t) {
    const BudgetRecord r = monitor.add(norm_suite(s));
    pe_energy.push_back(pe_energy_sample(r));
    pe_worst.parity = std::max(pe_worst.parity, d.parity);
    pe_worst.barotropic = std::max(pe_worst.barotropic, d.barotropic);
    pe_mean = std::max({pe_mean, std::abs(s.v[0].mode(0, 0, 0)), std::abs(s.v[1].mode(0, 0, 0))});
  });
  out.push_back(at_most("pe-parity", pe_worst.parity, 1e-10));
  out.push_back(at_most("pe-barotropic", pe_worst.barotropic, 1e-9));
  out.push_back(at_most("pe-mean", pe_mean, 0.0));
  const PeEnergyAudit pa = energy_audit_pe(pe_energy, lambda1(grid));
  out.push_back(at_most("pe-energy-identity", pa.max_relative_residual, 1e-4));
  out.push_back(at_most("pe-decay-bound", pa.max_decay_ratio, 1.0 + 1e-3));
  out.push_back(at_most("pe-budget-growth", monitor.max_growth(), 1e3));

  for (double eps : cfg.eps) {
    const std::string tag = "[eps=" + format_double(eps) + "]";
    std::vector<EnergySample> energy;
    StepDefects worst;
    double mean = 0.0;
    simulate_sns(make_sns_state(pe0, eps), step, cfg.t_final, cfg.output_every,
                 [&](const SnsState& s, const StepDefects& d, std::size_t) {
                   const double e = l2_squared(s.v[0]) + l2_squared(s.v[1]) + eps * eps * l2_squared(s.w);
                   const double g = detail::gradient_squared(s.v[0]) + detail::gradient_squared(s.v[1]) +
                                    eps * eps * detail::gradient_squared(s.w);
                   energy.push_back({s.t, e, g});
                   worst.parity = std::max(worst.parity, d.parity);
                   worst.divergence = std::max(worst.divergence, d.divergence);
                   mean = std::max({mean, std::abs(s.v[0].mode(0, 0, 0)), std::abs(s.v[1].mode(0, 0, 0)),
                                    std::abs(s.w.mode(0, 0, 0))});
                 });
    out.push_back(at_most("sns-parity" + tag, worst.parity, 1e-10));
    out.push_back(at_most("sns-divergence" + tag, worst.divergence, 1e-10));
    out.push_back(at_most("sns-mean" + tag, mean, 0.0));
    out.push_back(at_least("sns-energy-inequality" + tag, energy_audit_sns(energy).min_relative_slack, -1e-4));
  }

  out.push_back(at_most("diagnostic-w-manufactured", diagnostic_w_manufactured_error(grid.n1()), 1e-12));
  for (InequalityId id : {InequalityId::vertical_a, InequalityId::vertical_b}) {
    out.push_back(at_most(std::string(to_string(id)) + "-refinement",
                          ratio_refinement_change(id, 16, cfg.ratio_samples, cfg.seed), 0.05, "N 16 -> 32"));
  }
  return suite;
}

}  // namespace hlim
