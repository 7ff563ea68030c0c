#include "hlim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "hlim/errors.hpp"
#include "hlim/pe_solver.hpp"
#include "hlim/sns_solver.hpp"

namespace hlim {

DiffSample difference_sample(double t, const HVector& v_eps, const SpectralField& w_eps, const HVector& v,
                             const SpectralField& w, double eps) {
  const SpectralField V1 = v_eps[0] - v[0];
  const SpectralField V2 = v_eps[1] - v[1];
  const SpectralField W = w_eps - w;
  DiffSample s;
  s.t = t;
  s.v_l2 = std::sqrt(l2_squared(V1) + l2_squared(V2));
  s.w_l2 = std::sqrt(l2_squared(W));
  s.eps_w_l2 = eps * s.w_l2;
  s.grad_v = std::sqrt(detail::gradient_squared(V1) + detail::gradient_squared(V2));
  s.eps_grad_w = eps * std::sqrt(detail::gradient_squared(W));
  s.lap_v = std::sqrt(detail::laplacian_squared(V1) + detail::laplacian_squared(V2));
  s.eps_lap_w = eps * std::sqrt(detail::laplacian_squared(W));
  s.v_h1 = std::hypot(s.v_l2, s.grad_v);
  return s;
}

namespace {

void worst(StepDefects& acc, const StepDefects& d) {
  acc.parity = std::max(acc.parity, d.parity);
  acc.divergence = std::max(acc.divergence, d.divergence);
  acc.barotropic = std::max(acc.barotropic, d.barotropic);
  acc.mean = std::max(acc.mean, d.mean);
  acc.substeps = std::max(acc.substeps, d.substeps);
}

void worst(InvariantReport& acc, const InvariantReport& r) {
  acc.parity_v = std::max(acc.parity_v, r.parity_v);
  acc.parity_w = std::max(acc.parity_w, r.parity_w);
  acc.divergence = std::max(acc.divergence, r.divergence);
  acc.barotropic = std::max(acc.barotropic, r.barotropic);
  acc.mean_abs = std::max(acc.mean_abs, r.mean_abs);
}

double sq(double x) { return x * x; }

}  // namespace

DiffReport run_pair(const PairConfig& cfg, double eps) {
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  StepperConfig step_cfg;
  step_cfg.dt = cfg.dt;
  step_cfg.cfl_safety = cfg.cfl_safety;
  validate(step_cfg);
  if (cfg.output_every == 0) throw ConfigError("output cadence must be positive");
  const std::size_t steps = step_count(cfg.t_final, cfg.dt);

  PeState pe = make_initial_data(cfg.recipe, cfg.grid);
  SnsState sns = make_sns_state(pe, eps);
  DiffReport report;
  report.eps = eps;

  auto record = [&]() {
    const SpectralField w = diagnostic_w(pe.v);
    report.samples.push_back(difference_sample(pe.t, sns.v, sns.w, pe.v, w, eps));
    const double gv = detail::gradient_squared(pe.v[0]) + detail::gradient_squared(pe.v[1]);
    report.pe_energy.push_back({pe.t, l2_squared(pe.v[0]) + l2_squared(pe.v[1]), gv});
    const double gs = detail::gradient_squared(sns.v[0]) + detail::gradient_squared(sns.v[1]) +
                      eps * eps * detail::gradient_squared(sns.w);
    const double es = l2_squared(sns.v[0]) + l2_squared(sns.v[1]) + eps * eps * l2_squared(sns.w);
    report.sns_energy.push_back({sns.t, es, gs});
    worst(report.pe_invariants, check_invariants(pe));
    worst(report.sns_invariants, check_invariants(sns));
    report.last_valid_time = pe.t;
  };

  record();
  const double t0 = pe.t;
  try {
    for (std::size_t n = 1; n <= steps; ++n) {
      StepDefects dp, ds;
      pe = pe_step(pe, step_cfg, &dp);
      sns = sns_step(sns, step_cfg, &ds);
      pe.t = sns.t = t0 + double(n) * cfg.dt;
      worst(report.pe_defects, dp);
      worst(report.sns_defects, ds);
      if (n % cfg.output_every == 0 || n == steps) record();
    }
  } catch (const BlowUpError& e) {
    report.failed = true;
    report.failure = e.what();
  }
  return report;
}

DiffSummary difference_summary(const DiffReport& report, NormLevel which) {
  DiffSummary s;
  auto l2 = [](const DiffSample& d) { return sq(d.v_l2) + sq(d.eps_w_l2); };
  auto grad = [](const DiffSample& d) { return sq(d.grad_v) + sq(d.eps_grad_w); };
  auto lap = [](const DiffSample& d) { return sq(d.lap_v) + sq(d.eps_lap_w); };
  double sup_sq = 0.0;
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const DiffSample& d = report.samples[i];
    const double value = which == NormLevel::l2 ? l2(d) : l2(d) + grad(d);
    sup_sq = std::max(sup_sq, value);
    s.w_sup = std::max(s.w_sup, d.w_l2);
    if (i > 0) {
      const DiffSample& p = report.samples[i - 1];
      const double a = which == NormLevel::l2 ? grad(p) : grad(p) + lap(p);
      const double b = which == NormLevel::l2 ? grad(d) : grad(d) + lap(d);
      s.integral += 0.5 * (d.t - p.t) * (a + b);
    }
  }
  s.sup = std::sqrt(sup_sq);
  if (which == NormLevel::l2) s.w_sup = 0.0;
  return s;
}

const std::vector<std::string>& norm_ids() {
  static const std::vector<std::string> ids = {"sup-L2", "sup-H1", "total-L2", "total-H1",
                                               "sup-W-L2"};
  return ids;
}

double norm_error(const DiffReport& report, const std::string& id) {
  if (id == "sup-L2") return difference_summary(report, NormLevel::l2).sup;
  if (id == "sup-H1") return difference_summary(report, NormLevel::h1).sup;
  if (id == "total-L2") return std::sqrt(difference_summary(report, NormLevel::l2).total());
  if (id == "total-H1") return std::sqrt(difference_summary(report, NormLevel::h1).total());
  if (id == "sup-W-L2") return difference_summary(report, NormLevel::h1).w_sup;
  throw InputError("unknown norm id '" + id + "'");
}

RateFit fit_rate(const std::string& norm_id, std::vector<double> eps, std::vector<double> error) {
  if (eps.size() != error.size()) throw InputError("fit_rate: eps and error lengths differ");
  if (eps.size() < 3) throw InputError("fit_rate: need at least 3 points");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw InputError("fit_rate: eps must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw InputError("fit_rate: eps must be strictly decreasing");
    if (error[i] == 0.0) throw DegenerateFitError("fit_rate: zero error for " + norm_id);
    if (!(error[i] > 0.0) || !std::isfinite(error[i])) throw InputError("fit_rate: error must be positive and finite");
  }
  const double n = double(eps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double x = std::log(eps[i]), y = std::log(error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  RateFit fit;
  fit.norm_id = norm_id;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double r = std::log(error[i]) - (fit.intercept + fit.slope * std::log(eps[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.eps = std::move(eps);
  fit.error = std::move(error);
  return fit;
}

RateFit fit_rate(const std::vector<DiffReport>& reports, const std::string& norm_id) {
  std::vector<double> eps, error;
  for (const auto& r : reports) {
    if (r.failed) throw InputError("fit_rate: report for eps " + std::to_string(r.eps) + " failed");
    eps.push_back(r.eps);
    error.push_back(norm_error(r, norm_id));
  }
  return fit_rate(norm_id, std::move(eps), std::move(error));
}

namespace {

// PE at dt against PE at dt/2 on the same output times, eps = 1 weights.
DiffReport discretisation_floor(const PairConfig& cfg) {
  StepperConfig coarse;
  coarse.dt = cfg.dt;
  coarse.cfl_safety = cfg.cfl_safety;
  StepperConfig fine = coarse;
  fine.dt = cfg.dt / 2.0;
  const std::size_t steps = step_count(cfg.t_final, cfg.dt);
  PeState a = make_initial_data(cfg.recipe, cfg.grid);
  PeState b = a;
  const double t0 = a.t;
  DiffReport report;
  report.eps = 1.0;
  auto record = [&] {
    report.samples.push_back(difference_sample(a.t, b.v, diagnostic_w(b.v), a.v, diagnostic_w(a.v), 1.0));
    report.last_valid_time = a.t;
  };
  record();
  try {
    for (std::size_t n = 1; n <= steps; ++n) {
      a = pe_step(a, coarse);
      b = pe_step(pe_step(b, fine), fine);
      a.t = b.t = t0 + double(n) * cfg.dt;
      if (n % cfg.output_every == 0 || n == steps) record();
    }
  } catch (const BlowUpError& e) {
    report.failed = true;
    report.failure = e.what();
  }
  return report;
}

}  // namespace

SweepResult run_sweep(const PairConfig& cfg, const std::vector<double>& eps_list, bool parallel) {
  if (eps_list.size() < 3) throw ConfigError("need ≥ 3 epsilons");
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) throw ConfigError("eps list must be strictly decreasing");
  }
  SweepResult result;
  const auto policy = parallel ? std::launch::async : std::launch::deferred;
  std::vector<std::future<DiffReport>> jobs;
  for (double eps : eps_list) jobs.push_back(std::async(policy, [&cfg, eps] { return run_pair(cfg, eps); }));
  auto floor_job = std::async(policy, [&cfg] { return discretisation_floor(cfg); });
  for (auto& j : jobs) result.reports.push_back(j.get());
  const DiffReport floor = floor_job.get();

  for (const auto& id : norm_ids()) {
    const double f = floor.failed ? std::numeric_limits<double>::infinity() : norm_error(floor, id);
    result.floor.emplace_back(id, f);
    std::vector<double> eps, error;
    for (const auto& r : result.reports) {
      const double e = r.failed ? std::numeric_limits<double>::quiet_NaN() : norm_error(r, id);
      if (r.failed || !(e > kFloorFactor * f)) {
        result.exclusions.push_back({id, r.eps, e, f});
        continue;
      }
      eps.push_back(r.eps);
      error.push_back(e);
    }
    RateFit fit;
    fit.norm_id = id;
    fit.slope = fit.intercept = fit.residual = std::numeric_limits<double>::quiet_NaN();
    if (eps.size() >= 3) {
      try {
        fit = fit_rate(id, eps, error);
      } catch (const DegenerateFitError&) {
      }
    }
    result.fits.push_back(fit);
  }
  return result;
}

}  // namespace hlim
