#include "hlim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "hlim/errors.hpp"
#include "hlim/pe_solver.hpp"
#include "hlim/sns_solver.hpp"

namespace hlim {

const char* to_string(Unit u) noexcept {
  switch (u) {
    case Unit::norm:
      return "norm";
    case Unit::energy:
      return "energy";
    case Unit::rate:
      return "rate";
  }
  return "norm";
}

double BudgetRecord::get(const std::string& name) const {
  for (const auto& v : values) {
    if (v.name == name) return v.value;
  }
  for (const auto& v : residuals) {
    if (v.name == name) return v.value;
  }
  throw InputError("budget record has no entry '" + name + "'");
}

bool BudgetRecord::has(const std::string& name) const noexcept {
  auto match = [&](const NamedValue& v) { return v.name == name; };
  return std::any_of(values.begin(), values.end(), match) || std::any_of(residuals.begin(), residuals.end(), match);
}

namespace {

double sum_over(const HVector& v, double (*f)(const SpectralField&) noexcept) { return f(v[0]) + f(v[1]); }

double grad_dz_squared(const SpectralField& f) { return detail::gradient_squared(derivative(f, Axis::z)); }

// || |v| |grad v| ||_2 by collocation quadrature.
double weighted_gradient_norm(const HVector& v) {
  const Grid& g = v[0].grid();
  std::vector<double> m2(g.physical_size(), 0.0), gsq(g.physical_size(), 0.0), buf;
  std::vector<Complex> scratch;
  for (const auto& c : v) {
    const SpectralField cd = dealias(c);
    detail::to_physical(cd, buf, scratch);
    for (std::size_t i = 0; i < buf.size(); ++i) m2[i] += buf[i] * buf[i];
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
      detail::to_physical(derivative(cd, a), buf, scratch);
      for (std::size_t i = 0; i < buf.size(); ++i) gsq[i] += buf[i] * buf[i];
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < m2.size(); ++i) total += m2[i] * gsq[i];
  return std::sqrt(total * g.volume() / double(g.physical_size()));
}

void velocity_norms(const HVector& v, const HVector& dt_v, std::vector<NamedValue>& out) {
  auto add = [&](const char* name, double value) { out.push_back({name, value, Unit::norm}); };
  add("v_L2", std::sqrt(l2_squared(v[0]) + l2_squared(v[1])));
  add("v_L4", norm(std::span<const SpectralField>(v), NormKind::L4));
  add("dzv_L2", std::sqrt(sum_over(v, detail::dz_squared)));
  add("gradv_L2", std::sqrt(sum_over(v, detail::gradient_squared)));
  add("lapv_L2", std::sqrt(sum_over(v, detail::laplacian_squared)));
  add("gradlapv_L2", std::sqrt(sum_over(v, detail::grad_laplacian_squared)));
  add("graddzv_L2", std::sqrt(grad_dz_squared(v[0]) + grad_dz_squared(v[1])));
  add("vgradv_L2", weighted_gradient_norm(v));
  add("dtv_L2", std::sqrt(l2_squared(dt_v[0]) + l2_squared(dt_v[1])));
  add("graddtv_L2", std::sqrt(sum_over(dt_v, detail::gradient_squared)));
}

}  // namespace

BudgetRecord norm_suite(const PeState& state) {
  BudgetRecord r;
  r.t = state.t;
  velocity_norms(state.v, pe_time_derivative(state), r.values);
  return r;
}

BudgetRecord norm_suite(const SnsState& state) {
  BudgetRecord r;
  r.t = state.t;
  const SnsTendency dt = sns_time_derivative(state);
  velocity_norms(state.v, dt.v, r.values);
  const double eps = state.eps;
  auto add = [&](const char* name, double value) { r.values.push_back({name, value, Unit::norm}); };
  add("w_L2", std::sqrt(l2_squared(state.w)));
  add("eps_w_L2", eps * std::sqrt(l2_squared(state.w)));
  add("eps_gradw_L2", eps * std::sqrt(detail::gradient_squared(state.w)));
  add("eps_lapw_L2", eps * std::sqrt(detail::laplacian_squared(state.w)));
  add("eps_gradlapw_L2", eps * std::sqrt(detail::grad_laplacian_squared(state.w)));
  add("eps_dtw_L2", eps * std::sqrt(l2_squared(dt.w)));

  const SnsPressure p = sns_pressure_solve(state.v, state.w, eps, sns_advection(state.v, state.w));
  r.residuals.push_back({"divergence_L2", norm(divergence_3d(state.v, state.w), NormKind::L2), Unit::norm});
  r.residuals.push_back({"pressure_odd_part", parity_deviation(p.p, Parity::even), Unit::norm});
  return r;
}

EnergySample pe_energy_sample(const BudgetRecord& r) {
  const double v = r.get("v_L2");
  const double g = r.get("gradv_L2");
  return {r.t, v * v, g * g};
}

EnergySample sns_energy_sample(const BudgetRecord& r, double eps) {
  (void)eps;  // the record already carries eps-weighted w norms
  const double v = r.get("v_L2"), w = r.get("eps_w_L2");
  const double gv = r.get("gradv_L2"), gw = r.get("eps_gradw_L2");
  return {r.t, v * v + w * w, gv * gv + gw * gw};
}

namespace {

void check_samples(std::span<const EnergySample> samples) {
  if (samples.size() < 2) throw InputError("energy audit needs at least two samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].t > samples[i - 1].t)) throw InputError("energy audit samples must have increasing times");
  }
}

// Cumulative trapezoid of the dissipation.
std::vector<double> cumulative_dissipation(std::span<const EnergySample> samples) {
  std::vector<double> out(samples.size(), 0.0);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double h = samples[i].t - samples[i - 1].t;
    out[i] = out[i - 1] + 0.5 * h * (samples[i].dissipation + samples[i - 1].dissipation);
  }
  return out;
}

}  // namespace

PeEnergyAudit energy_audit_pe(std::span<const EnergySample> samples, double lambda1) {
  check_samples(samples);
  const auto integral = cumulative_dissipation(samples);
  const double e0 = samples.front().energy;
  const double t0 = samples.front().t;
  PeEnergyAudit a;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const double residual = s.energy + 2.0 * integral[i] - e0;
    const double bound = std::exp(-2.0 * lambda1 * (s.t - t0)) * e0;
    a.t.push_back(s.t);
    a.identity_residual.push_back(residual);
    a.relative_residual.push_back(e0 > 0.0 ? residual / e0 : 0.0);
    a.decay_slack.push_back(bound - s.energy);
    a.decay_ratio.push_back(bound > 0.0 ? s.energy / bound : 0.0);
    a.max_relative_residual = std::max(a.max_relative_residual, std::abs(a.relative_residual.back()));
    a.max_decay_ratio = std::max(a.max_decay_ratio, a.decay_ratio.back());
  }
  return a;
}

SnsEnergyAudit energy_audit_sns(std::span<const EnergySample> samples) {
  check_samples(samples);
  const auto integral = cumulative_dissipation(samples);
  const double e0 = samples.front().energy;
  SnsEnergyAudit a;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double slack = e0 - samples[i].energy - 2.0 * integral[i];
    a.t.push_back(samples[i].t);
    a.slack.push_back(slack);
    a.relative_slack.push_back(e0 > 0.0 ? slack / e0 : 0.0);
    a.min_relative_slack = std::min(a.min_relative_slack, a.relative_slack.back());
  }
  return a;
}

namespace {

struct BudgetDef {
  const char* name;
  bool use_sup;  // sup over time of the state term, otherwise its current value
  std::function<double(const BudgetRecord&)> state_term;
  std::function<double(const BudgetRecord&)> integrand;
  bool sns_only = false;
};

double sq(double x) { return x * x; }

const std::vector<BudgetDef>& budget_defs() {
  static const std::vector<BudgetDef> defs = {
      {"budget_energy", false, [](const BudgetRecord& r) { return sq(r.get("v_L2")); },
       [](const BudgetRecord& r) { return 2.0 * sq(r.get("gradv_L2")); }},
      {"budget_l4", true, [](const BudgetRecord& r) { return sq(sq(r.get("v_L4"))); },
       [](const BudgetRecord& r) { return 2.0 * sq(r.get("vgradv_L2")); }},
      {"budget_dzv", true, [](const BudgetRecord& r) { return sq(r.get("dzv_L2")); },
       [](const BudgetRecord& r) { return sq(r.get("graddzv_L2")); }},
      {"budget_first_order", true, [](const BudgetRecord& r) { return sq(r.get("gradv_L2")); },
       [](const BudgetRecord& r) { return 0.5 * (sq(r.get("lapv_L2")) + sq(r.get("dtv_L2"))); }},
      {"budget_second_order", true, [](const BudgetRecord& r) { return sq(r.get("lapv_L2")); },
       [](const BudgetRecord& r) { return 0.5 * (sq(r.get("gradlapv_L2")) + sq(r.get("graddtv_L2"))); }},
      {"budget_h1", false, [](const BudgetRecord& r) { return sq(r.get("v_L2")) + sq(r.get("gradv_L2")); },
       [](const BudgetRecord& r) { return sq(r.get("gradv_L2")) + sq(r.get("lapv_L2")) + sq(r.get("dtv_L2")); }},
      {"budget_h2", true,
       [](const BudgetRecord& r) { return sq(r.get("v_L2")) + sq(r.get("gradv_L2")) + sq(r.get("lapv_L2")); },
       [](const BudgetRecord& r) {
         return sq(r.get("gradv_L2")) + sq(r.get("lapv_L2")) + sq(r.get("gradlapv_L2")) + sq(r.get("dtv_L2")) +
                sq(r.get("graddtv_L2"));
       }},
      {"budget_scaled_energy", false,
       [](const BudgetRecord& r) { return sq(r.get("v_L2")) + sq(r.get("eps_w_L2")); },
       [](const BudgetRecord& r) { return 2.0 * (sq(r.get("gradv_L2")) + sq(r.get("eps_gradw_L2"))); }, true},
  };
  return defs;
}

}  // namespace

const std::vector<std::string>& BudgetMonitor::budget_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& d : budget_defs()) n.emplace_back(d.name);
    return n;
  }();
  return names;
}

BudgetRecord BudgetMonitor::add(BudgetRecord record) {
  const auto& defs = budget_defs();
  const bool first = records_.empty();
  if (!first && !(record.t > last_t_)) throw InputError("budget records must have increasing times");
  if (first) {
    sup_.assign(defs.size(), 0.0);
    integral_.assign(defs.size(), 0.0);
    last_integrand_.assign(defs.size(), 0.0);
    initial_.assign(defs.size() + record.values.size(), 0.0);
  }
  for (std::size_t i = 0; i < defs.size(); ++i) {
    const auto& d = defs[i];
    if (d.sns_only && !sns_) continue;
    const double s = d.state_term(record);
    const double g = d.integrand(record);
    if (first) {
      sup_[i] = s;
    } else {
      sup_[i] = std::max(sup_[i], s);
      integral_[i] += 0.5 * (record.t - last_t_) * (g + last_integrand_[i]);
    }
    last_integrand_[i] = g;
    const double value = (d.use_sup ? sup_[i] : s) + integral_[i];
    record.values.push_back({d.name, value, Unit::energy});
  }
  // Growth relative to t = 0 over every monitored value.
  for (std::size_t i = 0; i < record.values.size() && i < initial_.size(); ++i) {
    const double v = record.values[i].value;
    if (first) {
      initial_[i] = v;
    } else if (initial_[i] > 0.0) {
      max_growth_ = std::max(max_growth_, v / initial_[i]);
    }
    if (!std::isfinite(v)) max_growth_ = std::numeric_limits<double>::infinity();
  }
  last_t_ = record.t;
  records_.push_back(record);
  return record;
}

}  // namespace hlim
