#include "hlim/pe_solver.hpp"

#include <cmath>
#include <string>

#include "advection.hpp"
#include "hlim/errors.hpp"

namespace hlim {

void validate(const StepperConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConfigError("dt must be positive");
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) throw ConfigError("cfl_safety must lie in (0, 1]");
}

std::size_t step_count(double t_final, double dt) {
  if (!(t_final >= 0.0)) throw ConfigError("t_final must be nonnegative");
  const double ratio = t_final / dt;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    throw ConfigError("t_final must be an integer multiple of dt");
  }
  return std::size_t(n);
}

namespace {

struct Tendency {
  HVector value;
  double max_speed = 0.0;
};

PePressure pressure_from(const HVector& n) {
  const Grid& g = n[0].grid();
  SpectralField p(g, Parity::even);
  auto c1 = n[0].coefficients();
  auto c2 = n[1].coefficients();
  auto out = p.coefficients();
  // Only the k3 = 0 slab carries the vertical average.
  for (int i2 = 0; i2 < g.n2(); ++i2) {
    const double ky = g.derivative_wavenumber(Axis::y, i2);
    for (int k1 = 0; k1 < g.n1_half(); ++k1) {
      const double kx = g.derivative_wavenumber(Axis::x, k1);
      const double kh2 = kx * kx + ky * ky;
      if (kh2 == 0.0) continue;
      const std::size_t s = g.spectral_index(k1, i2, 0);
      out[s] = Complex(0.0, 1.0) * (kx * c1[s] + ky * c2[s]) / kh2;
    }
  }
  return PePressure{std::move(p)};
}

Tendency tendency(const HVector& v, bool nonlinear) {
  const Grid& g = v[0].grid();
  if (!nonlinear) {
    return {HVector{SpectralField(g, Parity::even), SpectralField(g, Parity::even)}, 0.0};
  }
  const SpectralField w = diagnostic_w(v);
  auto adv = detail::advect(v[0], v[1], w, {&v[0], &v[1]});
  const PePressure pressure = pressure_from({adv.terms[0], adv.terms[1]});
  HVector t{std::move(adv.terms[0]), std::move(adv.terms[1])};
  t[0] *= -1.0;
  t[1] *= -1.0;
  t[0] -= derivative(pressure.p, Axis::x);
  t[1] -= derivative(pressure.p, Axis::y);
  t[0].set_parity(Parity::even);
  t[1].set_parity(Parity::even);
  return {std::move(t), adv.max_speed};
}

double max_speed(const HVector& v) {
  const SpectralField w = diagnostic_w(v);
  return detail::advect(v[0], v[1], w, {}).max_speed;
}

HVector heun_step(const HVector& v, double dt, const std::vector<double>& factor, const HVector& a, bool nonlinear) {
  HVector stage = v;
  for (int i = 0; i < 2; ++i) {
    detail::axpy(dt, a[i], stage[i]);
    detail::apply_factor(factor, stage[i]);
  }
  const HVector b = tendency(stage, nonlinear).value;
  // v_{n+1} = E (v_n + dt/2 a) + dt/2 b
  HVector next = v;
  for (int i = 0; i < 2; ++i) {
    detail::axpy(0.5 * dt, a[i], next[i]);
    detail::apply_factor(factor, next[i]);
    detail::axpy(0.5 * dt, b[i], next[i]);
  }
  return next;
}

}  // namespace

PePressure pe_pressure_solve(const HVector& v) {
  const SpectralField w = diagnostic_w(v);
  auto adv = detail::advect(v[0], v[1], w, {&v[0], &v[1]});
  return pressure_from({adv.terms[0], adv.terms[1]});
}

HVector pe_rhs(const PeState& state) { return tendency(state.v, true).value; }

HVector pe_time_derivative(const PeState& state) {
  HVector t = pe_rhs(state);
  t[0] += laplacian(state.v[0]);
  t[1] += laplacian(state.v[1]);
  return t;
}

PeState pe_step(const PeState& state, const PeStepperConfig& cfg, StepDefects* defects) {
  validate(cfg);
  const Grid& g = state.grid();
  Tendency first = tendency(state.v, cfg.nonlinear);
  const double speed = cfg.nonlinear ? first.max_speed : max_speed(state.v);
  const int substeps = detail::cfl_substeps(cfg.dt, speed, g, cfg.cfl_safety, kMinimumSubstep);
  const double h = cfg.dt / substeps;
  const auto factor = detail::heat_factor(g, h);

  HVector v = state.v;
  for (int m = 0; m < substeps; ++m) {
    const HVector a = m == 0 ? first.value : tendency(v, cfg.nonlinear).value;
    v = heun_step(v, h, factor, a, cfg.nonlinear);
    if (!detail::all_finite(v[0]) || !detail::all_finite(v[1])) {
      throw BlowUpError("non-finite primitive-equation state", 0, state.t + (m + 1) * h);
    }
  }

  if (defects) {
    const double total = l2_squared(v[0]) + l2_squared(v[1]);
    const double odd = l2_squared(parity_project(v[0], Parity::odd)) + l2_squared(parity_project(v[1], Parity::odd));
    defects->parity = total > 0.0 ? std::sqrt(odd / total) : 0.0;
    defects->barotropic = barotropic_divergence(v);
    defects->mean = std::max(std::abs(v[0][0]), std::abs(v[1][0]));
    defects->divergence = 0.0;
    defects->substeps = substeps;
  }
  return PeState{project_admissible(v), state.t + cfg.dt};
}

PeState simulate_pe(PeState state, const PeStepperConfig& cfg, double t_final, std::size_t output_every,
                    const PeObserver& observe) {
  validate(cfg);
  if (output_every == 0) throw ConfigError("output_every must be positive");
  const std::size_t steps = step_count(t_final, cfg.dt);
  const double t0 = state.t;
  StepDefects defects;
  if (observe) observe(state, defects, 0);
  for (std::size_t n = 1; n <= steps; ++n) {
    try {
      state = pe_step(state, cfg, &defects);
    } catch (const BlowUpError& e) {
      throw BlowUpError(e.what(), n, t0 + double(n) * cfg.dt);
    }
    state.t = t0 + double(n) * cfg.dt;
    if (observe && (n % output_every == 0 || n == steps)) observe(state, defects, n);
  }
  return state;
}

}  // namespace hlim
