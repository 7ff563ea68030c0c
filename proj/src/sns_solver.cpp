#include "hlim/sns_solver.hpp"

#include <cmath>

#include "advection.hpp"
#include "hlim/errors.hpp"

namespace hlim {

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("eps must be positive");
}

struct Tendency {
  SnsTendency value;
  double max_speed = 0.0;
};

SnsTendency zero_tendency(const Grid& g) {
  return {HVector{SpectralField(g, Parity::even), SpectralField(g, Parity::even)}, SpectralField(g, Parity::odd)};
}

Tendency tendency(const HVector& v, const SpectralField& w, double eps, bool nonlinear) {
  const Grid& g = v[0].grid();
  auto adv = detail::advect(v[0], v[1], w, nonlinear ? std::initializer_list<const SpectralField*>{&v[0], &v[1], &w}
                                                     : std::initializer_list<const SpectralField*>{});
  if (!nonlinear) return {zero_tendency(g), adv.max_speed};
  SnsAdvection n{{std::move(adv.terms[0]), std::move(adv.terms[1])}, std::move(adv.terms[2])};
  const SnsPressure pressure = sns_pressure_solve(v, w, eps, n);
  SnsTendency t{std::move(n.v), std::move(n.w)};
  t.v[0] *= -1.0;
  t.v[1] *= -1.0;
  t.w *= -1.0;
  t.v[0] -= derivative(pressure.p, Axis::x);
  t.v[1] -= derivative(pressure.p, Axis::y);
  detail::axpy(-1.0 / (eps * eps), derivative(pressure.p, Axis::z), t.w);
  t.v[0].set_parity(Parity::even);
  t.v[1].set_parity(Parity::even);
  t.w.set_parity(Parity::odd);
  return {std::move(t), adv.max_speed};
}

double relative_wrong_parity(const HVector& v, const SpectralField& w) {
  const double ev = l2_squared(v[0]) + l2_squared(v[1]);
  const double odd_v = l2_squared(parity_project(v[0], Parity::odd)) + l2_squared(parity_project(v[1], Parity::odd));
  const double ew = l2_squared(w);
  const double even_w = l2_squared(parity_project(w, Parity::even));
  const double pv = ev > 0.0 ? std::sqrt(odd_v / ev) : 0.0;
  const double pw = ew > 0.0 ? std::sqrt(even_w / ew) : 0.0;
  return std::max(pv, pw);
}

}  // namespace

SnsAdvection sns_advection(const HVector& v, const SpectralField& w) {
  auto adv = detail::advect(v[0], v[1], w, {&v[0], &v[1], &w});
  return {{std::move(adv.terms[0]), std::move(adv.terms[1])}, std::move(adv.terms[2])};
}

SnsPressure sns_pressure_solve(const HVector& v, const SpectralField& w, double eps, const SnsAdvection& n) {
  require_eps(eps);
  const Grid& g = v[0].grid();
  (void)w;
  SpectralField p(g, Parity::even);
  auto nv1 = n.v[0].coefficients();
  auto nv2 = n.v[1].coefficients();
  auto nw = n.w.coefficients();
  auto out = p.coefficients();
  const double inv_eps2 = 1.0 / (eps * eps);
  for (int i3 = 0; i3 < g.n3(); ++i3) {
    const double kz = g.derivative_wavenumber(Axis::z, i3);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const double ky = g.derivative_wavenumber(Axis::y, i2);
      for (int k1 = 0; k1 < g.n1_half(); ++k1) {
        const double kx = g.derivative_wavenumber(Axis::x, k1);
        const double op = kx * kx + ky * ky + kz * kz * inv_eps2;
        if (op == 0.0) continue;
        const std::size_t s = g.spectral_index(k1, i2, i3);
        out[s] = Complex(0.0, 1.0) * (kx * nv1[s] + ky * nv2[s] + kz * nw[s]) / op;
      }
    }
  }
  return SnsPressure{std::move(p)};
}

SnsTendency sns_rhs(const SnsState& state) {
  require_eps(state.eps);
  return tendency(state.v, state.w, state.eps, true).value;
}

SnsTendency sns_time_derivative(const SnsState& state) {
  SnsTendency t = sns_rhs(state);
  t.v[0] += laplacian(state.v[0]);
  t.v[1] += laplacian(state.v[1]);
  t.w += laplacian(state.w);
  return t;
}

void project_solenoidal(HVector& v, SpectralField& w, double eps) {
  require_eps(eps);
  const Grid& g = w.grid();
  auto c1 = v[0].coefficients();
  auto c2 = v[1].coefficients();
  auto c3 = w.coefficients();
  const double inv_eps2 = 1.0 / (eps * eps);
  for (int i3 = 0; i3 < g.n3(); ++i3) {
    const double kz = g.derivative_wavenumber(Axis::z, i3);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const double ky = g.derivative_wavenumber(Axis::y, i2);
      for (int k1 = 0; k1 < g.n1_half(); ++k1) {
        const double kx = g.derivative_wavenumber(Axis::x, k1);
        const double op = kx * kx + ky * ky + kz * kz * inv_eps2;
        if (op == 0.0) continue;
        const std::size_t s = g.spectral_index(k1, i2, i3);
        // (|k_H|^2 + kz^2/eps^2) phi = -i k . u;  u -= (grad_H phi, eps^-2 d_z phi)
        const Complex div = Complex(0.0, 1.0) * (kx * c1[s] + ky * c2[s] + kz * c3[s]);
        const Complex phi = -div / op;
        c1[s] -= Complex(0.0, kx) * phi;
        c2[s] -= Complex(0.0, ky) * phi;
        c3[s] -= inv_eps2 * Complex(0.0, kz) * phi;
      }
    }
  }
}

SnsState sns_step(const SnsState& state, const SnsStepperConfig& cfg, StepDefects* defects) {
  validate(cfg);
  require_eps(state.eps);
  const Grid& g = state.grid();
  const double eps = state.eps;
  Tendency first = tendency(state.v, state.w, eps, cfg.nonlinear);
  const int substeps = detail::cfl_substeps(cfg.dt, first.max_speed, g, cfg.cfl_safety, kMinimumSubstep);
  const double h = cfg.dt / substeps;
  const auto factor = detail::heat_factor(g, h);

  HVector v = state.v;
  SpectralField w = state.w;
  for (int m = 0; m < substeps; ++m) {
    const SnsTendency a = m == 0 ? first.value : tendency(v, w, eps, cfg.nonlinear).value;
    HVector sv = v;
    SpectralField sw = w;
    for (int i = 0; i < 2; ++i) {
      detail::axpy(h, a.v[i], sv[i]);
      detail::apply_factor(factor, sv[i]);
    }
    detail::axpy(h, a.w, sw);
    detail::apply_factor(factor, sw);
    const SnsTendency b = tendency(sv, sw, eps, cfg.nonlinear).value;
    // v_{n+1} = E (v_n + h/2 a) + h/2 b
    for (int i = 0; i < 2; ++i) {
      detail::axpy(0.5 * h, a.v[i], v[i]);
      detail::apply_factor(factor, v[i]);
      detail::axpy(0.5 * h, b.v[i], v[i]);
    }
    detail::axpy(0.5 * h, a.w, w);
    detail::apply_factor(factor, w);
    detail::axpy(0.5 * h, b.w, w);
    if (!detail::all_finite(v[0]) || !detail::all_finite(v[1]) || !detail::all_finite(w)) {
      throw BlowUpError("non-finite scaled Navier-Stokes state", 0, state.t + (m + 1) * h);
    }
  }

  if (defects) {
    defects->parity = relative_wrong_parity(v, w);
    defects->divergence = norm(divergence_3d(v, w), NormKind::L2);
    defects->barotropic = barotropic_divergence(v);
    defects->mean = std::max({std::abs(v[0][0]), std::abs(v[1][0]), std::abs(w[0])});
    defects->substeps = substeps;
  }

  HVector out{parity_project(dealias(v[0]), Parity::even), parity_project(dealias(v[1]), Parity::even)};
  SpectralField wout = parity_project(dealias(w), Parity::odd);
  project_solenoidal(out, wout, eps);
  out[0] = remove_mean(std::move(out[0]));
  out[1] = remove_mean(std::move(out[1]));
  wout = remove_mean(std::move(wout));
  return SnsState{std::move(out), std::move(wout), eps, state.t + cfg.dt};
}

SnsState simulate_sns(SnsState state, const SnsStepperConfig& cfg, double t_final, std::size_t output_every,
                      const SnsObserver& observe) {
  validate(cfg);
  if (output_every == 0) throw ConfigError("output_every must be positive");
  const std::size_t steps = step_count(t_final, cfg.dt);
  const double t0 = state.t;
  StepDefects defects;
  if (observe) observe(state, defects, 0);
  for (std::size_t n = 1; n <= steps; ++n) {
    try {
      state = sns_step(state, cfg, &defects);
    } catch (const BlowUpError& e) {
      throw BlowUpError(e.what(), n, t0 + double(n) * cfg.dt);
    }
    state.t = t0 + double(n) * cfg.dt;
    if (observe && (n % output_every == 0 || n == steps)) observe(state, defects, n);
  }
  return state;
}

}  // namespace hlim
