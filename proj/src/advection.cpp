#include "advection.hpp"

#include <algorithm>
#include <cmath>

#include "hlim/errors.hpp"

namespace hlim::detail {

Advection advect(const SpectralField& u1, const SpectralField& u2, const SpectralField& u3,
                 std::initializer_list<const SpectralField*> targets) {
  const Grid& g = u1.grid();
  std::vector<Complex> scratch;
  std::vector<double> p1, p2, p3;
  to_physical(dealias(u1), p1, scratch);
  to_physical(dealias(u2), p2, scratch);
  to_physical(dealias(u3), p3, scratch);

  Advection result;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const double s2 = p1[i] * p1[i] + p2[i] * p2[i] + p3[i] * p3[i];
    result.max_speed = std::max(result.max_speed, s2);
  }
  result.max_speed = std::sqrt(result.max_speed);

  std::vector<double> acc(g.physical_size()), dq;
  for (const SpectralField* q : targets) {
    const SpectralField qd = dealias(*q);
    std::fill(acc.begin(), acc.end(), 0.0);
    const std::vector<double>* comps[3] = {&p1, &p2, &p3};
    const Axis axes[3] = {Axis::x, Axis::y, Axis::z};
    for (int a = 0; a < 3; ++a) {
      to_physical(derivative(qd, axes[a]), dq, scratch);
      const auto& u = *comps[a];
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += u[i] * dq[i];
    }
    SpectralField term(g, q->parity());
    to_spectral(g, acc, term);
    result.terms.push_back(dealias(std::move(term)));
  }
  return result;
}

std::vector<double> heat_factor(const Grid& g, double dt) {
  const auto& k2 = g.k_squared();
  std::vector<double> f(k2.size());
  for (std::size_t s = 0; s < k2.size(); ++s) f[s] = std::exp(-k2[s] * dt);
  return f;
}

void apply_factor(const std::vector<double>& factor, SpectralField& f) {
  auto c = f.coefficients();
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= factor[s];
}

void axpy(double a, const SpectralField& g, SpectralField& f) {
  auto x = g.coefficients();
  auto y = f.coefficients();
  for (std::size_t s = 0; s < y.size(); ++s) y[s] += a * x[s];
}

bool all_finite(const SpectralField& f) noexcept {
  for (const auto& c : f.coefficients()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

int cfl_substeps(double dt, double max_speed, const Grid& g, double cfl_safety, double min_dt) {
  if (!std::isfinite(max_speed)) throw BlowUpError("non-finite velocity", 0, 0.0);
  if (max_speed == 0.0) return 1;
  const double limit = cfl_safety * std::min({g.dx(), g.dy(), g.dz()}) / max_speed;
  const int m = std::max(1, int(std::ceil(dt / limit * (1.0 - 1e-12))));
  if (dt / m < min_dt) throw BlowUpError("CFL restriction requires dt below " + std::to_string(min_dt), 0, 0.0);
  return m;
}

}  // namespace hlim::detail
