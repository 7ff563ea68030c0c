#include "hlim/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "advection.hpp"
#include "hlim/errors.hpp"
#include "hlim/symmetry.hpp"

namespace hlim {

const char* to_string(InequalityId id) noexcept {
  switch (id) {
    case InequalityId::vertical_a:
      return "vertical-product-a";
    case InequalityId::vertical_b:
      return "vertical-product-b";
    case InequalityId::trilinear:
      return "trilinear";
  }
  return "?";
}

double RatioTerms::ratio() const {
  if (rhs == 0.0) {
    if (lhs == 0.0) return 0.0;
    throw NumericalInconsistencyError("inequality RHS vanishes while LHS = " + std::to_string(lhs));
  }
  return lhs / rhs;
}

namespace {

double grad_h(const SpectralField& f) {
  return std::sqrt(l2_squared(derivative(f, Axis::x)) + l2_squared(derivative(f, Axis::y)));
}

// ||f||^1/2 (||f||^1/2 + ||grad_H f||^1/2)
double half_factor(const SpectralField& f) {
  const double n = std::sqrt(l2_squared(f));
  return std::sqrt(n) * (std::sqrt(n) + std::sqrt(grad_h(f)));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_uniform(std::uint64_t h) { return double(h >> 11) * 0x1.0p-53 * 2.0 - 1.0; }

// Smooth random real field.  Each coefficient depends only on the signed mode,
// so coarser grids see the same low modes.
SpectralField random_field(const Grid& g, std::uint64_t seed, int sample, int field) {
  SpectralField f(g);
  const auto& mask = g.dealias_mask();
  std::uint64_t base = splitmix64(seed);
  base = splitmix64(base ^ std::uint64_t(sample));
  base = splitmix64(base ^ (std::uint64_t(field) << 32));
  for (int i3 = 0; i3 < g.n3(); ++i3) {
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      for (int k1 = 0; k1 < g.n1_half(); ++k1) {
        const std::size_t s = g.spectral_index(k1, i2, i3);
        if (mask[s] == 0) continue;
        const long k2 = Grid::signed_index(i2, g.n2());
        const long k3 = Grid::signed_index(i3, g.n3());
        std::uint64_t h = splitmix64(base ^ std::uint64_t(k1 + 1024));
        h = splitmix64(h ^ std::uint64_t(k2 + 1024) << 16);
        h = splitmix64(h ^ std::uint64_t(k3 + 1024) << 32);
        const double re = unit_uniform(h);
        const double im = unit_uniform(splitmix64(h));
        const double kk = double(k1 * k1 + k2 * k2 + k3 * k3);
        f[s] = std::exp(-kk / 4.0) * Complex(re, im);
      }
    }
  }
  return hermitian_part(f);
}

}  // namespace

RatioTerms ladyzhenskaya_terms(const SpectralField& f, const SpectralField& g, const SpectralField& h,
                               InequalityId variant) {
  if (!(f.grid() == g.grid()) || !(f.grid() == h.grid())) throw InputError("ladyzhenskaya: grid mismatch");
  if (variant == InequalityId::trilinear) throw InputError("ladyzhenskaya: variant must be a or b");
  // The vertical integrals are z-independent, so the Omega inner product is
  // twice the integral over M.
  const SpectralField fbar = vertical_integral(dealias(f));
  const SpectralField ghbar = vertical_integral(product(g, h));
  RatioTerms t;
  t.lhs = std::abs(0.5 * inner_product(fbar, ghbar));
  if (variant == InequalityId::vertical_a) {
    t.rhs = half_factor(f) * std::sqrt(l2_squared(g)) * half_factor(h);
  } else {
    t.rhs = std::sqrt(l2_squared(f)) * half_factor(g) * half_factor(h);
  }
  return t;
}

double ladyzhenskaya_ratio(const SpectralField& f, const SpectralField& g, const SpectralField& h,
                           InequalityId variant) {
  return ladyzhenskaya_terms(f, g, h, variant).ratio();
}

RatioTerms trilinear_terms(const HVector& phi_h, const SpectralField& chi, const SpectralField& psi) {
  const SpectralField phi3 = diagnostic_w(phi_h);
  const auto adv = detail::advect(phi_h[0], phi_h[1], phi3, {&chi});
  RatioTerms t;
  t.lhs = std::abs(inner_product(adv.terms[0], dealias(psi)));
  const double grad_phi = std::sqrt(detail::gradient_squared(phi_h[0]) + detail::gradient_squared(phi_h[1]));
  const double lap_phi = std::sqrt(detail::laplacian_squared(phi_h[0]) + detail::laplacian_squared(phi_h[1]));
  t.rhs = std::sqrt(grad_phi * lap_phi) *
          std::sqrt(std::sqrt(detail::gradient_squared(chi)) * std::sqrt(detail::laplacian_squared(chi))) *
          std::sqrt(l2_squared(psi));
  return t;
}

double trilinear_ratio(const HVector& phi_h, const SpectralField& chi, const SpectralField& psi) {
  return trilinear_terms(phi_h, chi, psi).ratio();
}

RatioReport ratio_family(const Grid& grid, InequalityId id, int count, std::uint64_t seed) {
  if (count <= 0) throw InputError("ratio_family: count must be positive");
  RatioReport r;
  r.id = id;
  r.samples = count;
  r.family = "gaussian-spectrum exp(-|k|^2/4), seed " + std::to_string(seed) + ", " + std::to_string(count) +
             " samples, N=" + std::to_string(grid.n1()) + "x" + std::to_string(grid.n2()) + "x" +
             std::to_string(grid.n3());
  for (int s = 0; s < count; ++s) {
    double ratio = 0.0;
    if (id == InequalityId::trilinear) {
      HVector phi{random_field(grid, seed, s, 0), random_field(grid, seed, s, 1)};
      phi = project_admissible(phi);
      ratio = trilinear_ratio(phi, random_field(grid, seed, s, 2), random_field(grid, seed, s, 3));
    } else {
      ratio = ladyzhenskaya_ratio(random_field(grid, seed, s, 0), random_field(grid, seed, s, 1),
                                  random_field(grid, seed, s, 2), id);
    }
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  return r;
}

}  // namespace hlim
