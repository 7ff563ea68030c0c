#include <cmath>
#include <random>
#include <string>

#include "hlim/errors.hpp"
#include "hlim/state.hpp"

namespace hlim {

namespace {

// Portable uniform draw in [-1, 1): std distributions are implementation defined.
double uniform_pm1(std::mt19937_64& gen) {
  return double(gen() >> 11) * 0x1.0p-52 - 1.0;
}

HVector single_mode(const InitialDataRecipe& r, const Grid& g) {
  for (auto [m, axis] : {std::pair{r.m1, Axis::x}, {r.m2, Axis::y}, {r.m3, Axis::z}}) {
    if (std::abs(m) > g.dealias_cutoff(axis)) {
      throw ConfigError("single-mode recipe index " + std::to_string(m) + " lies outside the dealias mask");
    }
  }
  std::vector<double> v1(g.physical_size()), v2(g.physical_size());
  for (int i3 = 0; i3 < g.n3(); ++i3) {
    const double cz = std::cos(std::numbers::pi * r.m3 * g.z(i3));
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const double sy = std::sin(2.0 * std::numbers::pi * r.m2 * g.y(i2) / g.l2());
      for (int i1 = 0; i1 < g.n1(); ++i1) {
        const double sx = std::sin(2.0 * std::numbers::pi * r.m1 * g.x(i1) / g.l1());
        const std::size_t p = g.physical_index(i1, i2, i3);
        v1[p] = r.amplitude * sy * cz;
        v2[p] = r.amplitude * sx * cz;
      }
    }
  }
  return {transform_forward(PhysicalField(g, std::move(v1))), transform_forward(PhysicalField(g, std::move(v2)))};
}

HVector random_band_limited(const InitialDataRecipe& r, const Grid& g) {
  const int kmax = r.mode_max;
  if (kmax < 1) throw ConfigError("random recipe needs mode_max >= 1");
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    if (kmax > g.dealias_cutoff(axis)) {
      throw ConfigError("random recipe mode_max " + std::to_string(kmax) + " lies outside the dealias mask");
    }
  }
  std::mt19937_64 gen(r.seed);
  HVector v{SpectralField(g), SpectralField(g)};
  for (auto& comp : v) {
    for (int k3 = -kmax; k3 <= kmax; ++k3) {
      for (int k2 = -kmax; k2 <= kmax; ++k2) {
        for (int k1 = 0; k1 <= kmax; ++k1) {
          const double decay = 1.0 / (1.0 + k1 * k1 + k2 * k2 + k3 * k3);
          const double re = uniform_pm1(gen);
          const double im = uniform_pm1(gen);
          comp.set_mode(k1, k2, k3, decay * Complex(re, im));
        }
      }
    }
    comp = hermitian_part(comp);
  }
  HVector p = project_admissible(v);
  const double energy = l2_squared(p[0]) + l2_squared(p[1]);
  if (energy == 0.0) throw DegenerateDataError("random recipe produced a zero field");
  const double target = 0.5 * r.amplitude * r.amplitude * g.volume();
  const double scale = std::sqrt(target / energy);
  p[0] *= scale;
  p[1] *= scale;
  return p;
}

}  // namespace

RecipeKind parse_recipe_kind(const std::string& name) {
  if (name == "single-mode" || name == "a") return RecipeKind::single_mode;
  if (name == "random" || name == "b") return RecipeKind::random;
  throw ConfigError("unknown recipe '" + name + "' (expected single-mode or random)");
}

const char* to_string(RecipeKind kind) noexcept {
  return kind == RecipeKind::single_mode ? "single-mode" : "random";
}

PeState make_initial_data(const InitialDataRecipe& recipe, const Grid& grid) {
  if (!std::isfinite(recipe.amplitude)) throw ConfigError("recipe amplitude must be finite");
  if (recipe.amplitude == 0.0) throw DegenerateDataError("recipe amplitude is zero");
  HVector v = recipe.kind == RecipeKind::single_mode ? single_mode(recipe, grid) : random_band_limited(recipe, grid);
  v = project_admissible(v);
  if (v[0].is_zero() && v[1].is_zero()) throw DegenerateDataError("recipe produced a zero field");
  return PeState{std::move(v), 0.0};
}

SnsState make_sns_state(const PeState& pe, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("eps must be positive");
  return SnsState{pe.v, diagnostic_w(pe.v), eps, pe.t};
}

namespace {

double relative_parity(const SpectralField& a, const SpectralField& b, Parity expected) {
  const double total = l2_squared(a) + l2_squared(b);
  if (total == 0.0) return 0.0;
  const double wrong = l2_squared(parity_project(a, flip(expected))) + l2_squared(parity_project(b, flip(expected)));
  return std::sqrt(wrong / total);
}

}  // namespace

InvariantReport check_invariants(const PeState& s) {
  InvariantReport r;
  r.parity_v = relative_parity(s.v[0], s.v[1], Parity::even);
  r.barotropic = barotropic_divergence(s.v);
  r.mean_abs = std::max(std::abs(s.v[0][0]), std::abs(s.v[1][0]));
  if (r.barotropic <= kBarotropicHardTolerance) {
    r.divergence = norm(divergence_3d(s.v, diagnostic_w(s.v)), NormKind::L2);
  } else {
    r.divergence = r.barotropic;
  }
  return r;
}

InvariantReport check_invariants(const SnsState& s) {
  InvariantReport r;
  r.parity_v = relative_parity(s.v[0], s.v[1], Parity::even);
  r.parity_w = parity_deviation(s.w, Parity::odd);
  r.divergence = norm(divergence_3d(s.v, s.w), NormKind::L2);
  r.barotropic = barotropic_divergence(s.v);
  r.mean_abs = std::max({std::abs(s.v[0][0]), std::abs(s.v[1][0]), std::abs(s.w[0])});
  return r;
}

}  // namespace hlim
