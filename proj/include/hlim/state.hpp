#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hlim/symmetry.hpp"

namespace hlim {

/// Primitive-equation state: prognostic horizontal velocity only.
struct PeState {
  HVector v;
  double t = 0.0;

  const Grid& grid() const noexcept { return v[0].grid(); }
};

/// Scaled Navier-Stokes state.
struct SnsState {
  HVector v;
  SpectralField w;
  double eps = 1.0;
  double t = 0.0;

  const Grid& grid() const noexcept { return v[0].grid(); }
};

/// Builds the SNS state sharing v0, with w0 from diagnostic_w.
SnsState make_sns_state(const PeState& pe, double eps);

enum class RecipeKind { single_mode, random };

RecipeKind parse_recipe_kind(const std::string& name);
const char* to_string(RecipeKind kind) noexcept;

struct InitialDataRecipe {
  RecipeKind kind = RecipeKind::single_mode;
  double amplitude = 1.0;
  /// single_mode: (m1, m2, m3) in v0 = A(sin(2 pi m2 y/L2) cos(pi m3 z), sin(2 pi m1 x/L1) cos(pi m3 z)).
  /// random: mode_max = largest |index| per axis that is populated.
  int m1 = 1, m2 = 1, m3 = 1;
  int mode_max = 3;
  std::uint64_t seed = 42;
};

/// Admissible v0 (even in z, mean zero, barotropic divergence free, dealiased).
/// The random recipe is normalised to the same rms as the single-mode recipe
/// with the same amplitude (A / sqrt 2).  Throws DegenerateDataError for a
/// zero field.
PeState make_initial_data(const InitialDataRecipe& recipe, const Grid& grid);

/// Structural defects of a state.
struct InvariantReport {
  double parity_v = 0.0;       // relative odd part of v
  double parity_w = 0.0;       // relative even part of w (SNS)
  double divergence = 0.0;     // ||div_H v + d_z w||_2 (SNS) or of the diagnostic pair (PE)
  double barotropic = 0.0;     // ||div_H int v dz||_{L2(M)}
  double mean_abs = 0.0;       // max |(0,0,0) coefficient| over velocity components
};

InvariantReport check_invariants(const PeState& s);
InvariantReport check_invariants(const SnsState& s);

}  // namespace hlim
