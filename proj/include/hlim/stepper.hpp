#pragma once

#include <cstddef>

namespace hlim {

enum class Scheme { imex_rk2 };

/// Shared by both solvers.  `nonlinear = false` drops advection and pressure,
/// leaving exact heat flow (a test hook).
struct StepperConfig {
  double dt = 5e-4;
  Scheme scheme = Scheme::imex_rk2;
  double cfl_safety = 0.5;
  bool nonlinear = true;
};

using PeStepperConfig = StepperConfig;
using SnsStepperConfig = StepperConfig;

/// Smallest substep the CFL guard may take before declaring blow-up.
inline constexpr double kMinimumSubstep = 1e-8;

void validate(const StepperConfig& cfg);

/// What the re-projection at the end of a step removed.
struct StepDefects {
  double parity = 0.0;      // relative wrong-parity part (max over v, w)
  double divergence = 0.0;  // ||div_H v + d_z w||_2 before projection (SNS)
  double barotropic = 0.0;  // ||div_H int v dz||_{L2(M)} before projection
  double mean = 0.0;        // max |(0,0,0) coefficient| before projection
  int substeps = 1;
};

/// Number of steps covering [0, t_final] at step dt; throws ConfigError when
/// t_final is not an integer multiple of dt.
std::size_t step_count(double t_final, double dt);

}  // namespace hlim
