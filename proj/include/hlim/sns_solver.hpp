#pragma once

#include <functional>

#include "hlim/state.hpp"
#include "hlim/stepper.hpp"

namespace hlim {

/// Mean-zero 3D pressure of the scaled system.  The solve makes it even in z
/// (d_z p balances the odd w equation); evenness is monitored, not enforced.
struct SnsPressure {
  SpectralField p;
};

/// Advective terms (u . grad) v and (u . grad) w.
struct SnsAdvection {
  HVector v;
  SpectralField w;
};

SnsAdvection sns_advection(const HVector& v, const SpectralField& w);

/// Solves (|k_H|^2 + k_z^2 / eps^2) p = i k_H . N_v + i k_z N_w mode-wise, so
/// that (-N_v - grad_H p, -N_w - eps^-2 d_z p) is divergence free.
SnsPressure sns_pressure_solve(const HVector& v, const SpectralField& w, double eps, const SnsAdvection& advection);

struct SnsTendency {
  HVector v;
  SpectralField w;
};

/// (-(u . grad) v - grad_H p, -(u . grad) w - eps^-2 d_z p); diffusion excluded.
SnsTendency sns_rhs(const SnsState& state);

/// Full time derivative including Delta v and Delta w.
SnsTendency sns_time_derivative(const SnsState& state);

/// Projection onto divergence-free pairs, orthogonal in the eps-weighted
/// energy inner product.
void project_solenoidal(HVector& v, SpectralField& w, double eps);

SnsState sns_step(const SnsState& state, const SnsStepperConfig& cfg, StepDefects* defects = nullptr);

using SnsObserver = std::function<void(const SnsState&, const StepDefects&, std::size_t step)>;

SnsState simulate_sns(SnsState state, const SnsStepperConfig& cfg, double t_final, std::size_t output_every,
                      const SnsObserver& observe);

}  // namespace hlim
