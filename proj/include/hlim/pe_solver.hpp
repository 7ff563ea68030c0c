#pragma once

#include <functional>

#include "hlim/state.hpp"
#include "hlim/stepper.hpp"

namespace hlim {

/// Mean-zero 2D pressure p(x, y), stored as a z-independent spectral field.
struct PePressure {
  SpectralField p;

  Complex coefficient(int k1, int k2) const { return p.mode(k1, k2, 0); }
};

/// Solves -Delta_H p = div_H <(v . grad_H) v + w d_z v>_z, with <.>_z the
/// vertical average, so that the tendency keeps div_H int v dz = 0.
PePressure pe_pressure_solve(const HVector& v);

/// -(v . grad_H) v - w d_z v - grad_H p; diffusion is excluded.
HVector pe_rhs(const PeState& state);

/// Full d_t v including Delta v.
HVector pe_time_derivative(const PeState& state);

/// One integrating-factor RK2 step (Heun), followed by re-projection onto the
/// admissible set.  Substeps when dt violates the CFL bound.
PeState pe_step(const PeState& state, const PeStepperConfig& cfg, StepDefects* defects = nullptr);

using PeObserver = std::function<void(const PeState&, const StepDefects&, std::size_t step)>;

/// Advances to t_final, calling `observe` at step 0, every `output_every`
/// steps and at the final step.  BlowUpError carries the failing step.
PeState simulate_pe(PeState state, const PeStepperConfig& cfg, double t_final, std::size_t output_every,
                    const PeObserver& observe);

}  // namespace hlim
