#pragma once

// Reference Navier-Stokes solver for the unit-aspect case: rotational form
// u x omega, full Leray projection, no parity or weighting logic.  Shares only
// the grid and FFT wrappers with the library.

#include <array>

#include "hlim/spectral.hpp"

namespace oracle {

using Velocity = std::array<hlim::SpectralField, 3>;

/// P(u x curl u), dealiased.
Velocity rotational_tendency(const Velocity& u);

/// Integrating-factor Heun step with exp(-|k|^2 dt).
Velocity nse_step(const Velocity& u, double dt);

}  // namespace oracle
