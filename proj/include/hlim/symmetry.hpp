#pragma once

#include "hlim/spectral.hpp"

namespace hlim {

/// Hard limit on the barotropic divergence before the vertical antiderivative
/// is refused.
inline constexpr double kBarotropicHardTolerance = 1e-8;

/// Even (odd) part 1/2 (f(z) +- f(-z)) computed in coefficient space.
SpectralField parity_project(const SpectralField& f, Parity parity);

/// ||part of f with the wrong parity||_2 / ||f||_2 (0 for the zero field).
double parity_deviation(const SpectralField& f, Parity expected);

SpectralField divergence_h(const HVector& v);
SpectralField divergence_3d(const HVector& v, const SpectralField& w);

/// ||div_H (int_{-1}^{1} v dz)||_{L2(M)}.
double barotropic_divergence(const HVector& v);

/// Vertical velocity of an incompressible, z-odd flow: w = -int_0^z div_H v dz'.
/// Throws InvalidStateError if the barotropic divergence exceeds
/// kBarotropicHardTolerance.
SpectralField diagnostic_w(const HVector& v);

/// Removes the (0,0,0) coefficient.
SpectralField remove_mean(SpectralField f);

/// Projection onto {dealiased, even in z, mean zero, barotropic divergence free}.
/// Idempotent.
HVector project_admissible(const HVector& v);

}  // namespace hlim
