#pragma once

#include <initializer_list>
#include <vector>

#include "hlim/spectral.hpp"

namespace hlim::detail {

struct Advection {
  std::vector<SpectralField> terms;  // (u . grad) target, dealiased
  double max_speed = 0.0;            // max |u| over collocation points
};

/// (u . grad) q for each target q, with u = (u1, u2, u3).  Products are formed
/// on the collocation grid from dealiased inputs and truncated to the mask.
Advection advect(const SpectralField& u1, const SpectralField& u2, const SpectralField& u3,
                 std::initializer_list<const SpectralField*> targets);

/// exp(-|k|^2 dt) per spectral index.
std::vector<double> heat_factor(const Grid& g, double dt);

void apply_factor(const std::vector<double>& factor, SpectralField& f);

/// f += a * g
void axpy(double a, const SpectralField& g, SpectralField& f);

bool all_finite(const SpectralField& f) noexcept;

/// Number of equal substeps so that dt / m satisfies the CFL bound.
int cfl_substeps(double dt, double max_speed, const Grid& g, double cfl_safety, double min_dt);

}  // namespace hlim::detail
