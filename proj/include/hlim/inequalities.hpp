#pragma once

#include <cstdint>
#include <string>

#include "hlim/spectral.hpp"

namespace hlim {

enum class InequalityId { vertical_a, vertical_b, trilinear };
const char* to_string(InequalityId id) noexcept;

struct RatioTerms {
  double lhs = 0.0;  // |integral|, by quadrature
  double rhs = 0.0;  // norm product without the constant
  double ratio() const;
};

/// int_M (int f dz)(int g h dz) dxdy against
///   (a) ||f||^1/2 (||f||^1/2 + ||grad_H f||^1/2) ||g|| ||h||^1/2 (||h||^1/2 + ||grad_H h||^1/2)
///   (b) ||f|| ||g||^1/2 (||g||^1/2 + ||grad_H g||^1/2) ||h||^1/2 (||h||^1/2 + ||grad_H h||^1/2)
RatioTerms ladyzhenskaya_terms(const SpectralField& f, const SpectralField& g, const SpectralField& h,
                               InequalityId variant);

/// LHS / RHS; 0 when both vanish.  Throws NumericalInconsistencyError when
/// only the RHS vanishes.
double ladyzhenskaya_ratio(const SpectralField& f, const SpectralField& g, const SpectralField& h,
                           InequalityId variant);

/// |int (phi . grad chi) psi| against
/// ||grad phi_H||^1/2 ||Delta phi_H||^1/2 ||grad chi||^1/2 ||Delta chi||^1/2 ||psi||,
/// with phi = (phi_H, diagnostic_w(phi_H)).
RatioTerms trilinear_terms(const HVector& phi_h, const SpectralField& chi, const SpectralField& psi);
double trilinear_ratio(const HVector& phi_h, const SpectralField& chi, const SpectralField& psi);

struct RatioReport {
  InequalityId id = InequalityId::vertical_a;
  double max_ratio = 0.0;
  int samples = 0;
  std::string family;
};

/// Max ratio over `count` seeded random smooth fields.  Coefficients are drawn
/// per mode from a hash of (seed, sample, field, mode), so the same family
/// restricted to coarser grids shares its low modes.
RatioReport ratio_family(const Grid& grid, InequalityId id, int count, std::uint64_t seed);

}  // namespace hlim
