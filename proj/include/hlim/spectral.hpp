#pragma once

#include <array>
#include <span>
#include <vector>

#include "hlim/grid.hpp"

namespace hlim {

enum class Parity { none, even, odd };

Parity flip(Parity p) noexcept;
const char* to_string(Parity p) noexcept;

/// Real field sampled on the collocation grid.  Non-finite values are rejected.
class PhysicalField {
 public:
  explicit PhysicalField(Grid grid);  // zero field
  PhysicalField(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double at(int i1, int i2, int i3) const noexcept { return values_[grid_.physical_index(i1, i2, i3)]; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Fourier coefficients of a real field (half storage, see Grid).
class SpectralField {
 public:
  explicit SpectralField(Grid grid, Parity parity = Parity::none);
  SpectralField(Grid grid, std::vector<Complex> coefficients, Parity parity = Parity::none);

  const Grid& grid() const noexcept { return grid_; }
  Parity parity() const noexcept { return parity_; }
  void set_parity(Parity p) noexcept { parity_ = p; }

  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  std::span<Complex> coefficients() noexcept { return coeffs_; }
  Complex operator[](std::size_t s) const noexcept { return coeffs_[s]; }
  Complex& operator[](std::size_t s) noexcept { return coeffs_[s]; }
  /// Coefficient for signed indices; k1 < 0 is served through conjugate symmetry.
  Complex mode(int k1, int k2, int k3) const;
  void set_mode(int k1, int k2, int k3, Complex value);

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);

  bool is_zero() const noexcept;

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
  Parity parity_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Horizontal velocity (v1, v2).
using HVector = std::array<SpectralField, 2>;

SpectralField transform_forward(const PhysicalField& f);
PhysicalField transform_inverse(const SpectralField& f);

/// Spectral derivative (multiply by i k_axis).  The z derivative flips parity.
SpectralField derivative(const SpectralField& f, Axis axis);
SpectralField laplacian(const SpectralField& f);
SpectralField dealias(SpectralField f);
bool is_dealiased(const SpectralField& f) noexcept;

/// Dealiased product of two band-limited fields, truncated to the mask.
SpectralField product(const SpectralField& a, const SpectralField& b);

enum class NormKind { L2, L4, H1Seminorm, GradL2 };

/// L2 via Parseval; L4 by collocation quadrature of the dealiased field;
/// H1Seminorm and GradL2 both give ||grad f||_2 (they coincide on the torus).
double norm(const SpectralField& f, NormKind kind);
/// Same norms for a vector field, combined over components.
double norm(std::span<const SpectralField> components, NormKind kind);

/// Squared L2 norm by Parseval and the matching inner product.
double l2_squared(const SpectralField& f) noexcept;
double inner_product(const SpectralField& a, const SpectralField& b);
/// Physical-space quadrature of |f|^2 (trapezoid on the periodic grid).
double l2_squared_quadrature(const PhysicalField& f) noexcept;

/// Vertical integral over (-1,1): the z-independent field with only the k3 = 0 slab.
SpectralField vertical_integral(const SpectralField& f);

/// Hermitian part of an arbitrary coefficient array: round-trips through
/// physical space so the result represents a real field.
SpectralField hermitian_part(const SpectralField& f);

}  // namespace hlim

namespace hlim::detail {

/// Unchecked transforms into caller-owned buffers (hot loops in the solvers).
void to_physical(const SpectralField& f, std::vector<double>& out, std::vector<Complex>& scratch);
void to_spectral(const Grid& grid, const std::vector<double>& in, SpectralField& out);
/// sum over modes of Parseval weight * |k|^2 |f_k|^2 (derivative wavenumbers), times volume.
double gradient_squared(const SpectralField& f) noexcept;
/// Same with |k|^4: ||Laplacian f||^2.
double laplacian_squared(const SpectralField& f) noexcept;
/// Same with |k|^6: ||grad Laplacian f||^2.
double grad_laplacian_squared(const SpectralField& f) noexcept;
/// Same with k_z^2: ||d_z f||^2.
double dz_squared(const SpectralField& f) noexcept;

}  // namespace hlim::detail
