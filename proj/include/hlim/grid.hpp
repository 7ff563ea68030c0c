#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

namespace hlim {

using Complex = std::complex<double>;

enum class Axis { x, y, z };

/// Periodic collocation grid on (0,L1) x (0,L2) x (-1,1).
///
/// Physical samples are stored x-fastest: index (i3*N2 + i2)*N1 + i1, with
/// x = i1*L1/N1, y = i2*L2/N2, z = -1 + 2*i3/N3.  Spectral coefficients use
/// Hermitian half storage along x (k1 = 0..N1/2) and FFT ordering along y, z:
/// index (i3*N2 + i2)*(N1/2+1) + k1.  A coefficient multiplies
/// exp(i(2 pi k1 x/L1 + 2 pi k2 y/L2 + pi k3 z)).
///
/// Copies share the wavenumber tables and FFT plans.
class Grid {
 public:
  static constexpr double kLz = 2.0;

  Grid(int n1, int n2, int n3, double l1, double l2, double dealias_fraction = 2.0 / 3.0);

  /// N1 = N2 = N3 = n.
  static Grid cube(int n, double l1 = 2.0 * std::numbers::pi, double l2 = 2.0 * std::numbers::pi,
                   double dealias_fraction = 2.0 / 3.0);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  int n3() const noexcept { return n3_; }
  int n1_half() const noexcept { return n1_ / 2 + 1; }
  double l1() const noexcept { return l1_; }
  double l2() const noexcept { return l2_; }
  double lz() const noexcept { return kLz; }
  double dealias_fraction() const noexcept { return dealias_fraction_; }
  double volume() const noexcept { return kLz * l1_ * l2_; }
  double area() const noexcept { return l1_ * l2_; }

  double dx() const noexcept { return l1_ / n1_; }
  double dy() const noexcept { return l2_ / n2_; }
  double dz() const noexcept { return kLz / n3_; }
  double x(int i1) const noexcept { return i1 * dx(); }
  double y(int i2) const noexcept { return i2 * dy(); }
  double z(int i3) const noexcept { return -1.0 + i3 * dz(); }

  std::size_t physical_size() const noexcept { return std::size_t(n1_) * n2_ * n3_; }
  std::size_t spectral_size() const noexcept { return std::size_t(n1_half()) * n2_ * n3_; }
  std::size_t physical_index(int i1, int i2, int i3) const noexcept {
    return (std::size_t(i3) * n2_ + i2) * n1_ + i1;
  }
  std::size_t spectral_index(int k1, int i2, int i3) const noexcept {
    return (std::size_t(i3) * n2_ + i2) * n1_half() + k1;
  }

  /// Signed wavenumber index for FFT position i along an axis of length n.
  static int signed_index(int i, int n) noexcept { return i <= n / 2 ? i : i - n; }
  /// FFT position of a signed index.
  static int fft_position(int k, int n) noexcept { return k >= 0 ? k : k + n; }

  /// Angular wavenumber 2 pi k1/L1, 2 pi k2/L2 or pi k3 for FFT position i.
  double wavenumber(Axis axis, int i) const noexcept;
  /// Wavenumber used by first derivatives: as above but 0 at the Nyquist index.
  double derivative_wavenumber(Axis axis, int i) const noexcept;

  /// |k|^2 per spectral index (Nyquist included).
  const std::vector<double>& k_squared() const noexcept;
  /// |k_H|^2 per spectral index.
  const std::vector<double>& kh_squared() const noexcept;
  /// 1 inside the dealias mask, 0 outside, per spectral index.
  const std::vector<unsigned char>& dealias_mask() const noexcept;
  /// Parseval weight: 1 for k1 = 0 and k1 = N1/2, 2 otherwise.
  double parseval_weight(int k1) const noexcept { return (k1 == 0 || 2 * k1 == n1_) ? 1.0 : 2.0; }

  /// Largest retained |index| along an axis: floor(dealias_fraction * N/2).
  int dealias_cutoff(Axis axis) const noexcept;
  /// Spectral index of (k1, i2, -k3): the z-reflected mode.
  std::size_t z_reflected_index(std::size_t s) const noexcept;

  /// Unnormalised real-to-complex / complex-to-real 3D transforms.  The
  /// complex-to-real call overwrites its input.
  void fft_forward(const double* in, Complex* out) const;
  void fft_backward(Complex* in, double* out) const;

  bool operator==(const Grid& other) const noexcept;
  bool operator!=(const Grid& other) const noexcept { return !(*this == other); }

 private:
  struct Tables;
  int n1_, n2_, n3_;
  double l1_, l2_, dealias_fraction_;
  std::shared_ptr<const Tables> tables_;
};

/// min over nonzero integer wavevectors of (2 pi k1/L1)^2 + (2 pi k2/L2)^2 + (pi k3)^2.
double lambda1(const Grid& grid);

}  // namespace hlim
