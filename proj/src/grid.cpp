#include "hlim/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "hlim/errors.hpp"

namespace hlim {

namespace {

// The FFTW planner is not re-entrant; execution through the new-array
// interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Grid::Tables {
  std::vector<double> k_squared;
  std::vector<double> kh_squared;
  std::vector<unsigned char> mask;
  std::vector<std::size_t> z_reflected;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  Tables() = default;
  Tables(const Tables&) = delete;
  Tables& operator=(const Tables&) = delete;
  ~Tables() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

Grid::Grid(int n1, int n2, int n3, double l1, double l2, double dealias_fraction)
    : n1_(n1), n2_(n2), n3_(n3), l1_(l1), l2_(l2), dealias_fraction_(dealias_fraction) {
  for (int n : {n1, n2, n3}) {
    if (n <= 0 || n % 2 != 0) {
      throw ConfigError("grid resolution must be a positive even integer, got " + std::to_string(n));
    }
  }
  if (!(l1 > 0.0) || !(l2 > 0.0) || !std::isfinite(l1) || !std::isfinite(l2)) {
    throw ConfigError("horizontal periods L1, L2 must be positive and finite");
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw ConfigError("dealias_fraction must lie in (0, 1]");
  }

  auto tables = std::make_shared<Tables>();
  const std::size_t ns = spectral_size();
  tables->k_squared.resize(ns);
  tables->kh_squared.resize(ns);
  tables->mask.resize(ns);
  tables->z_reflected.resize(ns);
  const int c1 = int(std::floor(dealias_fraction * n1 / 2.0));
  const int c2 = int(std::floor(dealias_fraction * n2 / 2.0));
  const int c3 = int(std::floor(dealias_fraction * n3 / 2.0));
  for (int i3 = 0; i3 < n3; ++i3) {
    const int m3 = signed_index(i3, n3);
    const double kz = std::numbers::pi * m3;
    for (int i2 = 0; i2 < n2; ++i2) {
      const int m2 = signed_index(i2, n2);
      const double ky = 2.0 * std::numbers::pi * m2 / l2;
      for (int k1 = 0; k1 < n1_half(); ++k1) {
        const double kx = 2.0 * std::numbers::pi * k1 / l1;
        const std::size_t s = spectral_index(k1, i2, i3);
        tables->kh_squared[s] = kx * kx + ky * ky;
        tables->k_squared[s] = kx * kx + ky * ky + kz * kz;
        tables->mask[s] = (k1 <= c1 && std::abs(m2) <= c2 && std::abs(m3) <= c3) ? 1 : 0;
        tables->z_reflected[s] = spectral_index(k1, i2, (n3 - i3) % n3);
      }
    }
  }

  {
    std::lock_guard lock(planner_mutex());
    double* rbuf = fftw_alloc_real(physical_size());
    fftw_complex* cbuf = fftw_alloc_complex(spectral_size());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    tables->forward = fftw_plan_dft_r2c_3d(n3, n2, n1, rbuf, cbuf, flags);
    tables->backward = fftw_plan_dft_c2r_3d(n3, n2, n1, cbuf, rbuf, flags);
    fftw_free(rbuf);
    fftw_free(cbuf);
  }
  if (!tables->forward || !tables->backward) {
    throw ConfigError("FFTW failed to create transform plans");
  }
  tables_ = std::move(tables);
}

Grid Grid::cube(int n, double l1, double l2, double dealias_fraction) {
  return Grid(n, n, n, l1, l2, dealias_fraction);
}

double Grid::wavenumber(Axis axis, int i) const noexcept {
  switch (axis) {
    case Axis::x:
      return 2.0 * std::numbers::pi * i / l1_;  // half storage: i >= 0
    case Axis::y:
      return 2.0 * std::numbers::pi * signed_index(i, n2_) / l2_;
    case Axis::z:
      return std::numbers::pi * signed_index(i, n3_);
  }
  return 0.0;
}

double Grid::derivative_wavenumber(Axis axis, int i) const noexcept {
  const int n = axis == Axis::x ? n1_ : axis == Axis::y ? n2_ : n3_;
  if (2 * i == n) return 0.0;
  return wavenumber(axis, i);
}

const std::vector<double>& Grid::k_squared() const noexcept { return tables_->k_squared; }
const std::vector<double>& Grid::kh_squared() const noexcept { return tables_->kh_squared; }
const std::vector<unsigned char>& Grid::dealias_mask() const noexcept { return tables_->mask; }

int Grid::dealias_cutoff(Axis axis) const noexcept {
  const int n = axis == Axis::x ? n1_ : axis == Axis::y ? n2_ : n3_;
  return int(std::floor(dealias_fraction_ * n / 2.0));
}

std::size_t Grid::z_reflected_index(std::size_t s) const noexcept { return tables_->z_reflected[s]; }

void Grid::fft_forward(const double* in, Complex* out) const {
  // r2c does not modify its input.
  fftw_execute_dft_r2c(tables_->forward, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void Grid::fft_backward(Complex* in, double* out) const {
  fftw_execute_dft_c2r(tables_->backward, reinterpret_cast<fftw_complex*>(in), out);
}

bool Grid::operator==(const Grid& o) const noexcept {
  return n1_ == o.n1_ && n2_ == o.n2_ && n3_ == o.n3_ && l1_ == o.l1_ && l2_ == o.l2_ &&
         dealias_fraction_ == o.dealias_fraction_;
}

double lambda1(const Grid& grid) {
  const double a = 2.0 * std::numbers::pi / grid.l1();
  const double b = 2.0 * std::numbers::pi / grid.l2();
  const double c = std::numbers::pi;
  double best = std::numeric_limits<double>::infinity();
  for (int k1 = -2; k1 <= 2; ++k1) {
    for (int k2 = -2; k2 <= 2; ++k2) {
      for (int k3 = -2; k3 <= 2; ++k3) {
        if (k1 == 0 && k2 == 0 && k3 == 0) continue;
        const double ev = (a * k1) * (a * k1) + (b * k2) * (b * k2) + (c * k3) * (c * k3);
        best = std::min(best, ev);
      }
    }
  }
  return best;
}

}  // namespace hlim
