#include "hlim/spectral.hpp"

#include <cmath>
#include <string>

#include "hlim/errors.hpp"

namespace hlim {

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (a != b) throw ConfigError("fields live on different grids");
}

// Coefficients are taken relative to exp(i pi k3 z) with z in (-1,1); the FFT
// runs over z + 1, which differs by (-1)^k3.
inline double z_phase(int i3) noexcept { return (i3 % 2 == 0) ? 1.0 : -1.0; }

// Sum over modes of weight(k1) * |k|^(2p) * |f_k|^2, derivative wavenumbers.
double weighted_power(const SpectralField& f, int power, bool vertical_only) noexcept {
  const Grid& g = f.grid();
  auto c = f.coefficients();
  double total = 0.0;
  for (int i3 = 0; i3 < g.n3(); ++i3) {
    const double kz = g.derivative_wavenumber(Axis::z, i3);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const double ky = g.derivative_wavenumber(Axis::y, i2);
      for (int k1 = 0; k1 < g.n1_half(); ++k1) {
        const double kx = g.derivative_wavenumber(Axis::x, k1);
        const double k2 = vertical_only ? kz * kz : kx * kx + ky * ky + kz * kz;
        double factor = 1.0;
        for (int p = 0; p < power; ++p) factor *= k2;
        total += g.parseval_weight(k1) * factor * std::norm(c[g.spectral_index(k1, i2, i3)]);
      }
    }
  }
  return g.volume() * total;
}

}  // namespace

Parity flip(Parity p) noexcept {
  switch (p) {
    case Parity::even:
      return Parity::odd;
    case Parity::odd:
      return Parity::even;
    case Parity::none:
      return Parity::none;
  }
  return Parity::none;
}

const char* to_string(Parity p) noexcept {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    case Parity::none:
      return "none";
  }
  return "none";
}

PhysicalField::PhysicalField(Grid grid) : grid_(std::move(grid)), values_(grid_.physical_size(), 0.0) {}

PhysicalField::PhysicalField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.physical_size()) {
    throw ConfigError("physical field has " + std::to_string(values_.size()) + " samples, grid expects " +
                      std::to_string(grid_.physical_size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidStateError("physical field contains non-finite values");
  }
}

SpectralField::SpectralField(Grid grid, Parity parity)
    : grid_(std::move(grid)), coeffs_(grid_.spectral_size(), Complex{}), parity_(parity) {}

SpectralField::SpectralField(Grid grid, std::vector<Complex> coefficients, Parity parity)
    : grid_(std::move(grid)), coeffs_(std::move(coefficients)), parity_(parity) {
  if (coeffs_.size() != grid_.spectral_size()) {
    throw ConfigError("spectral field has " + std::to_string(coeffs_.size()) + " coefficients, grid expects " +
                      std::to_string(grid_.spectral_size()));
  }
}

Complex SpectralField::mode(int k1, int k2, int k3) const {
  if (k1 < 0) return std::conj(mode(-k1, -k2, -k3));
  if (k1 > grid_.n1() / 2 || std::abs(k2) > grid_.n2() / 2 || std::abs(k3) > grid_.n3() / 2) {
    throw ConfigError("mode index outside the grid");
  }
  return coeffs_[grid_.spectral_index(k1, Grid::fft_position(k2, grid_.n2()), Grid::fft_position(k3, grid_.n3()))];
}

void SpectralField::set_mode(int k1, int k2, int k3, Complex value) {
  if (k1 < 0 || k1 > grid_.n1() / 2 || std::abs(k2) > grid_.n2() / 2 || std::abs(k3) > grid_.n3() / 2) {
    throw ConfigError("mode index outside the half-storage range");
  }
  coeffs_[grid_.spectral_index(k1, Grid::fft_position(k2, grid_.n2()), Grid::fft_position(k3, grid_.n3()))] = value;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] += o.coeffs_[s];
  if (parity_ != o.parity_) parity_ = Parity::none;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] -= o.coeffs_[s];
  if (parity_ != o.parity_) parity_ = Parity::none;
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

bool SpectralField::is_zero() const noexcept {
  for (const auto& c : coeffs_) {
    if (c != Complex{}) return false;
  }
  return true;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

namespace detail {

void to_physical(const SpectralField& f, std::vector<double>& out, std::vector<Complex>& scratch) {
  const Grid& g = f.grid();
  auto c = f.coefficients();
  scratch.assign(c.begin(), c.end());
  const std::size_t plane = std::size_t(g.n2()) * g.n1_half();
  for (int i3 = 1; i3 < g.n3(); i3 += 2) {
    for (std::size_t s = i3 * plane; s < (i3 + 1) * plane; ++s) scratch[s] = -scratch[s];
  }
  out.resize(g.physical_size());
  g.fft_backward(scratch.data(), out.data());
}

void to_spectral(const Grid& g, const std::vector<double>& in, SpectralField& out) {
  auto c = out.coefficients();
  g.fft_forward(in.data(), c.data());
  const double scale = 1.0 / double(g.physical_size());
  const std::size_t plane = std::size_t(g.n2()) * g.n1_half();
  for (int i3 = 0; i3 < g.n3(); ++i3) {
    const double f = scale * z_phase(i3);
    for (std::size_t s = i3 * plane; s < (i3 + 1) * plane; ++s) c[s] *= f;
  }
}

double gradient_squared(const SpectralField& f) noexcept { return weighted_power(f, 1, false); }
double laplacian_squared(const SpectralField& f) noexcept { return weighted_power(f, 2, false); }
double grad_laplacian_squared(const SpectralField& f) noexcept { return weighted_power(f, 3, false); }
double dz_squared(const SpectralField& f) noexcept { return weighted_power(f, 1, true); }

}  // namespace detail

SpectralField transform_forward(const PhysicalField& f) {
  SpectralField out(f.grid());
  std::vector<double> values(f.values().begin(), f.values().end());
  detail::to_spectral(f.grid(), values, out);
  return out;
}

PhysicalField transform_inverse(const SpectralField& f) {
  std::vector<double> values;
  std::vector<Complex> scratch;
  detail::to_physical(f, values, scratch);
  return PhysicalField(f.grid(), std::move(values));
}

SpectralField derivative(const SpectralField& f, Axis axis) {
  const Grid& g = f.grid();
  SpectralField out(g, axis == Axis::z ? flip(f.parity()) : f.parity());
  auto in = f.coefficients();
  auto res = out.coefficients();
  for (int i3 = 0; i3 < g.n3(); ++i3) {
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      for (int k1 = 0; k1 < g.n1_half(); ++k1) {
        const int i = axis == Axis::x ? k1 : axis == Axis::y ? i2 : i3;
        const double k = g.derivative_wavenumber(axis, i);
        const std::size_t s = g.spectral_index(k1, i2, i3);
        res[s] = Complex(0.0, k) * in[s];
      }
    }
  }
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  SpectralField out = f;
  const auto& k2 = f.grid().k_squared();
  auto c = out.coefficients();
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= -k2[s];
  return out;
}

SpectralField dealias(SpectralField f) {
  const auto& mask = f.grid().dealias_mask();
  auto c = f.coefficients();
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (!mask[s]) c[s] = Complex{};
  }
  return f;
}

bool is_dealiased(const SpectralField& f) noexcept {
  const auto& mask = f.grid().dealias_mask();
  auto c = f.coefficients();
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (!mask[s] && c[s] != Complex{}) return false;
  }
  return true;
}

SpectralField product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid());
  const Grid& g = a.grid();
  std::vector<double> pa, pb;
  std::vector<Complex> scratch;
  detail::to_physical(dealias(a), pa, scratch);
  detail::to_physical(dealias(b), pb, scratch);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  Parity parity = Parity::none;
  if (a.parity() != Parity::none && b.parity() != Parity::none) {
    parity = a.parity() == b.parity() ? Parity::even : Parity::odd;
  }
  SpectralField out(g, parity);
  detail::to_spectral(g, pa, out);
  return dealias(std::move(out));
}

double l2_squared(const SpectralField& f) noexcept {
  const Grid& g = f.grid();
  auto c = f.coefficients();
  double total = 0.0;
  for (std::size_t s = 0; s < c.size(); ++s) {
    total += g.parseval_weight(int(s % g.n1_half())) * std::norm(c[s]);
  }
  return g.volume() * total;
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid());
  const Grid& g = a.grid();
  auto ca = a.coefficients();
  auto cb = b.coefficients();
  double total = 0.0;
  for (std::size_t s = 0; s < ca.size(); ++s) {
    total += g.parseval_weight(int(s % g.n1_half())) * (ca[s] * std::conj(cb[s])).real();
  }
  return g.volume() * total;
}

double l2_squared_quadrature(const PhysicalField& f) noexcept {
  double total = 0.0;
  for (double v : f.values()) total += v * v;
  return total * f.grid().volume() / double(f.grid().physical_size());
}

double norm(const SpectralField& f, NormKind kind) {
  return norm(std::span<const SpectralField>(&f, 1), kind);
}

double norm(std::span<const SpectralField> components, NormKind kind) {
  if (components.empty()) return 0.0;
  const Grid& g = components.front().grid();
  for (const auto& c : components) require_same_grid(g, c.grid());
  double total = 0.0;
  switch (kind) {
    case NormKind::L2:
      for (const auto& c : components) total += l2_squared(c);
      return std::sqrt(total);
    case NormKind::H1Seminorm:
    case NormKind::GradL2:
      for (const auto& c : components) total += detail::gradient_squared(c);
      return std::sqrt(total);
    case NormKind::L4: {
      std::vector<double> modulus2(g.physical_size(), 0.0);
      std::vector<double> values;
      std::vector<Complex> scratch;
      for (const auto& c : components) {
        detail::to_physical(dealias(c), values, scratch);
        for (std::size_t i = 0; i < values.size(); ++i) modulus2[i] += values[i] * values[i];
      }
      for (double m : modulus2) total += m * m;
      return std::pow(total * g.volume() / double(g.physical_size()), 0.25);
    }
  }
  return 0.0;
}

SpectralField vertical_integral(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(g, Parity::even);
  auto in = f.coefficients();
  auto res = out.coefficients();
  const std::size_t plane = std::size_t(g.n2()) * g.n1_half();
  for (std::size_t s = 0; s < plane; ++s) res[s] = g.lz() * in[s];
  return out;
}

SpectralField hermitian_part(const SpectralField& f) {
  SpectralField out = transform_forward(transform_inverse(f));
  out.set_parity(f.parity());
  return out;
}

}  // namespace hlim
