#include "hlim/symmetry.hpp"

#include <cmath>
#include <string>

#include "hlim/errors.hpp"

namespace hlim {

SpectralField parity_project(const SpectralField& f, Parity parity) {
  if (parity == Parity::none) return f;
  const Grid& g = f.grid();
  SpectralField out(g, parity);
  auto in = f.coefficients();
  auto res = out.coefficients();
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  for (std::size_t s = 0; s < in.size(); ++s) {
    res[s] = 0.5 * (in[s] + sign * in[g.z_reflected_index(s)]);
  }
  return out;
}

double parity_deviation(const SpectralField& f, Parity expected) {
  if (expected == Parity::none) return 0.0;
  const double total = l2_squared(f);
  if (total == 0.0) return 0.0;
  const SpectralField wrong = parity_project(f, flip(expected));
  return std::sqrt(l2_squared(wrong) / total);
}

SpectralField divergence_h(const HVector& v) {
  SpectralField d = derivative(v[0], Axis::x);
  d += derivative(v[1], Axis::y);
  d.set_parity(v[0].parity() == v[1].parity() ? v[0].parity() : Parity::none);
  return d;
}

SpectralField divergence_3d(const HVector& v, const SpectralField& w) {
  SpectralField d = divergence_h(v);
  const Parity p = d.parity();
  d += derivative(w, Axis::z);
  d.set_parity(p == flip(w.parity()) ? p : Parity::none);
  return d;
}

double barotropic_divergence(const HVector& v) {
  const SpectralField d = divergence_h(v);
  const Grid& g = d.grid();
  auto c = d.coefficients();
  // int_{-1}^{1} div_H v dz = 2 * (k3 = 0 slab); norm over M.
  double total = 0.0;
  const std::size_t plane = std::size_t(g.n2()) * g.n1_half();
  for (std::size_t s = 0; s < plane; ++s) {
    total += g.parseval_weight(int(s % g.n1_half())) * std::norm(g.lz() * c[s]);
  }
  return std::sqrt(g.area() * total);
}

SpectralField diagnostic_w(const HVector& v) {
  const double baro = barotropic_divergence(v);
  if (!(baro <= kBarotropicHardTolerance)) {
    throw InvalidStateError("barotropic divergence " + std::to_string(baro) +
                            " exceeds tolerance; vertical antiderivative would not be periodic");
  }
  const SpectralField d = divergence_h(v);
  const Grid& g = d.grid();
  SpectralField w(g, Parity::odd);
  auto in = d.coefficients();
  auto out = w.coefficients();
  for (int i3 = 1; i3 < g.n3(); ++i3) {
    const double kz = g.derivative_wavenumber(Axis::z, i3);
    if (kz == 0.0) continue;
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      for (int k1 = 0; k1 < g.n1_half(); ++k1) {
        const std::size_t s = g.spectral_index(k1, i2, i3);
        // d_z w = -div_H v  =>  i kz w = -d
        out[s] = -in[s] / Complex(0.0, kz);
      }
    }
  }
  return parity_project(w, Parity::odd);
}

SpectralField remove_mean(SpectralField f) {
  f[0] = Complex{};
  return f;
}

HVector project_admissible(const HVector& v) {
  HVector out{parity_project(dealias(v[0]), Parity::even), parity_project(dealias(v[1]), Parity::even)};
  const Grid& g = out[0].grid();
  auto c1 = out[0].coefficients();
  auto c2 = out[1].coefficients();
  for (int i2 = 0; i2 < g.n2(); ++i2) {
    const double ky = g.derivative_wavenumber(Axis::y, i2);
    for (int k1 = 0; k1 < g.n1_half(); ++k1) {
      const double kx = g.derivative_wavenumber(Axis::x, k1);
      const double kh2 = kx * kx + ky * ky;
      if (kh2 == 0.0) continue;
      const std::size_t s = g.spectral_index(k1, i2, 0);
      const Complex proj = (kx * c1[s] + ky * c2[s]) / kh2;
      c1[s] -= kx * proj;
      c2[s] -= ky * proj;
    }
  }
  out[0] = remove_mean(std::move(out[0]));
  out[1] = remove_mean(std::move(out[1]));
  return out;
}

}  // namespace hlim
