#include "pe_pressure_oracle.hpp"

#include <cmath>

namespace oracle {

using hlim::Complex;
using hlim::Grid;

std::vector<Complex> pe_pressure(const hlim::HVector& v) {
  const Grid& g = v[0].grid();
  const hlim::PhysicalField f1 = hlim::transform_inverse(v[0]);
  const hlim::PhysicalField f2 = hlim::transform_inverse(v[1]);
  const auto p1 = f1.values();
  const auto p2 = f2.values();
  const std::size_t plane = std::size_t(g.n1()) * g.n2();
  // Averages of v1 v1, v1 v2, v2 v2 over z.
  std::vector<double> a11(plane, 0.0), a12(plane, 0.0), a22(plane, 0.0);
  for (int i3 = 0; i3 < g.n3(); ++i3)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i1 = 0; i1 < g.n1(); ++i1) {
        const std::size_t p = g.physical_index(i1, i2, i3), q = std::size_t(i2) * g.n1() + i1;
        a11[q] += p1[p] * p1[p] / g.n3();
        a12[q] += p1[p] * p2[p] / g.n3();
        a22[q] += p2[p] * p2[p] / g.n3();
      }
  const int c1 = g.n1() / 3, c2 = g.n2() / 3;
  std::vector<Complex> out(std::size_t(g.n1() / 2 + 1) * g.n2(), 0.0);
  for (int k1 = 0; k1 <= c1; ++k1)
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const int k2 = Grid::signed_index(i2, g.n2());
      if (std::abs(k2) > c2 || (k1 == 0 && k2 == 0)) continue;
      Complex h11 = 0.0, h12 = 0.0, h22 = 0.0;
      for (int j2 = 0; j2 < g.n2(); ++j2)
        for (int j1 = 0; j1 < g.n1(); ++j1) {
          const double phase = -2.0 * M_PI * (double(k1) * j1 / g.n1() + double(k2) * j2 / g.n2());
          const Complex e(std::cos(phase), std::sin(phase));
          const std::size_t q = std::size_t(j2) * g.n1() + j1;
          h11 += a11[q] * e;
          h12 += a12[q] * e;
          h22 += a22[q] * e;
        }
      const double n = double(plane);
      const double kx = 2.0 * M_PI * k1 / g.l1(), ky = 2.0 * M_PI * k2 / g.l2();
      out[std::size_t(k1) * g.n2() + i2] = -(kx * kx * h11 + 2.0 * kx * ky * h12 + ky * ky * h22) / n / (kx * kx + ky * ky);
    }
  return out;
}

}  // namespace oracle
