#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hlim/errors.hpp"
#include "hlim/grid.hpp"
#include "hlim/spectral.hpp"

using namespace hlim;
constexpr double pi = std::numbers::pi;

namespace {

PhysicalField sample(const Grid& g, auto fn) {
  std::vector<double> v(g.physical_size());
  for (int i3 = 0; i3 < g.n3(); ++i3)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i1 = 0; i1 < g.n1(); ++i1) v[g.physical_index(i1, i2, i3)] = fn(g.x(i1), g.y(i2), g.z(i3));
  return PhysicalField(g, std::move(v));
}

PhysicalField noise(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.physical_size());
  for (auto& x : v) x = u(rng);
  return PhysicalField(g, std::move(v));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(Grid(15, 16, 16, 1.0, 1.0), ConfigError);
  EXPECT_THROW(Grid(16, 16, 0, 1.0, 1.0), ConfigError);
  EXPECT_THROW(Grid(16, 16, 16, -1.0, 1.0), ConfigError);
  EXPECT_THROW(Grid(16, 16, 16, 1.0, 1.0, 0.0), ConfigError);
  EXPECT_NO_THROW(Grid(16, 8, 4, 1.0, 3.0));
}

TEST(Grid, IndexHelpers) {
  for (int n : {4, 8, 16})
    for (int i = 0; i < n; ++i) EXPECT_EQ(Grid::fft_position(Grid::signed_index(i, n), n), i);
  const Grid g = Grid::cube(16);
  EXPECT_EQ(g.n1_half(), 9);
  EXPECT_EQ(g.spectral_size(), 9u * 16 * 16);
  EXPECT_DOUBLE_EQ(g.volume(), 2.0 * 4.0 * pi * pi);
  EXPECT_DOUBLE_EQ(g.z(0), -1.0);
  EXPECT_EQ(g.dealias_cutoff(Axis::x), 5);
  EXPECT_EQ(g.z_reflected_index(0), 0u);
}

TEST(Grid, Lambda1) {
  EXPECT_NEAR(lambda1(Grid::cube(16)), 1.0, 1e-15);
  EXPECT_NEAR(lambda1(Grid(16, 16, 16, 4 * pi, 2 * pi)), 0.25, 1e-15);
  // Thin, long box: the vertical mode pi^2 is not the smallest.
  EXPECT_NEAR(lambda1(Grid(16, 16, 16, 0.5, 0.5)), pi * pi, 1e-12);
}

TEST(Transform, CoefficientConvention) {
  const Grid g = Grid::cube(8);
  const auto f = transform_forward(sample(g, [](double x, double, double z) { return std::sin(x) + 3.0 * std::cos(pi * z); }));
  EXPECT_NEAR(std::abs(f.mode(1, 0, 0) - Complex(0.0, -0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.mode(-1, 0, 0) - Complex(0.0, 0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.mode(0, 0, 1) - 1.5), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.mode(0, 0, -1) - 1.5), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.mode(0, 0, 0)), 0.0, 1e-14);
}

// Direct summation against the convention exp(i(2 pi k1 x/L1 + 2 pi k2 y/L2 + pi k3 z)).
TEST(Transform, MatchesNaiveDft) {
  const Grid g(4, 6, 8, 1.3, 2.1);
  const PhysicalField p = noise(g, 7);
  const SpectralField f = transform_forward(p);
  for (int k1 = 0; k1 <= 2; ++k1)
    for (int i2 = 0; i2 < 6; ++i2)
      for (int i3 = 0; i3 < 8; ++i3) {
        const int k2 = Grid::signed_index(i2, 6), k3 = Grid::signed_index(i3, 8);
        Complex sum = 0.0;
        for (int j3 = 0; j3 < 8; ++j3)
          for (int j2 = 0; j2 < 6; ++j2)
            for (int j1 = 0; j1 < 4; ++j1) {
              const double ph = 2 * pi * k1 * g.x(j1) / g.l1() + 2 * pi * k2 * g.y(j2) / g.l2() + pi * k3 * g.z(j3);
              sum += p.at(j1, j2, j3) * std::exp(Complex(0.0, -ph));
            }
        sum /= double(g.physical_size());
        EXPECT_NEAR(std::abs(f[g.spectral_index(k1, i2, i3)] - sum), 0.0, 1e-13) << k1 << ' ' << k2 << ' ' << k3;
      }
}

TEST(Transform, RoundTrip) {
  for (int n : {8, 16}) {
    const Grid g(n, n, n, 1.0, 3.0);
    const PhysicalField p = noise(g, 11 + n);
    const PhysicalField q = transform_inverse(transform_forward(p));
    EXPECT_LT(max_abs_diff(p.values(), q.values()), 1e-13);
  }
}

TEST(Transform, RejectsNonFinite) {
  const Grid g = Grid::cube(4);
  std::vector<double> v(g.physical_size(), 0.0);
  v[3] = std::nan("");
  EXPECT_THROW(PhysicalField(g, v), InvalidStateError);
  EXPECT_THROW(PhysicalField(g, std::vector<double>(5)), ConfigError);
}

TEST(Spectral, DerivativesOfTrigonometricField) {
  const Grid g(16, 16, 16, 2 * pi, 4 * pi);
  const auto f = transform_forward(sample(g, [](double x, double y, double z) {
    return std::sin(2 * x) * std::cos(0.5 * y) * std::cos(pi * z);
  }));
  const auto dx = transform_inverse(derivative(f, Axis::x));
  const auto dy = transform_inverse(derivative(f, Axis::y));
  const auto dz = transform_inverse(derivative(f, Axis::z));
  const auto ex = sample(g, [](double x, double y, double z) { return 2 * std::cos(2 * x) * std::cos(0.5 * y) * std::cos(pi * z); });
  const auto ey = sample(g, [](double x, double y, double z) { return -0.5 * std::sin(2 * x) * std::sin(0.5 * y) * std::cos(pi * z); });
  const auto ez = sample(g, [](double x, double y, double z) { return -pi * std::sin(2 * x) * std::cos(0.5 * y) * std::sin(pi * z); });
  EXPECT_LT(max_abs_diff(dx.values(), ex.values()), 1e-12);
  EXPECT_LT(max_abs_diff(dy.values(), ey.values()), 1e-12);
  EXPECT_LT(max_abs_diff(dz.values(), ez.values()), 1e-12);
  const double kk = 4 + 0.25 + pi * pi;
  const auto lap = transform_inverse(laplacian(f));
  const auto fl = transform_inverse(f);
  for (std::size_t i = 0; i < lap.values().size(); ++i) EXPECT_NEAR(lap[i], -kk * fl[i], 1e-11);
}

TEST(Spectral, DerivativeFlipsParityInZ) {
  const Grid g = Grid::cube(8);
  SpectralField f(g, Parity::even);
  EXPECT_EQ(derivative(f, Axis::z).parity(), Parity::odd);
  EXPECT_EQ(derivative(f, Axis::x).parity(), Parity::even);
}

TEST(Spectral, ParsevalMatchesQuadrature) {
  const Grid g(16, 16, 16, 1.0, 2.5);
  const SpectralField f = dealias(transform_forward(noise(g, 3)));
  EXPECT_NEAR(l2_squared(f), l2_squared_quadrature(transform_inverse(f)), 1e-12 * l2_squared(f));
  // And without dealiasing: Parseval holds for any real field on the grid.
  const PhysicalField p = noise(g, 4);
  EXPECT_NEAR(l2_squared(transform_forward(p)), l2_squared_quadrature(p), 1e-12 * l2_squared_quadrature(p));
}

TEST(Spectral, InnerProductIsBilinearAndSymmetric) {
  const Grid g = Grid::cube(8);
  const auto a = transform_forward(noise(g, 1));
  const auto b = transform_forward(noise(g, 2));
  EXPECT_NEAR(inner_product(a, b), inner_product(b, a), 1e-12);
  EXPECT_NEAR(inner_product(a, a), l2_squared(a), 1e-12);
  EXPECT_NEAR(inner_product(2.0 * a, b), 2.0 * inner_product(a, b), 1e-12);
}

TEST(Spectral, KnownNorms) {
  const Grid g = Grid::cube(16);
  const auto f = transform_forward(sample(g, [](double x, double, double) { return std::sin(x); }));
  const double vol = g.volume();
  EXPECT_NEAR(norm(f, NormKind::L2), std::sqrt(vol / 2), 1e-12);
  EXPECT_NEAR(norm(f, NormKind::L4), std::pow(3.0 / 8.0 * vol, 0.25), 1e-12);
  EXPECT_NEAR(norm(f, NormKind::GradL2), std::sqrt(vol / 2), 1e-12);
  EXPECT_NEAR(norm(f, NormKind::H1Seminorm), norm(f, NormKind::GradL2), 0.0);
}

TEST(Spectral, DealiasIsIdempotent) {
  const Grid g = Grid::cube(16);
  const auto f = transform_forward(noise(g, 5));
  EXPECT_FALSE(is_dealiased(f));
  const auto d = dealias(f);
  EXPECT_TRUE(is_dealiased(d));
  const auto dd = dealias(d);
  for (std::size_t i = 0; i < d.coefficients().size(); ++i) EXPECT_EQ(d[i], dd[i]);
  EXPECT_EQ(std::abs(d.mode(6, 0, 0)), 0.0);
  EXPECT_NE(std::abs(d.mode(5, 0, 0)), 0.0);
}

TEST(Spectral, ProductIsExactForBandLimitedInputs) {
  const Grid g = Grid::cube(16);
  auto f1 = [](double x, double y, double z) { return std::sin(2 * x) * std::cos(pi * z) + std::cos(y); };
  auto f2 = [](double x, double y, double z) { return std::cos(x + y) * std::cos(2 * pi * z); };
  const auto a = transform_forward(sample(g, f1));
  const auto b = transform_forward(sample(g, f2));
  const auto p = transform_inverse(product(a, b));
  const auto e = sample(g, [&](double x, double y, double z) { return f1(x, y, z) * f2(x, y, z); });
  EXPECT_LT(max_abs_diff(p.values(), e.values()), 1e-13);
}

TEST(Spectral, ProductParityAlgebra) {
  const Grid g = Grid::cube(8);
  SpectralField e(g, Parity::even), o(g, Parity::odd);
  EXPECT_EQ(product(e, o).parity(), Parity::odd);
  EXPECT_EQ(product(o, o).parity(), Parity::even);
  EXPECT_EQ(product(e, SpectralField(g)).parity(), Parity::none);
}

TEST(Spectral, VerticalIntegral) {
  const Grid g = Grid::cube(8);
  const auto f = transform_forward(sample(g, [](double x, double, double z) { return 1.0 + std::sin(x) * (0.5 + std::cos(pi * z)); }));
  const auto vi = transform_inverse(vertical_integral(f));
  for (int i1 = 0; i1 < 8; ++i1) EXPECT_NEAR(vi.at(i1, 3, 5), 2.0 + std::sin(g.x(i1)), 1e-13);
}

TEST(Spectral, HermitianPartIsIdempotentAndReal) {
  const Grid g = Grid::cube(8);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  std::vector<Complex> c(g.spectral_size());
  for (auto& z : c) z = Complex(n(rng), n(rng));
  const auto h = hermitian_part(SpectralField(g, c));
  const auto hh = hermitian_part(h);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(std::abs(h[i] - hh[i]), 0.0, 1e-14);
  // k1 = 0 plane is conjugate symmetric.
  for (int i2 = 0; i2 < 8; ++i2)
    for (int i3 = 0; i3 < 8; ++i3) {
      const int k2 = Grid::signed_index(i2, 8), k3 = Grid::signed_index(i3, 8);
      EXPECT_NEAR(std::abs(h.mode(0, k2, k3) - std::conj(h.mode(0, -k2, -k3))), 0.0, 1e-14);
    }
}

TEST(Spectral, MixedGridsAreRejected) {
  SpectralField a(Grid::cube(8)), b(Grid::cube(16));
  EXPECT_THROW(a += b, ConfigError);
}

TEST(Spectral, ScaleCovariance) {
  const Grid g = Grid::cube(16);
  const auto f = dealias(transform_forward(noise(g, 21)));
  for (NormKind k : {NormKind::L2, NormKind::L4, NormKind::GradL2})
    EXPECT_NEAR(norm(-3.0 * f, k), 3.0 * norm(f, k), 1e-12 * norm(f, k));
}
