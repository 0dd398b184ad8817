#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gascap/capacity.hpp"
#include "gascap/errors.hpp"
#include "test_support.hpp"

namespace gascap {
namespace {

using std::numbers::ln2;

LevelList harmonic(int d, int cutoff) { return harmonic_levels(d, std::vector<int>(d, 1), cutoff); }

double bose_h(double n) { return (1 + n) * std::log2(1 + n) - n * std::log2(n); }

TEST(CapacityPoint, SingleBosonLevelIsTwoBits) {
  for (double T : {0.01, 1.0, 100.0}) {
    const auto s = capacity_point(LevelList({{0.0, 1}}), Species::boson(), 1.0, T);
    EXPECT_NEAR(s.capacity_bits, 2.0, 1e-9);
    EXPECT_NEAR(s.ground_fraction, 1.0, 1e-12);
  }
}

TEST(CapacityPoint, FilledFermiSeaAtLowT) {
  const LevelList two({{0.0, 1}, {1.0, 1}});
  double prev = INFINITY;
  for (double T : {0.5, 0.1, 0.05, 0.01}) {
    const double c = capacity_point(two, Species::fermion(1), 1.0, T).capacity_bits;
    EXPECT_LT(c, prev);
    prev = c;
  }
  EXPECT_LT(prev, 1e-15);
}

TEST(CapacityPoint, ReportsMuEnergyAndParticles) {
  const auto l = harmonic(3, 60);
  const auto s = capacity_point(l, Species::boson(), 50.0, 4.0);
  EXPECT_NEAR(s.particles, 50.0, 50.0 * 1e-10);
  EXPECT_NEAR(s.mu, 4.0 * std::log(s.z), 1e-12);
  EXPECT_GT(s.energy, 0.0);
  EXPECT_GT(s.ground_fraction, 0.0);
  EXPECT_LT(s.ground_fraction, 1.0);
  EXPECT_THROW(capacity_point(l, Species::boson(), 50.0, 0.0), UsageError);
}

TEST(PhotonCapacity, Examples) {
  EXPECT_NEAR(photon_capacity_point(LevelList({{1.0, 1}}), 1.0 / ln2).capacity_bits, 2.0, 1e-14);
  EXPECT_LT(photon_capacity_point(LevelList({{1.0, 1}}), 1e-3).capacity_bits, 1e-300);
  EXPECT_NEAR(photon_capacity_point(LevelList({{1.0, 1}, {2.0, 1}}), 1.0 / ln2).capacity_bits,
              bose_h(1.0) + bose_h(1.0 / 3.0), 1e-14);
  const auto s = photon_capacity_point(LevelList({{1.0, 1}}), 1.0 / ln2);
  EXPECT_EQ(s.z, 1.0);
  EXPECT_EQ(s.mu, 0.0);
  EXPECT_NEAR(s.particles, 1.0, 1e-14);
}

TEST(PhotonCapacity, RejectsNonPositiveGround) {
  EXPECT_THROW(photon_capacity_point(LevelList({{0.0, 1}, {1.0, 2}}), 1.0), DomainError);
  EXPECT_THROW(capacity_point(LevelList({{0.0, 1}}), Species::photonlike(), 1.0, 1.0), DomainError);
}

TEST(PhotonCapacity, UpwardShiftLowersCapacity) {
  testing::Gen gen(101);
  for (int i = 0; i < 200; ++i) {
    const auto l = gen.spectrum(gen.integer(1, 20), 4, gen.uniform(0.01, 3.0));
    const double T = gen.log_uniform(0.1, 20.0);
    const double c = gen.uniform(0.01, 5.0);
    EXPECT_LT(photon_capacity_point(add_constant(l, c), T).capacity_bits, photon_capacity_point(l, T).capacity_bits);
  }
}

TEST(CapacityCurve, OrderedAndThreadIndependent) {
  const auto l = harmonic(3, 80);
  const auto grid = uniform_grid(0.5, 12.0, 37);
  const auto one = capacity_curve(l, Species::boson(), 200.0, grid, 2.0, 1);
  const auto four = capacity_curve(l, Species::boson(), 200.0, grid, 2.0, 4);
  ASSERT_EQ(one.samples.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(one.samples[i].T, grid[i]);
    EXPECT_EQ(one.samples[i].T_ref, 2.0);
    EXPECT_EQ(one.samples[i].capacity_bits, four.samples[i].capacity_bits);
  }
}

TEST(CapacityCurve, FailureCarriesTemperature) {
  // One mode can hold any N below the clamp; 1e17 exceeds it at every T.
  const std::vector<double> grid{1.0, 2.0, 3.0};
  try {
    capacity_curve(LevelList({{0.0, 1}}), Species::boson(), 1e17, grid, 1.0, 2);
    FAIL();
  } catch (const NumericalError& e) {
    ASSERT_TRUE(e.temperature().has_value());
    EXPECT_EQ(*e.temperature(), 1.0);
  }
  const std::vector<double> bad{1.0, 1.0};
  EXPECT_THROW(capacity_curve(LevelList({{0.0, 1}}), Species::boson(), 1.0, bad), UsageError);
}

TEST(CapacityCurve, MonotoneProperties) {
  testing::Gen gen(111);
  for (int i = 0; i < 12; ++i) {
    const int d = gen.integer(1, 3);
    const int cutoff = d == 1 ? 2000 : (d == 2 ? 400 : 120);
    const auto l = harmonic(d, cutoff);
    const double N = gen.log_uniform(10.0, 1000.0);
    const Species sp = gen.coin() ? Species::boson() : Species::fermion(gen.integer(1, 2));
    const auto grid = uniform_grid(0.2, d == 3 ? 20.0 : 60.0, 60);
    const auto curve = capacity_curve(l, sp, N, grid);
    for (std::size_t k = 1; k < curve.samples.size(); ++k) {
      const auto& a = curve.samples[k - 1];
      const auto& b = curve.samples[k];
      EXPECT_GE(a.capacity_bits, 0.0);
      EXPECT_GE(b.capacity_bits, a.capacity_bits) << "d=" << d << " T=" << b.T;
      if (sp.is_boson_like()) EXPECT_LE(b.ground_fraction, a.ground_fraction * (1 + 1e-12)) << "T=" << b.T;
    }
    const auto T = curve.temperatures();
    const auto C = curve.capacities();
    for (double v : derivative_curve(T, C).dfdx) EXPECT_GT(v, 0.0);
  }
}

TEST(UniformGrid, EndpointsAndErrors) {
  const auto g = uniform_grid(1.0, 2.0, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 1.0);
  EXPECT_EQ(g.back(), 2.0);
  EXPECT_EQ(uniform_grid(3.0, 4.0, 1), std::vector<double>{3.0});
  EXPECT_THROW(uniform_grid(2.0, 1.0, 5), UsageError);
  EXPECT_THROW(uniform_grid(1.0, 2.0, 0), UsageError);
}

TEST(FourPoint, ExactForQuartic) {
  const auto x = uniform_grid(0.8, 1.2, 5);
  std::vector<double> f;
  for (double v : x) f.push_back(v * v);
  EXPECT_NEAR(four_point_derivative(x, f, 2), 2.0, 1e-13);
  std::vector<double> q;
  for (double v : x) q.push_back(v * v * v * v - 3 * v * v * v);
  EXPECT_NEAR(four_point_derivative(x, q, 2), 4.0 - 9.0, 1e-12);
  const std::vector<double> flat(5, 3.25);
  EXPECT_EQ(four_point_derivative(x, flat, 2), 0.0);
}

TEST(FourPoint, FourthOrderOnSine) {
  auto err = [](double h) {
    std::vector<double> x, f;
    for (int k = -2; k <= 2; ++k) {
      x.push_back(0.7 + k * h);
      f.push_back(std::sin(0.7 + k * h));
    }
    return std::abs(four_point_derivative(x, f, 2) - std::cos(0.7));
  };
  const double ratio = err(0.02) / err(0.01);
  EXPECT_GE(ratio, 12.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(FourPoint, Errors) {
  const auto x = uniform_grid(0.0, 1.0, 7);
  const std::vector<double> f(7, 1.0);
  EXPECT_THROW(four_point_derivative(x, f, 1), UsageError);
  EXPECT_THROW(four_point_derivative(x, f, 5), UsageError);
  EXPECT_NO_THROW(four_point_derivative(x, f, 4));
  std::vector<double> bent = x;
  bent[3] += 0.01;
  EXPECT_THROW(four_point_derivative(bent, f, 3), UsageError);
  EXPECT_THROW(derivative_curve(std::vector<double>{0, 1, 2, 3}, std::vector<double>{0, 1, 2, 3}), UsageError);
  const auto d = derivative_curve(x, f);
  EXPECT_EQ(d.x.size(), 3u);
  EXPECT_EQ(d.x.front(), x[2]);
}

TEST(ReferenceTemperatures, Examples) {
  const auto r3 = reference_temperatures({HarmonicTrap{}, 10}, 1e4);
  ASSERT_TRUE(r3.tc_3d_harmonic);
  EXPECT_NEAR(*r3.tc_3d_harmonic, std::cbrt(1e4 / 1.2020569031595942), 1e-12);
  EXPECT_NEAR(*r3.tc_3d_harmonic, 20.26, 0.005);
  EXPECT_FALSE(r3.tc_3d_box);

  const auto rf = reference_temperatures({HarmonicTrap{}, 10}, 100.0, 2);
  EXPECT_NEAR(*rf.tf_harmonic, std::cbrt(300.0), 1e-12);
  EXPECT_NEAR(*rf.tf_harmonic, 6.694, 0.0005);

  const auto r1 = reference_temperatures({HarmonicTrap{1, {1}}, 10}, 100.0);
  EXPECT_NEAR(*r1.tc_1d_harmonic, 100.0 / std::log(200.0), 1e-12);
  EXPECT_NEAR(*r1.tc_1d_harmonic, 18.87, 0.005);
  EXPECT_THROW(reference_temperatures({HarmonicTrap{1, {1}}, 10}, 0.4), UsageError);

  const auto r2 = reference_temperatures({HarmonicTrap{2, {1, 4}}, 10}, 100.0);
  EXPECT_NEAR(*r2.tc_2d_harmonic, 2.0 * std::sqrt(100.0 / (std::numbers::pi * std::numbers::pi / 6)), 1e-12);
}

TEST(ReferenceTemperatures, AnisotropicUsesGeometricMean) {
  const auto r = reference_temperatures({HarmonicTrap{3, {1, 2, 4}}, 10}, 1e3);
  EXPECT_NEAR(*r.tc_3d_harmonic, 2.0 * std::cbrt(1e3 / 1.2020569031595942), 1e-12);
}

TEST(ReferenceTemperatures, Box) {
  const auto r = reference_temperatures({PeriodicBox{}, 10}, 1e4, 1);
  ASSERT_TRUE(r.tc_3d_box);
  EXPECT_NEAR(*r.tc_3d_box, std::pow(1e4 / 2.6123753486854883, 2.0 / 3.0) / std::numbers::pi, 1e-10);
  EXPECT_NEAR(*r.tf_box, std::pow(3e4 / (4 * std::numbers::pi), 2.0 / 3.0), 1e-10);
  EXPECT_FALSE(r.tc_3d_harmonic);
}

TEST(FractureLocator, SyntheticSlopeBreak) {
  const auto T = uniform_grid(0.5, 1.5, 41);
  std::vector<double> d;
  for (double t : T) d.push_back(t < 0.9 ? 2.0 * t : 1.8 - 0.5 * (t - 0.9));
  // Small smooth background so the median is not zero.
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += 1e-3 * T[i] * T[i];
  const auto k = fracture_locator(T, d);
  EXPECT_NEAR(k.T, 0.9, 0.5 * (T[1] - T[0]) + 1e-12);
  EXPECT_TRUE(k.detected);
  EXPECT_GT(k.ratio(), 3.0);
}

TEST(FractureLocator, SmoothCurveHasNoKink) {
  const auto T = uniform_grid(0.5, 1.5, 60);
  std::vector<double> d;
  for (double t : T) d.push_back(std::sin(t));
  EXPECT_FALSE(fracture_locator(T, d).detected);
}

TEST(FractureLocator, EdgeMaximumIsNotAKink) {
  const auto T = uniform_grid(0.0, 1.0, 30);
  std::vector<double> d;
  for (double t : T) d.push_back(std::exp(-20.0 * t));
  const auto k = fracture_locator(T, d);
  EXPECT_LT(k.index, 3u);
  EXPECT_FALSE(k.detected);
  EXPECT_TRUE(fracture_locator(T, d, {3.0, 0}).detected);
}

TEST(FractureLocator, Errors) {
  const auto T = uniform_grid(0.0, 1.0, 6);
  const std::vector<double> d(6, 0.0);
  EXPECT_THROW(fracture_locator(T, d), UsageError);
}

TEST(ScalingExponent, ExactPowerLaw) {
  CapacityCurve c;
  for (double T : uniform_grid(0.5, 3.0, 30)) c.samples.push_back({.T = T, .capacity_bits = 1.7 * std::pow(T, 2.37)});
  EXPECT_NEAR(scaling_exponent(c, 0.5, 3.0), 2.37, 1e-12);
  EXPECT_NEAR(scaling_exponent(c, 1.0, 2.0), 2.37, 1e-12);
  EXPECT_THROW(scaling_exponent(c, 10.0, 20.0), UsageError);
  EXPECT_THROW(scaling_exponent(c, 0.5, 0.6), UsageError);
  c.samples[3].capacity_bits = 0.0;
  EXPECT_THROW(scaling_exponent(c, 0.5, 3.0), DomainError);
}

TEST(FermionCurves, DerivativeHasNoKink) {
  const auto l = harmonic(3, 300);
  const double tf = *reference_temperatures({HarmonicTrap{}, 300}, 100.0, 2).tf_harmonic;
  const auto grid = uniform_grid(0.05 * tf, 2.0 * tf, 200);
  for (int g : {1, 2}) {
    const auto curve = capacity_curve(l, Species::fermion(g), 100.0, grid, tf);
    const auto T = curve.temperatures();
    const auto C = curve.capacities();
    const auto d = derivative_curve(T, C);
    const auto k = fracture_locator(d.x, d.dfdx);
    EXPECT_FALSE(k.detected) << "g=" << g << " ratio " << k.ratio() << " at T/Tf " << k.T / tf;
  }
}

// Sign of the slope of df/dT over nodes with lo <= T/T_ref < hi: +1 all
// increasing, -1 all decreasing, 0 mixed.
int slope_sign(const DerivativeCurve& d, double T_ref, double lo, double hi) {
  int pos = 0, neg = 0;
  for (std::size_t i = 1; i < d.x.size(); ++i) {
    const double t = d.x[i] / T_ref;
    if (t < lo || t >= hi) continue;
    (d.dfdx[i] > d.dfdx[i - 1] ? pos : neg)++;
  }
  return neg == 0 ? 1 : pos == 0 ? -1 : 0;
}

TEST(BosonCurves, CapacityConvexBelowConcaveAboveCondensation) {
  const double N = 1e4;
  const double tc = *reference_temperatures({HarmonicTrap{}, 300}, N).tc_3d_harmonic;
  const auto grid = uniform_grid(0.1 * tc, 1.6 * tc, 200);
  const auto curve = capacity_curve(harmonic(3, 300), Species::boson(), N, grid, tc);
  const auto T = curve.temperatures();
  const auto C = curve.capacities();
  const auto d = derivative_curve(T, C);
  EXPECT_EQ(slope_sign(d, tc, 0.1, 0.9), 1);
  EXPECT_EQ(slope_sign(d, tc, 0.97, 1.6), -1);
}

TEST(BosonCurves, EnergyConvexBelowConcaveAboveCondensation) {
  const double N = 500;
  const double tc = *reference_temperatures({HarmonicTrap{}, 300}, N).tc_3d_harmonic;
  const auto grid = uniform_grid(0.2 * tc, 1.6 * tc, 200);
  const auto curve = capacity_curve(harmonic(3, 300), Species::boson(), N, grid, tc);
  const auto T = curve.temperatures();
  const auto E = curve.energies();
  const auto d = derivative_curve(T, E);
  EXPECT_EQ(slope_sign(d, tc, 0.2, 0.8), 1);
  EXPECT_EQ(slope_sign(d, tc, 0.97, 1.6), -1);
}

}  // namespace
}  // namespace gascap
