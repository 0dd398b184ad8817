#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gascap/errors.hpp"
#include "gascap/oracle.hpp"
#include "gascap/statmech.hpp"
#include "test_support.hpp"

namespace gascap {
namespace {

const LevelList kOne({{0.0, 1}});

TEST(Enumerate, SingleBosonWeights) {
  const auto t = oracle::enumerate(kOne, Species::boson(), 1.0, Fugacity::from_value(0.5), 2);
  const auto w = t.weights();
  ASSERT_EQ(w.size(), 3u);
  EXPECT_NEAR(w[0], 1.0, 1e-15);
  EXPECT_NEAR(w[1], 0.5, 1e-15);
  EXPECT_NEAR(w[2], 0.25, 1e-15);
}

TEST(Enumerate, SingleFermionWeights) {
  const auto t = oracle::enumerate(kOne, Species::fermion(1), 1.0, Fugacity::from_value(1.0), 60);
  const auto w = t.weights();
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(t.truncation, 1);
  EXPECT_NEAR(w[0], 1.0, 1e-15);
  EXPECT_NEAR(w[1], 1.0, 1e-15);
}

TEST(Enumerate, TableSize) {
  const LevelList two({{0.0, 1}, {0.5, 1}});
  for (int M : {1, 3, 7})
    EXPECT_EQ(oracle::enumerate(two, Species::boson(), 1.0, Fugacity::from_value(0.2), M).entries.size(),
              static_cast<std::size_t>((M + 1) * (M + 1)));
  EXPECT_EQ(oracle::enumerate(LevelList({{0.0, 2}}), Species::fermion(3), 1.0, Fugacity::from_value(0.2), 9).entries.size(), 64u);
}

TEST(Enumerate, Guards) {
  EXPECT_THROW(oracle::enumerate(LevelList({{0.0, 7}}), Species::boson(), 1.0, Fugacity::from_value(0.2), 2), UsageError);
  EXPECT_THROW(oracle::enumerate(LevelList({{0.0, 4}}), Species::fermion(2), 1.0, Fugacity::from_value(0.2), 1), UsageError);
  EXPECT_THROW(oracle::enumerate(kOne, Species::boson(), 1.0, Fugacity::from_value(0.2), 0), UsageError);
}

TEST(BruteForce, ClosedFormSingleModes) {
  const auto f = oracle::enumerate(kOne, Species::fermion(1), 1.0, Fugacity::from_value(1.0), 1);
  EXPECT_NEAR(oracle::brute_force_entropy_bits(f), 1.0, 1e-15);
  const auto fm = oracle::brute_force_moments(f);
  EXPECT_NEAR(fm.mean_n, 0.5, 1e-15);
  EXPECT_NEAR(fm.log_norm, std::numbers::ln2, 1e-15);

  // Geometric distribution with mean 1; M = 200 leaves a 2^-200 tail.
  const auto b = oracle::enumerate(kOne, Species::boson(), 1.0, Fugacity::from_value(0.5), 200);
  EXPECT_NEAR(oracle::brute_force_entropy_bits(b), 2.0, 1e-13);
  EXPECT_NEAR(oracle::brute_force_moments(b).mean_n, 1.0, 1e-13);
}

TEST(BruteForce, ThreeBosonSublevelsWithinTailBound) {
  const LevelList l({{0.0, 1}, {0.4, 1}, {1.3, 1}});
  const double beta = 1.1;
  const auto z = Fugacity::from_value(0.3);
  const auto t = oracle::enumerate(l, Species::boson(), beta, z, 60);
  EXPECT_LE(std::abs(oracle::brute_force_entropy_bits(t) - entropy_bits(l, Species::boson(), beta, z)), 1e-10);
}

TEST(BruteForce, FermionsExact) {
  testing::Gen gen(71);
  for (int i = 0; i < 100; ++i) {
    const int g = gen.integer(1, 2);
    const auto l = gen.small_spectrum(6 / g, gen.uniform(-1.0, 1.0));
    const double beta = gen.log_uniform(0.1, 5.0);
    const auto z = Fugacity::from_log(gen.uniform(-4.0, 4.0));
    const Species sp = Species::fermion(g);
    const auto t = oracle::enumerate(l, sp, beta, z, 1);
    const auto m = oracle::brute_force_moments(t);
    EXPECT_LE(testing::rel_diff(oracle::brute_force_entropy_bits(t), entropy_bits(l, sp, beta, z)), 1e-13);
    EXPECT_LE(testing::rel_diff(m.mean_n, total_number(l, sp, beta, z)), 1e-13);
    EXPECT_LE(testing::rel_diff(m.log_norm, log_partition(l, sp, beta, z)), 1e-13);
    const double e = total_energy(l, sp, beta, z);
    EXPECT_LE(std::abs(m.mean_e - e), 1e-13 * std::max(1.0, std::abs(e)));
  }
}

TEST(BruteForce, BosonGapShrinksWithTruncation) {
  testing::Gen gen(81);
  for (int i = 0; i < 30; ++i) {
    const auto l = gen.small_spectrum(2);
    const double beta = gen.log_uniform(0.2, 3.0);
    const double q = gen.uniform(0.3, 0.8);  // largest z e^{-beta eps}
    const auto z = Fugacity::from_log(std::log(q) + beta * l.ground().energy);
    const double exact = entropy_bits(l, Species::boson(), beta, z);
    double prev = 0.0;
    for (int M : {2, 5, 10, 20, 40, 80}) {
      const double h = oracle::brute_force_entropy_bits(oracle::enumerate(l, Species::boson(), beta, z, M));
      // Geometric-tail estimate: each of at most 2 modes loses O(M q^{M+1}) bits.
      const double tail = 2.0 * (M + 2) * std::pow(q, M + 1) * std::log2(2.0 / (1.0 - q)) / (1.0 - q);
      const double roundoff = 1e-13 * exact;
      if (exact - prev > roundoff) EXPECT_GT(h, prev) << "M=" << M;
      EXPECT_LE(exact - h, tail + roundoff) << "M=" << M << " q=" << q;
      EXPECT_GE(exact - h, -1e-13);
      prev = h;
    }
  }
}

TEST(BruteForce, IndependentModesFactorize) {
  testing::Gen gen(91);
  for (int i = 0; i < 50; ++i) {
    const double e1 = gen.uniform(0.0, 1.0), e2 = e1 + gen.uniform(0.1, 2.0);
    const double beta = gen.log_uniform(0.3, 3.0);
    for (const auto& sp : {Species::boson(), Species::fermion(1)}) {
      const auto z = Fugacity::from_log(sp.is_boson_like() ? beta * e1 + std::log(gen.uniform(0.05, 0.5)) : gen.uniform(-3, 3));
      const int M = 30;
      const double both = oracle::brute_force_entropy_bits(oracle::enumerate(LevelList({{e1, 1}, {e2, 1}}), sp, beta, z, M));
      const double a = oracle::brute_force_entropy_bits(oracle::enumerate(LevelList({{e1, 1}}), sp, beta, z, M));
      const double b = oracle::brute_force_entropy_bits(oracle::enumerate(LevelList({{e2, 1}}), sp, beta, z, M));
      EXPECT_NEAR(both, a + b, 1e-13 * both);
    }
  }
}

TEST(BruteForce, PhotonlikeUsesAbsoluteEnergies) {
  const auto l = shift_to_zero(LevelList({{1.0, 1}, {2.0, 1}}));
  const double beta = std::numbers::ln2;
  const auto t = oracle::enumerate(l, Species::photonlike(), beta, Fugacity::from_value(1.0), 80);
  const auto h = [](double n) { return (1 + n) * std::log2(1 + n) - n * std::log2(n); };
  EXPECT_NEAR(oracle::brute_force_entropy_bits(t), h(1.0) + h(1.0 / 3.0), 1e-12);
  EXPECT_NEAR(oracle::brute_force_moments(t).mean_e, 1.0 * 1.0 + 2.0 / 3.0, 1e-12);
}

}  // namespace
}  // namespace gascap
