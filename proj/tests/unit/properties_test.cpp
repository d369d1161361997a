#include <gtest/gtest.h>

#include "npspace/catalog.hpp"
#include "npspace/level_table.hpp"
#include "npspace/npnorm.hpp"
#include "npspace/random.hpp"

// Seeded randomized properties: each test sweeps a fixed list of seeds.

namespace npspace {
namespace {

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 5, 8, 13, 21, 34};

OptBudget budget() {
  OptBudget b;
  b.restarts = 6;
  return b;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Properties, RealizeIsLinear) {
  for (std::uint64_t seed : kSeeds) {
    Rng rng(seed);
    const SpacePtr v = random_subspace(3, 1 + static_cast<int>(seed % 9), seed);
    const int n = 1 + static_cast<int>(seed % 4);
    const SpaceElement x = SpaceElement::random(v, n, rng);
    const SpaceElement y = SpaceElement::random(v, n, rng);
    const cdouble a = random_gaussian(rng, 1, 1)(0, 0);
    const cdouble b = random_gaussian(rng, 1, 1)(0, 0);
    const Matrix lhs = realize(a * x + b * y);
    const Matrix rhs = a * realize(x) + b * realize(y);
    EXPECT_LE(max_abs(lhs - rhs), 1e-12 * max_abs(rhs)) << seed;
  }
}

TEST(Properties, PaddingKeepsNorm) {
  for (std::uint64_t seed : kSeeds) {
    Rng rng(seed);
    const SpaceElement x = SpaceElement::random(random_subspace(2, 3, seed), 1 + static_cast<int>(seed % 3), rng);
    const double before = level_norm(x);
    EXPECT_NEAR(level_norm(pad(x)), before, 1e-12 * before);
    EXPECT_NEAR(level_norm(pad(x, 3)), before, 1e-12 * before);
  }
}

TEST(Properties, LevelNormIsHomogeneousAndSubadditive) {
  for (std::uint64_t seed : kSeeds) {
    Rng rng(seed);
    const SpacePtr v = full_matrix_space(2);
    const SpaceElement x = SpaceElement::random(v, 2, rng);
    const SpaceElement y = SpaceElement::random(v, 2, rng);
    const cdouble c(0.5 * static_cast<double>(seed), -1.0);
    EXPECT_NEAR(level_norm(c * x), std::abs(c) * level_norm(x), 1e-12 * std::abs(c) * level_norm(x));
    EXPECT_LE(level_norm(x + y), level_norm(x) + level_norm(y) + 1e-12);
  }
}

TEST(Properties, NpNormIsHomogeneous) {
  const cdouble c(-1.5, 2.0);
  for (const char* name : {"transpose_M2", "trace_M2", "schur_M2", "rank_one_M2"}) {
    const MapPtr phi = find_entry(name).map;
    const LevelNormTable a = build_level_table(phi, 2, budget());
    const LevelNormTable b = build_level_table(scale(*phi, c), 2, budget());
    for (double p : {1.5, 2.0, 3.0}) {
      const Interval ra = np_norm(a, NpParameter(p)).bracket;
      const Interval rb = np_norm(b, NpParameter(p)).bracket;
      EXPECT_NEAR(rb.lo, std::abs(c) * ra.lo, 1e-12 * rb.lo) << name << " p=" << p;
      EXPECT_NEAR(rb.hi, std::abs(c) * ra.hi, 1e-12 * rb.hi) << name << " p=" << p;
    }
  }
}

TEST(Properties, NpNormTriangleInequality) {
  const std::vector<std::vector<const char*>> families = {
      {"identity_M2", "transpose_M2", "schur_M2", "zero_M2"},
      {"trace_M2", "rank_one_M2"},
  };
  for (const auto& family : families) {
    for (const char* f : family) {
      for (const char* g : family) {
        const MapPtr phi = find_entry(f).map;
        const MapPtr psi = find_entry(g).map;
        const MapPtr sum = add(*phi, *psi);
        for (double p : {1.5, 2.0, 3.5}) {
          const double lhs = np_norm(build_level_table(sum, 2, budget()), NpParameter(p)).bracket.lo;
          const double rhs = np_norm(build_level_table(phi, 2, budget()), NpParameter(p)).bracket.hi +
                             np_norm(build_level_table(psi, 2, budget()), NpParameter(p)).bracket.hi;
          EXPECT_LE(lhs, rhs + 1e-8) << f << " + " << g << " p=" << p;
        }
      }
    }
  }
}

TEST(Properties, RandomMapTablesAreConsistent) {
  for (std::uint64_t seed : kSeeds) {
    const MapPtr phi = random_map(2, seed);
    const LevelNormTable t = build_level_table(phi, 3, budget());
    for (int n = 1; n <= 3; ++n) {
      const LevelEstimate& e = t.entries[n - 1];
      EXPECT_LE(e.bracket.lo, e.bracket.hi);
      EXPECT_LE(e.bracket.hi, n * t.bracket(1).hi * (1 + 1e-12));
      ASSERT_TRUE(e.witness.has_value());
      EXPECT_GE(level_norm(amplify(*phi, *e.witness)), e.optimizer_value * (1 - 1e-12));
    }
  }
}

TEST(Properties, InclusionOnRandomMaps) {
  for (std::uint64_t seed : kSeeds) {
    const LevelNormTable t = build_level_table(random_map(2, seed), 2, budget());
    for (const auto& [p, q] : {std::pair{1.2, 1.7}, std::pair{2.0, 2.0}, std::pair{2.1, 6.0}}) {
      EXPECT_TRUE(inclusion_check(t, p, q, std::nullopt, 1e-8).passed()) << seed << " " << p << "," << q;
    }
  }
}

}  // namespace
}  // namespace npspace
