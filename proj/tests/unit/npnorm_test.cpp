#include <gtest/gtest.h>

#include <cmath>

#include "npspace/catalog.hpp"
#include "npspace/errors.hpp"
#include "npspace/level_table.hpp"
#include "npspace/npnorm.hpp"
#include "zeta_oracle.hpp"

namespace npspace {
namespace {

using testing::zeta_oracle;
using testing::zeta_tail_oracle;

OptBudget budget() {
  OptBudget b;
  b.restarts = 6;
  return b;
}

LevelNormTable table_of(const MapPtr& phi, int levels = 0) {
  return build_level_table(phi, levels > 0 ? levels : phi->codomain()->ambient_dim(), budget());
}

bool overlaps(const Interval& a, const testing::Enclosure& b) { return a.lo <= b.hi && b.lo <= a.hi; }

TEST(NpParameter, RejectsOutOfRange) {
  EXPECT_THROW(NpParameter{0.5}, InvalidParameter);
  EXPECT_THROW(NpParameter{std::nan("")}, InvalidParameter);
  EXPECT_THROW(NpParameter{kInf}, InvalidParameter);
  EXPECT_EQ(NpParameter(1.0).value(), 1.0);
}

TEST(ZetaTail, FullSumAtTwoContainsZeta2) {
  const Interval full = zeta_tail(2.0, 0);
  const testing::Enclosure ref = zeta_oracle(2.0);
  EXPECT_TRUE(full.contains(ref.mid()));
  EXPECT_TRUE(overlaps(full, ref));
  EXPECT_TRUE(full.contains(1.6449340668482264));
}

TEST(ZetaTail, PThreeFromOne) {
  const Interval tail = zeta_tail(3.0, 1);
  const testing::Enclosure ref = zeta_tail_oracle(3.0, 1);
  EXPECT_TRUE(tail.contains(ref.mid()));
  EXPECT_NEAR(ref.mid(), 0.2020569, 1e-7);
}

TEST(ZetaTail, ShrinksToZero) {
  double previous_width = kInf;
  for (long k : {10L, 100L, 1000L, 10000L}) {
    const Interval t = zeta_tail(2.0, k);
    EXPECT_LT(t.width(), previous_width);
    EXPECT_LE(t.hi, 1.0 / static_cast<double>(k));
    previous_width = t.width();
  }
  EXPECT_LT(zeta_tail(2.0, 10000).hi, 1.0001e-4);
}

TEST(ZetaTail, EnclosesOracleOverGrid) {
  for (double p : {1.05, 1.5, 2.0, 2.5, 3.0, 4.0, 7.5}) {
    for (long k : {0L, 1L, 2L, 5L, 17L, 64L, 256L}) {
      const Interval t = zeta_tail(p, k);
      const testing::Enclosure ref = zeta_tail_oracle(p, k);
      EXPECT_TRUE(overlaps(t, ref)) << "p=" << p << " K=" << k;
      EXPECT_LE(t.lo, t.hi);
    }
  }
}

TEST(ZetaTail, DivergentIsInfinite) {
  EXPECT_EQ(zeta_tail(1.0, 5).hi, kInf);
  EXPECT_EQ(zeta_tail(0.5, 5).lo, kInf);
  EXPECT_THROW(zeta_tail(2.0, -1), InvalidParameter);
}

TEST(ZetaEnclosure, MatchesOracle) {
  for (double p : {2.0, 3.0, 4.5}) {
    const Interval z = zeta_enclosure(p, 64);
    EXPECT_TRUE(overlaps(z, zeta_oracle(p))) << p;
    EXPECT_LE(z.width(), 1e-9);
  }
}

TEST(NpNorm, ZeroMapIsZero) {
  const LevelNormTable t = table_of(zero_map(2));
  for (double p : {1.0, 1.5, 3.0}) {
    const NpResult r = np_norm(t, NpParameter(p));
    EXPECT_EQ(r.bracket.lo, 0.0);
    EXPECT_EQ(r.bracket.hi, 0.0);
    EXPECT_EQ(r.verdict, Verdict::member);
    EXPECT_EQ(r.closed_form, ClosedForm::zero);
  }
}

TEST(NpNorm, IdentityAtTwoIsZeta2) {
  const NpResult r = np_norm(table_of(identity_map(2)), NpParameter(2.0));
  EXPECT_TRUE(overlaps(r.bracket, zeta_oracle(2.0)));
  EXPECT_EQ(r.verdict, Verdict::member);
  EXPECT_EQ(r.closed_form, ClosedForm::stabilized);
  EXPECT_EQ(r.truncation, 64);
}

TEST(NpNorm, TransposeAtThree) {
  const NpResult r = np_norm(table_of(transpose_map(2), 4), NpParameter(3.0));
  const testing::Enclosure z = zeta_tail_oracle(3.0, 1);
  const double expected = 1.0 + 2.0 * z.mid();
  EXPECT_NEAR(expected, 1.4041139, 1e-7);
  EXPECT_TRUE(r.bracket.contains(expected));
  EXPECT_LE(r.bracket.width(), 1e-5 * expected);
}

TEST(NpNorm, TraceFunctionalIsNormTimesZeta) {
  const LevelNormTable t = table_of(trace_functional(2));
  for (double p : {2.0, 3.0}) {
    const NpResult r = np_norm(t, NpParameter(p));
    const testing::Enclosure z = zeta_oracle(p);
    EXPECT_TRUE(r.bracket.lo <= 2.0 * z.hi * (1 + 1e-12) && 2.0 * z.lo <= r.bracket.hi * (1 + 1e-12)) << p;
    EXPECT_EQ(r.closed_form, ClosedForm::functional);
  }
}

TEST(NpNorm, BracketDecomposesIntoPartialAndTail) {
  const NpResult r = np_norm(table_of(transpose_map(3)), NpParameter(2.5), 40);
  EXPECT_EQ(r.truncation, 40);
  EXPECT_LE(r.partial.lo + r.tail_lo, r.bracket.lo * (1 + 1e-15));
  EXPECT_GE(r.partial.hi + r.tail_hi, r.bracket.hi * (1 - 1e-15));
  EXPECT_GE(r.tail_lo, 0.0);
}

TEST(NpNorm, PEqualsOneDiverges) {
  const NpResult r = np_norm(table_of(identity_map(2)), NpParameter(1.0));
  EXPECT_EQ(r.verdict, Verdict::not_member);
  ASSERT_TRUE(r.divergence_proof.has_value());
  EXPECT_NE(r.divergence_proof->find("diverges"), std::string::npos);
  EXPECT_EQ(r.bracket.hi, kInf);
}

TEST(NpNorm, TableTooShortWithoutStabilization) {
  const LevelNormTable t = table_of(transpose_map(3), 2);
  EXPECT_THROW(np_norm(t, NpParameter(2.0), 5), InsufficientTable);
  EXPECT_NO_THROW(np_norm(t, NpParameter(2.0), 2));
}

TEST(NpNorm, RefinesMonotonicallyInK) {
  const LevelNormTable t = table_of(schur_multiplier((Matrix(2, 2) << 1.0, 1.0, 1.0, -1.0).finished()));
  Interval previous{0.0, kInf};
  for (long k : {1L, 2L, 4L, 8L, 16L, 64L, 256L}) {
    const NpResult r = np_norm(t, NpParameter(2.2), k);
    EXPECT_GE(r.bracket.lo, previous.lo) << k;
    EXPECT_LE(r.bracket.hi, previous.hi) << k;
    previous = r.bracket;
  }
}

TEST(NpNorm, StabilizedUpperBoundAtMostCbTimesZeta) {
  for (const auto& e : list_entries()) {
    const LevelNormTable t = table_of(e.map);
    if (!t.stabilized()) continue;
    for (double p : {1.5, 2.0, 3.0}) {
      const NpResult r = np_norm(t, NpParameter(p));
      const double bound = t.stable_bracket().hi * zeta_oracle(p).hi;
      EXPECT_LE(r.bracket.hi, bound + 1e-9) << e.name << " p=" << p;
    }
  }
}

TEST(Membership, AboveTwoByTheory) {
  const LevelNormTable t = table_of(transpose_map(2));
  EXPECT_EQ(membership(t, NpParameter(2.5)).verdict, Verdict::member_by_theory);
  EXPECT_EQ(np_norm(t, NpParameter(2.5)).verdict, Verdict::member_by_theory);
}

TEST(Membership, StabilizedBetweenOneAndTwo) {
  EXPECT_EQ(membership(table_of(transpose_map(2)), NpParameter(1.5)).verdict, Verdict::member);
}

TEST(Membership, PEqualsOneNotMember) {
  EXPECT_EQ(membership(table_of(identity_map(2)), NpParameter(1.0)).verdict, Verdict::not_member);
  EXPECT_EQ(membership(table_of(zero_map(2)), NpParameter(1.0)).verdict, Verdict::member);
}

TEST(Membership, FullCodomainMeansMemberForEveryPAboveOne) {
  for (const auto& e : list_entries()) {
    if (!e.map->codomain()->is_full()) continue;
    const LevelNormTable t = table_of(e.map);
    for (double p : {1.01, 1.5, 2.0, 2.5}) {
      const Verdict v = membership(t, NpParameter(p)).verdict;
      EXPECT_TRUE(v == Verdict::member || v == Verdict::member_by_theory) << e.name << " p=" << p;
    }
  }
}

TEST(Membership, UnknownWithoutAnyCertificate) {
  LevelNormTable t;
  t.label = "growing";
  for (int n = 1; n <= 3; ++n) {
    LevelEstimate e;
    e.level = n;
    e.bracket = {static_cast<double>(n), static_cast<double>(n), BoundSource::optimizer, BoundSource::optimizer};
    t.entries.push_back(e);
  }
  EXPECT_EQ(membership(t, NpParameter(1.5)).verdict, Verdict::unknown);
  EXPECT_EQ(membership(t, NpParameter(2.5)).verdict, Verdict::member_by_theory);
}

TEST(GrowthCertificate, DetectsSlowGrowth) {
  LevelNormTable t;
  for (int n = 1; n <= 8; ++n) {
    LevelEstimate e;
    e.level = n;
    e.bracket = {0.5, 0.5, BoundSource::optimizer, BoundSource::optimizer};
    t.entries.push_back(e);
  }
  t.uniform_hi = 0.5;
  EXPECT_TRUE(growth_certificate(t, 1.5, 0.1));
  EXPECT_FALSE(growth_certificate(t, 1.5, 0.0));
  EXPECT_EQ(membership(t, NpParameter(1.5)).verdict, Verdict::member);
}

TEST(IndexEstimate, SyntheticLinearGivesTwo) {
  std::vector<std::pair<int, double>> seq;
  for (int n = 1; n <= 16; ++n) seq.emplace_back(n, static_cast<double>(n));
  const IndexEstimate e = index_estimate(seq);
  EXPECT_NEAR(e.r_hat, 2.0, 1e-12);
  EXPECT_NEAR(e.alpha_hat, 1.0, 1e-12);
  EXPECT_EQ(e.fit_first, 9);
  EXPECT_EQ(e.fit_last, 16);
  EXPECT_LT(e.residual, 1e-12);
}

TEST(IndexEstimate, SyntheticConstantGivesOne) {
  std::vector<std::pair<int, double>> seq;
  for (int n = 1; n <= 10; ++n) seq.emplace_back(n, 3.5);
  EXPECT_NEAR(index_estimate(seq).r_hat, 1.0, 1e-12);
}

TEST(IndexEstimate, StabilizedTableIsOne) {
  const IndexEstimate e = index_estimate(table_of(transpose_map(2), 4));
  EXPECT_EQ(e.r_hat, 1.0);
  EXPECT_EQ(e.alpha_hat, 0.0);
  EXPECT_TRUE(e.stabilized);
}

TEST(IndexEstimate, NeedsThreePoints) {
  const std::vector<std::pair<int, double>> two = {{1, 1.0}, {2, 2.0}};
  EXPECT_THROW(index_estimate(two), InsufficientData);
  const std::vector<std::pair<int, double>> with_zero = {{1, 1.0}, {2, 0.0}, {3, 1.0}};
  EXPECT_THROW(index_estimate(with_zero), InsufficientData);
}

TEST(Inclusion, IdentityZeta3BelowZeta2) {
  const InclusionReport r = inclusion_check(table_of(identity_map(2)), 2.0, 3.0);
  EXPECT_TRUE(r.passed());
  ASSERT_TRUE(r.value_ok.has_value());
  EXPECT_TRUE(*r.value_ok);
  EXPECT_TRUE(overlaps(r.at_q.bracket, zeta_oracle(3.0)));
}

TEST(Inclusion, TransposeAndZero) {
  EXPECT_TRUE(inclusion_check(table_of(transpose_map(2)), 2.5, 4.0).passed());
  const InclusionReport z = inclusion_check(table_of(zero_map(2)), 1.5, 7.0);
  EXPECT_TRUE(z.passed());
  EXPECT_EQ(z.at_p.bracket.hi, 0.0);
}

TEST(Inclusion, RejectsReversedExponents) {
  EXPECT_THROW(inclusion_check(table_of(identity_map(2)), 3.0, 2.0), InvalidParameter);
}

}  // namespace
}  // namespace npspace
