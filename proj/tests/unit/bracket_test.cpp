#include <gtest/gtest.h>

#include "npspace/bracket.hpp"
#include "npspace/errors.hpp"

namespace npspace {
namespace {

TEST(NormBracket, DefaultIsUnbounded) {
  const NormBracket b;
  EXPECT_EQ(b.lo, 0.0);
  EXPECT_EQ(b.hi, kInf);
  EXPECT_FALSE(b.is_exact());
}

TEST(NormBracket, ZeroIsExact) {
  const NormBracket z = NormBracket::zero();
  EXPECT_TRUE(z.is_exact());
  EXPECT_EQ(z.lo_source, BoundSource::trivial_zero);
  EXPECT_EQ(z.hi_source, BoundSource::trivial_zero);
}

TEST(NormBracket, RaiseAndLowerRecordSources) {
  NormBracket b;
  EXPECT_TRUE(b.raise_lo(1.5, BoundSource::optimizer));
  EXPECT_FALSE(b.raise_lo(1.0, BoundSource::monotonicity));
  EXPECT_EQ(b.lo_source, BoundSource::optimizer);
  EXPECT_TRUE(b.lower_hi(3.0, BoundSource::n_times_norm_bound));
  EXPECT_TRUE(b.lower_hi(2.0, BoundSource::cb_cap));
  EXPECT_FALSE(b.lower_hi(2.5, BoundSource::smith_stabilization));
  EXPECT_EQ(b.hi, 2.0);
  EXPECT_EQ(b.hi_source, BoundSource::cb_cap);
}

TEST(NormBracket, ExactMeansRelativeWidth) {
  NormBracket b{2.0, 2.0 + 1e-9, BoundSource::optimizer, BoundSource::cb_cap};
  EXPECT_TRUE(b.is_exact());
  b.hi = 2.0 + 1e-8;
  EXPECT_FALSE(b.is_exact());
  EXPECT_TRUE(b.is_tight(1e-8));
}

TEST(NormBracket, ValidateRepairsNoiseAndRejectsCrossing) {
  NormBracket noisy{1.0 + 1e-14, 1.0, BoundSource::optimizer, BoundSource::cb_cap};
  noisy.validate();
  EXPECT_EQ(noisy.lo, noisy.hi);

  NormBracket crossed{1.1, 1.0, BoundSource::optimizer, BoundSource::cb_cap};
  EXPECT_THROW(crossed.validate(), InvariantViolation);

  NormBracket negative{-1.0, 1.0, BoundSource::optimizer, BoundSource::cb_cap};
  EXPECT_THROW(negative.validate(), InvariantViolation);
}

TEST(NormBracket, ScaledMultipliesBothEnds) {
  const NormBracket b{1.0, 2.0, BoundSource::optimizer, BoundSource::cb_cap};
  const NormBracket s = b.scaled(3.0);
  EXPECT_DOUBLE_EQ(s.lo, 3.0);
  EXPECT_DOUBLE_EQ(s.hi, 6.0);
}

TEST(BoundSource, NamesRoundTrip) {
  for (BoundSource s : {BoundSource::exact_svd, BoundSource::optimizer, BoundSource::n_times_norm_bound,
                        BoundSource::smith_stabilization, BoundSource::cb_cap, BoundSource::monotonicity,
                        BoundSource::trivial_zero, BoundSource::coeff_relaxation}) {
    EXPECT_EQ(bound_source_from_string(to_string(s)), s);
  }
  EXPECT_THROW(bound_source_from_string("guess"), ParseError);
}

}  // namespace
}  // namespace npspace
