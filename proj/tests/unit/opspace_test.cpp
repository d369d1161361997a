#include <gtest/gtest.h>

#include "npspace/catalog.hpp"
#include "npspace/errors.hpp"
#include "npspace/opspace.hpp"
#include "npspace/random.hpp"
#include "substitution.hpp"

namespace npspace {
namespace {

const Matrix kI2 = Matrix::Identity(2, 2);

TEST(MakeSpace, SingleIdentityIsOneDimensional) {
  const SpacePtr v = make_space(2, {kI2}, "span{I2}");
  EXPECT_EQ(v->dim(), 1);
  EXPECT_EQ(v->ambient_dim(), 2);
  EXPECT_FALSE(v->is_full());
  EXPECT_EQ(v->label(), "span{I2}");
}

TEST(MakeSpace, ColinearPairIsDependent) {
  EXPECT_THROW(make_space(2, {kI2, 2.0 * kI2}, "bad"), DependentBasis);
}

TEST(MakeSpace, NearlyDependentBasisIsRejected) {
  Matrix almost = kI2;
  almost(0, 1) = 1e-12;
  EXPECT_THROW(make_space(2, {kI2, almost}, "bad"), DependentBasis);
}

TEST(MakeSpace, MatrixUnitsGiveFullSpace) {
  const SpacePtr v = make_space(2, {matrix_unit(2, 0, 0), matrix_unit(2, 0, 1), matrix_unit(2, 1, 0),
                                    matrix_unit(2, 1, 1)},
                                "M2");
  EXPECT_EQ(v->dim(), 4);
  EXPECT_TRUE(v->is_full());
  EXPECT_TRUE(same_space(*v, *full_matrix_space(2)));
}

TEST(MakeSpace, WrongShapeAndEmptyBasis) {
  EXPECT_THROW(make_space(2, {Matrix::Identity(3, 3)}, "bad"), DimensionMismatch);
  EXPECT_THROW(make_space(2, {}, "bad"), DimensionMismatch);
  EXPECT_THROW(make_space(0, {kI2}, "bad"), DimensionMismatch);
}

TEST(MakeSpace, BasisOrderIsKept) {
  const Matrix e12 = matrix_unit(2, 0, 1);
  const SpacePtr v = make_space(2, {e12, kI2}, "ordered");
  EXPECT_TRUE(v->basis()[0].isApprox(e12));
  EXPECT_TRUE(v->basis()[1].isApprox(kI2));
}

TEST(OperatorSpace, CoordinatesInvertRealize) {
  const SpacePtr v = random_subspace(3, 4, 11);
  Rng rng(5);
  const Vector c = random_gaussian(rng, 4, 1).col(0);
  const Matrix m = v->realize(c);
  EXPECT_LE((v->coordinates(m) - c).norm(), 1e-12 * c.norm());
  EXPECT_LE(v->distance(m), 1e-12 * m.norm());
  EXPECT_LE((v->project(m) - m).norm(), 1e-12 * m.norm());
}

TEST(OperatorSpace, ProjectionIsOrthogonal) {
  const SpacePtr v = make_space(2, {kI2}, "span{I2}");
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 5.0;
  const Matrix p = v->project(m);
  EXPECT_NEAR(std::abs(p(0, 0) - 3.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(p(0, 1)), 0.0, 1e-14);
  const cdouble inner = (m - p).cwiseProduct(kI2.conjugate()).sum();
  EXPECT_NEAR(std::abs(inner), 0.0, 1e-13);
}

TEST(OperatorSpace, IdentityCoordinatesOnlyWhenIdentityInSpace) {
  EXPECT_TRUE(full_matrix_space(2)->identity_coordinates().has_value());
  EXPECT_TRUE(make_space(2, {kI2}, "I")->identity_coordinates().has_value());
  EXPECT_FALSE(make_space(2, {matrix_unit(2, 0, 1)}, "E12")->identity_coordinates().has_value());
}

TEST(Realize, LevelOneIdentity) {
  const SpacePtr v = make_space(2, {kI2}, "span{I2}");
  const SpaceElement x(v, 1, Matrix::Ones(1, 1));
  EXPECT_TRUE(realize(x).isApprox(kI2));
}

TEST(Realize, DiagonalCoordinatesGiveBlockDiagonal) {
  const SpacePtr m2 = full_matrix_space(2);
  Rng rng(3);
  const SpaceElement v = SpaceElement::random(m2, 1, rng);
  const SpaceElement w = SpaceElement::random(m2, 1, rng);
  Matrix coords = Matrix::Zero(4, 4);
  coords.col(0) = v.coords().col(0);
  coords.col(3) = w.coords().col(0);
  const Matrix big = realize(SpaceElement(m2, 2, coords));
  EXPECT_TRUE(big.block(0, 0, 2, 2).isApprox(realize(v)));
  EXPECT_TRUE(big.block(2, 2, 2, 2).isApprox(realize(w)));
  EXPECT_EQ(big.block(0, 2, 2, 2).norm(), 0.0);
  EXPECT_EQ(big.block(2, 0, 2, 2).norm(), 0.0);
}

TEST(Realize, MatchesElementwiseSubstitution) {
  Rng rng(17);
  for (const SpacePtr& v : {full_matrix_space(3), random_subspace(3, 5, 2), make_space(2, {kI2}, "I")}) {
    for (int n = 1; n <= 4; ++n) {
      const SpaceElement x = SpaceElement::random(v, n, rng);
      const Matrix expected = testing::naive_realize(x);
      EXPECT_LE((realize(x) - expected).cwiseAbs().maxCoeff(), 1e-12 * expected.cwiseAbs().maxCoeff())
          << v->label() << " n=" << n;
    }
  }
}

TEST(LevelNorm, ZeroCoordsGiveZero) {
  EXPECT_EQ(level_norm(SpaceElement::zero(full_matrix_space(2), 3)), 0.0);
}

TEST(LevelNorm, DirectSumIsMaximum) {
  const SpacePtr v = random_subspace(2, 3, 4);
  Rng rng(8);
  const SpaceElement a = SpaceElement::random(v, 2, rng);
  const SpaceElement b = 3.0 * SpaceElement::random(v, 3, rng);
  const double expected = std::max(level_norm(a), level_norm(b));
  EXPECT_NEAR(level_norm(direct_sum(a, b)), expected, 1e-12 * expected);
}

TEST(LevelNorm, ScalarSandwichContracts) {
  const SpacePtr v = full_matrix_space(2);
  Rng rng(9);
  const SpaceElement x = SpaceElement::random(v, 3, rng);
  const Matrix alpha = random_gaussian(rng, 2, 3);
  const Matrix beta = random_gaussian(rng, 3, 2);
  const double bound = spectral_norm(alpha) * level_norm(x) * spectral_norm(beta);
  EXPECT_LE(level_norm(sandwich(alpha, x, beta)), bound + 1e-9);
}

TEST(LevelNorm, AgreesWithEigenvalueRoute) {
  Rng rng(21);
  const SpaceElement x = SpaceElement::random(full_matrix_space(3), 3, rng);
  const double expected = testing::naive_spectral_norm(testing::naive_realize(x));
  EXPECT_NEAR(level_norm(x), expected, 1e-12 * expected);
}

TEST(VerifyAxioms, M2Passes) {
  const AxiomReport r = verify_axioms(full_matrix_space(2), 100, 7);
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.checks.size(), 2u);
  for (const auto& c : r.checks) {
    EXPECT_EQ(c.trials, 100);
    EXPECT_EQ(c.failures, 0);
  }
}

TEST(VerifyAxioms, ScalarSpacePasses) {
  EXPECT_TRUE(verify_axioms(make_space(2, {kI2}, "span{I2}"), 10, 1).passed());
}

TEST(VerifyAxioms, CorruptedNormFailsDirectSum) {
  // Frobenius norm is not an operator space norm: ||v (+) w||_F > max.
  const MatrixNormFn frobenius = [](const SpaceElement& x) { return realize(x).norm(); };
  const AxiomReport r = verify_axioms(full_matrix_space(2), 20, 3, frobenius);
  EXPECT_FALSE(r.passed());
  ASSERT_FALSE(r.checks.empty());
  EXPECT_EQ(r.checks[0].name, "M1 direct sum");
  EXPECT_GT(r.checks[0].failures, 0);
  EXPECT_GT(r.checks[0].worst_violation, 1e-9);
}

TEST(VerifyAxioms, RejectsZeroSamples) {
  EXPECT_THROW(verify_axioms(full_matrix_space(2), 0, 1), InvalidParameter);
}

TEST(SpaceElement, ShapeIsChecked) {
  EXPECT_THROW(SpaceElement(full_matrix_space(2), 2, Matrix::Zero(4, 3)), DimensionMismatch);
  EXPECT_THROW(SpaceElement(full_matrix_space(2), 0, Matrix::Zero(4, 0)), InvalidLevel);
}

TEST(SpaceElement, MixingSpacesThrows) {
  SpaceElement a = SpaceElement::zero(full_matrix_space(2), 1);
  const SpaceElement b = SpaceElement::zero(full_matrix_space(3), 1);
  EXPECT_THROW(a += b, SpaceMismatch);
  EXPECT_THROW(direct_sum(a, b), SpaceMismatch);
}

}  // namespace
}  // namespace npspace
