// Unit tests for the dense-matrix primitives: vectorization, Kronecker
// products, partial trace/transpose, realignment, singular values, the
// Ky Fan norm, and the validated state types.

#include <gtest/gtest.h>

#include <string>

#include "test_support.hpp"

namespace {

using entsep::BipartiteDensityMatrix;
using entsep::Complex;
using entsep::ComplexMatrix;
using entsep::ComplexVector;
using entsep::PureState;
using entsep::RealVector;
using entsep::Subsystem;
using testsupport::min_eigenvalue;
using testsupport::random_complex_matrix;
using testsupport::random_single_density;
using testsupport::random_unitary;

ComplexMatrix bell_density() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

bool message_contains(const std::invalid_argument& e, const std::string& s) {
  return std::string(e.what()).find(s) != std::string::npos;
}

// ------------------------------------------------------------------ vec ----

TEST(Vec, ColumnStacksInColumnMajorOrder) {
  ComplexMatrix a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  const ComplexVector v = entsep::vec(a);
  ASSERT_EQ(v.size(), 4);
  EXPECT_EQ(v(0), Complex(1.0));
  EXPECT_EQ(v(1), Complex(3.0));
  EXPECT_EQ(v(2), Complex(2.0));
  EXPECT_EQ(v(3), Complex(4.0));
}

TEST(Vec, IdentityTwoByTwo) {
  const ComplexVector v = entsep::vec(ComplexMatrix::Identity(2, 2));
  EXPECT_EQ(v(0), Complex(1.0));
  EXPECT_EQ(v(1), Complex(0.0));
  EXPECT_EQ(v(2), Complex(0.0));
  EXPECT_EQ(v(3), Complex(1.0));
}

TEST(Vec, SingleRowMatrix) {
  ComplexMatrix a(1, 3);
  a << 5.0, 6.0, 7.0;
  const ComplexVector v = entsep::vec(a);
  EXPECT_EQ(v(0), Complex(5.0));
  EXPECT_EQ(v(1), Complex(6.0));
  EXPECT_EQ(v(2), Complex(7.0));
}

TEST(Vec, UnflattenRoundTripIsExact) {
  const ComplexMatrix a = random_complex_matrix(3, 4, 11);
  const ComplexMatrix back = entsep::unflatten(entsep::vec(a), 3, 4);
  EXPECT_EQ(a, back);
}

TEST(Vec, UnflattenRejectsSizeMismatch) {
  EXPECT_THROW(entsep::unflatten(ComplexVector::Zero(5), 2, 3),
               std::invalid_argument);
}

// ----------------------------------------------------------------- kron ----

TEST(Kron, IdentityTimesIdentity) {
  const ComplexMatrix i4 = entsep::kron(ComplexMatrix::Identity(2, 2),
                                        ComplexMatrix::Identity(2, 2));
  EXPECT_NEAR((i4 - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.0,
              0.0);
}

TEST(Kron, ProjectorProduct) {
  ComplexMatrix pa = ComplexMatrix::Zero(2, 2);
  pa(0, 0) = 1.0;
  ComplexMatrix pb = ComplexMatrix::Zero(2, 2);
  pb(1, 1) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  EXPECT_EQ(entsep::kron(pa, pb), expected);
}

TEST(Kron, MixedProductProperty) {
  const ComplexMatrix a = random_complex_matrix(2, 2, 21);
  const ComplexMatrix b = random_complex_matrix(2, 2, 22);
  const ComplexMatrix c = random_complex_matrix(2, 2, 23);
  const ComplexMatrix d = random_complex_matrix(2, 2, 24);
  const ComplexMatrix lhs = entsep::kron(a, b) * entsep::kron(c, d);
  const ComplexMatrix rhs = entsep::kron(ComplexMatrix(a * c),
                                         ComplexMatrix(b * d));
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

// -------------------------------------------------------- partial trace ----

TEST(PartialTrace, BellMarginalsAreMaximallyMixed) {
  const ComplexMatrix rho = bell_density();
  const ComplexMatrix rho_a = entsep::partial_trace(rho, 2, 2, Subsystem::B);
  const ComplexMatrix rho_b = entsep::partial_trace(rho, 2, 2, Subsystem::A);
  const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
  EXPECT_LT((rho_a - half).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((rho_b - half).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PartialTrace, ProductStateMarginal) {
  const ComplexMatrix rho_a = random_single_density(2, 31);
  const ComplexMatrix rho_b = random_single_density(3, 32);
  const ComplexMatrix product = entsep::kron(rho_a, rho_b);
  EXPECT_LT((entsep::partial_trace(product, 2, 3, Subsystem::B) - rho_a)
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
  EXPECT_LT((entsep::partial_trace(product, 2, 3, Subsystem::A) - rho_b)
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(PartialTrace, GinibreMarginalIsValidState) {
  const BipartiteDensityMatrix rho = entsep::random_density(3, 3, 33);
  const ComplexMatrix rho_a = entsep::partial_trace(rho, Subsystem::B);
  EXPECT_NEAR(rho_a.trace().real(), 1.0, 1e-12);
  EXPECT_LT((rho_a - rho_a.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GE(min_eigenvalue(rho_a), -1e-12);
}

TEST(PartialTrace, RejectsShapeMismatch) {
  EXPECT_THROW(
      entsep::partial_trace(ComplexMatrix::Identity(5, 5), 2, 2, Subsystem::A),
      std::invalid_argument);
}

// ---------------------------------------------------- partial transpose ----

TEST(PartialTranspose, ProductStateStaysPositive) {
  const ComplexMatrix rho_a = random_single_density(2, 41);
  const ComplexMatrix rho_b = random_single_density(2, 42);
  const ComplexMatrix product = entsep::kron(rho_a, rho_b);
  const ComplexMatrix pt = entsep::partial_transpose(product, 2, 2);
  const ComplexMatrix expected =
      entsep::kron(rho_a, ComplexMatrix(rho_b.transpose()));
  EXPECT_LT((pt - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_GE(min_eigenvalue(pt), -1e-12);
}

TEST(PartialTranspose, BellMinEigenvalueIsMinusHalf) {
  const ComplexMatrix pt = entsep::partial_transpose(bell_density(), 2, 2);
  EXPECT_NEAR(min_eigenvalue(pt), -0.5, 1e-12);
}

TEST(PartialTranspose, InvolutionTracePreservingMarginalPreserving) {
  const BipartiteDensityMatrix rho = entsep::random_density(2, 3, 43);
  const ComplexMatrix pt = entsep::partial_transpose(rho);
  EXPECT_LT((entsep::partial_transpose(pt, 2, 3) - rho.matrix())
                .cwiseAbs()
                .maxCoeff(),
            0.0 + 1e-15);
  EXPECT_NEAR(pt.trace().real(), 1.0, 1e-14);
  // Transposing B leaves the A marginal untouched.
  const ComplexMatrix ma = entsep::partial_trace(pt, 2, 3, Subsystem::B);
  const ComplexMatrix mb = entsep::partial_trace(rho, Subsystem::B);
  EXPECT_LT((ma - mb).cwiseAbs().maxCoeff(), 1e-14);
}

// -------------------------------------------------------------- realign ----

TEST(Realign, BasisProjectorMapsToCorner) {
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = 1.0;  // |00><00| in 2x2
  const ComplexMatrix r = entsep::realign(rho, 2, 2);
  ASSERT_EQ(r.rows(), 4);
  ASSERT_EQ(r.cols(), 4);
  EXPECT_EQ(r(0, 0), Complex(1.0));
  EXPECT_NEAR(r.cwiseAbs().sum(), 1.0, 0.0);
}

TEST(Realign, ProductStateRealignsToRankOne) {
  for (const auto& [da, db, seed] : {std::tuple{2, 2, 51}, {2, 3, 52}}) {
    const ComplexMatrix rho_a = random_single_density(da, seed);
    const ComplexMatrix rho_b = random_single_density(db, seed + 100);
    const ComplexMatrix r =
        entsep::realign(entsep::kron(rho_a, rho_b), da, db);
    const ComplexMatrix expected =
        entsep::vec(rho_a) * entsep::vec(rho_b).transpose();
    EXPECT_LT((r - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Realign, BellRealignmentHasTraceNormTwo) {
  const ComplexMatrix r = entsep::realign(bell_density(), 2, 2);
  const RealVector sv = entsep::singular_values(r);
  ASSERT_EQ(sv.size(), 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    EXPECT_NEAR(sv(i), 0.5, 1e-12);
  }
  EXPECT_NEAR(entsep::ky_fan_norm(r), 2.0, 1e-12);
}

// ------------------------------------------------------ singular values ----

TEST(SingularValues, DiagonalWithSignAndNilpotent) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0;
  const RealVector sv = entsep::singular_values(d);
  EXPECT_NEAR(sv(0), 4.0, 1e-14);
  EXPECT_NEAR(sv(1), 3.0, 1e-14);

  ComplexMatrix shift = ComplexMatrix::Zero(2, 2);
  shift(0, 1) = 1.0;
  const RealVector sv2 = entsep::singular_values(shift);
  EXPECT_NEAR(sv2(0), 1.0, 1e-14);
  EXPECT_NEAR(sv2(1), 0.0, 1e-14);
}

TEST(SingularValues, MatchEigenvaluesOfGram) {
  const ComplexMatrix a = random_complex_matrix(4, 3, 61);
  const RealVector sv = entsep::singular_values(a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.adjoint() * a,
                                                  Eigen::EigenvaluesOnly);
  // Eigenvalues ascend; singular values descend.
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double expected =
        std::sqrt(std::max(0.0, es.eigenvalues()(sv.size() - 1 - i)));
    EXPECT_NEAR(sv(i), expected, 1e-9);
  }
}

TEST(SingularValues, DescendingAndNonnegative) {
  const RealVector sv =
      entsep::singular_values(random_complex_matrix(6, 5, 62));
  for (Eigen::Index i = 0; i + 1 < sv.size(); ++i) {
    EXPECT_GE(sv(i), sv(i + 1));
  }
  EXPECT_GE(sv(sv.size() - 1), 0.0);
}

// ----------------------------------------------------------- Ky Fan norm ---

TEST(KyFanNorm, SmallClosedForms) {
  EXPECT_NEAR(entsep::ky_fan_norm(ComplexMatrix::Identity(2, 2)), 2.0, 1e-14);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0;
  EXPECT_NEAR(entsep::ky_fan_norm(d), 7.0, 1e-14);
}

TEST(KyFanNorm, RankOneVecOuterProductOfPureStates) {
  ComplexVector va = random_complex_matrix(2, 1, 71).col(0);
  va /= va.norm();
  ComplexVector vb = random_complex_matrix(3, 1, 72).col(0);
  vb /= vb.norm();
  const ComplexMatrix pa = va * va.adjoint();
  const ComplexMatrix pb = vb * vb.adjoint();
  const ComplexMatrix outer =
      entsep::vec(pa) * entsep::vec(pb).transpose();
  EXPECT_NEAR(entsep::ky_fan_norm(outer), 1.0, 1e-9);
}

TEST(KyFanNorm, NormAxiomsOnRandomPairs) {
  for (std::uint64_t seed = 80; seed < 90; ++seed) {
    const ComplexMatrix a = random_complex_matrix(5, 5, seed);
    const ComplexMatrix b = random_complex_matrix(5, 5, seed + 1000);
    const double na = entsep::ky_fan_norm(a);
    const double nb = entsep::ky_fan_norm(b);
    EXPECT_GE(na, 0.0);
    // Absolute homogeneity with a complex scalar.
    const Complex c(-1.5, 2.0);
    EXPECT_NEAR(entsep::ky_fan_norm(c * a), std::abs(c) * na, 1e-9);
    // Triangle inequality.
    EXPECT_LE(entsep::ky_fan_norm(a + b), na + nb + 1e-9);
  }
  EXPECT_NEAR(entsep::ky_fan_norm(ComplexMatrix::Zero(3, 3)), 0.0, 0.0);
}

TEST(KyFanNorm, UnitarilyInvariant) {
  const ComplexMatrix a = random_complex_matrix(6, 6, 91);
  const ComplexMatrix u = random_unitary(6, 92);
  const ComplexMatrix v = random_unitary(6, 93);
  EXPECT_NEAR(entsep::ky_fan_norm(u * a * v), entsep::ky_fan_norm(a), 1e-9);
}

// --------------------------------------------------------------- purity ----

TEST(Purity, ClosedFormsAndEigenvalueOracle) {
  ComplexVector v = random_complex_matrix(3, 1, 101).col(0);
  v /= v.norm();
  EXPECT_NEAR(entsep::purity(v * v.adjoint()), 1.0, 1e-12);
  EXPECT_NEAR(entsep::purity(ComplexMatrix::Identity(4, 4) / 4.0), 0.25,
              1e-14);

  const ComplexMatrix rho = random_single_density(3, 102);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho,
                                                  Eigen::EigenvaluesOnly);
  EXPECT_NEAR(entsep::purity(rho), es.eigenvalues().squaredNorm(), 1e-12);
}

TEST(Purity, RejectsNonSquare) {
  EXPECT_THROW(entsep::purity(ComplexMatrix::Zero(2, 3)),
               std::invalid_argument);
}

// ------------------------------------------------------- validated types ---

TEST(BipartiteDensityMatrixType, AcceptsValidState) {
  const BipartiteDensityMatrix rho(2, 2, bell_density());
  EXPECT_EQ(rho.dim_a(), 2);
  EXPECT_EQ(rho.dim_b(), 2);
  EXPECT_EQ(rho.k(), 2);
}

TEST(BipartiteDensityMatrixType, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
  m(0, 1) = Complex(0.1, 0.0);  // no matching conjugate entry
  try {
    BipartiteDensityMatrix rho(2, 2, m);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_TRUE(message_contains(e, "Hermitian")) << e.what();
  }
}

TEST(BipartiteDensityMatrixType, RejectsWrongTrace) {
  try {
    BipartiteDensityMatrix rho(2, 2, ComplexMatrix::Identity(4, 4) * 0.225);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_TRUE(message_contains(e, "trace")) << e.what();
  }
}

TEST(BipartiteDensityMatrixType, RejectsNegativeEigenvalue) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  try {
    BipartiteDensityMatrix rho(2, 2, m);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_TRUE(message_contains(e, "positive semidefinite")) << e.what();
  }
}

TEST(BipartiteDensityMatrixType, RejectsDimensionMismatch) {
  try {
    BipartiteDensityMatrix rho(2, 3, ComplexMatrix::Identity(4, 4) / 4.0);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_TRUE(message_contains(e, "dimension")) << e.what();
  }
}

TEST(PureStateType, ValidatesNormAndLength) {
  ComplexVector amp = ComplexVector::Zero(4);
  amp(0) = 1.0;
  EXPECT_NO_THROW(PureState(2, 2, amp));
  EXPECT_THROW(PureState(2, 2, ComplexVector::Zero(3)),
               std::invalid_argument);
  amp(0) = 0.9;
  EXPECT_THROW(PureState(2, 2, amp), std::invalid_argument);
}

TEST(PureStateType, DensityIsValidRankOneState) {
  const entsep::PureState psi = entsep::bell_pure();
  const BipartiteDensityMatrix rho = psi.density();
  EXPECT_NEAR(entsep::purity(rho.matrix()), 1.0, 1e-12);
}

}  // namespace
