#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace {

using namespace umeb;
using namespace umeb::testing;

const double kHalf = 1.0 / std::sqrt(2.0);

TEST(PureStateTest, ValidatesNormAndShape) {
  EXPECT_THROW(PureState(2, 2, {1.0, 1.0, 0.0, 0.0}), InvalidInput);
  EXPECT_THROW(PureState(2, 2, {1.0, 0.0, 0.0}), InvalidInput);
  EXPECT_THROW(PureState(2, 2, {Complex(NAN), 0.0, 0.0, 0.0}), InvalidInput);
  EXPECT_THROW(PureState(3, 2, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0}), InvalidInput);
  EXPECT_NO_THROW(PureState(2, 2, {kHalf, 0.0, 0.0, kHalf}));
  EXPECT_FALSE(PureState::unnormalized(1, 2, {1.0, 1.0}).is_normalized());
}

TEST(StateToMatrix, BasisKetScalesBySqrtD) {
  const auto a = state_to_matrix(PureState::basis_ket(2, 3, 0, 0));
  ComplexMatrix expected(2, 3);
  expected(0, 0) = std::sqrt(2.0);
  EXPECT_LT(max_entry_diff(a, expected), 1e-15);
}

TEST(StateToMatrix, FourStateSetFirstMemberIsPaddedIdentity) {
  const auto a = state_to_matrix(fixtures::umeb_2x3()[0]);
  EXPECT_LT(max_entry_diff(a, ComplexMatrix::padded_identity(2, 3)), 1e-15);
}

TEST(StateToMatrix, RejectsUnnormalizedState) {
  EXPECT_THROW(state_to_matrix(PureState::unnormalized(1, 2, {1.0, 1.0})), InvalidInput);
}

TEST(StateToMatrix, SelfInnerProductIsD) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 1 + rng() % 5;
    const auto a = state_to_matrix(random_state(d, d + rng() % 4, rng));
    EXPECT_NEAR(hs_inner(a, a).real(), double(d), 1e-10);
  }
}

TEST(MatrixToState, PaddedIdentityIsBellLike) {
  const auto s = matrix_to_state(ComplexMatrix::padded_identity(2, 3));
  const std::vector<Complex> expected{kHalf, 0.0, 0.0, 0.0, kHalf, 0.0};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_LT(std::abs(s.coeffs()[k] - expected[k]), 1e-15);
}

TEST(MatrixToState, StaircaseMatrixGivesFirstStaircaseState) {
  // Entries 1 at (m, m + 1) for m = 0..4 in a 5x6 matrix.
  ComplexMatrix a(5, 6);
  for (std::size_t m = 0; m < 5; ++m) a(m, m + 1) = 1.0;
  const auto s = matrix_to_state(a);
  const auto expected = fixtures::holes5x6_staircase()[0];
  for (std::size_t k = 0; k < 30; ++k) EXPECT_LT(std::abs(s.coeffs()[k] - expected.coeffs()[k]), 1e-15);
}

TEST(MatrixToState, RankOneWithRightTraceIsProductState) {
  ComplexMatrix a(3, 4);
  a(1, 2) = std::sqrt(3.0);
  const auto s = matrix_to_state(a);
  EXPECT_EQ(schmidt_number(s), 1u);
}

TEST(MatrixToState, WrongTraceNamesMeasuredValue) {
  try {
    matrix_to_state(ComplexMatrix::identity(2) /* trace 2 but scaled below */ *= 2.0);
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("8"), std::string::npos) << e.what();
  }
}

TEST(Correspondence, RoundTripsBothWays) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 1 + rng() % 6;
    const std::size_t dp = d + rng() % 6;
    const auto s = random_state(d, dp, rng);
    const auto a = state_to_matrix(s);
    const auto back = matrix_to_state(a);
    for (std::size_t k = 0; k < s.coeffs().size(); ++k) ASSERT_LT(std::abs(back.coeffs()[k] - s.coeffs()[k]), 1e-12);
    EXPECT_LT(max_entry_diff(state_to_matrix(back), a), 1e-12);
  }
}

TEST(Correspondence, InnerProductTransports) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 1 + rng() % 6;
    const std::size_t dp = d + rng() % 6;
    const auto s = random_state(d, dp, rng);
    const auto t = random_state(d, dp, rng);
    const Complex via = hs_inner(state_to_matrix(s), state_to_matrix(t)) / double(d);
    ASSERT_LT(std::abs(via - inner(s, t)), 1e-10);
  }
}

TEST(SchmidtNumber, ProductState) { EXPECT_EQ(schmidt_number(PureState::basis_ket(2, 2, 0, 1)), 1u); }

TEST(SchmidtNumber, HolePatternStatesAreFull) {
  const auto basis = fixtures::holes5x6();
  for (const auto& s : basis.states()) EXPECT_EQ(schmidt_number(s), 5u);
}

TEST(SchmidtNumber, UnequalTwoTermState) {
  const PureState s(2, 2, {std::sqrt(0.9), 0.0, 0.0, std::sqrt(0.1)});
  EXPECT_EQ(schmidt_number(s), 2u);
  EXPECT_FALSE(is_maximally_entangled(s).maximally_entangled);
}

TEST(MaxEntangled, BellLikeStateIn2x3) {
  const PureState s(2, 3, {kHalf, 0.0, 0.0, 0.0, kHalf, 0.0});
  const auto r = is_maximally_entangled(s);
  EXPECT_TRUE(r.maximally_entangled);
  EXPECT_LT(r.max_deviation, 1e-15);
}

TEST(MaxEntangled, BasisKetIsNot) {
  const auto r = is_maximally_entangled(PureState::basis_ket(2, 3, 0, 0));
  EXPECT_FALSE(r.maximally_entangled);
  EXPECT_NEAR(r.max_deviation, 1.0, 1e-15);  // sigma = [sqrt 2, 0]
}

TEST(MaxEntangled, EveryPartitionStateIs) {
  const auto basis = fixtures::parts3x10_44();
  for (const auto& s : basis.states()) {
    EXPECT_TRUE(is_maximally_entangled(s).maximally_entangled);
    EXPECT_EQ(schmidt_number(s), 3u);
  }
}

TEST(MaxEntangled, InvariantUnderLocalUnitaries) {
  std::mt19937_64 rng(13);
  const auto base = fixtures::parts3x10_45();
  for (int i = 0; i < 40; ++i) {
    const auto& s = base[rng() % base.size()];
    const auto u = random_unitary(3, rng);
    const auto w = random_unitary(10, rng);
    // (U (x) W)|s> corresponds to U A W^T.
    ComplexMatrix wt(10, 10);
    for (std::size_t r = 0; r < 10; ++r)
      for (std::size_t c = 0; c < 10; ++c) wt(r, c) = w(c, r);
    const auto moved = matrix_to_state(multiply(multiply(u, state_to_matrix(s)), wt));
    const auto r = is_maximally_entangled(moved);
    EXPECT_TRUE(r.maximally_entangled) << r.max_deviation;
    EXPECT_LT(r.max_deviation, 1e-12);
  }
}

}  // namespace
