#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>
#include <set>

#include "test_support.hpp"

namespace {

using namespace umeb;
using namespace umeb::testing;

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

double gram_deviation(const BasisSet& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      worst = std::max(worst, std::abs(inner(b[i], b[j]) - Complex(i == j ? 1.0 : 0.0)));
  return worst;
}

// ---------------------------------------------------------------- HolePattern

TEST(HolePatternTest, RejectsBadPatternsNamingTheRule) {
  EXPECT_NE(error_of([] { HolePattern(3, 4, {{0, 0}, {0, 1}, {2, 0}}); }).find("duplicate row"), std::string::npos);
  EXPECT_NE(error_of([] { HolePattern(3, 4, {{0, 0}, {1, 1}, {2, 2}}); }).find("N must be < d"), std::string::npos);
  EXPECT_FALSE(error_of([] { HolePattern(3, 3, {{0, 0}, {1, 0}, {2, 0}}); }).empty());
  EXPECT_FALSE(error_of([] { HolePattern(3, 4, {{0, 0}, {1, 0}}); }).empty());
  EXPECT_FALSE(error_of([] { HolePattern(3, 4, {{0, 0}, {1, 0}, {2, 4}}); }).empty());
  EXPECT_FALSE(error_of([] { HolePattern(1, 4, {{0, 0}}); }).empty());
}

TEST(RandomHolePattern, AlwaysValidAndDeterministic) {
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 2 + i % 6, dp = d + 1 + i % 4;
    const auto p = random_hole_pattern(d, dp, a);
    EXPECT_TRUE(p == random_hole_pattern(d, dp, b));
    EXPECT_LT(p.n_columns(), d);
  }
}

// -------------------------------------------------------------- canonical form

TEST(Canonicalize, FiveBySixPatternMatchesPublishedPermutations) {
  const auto form = canonicalize_holes(fixtures::holes5x6_pattern());
  EXPECT_EQ(form.b, (std::vector<std::size_t>{0, 0, 0, 1, 2}));
  EXPECT_EQ(form.row_order, (std::vector<std::size_t>{0, 2, 4, 1, 3}));
  EXPECT_EQ(form.col_order, (std::vector<std::size_t>{3, 1, 5, 0, 2, 4}));
  EXPECT_EQ(form.n_columns, 3u);

  // The published P and Q, typed in row by row.
  const int p[5][5] = {{1, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 0, 1}, {0, 1, 0, 0, 0}, {0, 0, 0, 1, 0}};
  const int q[6][6] = {{0, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0},
                       {1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1}, {0, 0, 1, 0, 0, 0}};
  const auto pm = form.row_permutation();
  const auto qm = form.column_permutation();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_EQ(pm(i, j), Complex(p[i][j])) << i << "," << j;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) EXPECT_EQ(qm(i, j), Complex(q[i][j])) << i << "," << j;

  // P V Q moves every hole of V onto the staircase.
  ComplexMatrix v(5, 6);
  const auto pattern = fixtures::holes5x6_pattern();
  for (const auto& h : pattern.holes()) v(h.row, h.col) = 1.0;
  const auto moved = multiply(multiply(pm, v), qm);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t l = 0; l < 6; ++l) EXPECT_EQ(moved(i, l), Complex(l == form.b[i] ? 1.0 : 0.0));
}

TEST(Canonicalize, FirstColumnPatternIsIdentity) {
  const HolePattern p(4, 6, {{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  const auto form = canonicalize_holes(p);
  EXPECT_EQ(form.b, (std::vector<std::size_t>{0, 0, 0, 0}));
  EXPECT_EQ(form.row_order, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(form.col_order, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(max_entry_diff(theorem1_construct(p), theorem1_canonical(form.b, 6)), 0.0);
}

TEST(Canonicalize, SmallHandWorkedCase) {
  EXPECT_EQ(canonicalize_holes(HolePattern(3, 4, {{0, 2}, {1, 0}, {2, 2}})).b, (std::vector<std::size_t>{0, 0, 1}));
}

TEST(Canonicalize, AlwaysProducesAStaircaseThatReproducesTheHoles) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const std::size_t d = 2 + rng() % 7, dp = d + 1 + rng() % 6;
    const auto p = random_hole_pattern(d, dp, rng);
    const auto f = canonicalize_holes(p);
    EXPECT_NO_THROW(check_canonical_form(p, f));
    EXPECT_EQ(f.b.front(), 0u);
    for (std::size_t k = 0; k + 1 < d; ++k) EXPECT_LE(f.b[k + 1] - f.b[k], 1u);
    for (std::size_t k = 0; k < d; ++k) EXPECT_EQ(f.col_order[f.b[k]], p.hole_column(f.row_order[k]));
  }
}

TEST(CheckCanonicalForm, RejectsMismatchedForm) {
  auto f = canonicalize_holes(fixtures::holes5x6_pattern());
  std::swap(f.col_order[0], f.col_order[1]);
  EXPECT_THROW(check_canonical_form(fixtures::holes5x6_pattern(), f), InvalidInput);
}

// ------------------------------------------------------------- walk sequences

TEST(HoleIndicator, Examples) {
  const std::vector<std::size_t> b{0, 0, 0, 1, 2};
  EXPECT_EQ(hole_indicator(b, 3, 1), 1);
  EXPECT_EQ(hole_indicator(b, 0, 5), 0);
  for (std::size_t k = 0; k < b.size(); ++k) EXPECT_EQ(hole_indicator(b, k, b[k]), 1);
  EXPECT_THROW(hole_indicator(b, 5, 0), InvalidInput);
}

TEST(TSequence, PublishedGroups) {
  const std::vector<std::size_t> b{0, 0, 0, 1, 2};
  EXPECT_EQ(t_sequence(b, 6, 0), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  EXPECT_EQ(t_sequence(b, 6, 3), (std::vector<std::size_t>{4, 5, 1, 2, 3}));
  EXPECT_EQ(t_sequence(b, 6, 4), (std::vector<std::size_t>{5, 1, 2, 3, 4}));
  EXPECT_THROW(t_sequence(b, 6, 5), InvalidInput);
}

TEST(TSequence, DistinctHoleFreeAndSeparatedExhaustively) {
  std::size_t cases = 0;
  for (std::size_t d = 2; d <= 8; ++d) {
    for (std::size_t dp = d + 1; dp <= 16; ++dp) {
      for_each_staircase(d, [&](const std::vector<std::size_t>& b) {
        std::vector<std::set<std::size_t>> per_row(d);
        for (std::size_t j = 0; j + 1 < dp; ++j) {
          const auto t = t_sequence(b, dp, j);
          ++cases;
          const std::set<std::size_t> distinct(t.begin(), t.end());
          ASSERT_EQ(distinct.size(), d);
          for (std::size_t m = 0; m < d; ++m) {
            ASSERT_LT(t[m], dp);
            ASSERT_NE(t[m], b[m]);
            ASSERT_TRUE(per_row[m].insert(t[m]).second) << "row " << m << " reused by j=" << j;
          }
        }
      });
    }
  }
  EXPECT_GT(cases, 10000u);
}

// ------------------------------------------------------ hole-pattern bases

TEST(HoleConstruction, MatchesTranscribedBases) {
  EXPECT_LE(max_entry_diff(theorem1_construct(fixtures::holes5x6_pattern()), fixtures::holes5x6()), 1e-12);
  EXPECT_LE(max_entry_diff(theorem1_canonical({0, 0, 0, 1, 2}, 6), fixtures::holes5x6_staircase()), 1e-12);
}

TEST(HoleConstruction, LabelsAndProvenance) {
  const auto basis = theorem1_construct(fixtures::holes5x6_pattern());
  EXPECT_EQ(basis.labels().front(), (std::vector<int>{0, 0}));
  EXPECT_EQ(basis.labels().back(), (std::vector<int>{4, 4}));
  EXPECT_EQ(basis.provenance().kind, ConstructionKind::theorem1);
  ASSERT_TRUE(basis.provenance().canonical.has_value());
  EXPECT_EQ(basis.provenance().canonical->b, (std::vector<std::size_t>{0, 0, 0, 1, 2}));
}

TEST(HoleConstruction, SmallPatternVerifies) {
  const HolePattern p(3, 4, {{0, 0}, {1, 0}, {2, 1}});
  const auto basis = theorem1_construct(p);
  EXPECT_EQ(basis.size(), 9u);
  EXPECT_LT(gram_deviation(basis), 1e-12);
  for (const auto& s : basis.states()) {
    EXPECT_TRUE(is_maximally_entangled(s).maximally_entangled);
    for (const auto& h : p.holes()) EXPECT_EQ(s.coeff(h.row, h.col), Complex(0.0));
  }
  EXPECT_EQ(verify_umeb(basis).verdict, Verdict::UMEB);
}

TEST(HoleConstruction, RandomPatternsSizeHolesGramAndEntanglement) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    const std::size_t d = 2 + rng() % 6, dp = d + 1 + rng() % 6;
    const auto p = random_hole_pattern(d, dp, rng);
    const auto basis = theorem1_construct(p);
    ASSERT_EQ(basis.size(), d * (dp - 1));
    for (const auto& s : basis.states()) {
      for (const auto& h : p.holes()) ASSERT_EQ(s.coeff(h.row, h.col), Complex(0.0));
      ASSERT_LT(is_maximally_entangled(s).max_deviation, 1e-12);
    }
    ASSERT_LT(gram_deviation(basis), 1e-10);
  }
}

TEST(HoleConstruction, PullbackPreservesInnerProductsAndSpectra) {
  const auto canon = fixtures::holes5x6_staircase();
  const auto pulled = fixtures::holes5x6();
  for (std::size_t i = 0; i < canon.size(); ++i) {
    for (std::size_t j = 0; j < canon.size(); ++j)
      EXPECT_LT(std::abs(inner(canon[i], canon[j]) - inner(pulled[i], pulled[j])), 1e-14);
    const auto a = singular_values(state_to_matrix(canon[i]));
    const auto b = singular_values(state_to_matrix(pulled[i]));
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-14);
  }
}

// --------------------------------------------------------- partition bases

TEST(PartitionSpecTest, DerivesRAndOffsets) {
  const PartitionSpec s(3, 10, {4, 5});
  EXPECT_EQ(s.r(), 1u);
  EXPECT_EQ(s.offsets(), (std::vector<std::size_t>{0, 4}));
  EXPECT_EQ(s.member_count(), 27u);
}

TEST(PartitionSpecTest, RejectsInvalidNamingTheRule) {
  EXPECT_NE(error_of([] { PartitionSpec(3, 10, {2, 5}); }).find(">= d"), std::string::npos)
      << error_of([] { PartitionSpec(3, 10, {2, 5}); });
  EXPECT_FALSE(error_of([] { PartitionSpec(3, 10, {4, 6}); }).empty());  // r = 0
  EXPECT_FALSE(error_of([] { PartitionSpec(3, 10, {3, 4}); }).empty());  // r = 3 = d
  EXPECT_FALSE(error_of([] { PartitionSpec(3, 10, {6, 6}); }).empty());  // sum exceeds d'
  EXPECT_FALSE(error_of([] { PartitionSpec(3, 10, {}); }).empty());
}

TEST(PartitionConstruction, MatchesTranscribedBases) {
  EXPECT_LE(max_entry_diff(theorem2_construct(PartitionSpec(3, 10, {4, 5})), fixtures::parts3x10_45()), 1e-12);
  EXPECT_LE(max_entry_diff(theorem2_construct(PartitionSpec(3, 10, {4, 4})), fixtures::parts3x10_44()), 1e-12);
}

TEST(PartitionConstruction, SingleFullBlockOf5x6) {
  const auto basis = theorem2_construct(PartitionSpec(5, 6, {5}));
  EXPECT_EQ(basis.size(), 25u);
  EXPECT_LT(gram_deviation(basis), 1e-12);
}

TEST(PartitionConstruction, ColumnAuditLabelsAndGram) {
  for (std::size_t dp = 3; dp <= 10; ++dp) {
    for (std::size_t d = 2; d < dp; ++d) {
      for (const auto& spec : enumerate_partitions(d, dp)) {
        const auto basis = theorem2_construct(spec);
        ASSERT_EQ(basis.size(), d * (dp - spec.r()));
        ASSERT_LT(gram_deviation(basis), 1e-10);
        for (std::size_t i = 0; i < basis.size(); ++i) {
          const auto& label = basis.labels()[i];  // (l, j, n)
          ASSERT_EQ(label.size(), 3u);
          const std::size_t j = label[1];
          const std::size_t lo = spec.offsets()[j], hi = lo + spec.parts()[j];
          for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < dp; ++l)
              if (l < lo || l >= hi) {
                ASSERT_EQ(basis[i].coeff(k, l), Complex(0.0));
              }
        }
        const auto used = column_support(basis);
        ASSERT_EQ(used.size(), dp - spec.r());
        ASSERT_LT(*used.rbegin(), dp - spec.r());
      }
    }
  }
}

TEST(PartitionConstruction, OrderIsLexicographicInJLN) {
  const auto basis = theorem2_construct(PartitionSpec(3, 10, {4, 5}));
  std::vector<std::vector<int>> jln;
  for (const auto& l : basis.labels()) jln.push_back({l[1], l[0], l[2]});
  EXPECT_TRUE(std::is_sorted(jln.begin(), jln.end()));
}

TEST(EnumeratePartitions, ThreeByTen) {
  const auto specs = enumerate_partitions(3, 10);
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> got;
  for (const auto& s : specs) got.emplace_back(s.r(), s.parts());
  const std::vector<std::pair<std::size_t, std::vector<std::size_t>>> expected{
      {1, {3, 3, 3}}, {1, {5, 4}}, {1, {6, 3}}, {1, {9}}, {2, {4, 4}}, {2, {5, 3}}, {2, {8}}};
  EXPECT_EQ(got, expected);
}

TEST(EnumeratePartitions, SmallCases) {
  const auto a = enumerate_partitions(5, 6);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].parts(), (std::vector<std::size_t>{5}));
  EXPECT_EQ(a[0].r(), 1u);
  const auto b = enumerate_partitions(2, 3);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].parts(), (std::vector<std::size_t>{2}));
  EXPECT_THROW(enumerate_partitions(5, 5), InvalidInput);
  EXPECT_THROW(enumerate_partitions(6, 5), InvalidInput);
}

TEST(EnumeratePartitions, OrderedModeListsCompositions) {
  EXPECT_EQ(enumerate_partitions(3, 10, true).size(), 10u);
}

TEST(EnumeratePartitions, AgreesWithBruteForceCount) {
  // Partitions of n into parts >= lo, counted by a plain recursion.
  std::function<std::size_t(std::size_t, std::size_t, std::size_t)> count = [&](std::size_t n, std::size_t lo,
                                                                                 std::size_t hi) -> std::size_t {
    if (n == 0) return 1;
    std::size_t c = 0;
    for (std::size_t a = lo; a <= std::min(n, hi); ++a) c += count(n - a, lo, a);
    return c;
  };
  for (std::size_t dp = 3; dp <= 14; ++dp) {
    for (std::size_t d = 2; d < dp; ++d) {
      std::size_t expected = 0;
      for (std::size_t r = 1; r < d; ++r) expected += count(dp - r, d, dp);
      EXPECT_EQ(enumerate_partitions(d, dp).size(), expected) << d << "x" << dp;
    }
  }
}

// ------------------------------------------------------------- composition

TEST(Compose, TwoBlocksOf5x12) {
  const auto left = theorem1_construct(fixtures::block_left_pattern(), fixtures::block_left_form());
  const auto right = theorem1_construct(fixtures::block_right_pattern(), fixtures::block_right_form());
  const auto both = compose_direct_sum(left, right, 6);
  EXPECT_EQ(both.size(), 50u);
  EXPECT_EQ(both.d_prime(), 12u);
  EXPECT_LT(gram_deviation(both), 1e-12);
  EXPECT_EQ(both.provenance().kind, ConstructionKind::composition);
  EXPECT_EQ(both.provenance().inputs.size(), 2u);
  EXPECT_EQ(both.provenance().column_offset, 6u);
}

TEST(Compose, EmptySideLeavesOtherUnchanged) {
  const auto b = fixtures::parts3x10_45();
  const auto out = compose_direct_sum(BasisSet(3, 10), b, 0);
  EXPECT_EQ(max_entry_diff(out, b), 0.0);
  EXPECT_EQ(out.labels(), b.labels());
  EXPECT_EQ(max_entry_diff(compose_direct_sum(b, BasisSet(3, 10), 0), b), 0.0);
}

TEST(Compose, RejectsOverlapDimensionMismatchAndNarrowWidth) {
  const auto b = fixtures::parts3x10_45();
  EXPECT_THROW(compose_direct_sum(b, b, 0), InvalidInput);
  EXPECT_THROW(compose_direct_sum(b, fixtures::umeb_2x3(), 10), InvalidInput);
  EXPECT_THROW(compose_direct_sum(b, b, 10, 15), InvalidInput);
}

TEST(Compose, TwoPartitionBlocksOfWidthFive) {
  const auto block = theorem2_construct(PartitionSpec(3, 5, {4}));
  const auto both = compose_direct_sum(block, block, 5);
  EXPECT_EQ(both.size(), 24u);
  EXPECT_EQ(both.d_prime(), 10u);
  const auto st = structural_unextendibility(both);
  EXPECT_EQ(st.column_support, (std::vector<std::size_t>{4, 9}));
  EXPECT_EQ(st.generic_rank, 2u);
}

// ----------------------------------------------------------------- fixtures

TEST(Fixtures, ProductSetIn3x3) {
  const auto upb = fixtures::upb_3x3();
  ASSERT_EQ(upb.size(), 5u);
  for (const auto& s : upb) EXPECT_EQ(schmidt_number(s), 1u);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) EXPECT_LT(std::abs(inner(upb[i], upb[j])), 1e-12);
  for (const auto& z : upb[4].coeffs()) EXPECT_NEAR(z.real(), 1.0 / 3.0, 1e-15);
}

TEST(Fixtures, FourStateSetIn2x3MatchesPartitionConstruction) {
  const auto four = fixtures::umeb_2x3();
  ASSERT_EQ(four.size(), 4u);
  for (const auto& s : four.states()) EXPECT_TRUE(is_maximally_entangled(s).maximally_entangled);
  const auto built = theorem2_construct(PartitionSpec(2, 3, {2}));
  EXPECT_TRUE(same_span(four, built));
  EXPECT_LE(max_entry_diff(four, built), 1e-15);
}

TEST(Fixtures, EveryNameLoads) {
  for (auto name : fixtures::names()) EXPECT_NO_THROW(fixtures::by_name(name)) << name;
  EXPECT_THROW(fixtures::by_name("nope"), InvalidInput);
  EXPECT_EQ(fixtures::by_name("ex2").size(), 50u);
}

TEST(PermuteBasis, PreservesGram) {
  std::mt19937_64 rng(23);
  const auto b = fixtures::parts3x10_44();
  const auto moved = permute_basis(b, random_permutation(3, rng), random_permutation(10, rng), b.provenance());
  EXPECT_LT(gram_deviation(moved), 1e-12);
  EXPECT_THROW(permute_basis(b, {0, 0, 1}, random_permutation(10, rng), b.provenance()), InvalidInput);
}

}  // namespace
