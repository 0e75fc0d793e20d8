#pragma once

// Hand-transcribed reference bases. Each group lists d kets |k>|l'> in
// published order; member n of the group carries w_d^{n p} / sqrt(d) on ket p.
// The tables are typed in, not generated by the construction code, so they
// serve as an independent check on it.

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "umeb/constructions.hpp"

namespace umeb::fixtures {

using Ket = std::pair<std::size_t, std::size_t>;
using KetGroup = std::vector<Ket>;

inline BasisSet from_ket_groups(std::size_t d, std::size_t d_prime, const std::vector<KetGroup>& groups,
                                std::string name) {
  Provenance prov;
  prov.kind = ConstructionKind::fixture;
  prov.fixture = std::move(name);
  BasisSet out(d, d_prime, std::move(prov));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].size() != d) throw InvalidInput("ket group must have d entries");
    for (std::size_t n = 0; n < d; ++n) {
      std::vector<Complex> c(d * d_prime, 0.0);
      for (std::size_t p = 0; p < d; ++p) {
        const auto [k, l] = groups[g][p];
        c.at(k * d_prime + l) += amp * root_of_unity(d, n * p);
      }
      out.add(PureState(d, d_prime, std::move(c)), {static_cast<int>(g), static_cast<int>(n)});
    }
  }
  return out;
}

// 5x6 hole pattern, staircase coordinates, b = (0,0,0,1,2).
inline const std::vector<KetGroup> kHoles5x6Staircase = {
    {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}},
    {{0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 0}},
    {{0, 3}, {1, 4}, {2, 5}, {3, 0}, {4, 1}},
    {{0, 4}, {1, 5}, {2, 1}, {3, 2}, {4, 3}},
    {{0, 5}, {1, 1}, {2, 2}, {3, 3}, {4, 4}},
};

// The same basis pulled back to holes (0,3) (1,1) (2,3) (3,5) (4,3).
inline const std::vector<KetGroup> kHoles5x6 = {
    {{0, 1}, {2, 5}, {4, 0}, {1, 2}, {3, 4}},
    {{0, 5}, {2, 0}, {4, 2}, {1, 4}, {3, 3}},
    {{0, 0}, {2, 2}, {4, 4}, {1, 3}, {3, 1}},
    {{0, 2}, {2, 4}, {4, 1}, {1, 5}, {3, 0}},
    {{0, 4}, {2, 1}, {4, 5}, {1, 0}, {3, 2}},
};

// 5x12 two-block pattern, left block in staircase coordinates, b = (0,1,1,1,1).
inline const std::vector<KetGroup> kBlockLeftStaircase = {
    {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}},
    {{0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 0}},
    {{0, 3}, {1, 4}, {2, 5}, {3, 0}, {4, 2}},
    {{0, 4}, {1, 5}, {2, 0}, {3, 2}, {4, 3}},
    {{0, 5}, {1, 0}, {2, 2}, {3, 3}, {4, 4}},
};

// Right block in staircase coordinates, b = (0,0,0,1,1), written with global
// columns 6..11 of C^5 (x) C^12.
inline const std::vector<KetGroup> kBlockRightStaircase = {
    {{0, 7}, {1, 8}, {2, 9}, {3, 10}, {4, 11}},
    {{0, 8}, {1, 9}, {2, 10}, {3, 11}, {4, 6}},
    {{0, 9}, {1, 10}, {2, 11}, {3, 6}, {4, 8}},
    {{0, 10}, {1, 11}, {2, 7}, {3, 8}, {4, 9}},
    {{0, 11}, {1, 7}, {2, 8}, {3, 9}, {4, 10}},
};

// The two blocks as published for the original (unpermuted) pattern. These
// coincide with the staircase tables above and put weight on hole positions;
// see the acceptance notes.
inline const std::vector<KetGroup> kBlockLeftPublished = {
    {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}},
    {{0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 0}},
    {{0, 3}, {1, 4}, {2, 5}, {3, 0}, {4, 2}},
    {{0, 4}, {1, 5}, {2, 0}, {3, 2}, {4, 3}},
    {{0, 5}, {1, 0}, {2, 2}, {3, 3}, {4, 4}},
};

inline const std::vector<KetGroup> kBlockRightPublished = {
    {{0, 7}, {1, 8}, {2, 9}, {3, 10}, {4, 11}},
    {{0, 8}, {1, 9}, {2, 10}, {3, 11}, {4, 6}},
    {{0, 9}, {1, 10}, {2, 11}, {3, 6}, {4, 8}},
    {{0, 10}, {1, 11}, {2, 7}, {3, 8}, {4, 9}},
    {{0, 11}, {1, 7}, {2, 8}, {3, 9}, {4, 10}},
};

// C^3 (x) C^10 with 10 = 4 + 5 + 1.
inline const std::vector<KetGroup> kParts3x10With45 = {
    {{0, 0}, {1, 1}, {2, 2}}, {{0, 1}, {1, 2}, {2, 3}}, {{0, 2}, {1, 3}, {2, 0}},
    {{0, 3}, {1, 0}, {2, 1}}, {{0, 4}, {1, 5}, {2, 6}}, {{0, 5}, {1, 6}, {2, 7}},
    {{0, 6}, {1, 7}, {2, 8}}, {{0, 7}, {1, 8}, {2, 4}}, {{0, 8}, {1, 4}, {2, 5}},
};

// C^3 (x) C^10 with 10 = 4 + 4 + 2.
inline const std::vector<KetGroup> kParts3x10With44 = {
    {{0, 0}, {1, 1}, {2, 2}}, {{0, 1}, {1, 2}, {2, 3}}, {{0, 2}, {1, 3}, {2, 0}},
    {{0, 3}, {1, 0}, {2, 1}}, {{0, 4}, {1, 5}, {2, 6}}, {{0, 5}, {1, 6}, {2, 7}},
    {{0, 6}, {1, 7}, {2, 4}}, {{0, 7}, {1, 4}, {2, 5}},
};

/// The 5x6 hole pattern and the two 5x6 blocks of the 5x12 pattern (block-local
/// columns).
inline HolePattern holes5x6_pattern() { return HolePattern(5, 6, {{0, 3}, {1, 1}, {2, 3}, {3, 5}, {4, 3}}); }
inline HolePattern block_left_pattern() { return HolePattern(5, 6, {{0, 3}, {1, 3}, {2, 1}, {3, 3}, {4, 3}}); }
inline HolePattern block_right_pattern() { return HolePattern(5, 6, {{0, 0}, {1, 3}, {2, 0}, {3, 3}, {4, 0}}); }

/// Staircase forms for the two blocks, with the published row and column
/// permutations.
inline CanonicalHoleForm block_left_form() { return {{2, 0, 1, 3, 4}, {1, 3, 0, 2, 4, 5}, {0, 1, 1, 1, 1}, 2}; }
inline CanonicalHoleForm block_right_form() { return {{0, 2, 4, 1, 3}, {0, 3, 1, 2, 4, 5}, {0, 0, 0, 1, 1}, 2}; }

inline BasisSet holes5x6_staircase() { return from_ket_groups(5, 6, kHoles5x6Staircase, "ex1c"); }
inline BasisSet holes5x6() { return from_ket_groups(5, 6, kHoles5x6, "ex1"); }
inline BasisSet block_left_staircase() { return from_ket_groups(5, 6, kBlockLeftStaircase, "ex2-left-canonical"); }
inline BasisSet block_right_staircase() {
  return from_ket_groups(5, 12, kBlockRightStaircase, "ex2-right-canonical");
}

/// Both published blocks together on C^5 (x) C^12 (50 states).
inline BasisSet blocks5x12_published() {
  std::vector<KetGroup> groups = kBlockLeftPublished;
  groups.insert(groups.end(), kBlockRightPublished.begin(), kBlockRightPublished.end());
  return from_ket_groups(5, 12, groups, "ex2");
}

inline BasisSet parts3x10_45() { return from_ket_groups(3, 10, kParts3x10With45, "ex3a"); }
inline BasisSet parts3x10_44() { return from_ket_groups(3, 10, kParts3x10With44, "ex3b"); }

/// Five-state product basis of C^3 (x) C^3 that admits no orthogonal product state.
inline std::vector<PureState> upb_3x3() {
  const double h = 1.0 / std::sqrt(2.0);
  const double t = 1.0 / std::sqrt(3.0);
  return {
      PureState::product({1, 0, 0}, {h, -h, 0}),
      PureState::product({h, -h, 0}, {0, 0, 1}),
      PureState::product({0, 0, 1}, {0, h, -h}),
      PureState::product({0, h, -h}, {1, 0, 0}),
      PureState::product({t, t, t}, {t, t, t}),
  };
}

namespace detail {
inline PureState two_term(std::size_t d, std::size_t dp, Ket a, Ket b, double sign) {
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<Complex> c(d * dp, 0.0);
  c[a.first * dp + a.second] = h;
  c[b.first * dp + b.second] = sign * h;
  return PureState(d, dp, std::move(c));
}
}  // namespace detail

/// Four maximally entangled states of C^2 (x) C^3 whose complement is |.>|2'>.
inline BasisSet umeb_2x3() {
  Provenance prov;
  prov.kind = ConstructionKind::fixture;
  prov.fixture = "umeb2x3";
  BasisSet out(2, 3, std::move(prov));
  out.add(detail::two_term(2, 3, {0, 0}, {1, 1}, +1), {1});
  out.add(detail::two_term(2, 3, {0, 0}, {1, 1}, -1), {2});
  out.add(detail::two_term(2, 3, {0, 1}, {1, 0}, +1), {3});
  out.add(detail::two_term(2, 3, {0, 1}, {1, 0}, -1), {4});
  return out;
}

/// Bell basis of C^2 (x) C^2: Phi+, Phi-, Psi+, Psi-.
inline BasisSet bell_2x2() {
  Provenance prov;
  prov.kind = ConstructionKind::fixture;
  prov.fixture = "bell2x2";
  BasisSet out(2, 2, std::move(prov));
  out.add(detail::two_term(2, 2, {0, 0}, {1, 1}, +1), {0});
  out.add(detail::two_term(2, 2, {0, 0}, {1, 1}, -1), {1});
  out.add(detail::two_term(2, 2, {0, 1}, {1, 0}, +1), {2});
  out.add(detail::two_term(2, 2, {0, 1}, {1, 0}, -1), {3});
  return out;
}

inline BasisSet upb_3x3_basis() {
  Provenance prov;
  prov.kind = ConstructionKind::fixture;
  prov.fixture = "upb3x3";
  BasisSet out(3, 3, std::move(prov));
  int i = 0;
  for (auto& s : upb_3x3()) out.add(std::move(s), {i++});
  return out;
}

inline const std::vector<std::string_view>& names() {
  static const std::vector<std::string_view> kNames = {"upb3x3", "umeb2x3", "ex1",  "ex1c",
                                                       "ex2",    "ex3a",    "ex3b", "bell2x2"};
  return kNames;
}

/// Fixture by name; throws InvalidInput for unknown names.
inline BasisSet by_name(std::string_view name) {
  if (name == "upb3x3") return upb_3x3_basis();
  if (name == "umeb2x3") return umeb_2x3();
  if (name == "ex1") return holes5x6();
  if (name == "ex1c") return holes5x6_staircase();
  if (name == "ex2") return blocks5x12_published();
  if (name == "ex3a") return parts3x10_45();
  if (name == "ex3b") return parts3x10_44();
  if (name == "bell2x2") return bell_2x2();
  throw InvalidInput("unknown fixture '" + std::string(name) + "'");
}

}  // namespace umeb::fixtures
