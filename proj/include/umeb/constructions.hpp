#pragma once

// UMEB constructions in C^d (x) C^d' (d < d'):
//
//  * hole patterns: d ignored entries, one per row, in N < d columns. The
//    pattern is permuted into a staircase (hole column b_i of row i with
//    b_0 = 0 and steps of 0 or 1), each state walks the columns cyclically
//    skipping the hole of its row, and the result is pulled back through the
//    inverse permutations. Gives d(d'-1) states.
//  * partitions: d' = a_1 + ... + a_s + r with a_i >= d and 0 < r < d. Each
//    block of a_{j+1} columns carries d*a_{j+1} cyclic-shift states, and the
//    last r columns stay empty. Gives d(d'-r) states.
//  * direct sums of bases on disjoint column blocks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "umeb/state.hpp"

namespace umeb {

/// exp(2*pi*i*power/d), exponent reduced mod d first.
inline Complex root_of_unity(std::size_t d, std::size_t power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % d) / static_cast<double>(d);
  return std::polar(1.0, angle);
}

struct Hole {
  std::size_t row;
  std::size_t col;
  friend bool operator==(const Hole&, const Hole&) = default;
};

class HolePattern {
 public:
  HolePattern(std::size_t d, std::size_t d_prime, std::vector<Hole> holes)
      : d_(d), d_prime_(d_prime), holes_(std::move(holes)) {
    if (d < 2) throw InvalidInput("hole pattern requires d >= 2");
    if (d >= d_prime) throw InvalidInput("hole pattern requires d < d'");
    if (holes_.size() != d) {
      throw InvalidInput("hole pattern needs exactly d = " + std::to_string(d) + " holes, got " +
                         std::to_string(holes_.size()));
    }
    column_of_row_.assign(d, d_prime);
    for (const auto& h : holes_) {
      if (h.row >= d) throw InvalidInput("hole row " + std::to_string(h.row) + " out of range");
      if (h.col >= d_prime) throw InvalidInput("hole column " + std::to_string(h.col) + " out of range");
      if (column_of_row_[h.row] != d_prime) throw InvalidInput("duplicate row " + std::to_string(h.row));
      column_of_row_[h.row] = h.col;
    }
    const std::set<std::size_t> cols(column_of_row_.begin(), column_of_row_.end());
    n_columns_ = cols.size();
    if (n_columns_ >= d) {
      throw InvalidInput("N must be < d (holes occupy " + std::to_string(n_columns_) + " columns, d = " +
                         std::to_string(d) + ")");
    }
  }

  std::size_t d() const { return d_; }
  std::size_t d_prime() const { return d_prime_; }
  const std::vector<Hole>& holes() const { return holes_; }
  std::size_t hole_column(std::size_t row) const { return column_of_row_.at(row); }
  std::size_t n_columns() const { return n_columns_; }
  bool is_hole(std::size_t row, std::size_t col) const { return column_of_row_.at(row) == col; }

  friend bool operator==(const HolePattern& a, const HolePattern& b) {
    return a.d_ == b.d_ && a.d_prime_ == b.d_prime_ && a.column_of_row_ == b.column_of_row_;
  }

 private:
  std::size_t d_;
  std::size_t d_prime_;
  std::vector<Hole> holes_;
  std::vector<std::size_t> column_of_row_;
  std::size_t n_columns_ = 0;
};

/// Uniformly random N in [1, d-1], N distinct columns, each row assigned one
/// of them (so at most N columns end up used). Deterministic for a given rng.
template <class Rng>
HolePattern random_hole_pattern(std::size_t d, std::size_t d_prime, Rng& rng) {
  if (d < 2 || d >= d_prime) throw InvalidInput("random hole pattern requires 2 <= d < d'");
  std::vector<std::size_t> cols(d_prime);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, d - 1)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    std::swap(cols[i], cols[std::uniform_int_distribution<std::size_t>(i, d_prime - 1)(rng)]);
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<Hole> holes;
  for (std::size_t r = 0; r < d; ++r) holes.push_back({r, cols[pick(rng)]});
  return HolePattern(d, d_prime, std::move(holes));
}

/// Staircase normal form of a hole pattern. Canonical row i is original row
/// row_order[i]; canonical column c is original column col_order[c]. With P,
/// Q the matrices below, the hole matrix V maps to P V Q.
struct CanonicalHoleForm {
  std::vector<std::size_t> row_order;
  std::vector<std::size_t> col_order;
  std::vector<std::size_t> b;
  std::size_t n_columns = 0;

  ComplexMatrix row_permutation() const { return permutation_matrix(row_order); }
  ComplexMatrix column_permutation() const { return adjoint(permutation_matrix(col_order)); }

  friend bool operator==(const CanonicalHoleForm&, const CanonicalHoleForm&) = default;
};

namespace detail {

inline void check_permutation(const std::vector<std::size_t>& perm, std::size_t n, const char* what) {
  if (perm.size() != n) throw InvalidInput(std::string(what) + " must have length " + std::to_string(n));
  std::vector<bool> seen(n, false);
  for (auto v : perm) {
    if (v >= n || seen[v]) throw InvalidInput(std::string(what) + " is not a permutation");
    seen[v] = true;
  }
}

}  // namespace detail

/// Throws unless b is a valid staircase for (d = b.size(), d_prime).
inline void check_staircase(const std::vector<std::size_t>& b, std::size_t d_prime) {
  const std::size_t d = b.size();
  if (d < 2) throw InvalidInput("staircase requires d >= 2");
  if (d >= d_prime) throw InvalidInput("staircase requires d < d'");
  if (b[0] != 0) throw InvalidInput("staircase requires b_0 = 0");
  for (std::size_t i = 0; i + 1 < d; ++i) {
    if (b[i + 1] != b[i] && b[i + 1] != b[i] + 1) {
      throw InvalidInput("staircase requires b_{i+1} - b_i in {0, 1} (violated at i = " + std::to_string(i) + ")");
    }
  }
  if (b[d - 1] + 1 >= d) throw InvalidInput("N must be < d");
}

/// Rows are grouped by hole column, groups ordered by the first row carrying
/// that column, original order kept inside a group. Hole columns go to
/// 0..N-1 in group order; the other columns follow in their original order.
inline CanonicalHoleForm canonicalize_holes(const HolePattern& p) {
  const std::size_t d = p.d();
  std::vector<std::size_t> distinct;
  for (std::size_t r = 0; r < d; ++r) {
    const auto c = p.hole_column(r);
    if (std::find(distinct.begin(), distinct.end(), c) == distinct.end()) distinct.push_back(c);
  }
  CanonicalHoleForm f;
  f.n_columns = distinct.size();
  for (std::size_t g = 0; g < distinct.size(); ++g)
    for (std::size_t r = 0; r < d; ++r)
      if (p.hole_column(r) == distinct[g]) {
        f.row_order.push_back(r);
        f.b.push_back(g);
      }
  f.col_order = distinct;
  for (std::size_t c = 0; c < p.d_prime(); ++c)
    if (std::find(distinct.begin(), distinct.end(), c) == distinct.end()) f.col_order.push_back(c);
  return f;
}

/// Checks that a user-supplied form really maps `p` onto the staircase f.b.
inline void check_canonical_form(const HolePattern& p, const CanonicalHoleForm& f) {
  detail::check_permutation(f.row_order, p.d(), "row permutation");
  detail::check_permutation(f.col_order, p.d_prime(), "column permutation");
  check_staircase(f.b, p.d_prime());
  std::vector<std::size_t> col_inverse(p.d_prime());
  for (std::size_t c = 0; c < p.d_prime(); ++c) col_inverse[f.col_order[c]] = c;
  for (std::size_t i = 0; i < p.d(); ++i) {
    if (col_inverse[p.hole_column(f.row_order[i])] != f.b[i]) {
      throw InvalidInput("canonical form does not map the hole of row " + std::to_string(f.row_order[i]) +
                         " to column b_" + std::to_string(i));
    }
  }
  if (f.n_columns != f.b.back() + 1) throw InvalidInput("canonical form column count disagrees with b");
}

/// 1 iff l is the hole column of canonical row k.
inline int hole_indicator(const std::vector<std::size_t>& b, std::size_t k, std::size_t l) {
  if (k >= b.size()) throw InvalidInput("hole_indicator: row " + std::to_string(k) + " out of range");
  return b[k] == l ? 1 : 0;
}

/// Column walk of state j: t_0 = j + 1, and each later row steps one column to
/// the right (cyclically), stepping once more if it lands on that row's hole.
inline std::vector<std::size_t> t_sequence(const std::vector<std::size_t>& b, std::size_t d_prime, std::size_t j) {
  check_staircase(b, d_prime);
  if (j + 2 > d_prime) {
    throw InvalidInput("t_sequence: j = " + std::to_string(j) + " out of range 0..d'-2");
  }
  std::vector<std::size_t> t(b.size());
  t[0] = j + 1;
  for (std::size_t m = 1; m < b.size(); ++m) {
    const std::size_t next = (t[m - 1] + 1) % d_prime;
    t[m] = (next + static_cast<std::size_t>(hole_indicator(b, m, next))) % d_prime;
  }
  return t;
}

class PartitionSpec {
 public:
  /// r is derived as d' - sum(parts).
  PartitionSpec(std::size_t d, std::size_t d_prime, std::vector<std::size_t> parts)
      : d_(d), d_prime_(d_prime), parts_(std::move(parts)) {
    if (d < 2) throw InvalidInput("partition requires d >= 2");
    if (d >= d_prime) throw InvalidInput("partition requires d < d'");
    if (parts_.empty()) throw InvalidInput("partition needs at least one part (s >= 1)");
    std::size_t sum = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < d) {
        throw InvalidInput("part a_" + std::to_string(i + 1) + " = " + std::to_string(parts_[i]) +
                           " must be >= d = " + std::to_string(d));
      }
      offsets_.push_back(sum);
      sum += parts_[i];
    }
    if (sum >= d_prime) {
      throw InvalidInput("sum of parts " + std::to_string(sum) + " leaves r = d' - sum <= 0; need 0 < r < d");
    }
    r_ = d_prime - sum;
    if (r_ >= d) {
      throw InvalidInput("r = d' - sum of parts = " + std::to_string(r_) + " must be < d = " + std::to_string(d));
    }
  }

  std::size_t d() const { return d_; }
  std::size_t d_prime() const { return d_prime_; }
  const std::vector<std::size_t>& parts() const { return parts_; }
  std::size_t r() const { return r_; }
  /// Column where block j starts (sum of the first j parts).
  const std::vector<std::size_t>& offsets() const { return offsets_; }
  std::size_t member_count() const { return d_ * (d_prime_ - r_); }

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;

 private:
  std::size_t d_;
  std::size_t d_prime_;
  std::vector<std::size_t> parts_;
  std::vector<std::size_t> offsets_;
  std::size_t r_ = 0;
};

enum class ConstructionKind { theorem1, theorem2, composition, fixture };

inline const char* to_string(ConstructionKind k) {
  switch (k) {
    case ConstructionKind::theorem1: return "theorem1";
    case ConstructionKind::theorem2: return "theorem2";
    case ConstructionKind::composition: return "composition";
    case ConstructionKind::fixture: return "fixture";
  }
  return "?";
}

/// How a basis was produced. Composition records nest their two inputs.
struct Provenance {
  ConstructionKind kind = ConstructionKind::fixture;
  std::optional<HolePattern> holes;
  std::optional<CanonicalHoleForm> canonical;
  std::optional<PartitionSpec> partition;
  std::string fixture;
  std::size_t column_offset = 0;
  std::vector<Provenance> inputs;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Ordered list of states on a common C^d (x) C^d' with per-state index
/// labels. Orthonormality is not enforced here; that is what the verifier
/// certifies.
class BasisSet {
 public:
  BasisSet(std::size_t d, std::size_t d_prime, Provenance provenance = {})
      : d_(d), d_prime_(d_prime), provenance_(std::move(provenance)) {
    if (d == 0 || d_prime == 0) throw InvalidInput("basis dimensions must be positive");
  }

  BasisSet(std::size_t d, std::size_t d_prime, std::vector<PureState> states, std::vector<std::vector<int>> labels,
           Provenance provenance)
      : BasisSet(d, d_prime, std::move(provenance)) {
    if (labels.size() != states.size()) throw InvalidInput("basis needs one label per state");
    for (std::size_t i = 0; i < states.size(); ++i) add(std::move(states[i]), std::move(labels[i]));
  }

  void add(PureState s, std::vector<int> label) {
    if (s.d() != d_ || s.d_prime() != d_prime_) {
      throw DimensionMismatch("state dimensions (" + std::to_string(s.d()) + ", " + std::to_string(s.d_prime()) +
                              ") differ from basis (" + std::to_string(d_) + ", " + std::to_string(d_prime_) + ")");
    }
    if (states_.size() + 1 > d_ * d_prime_) throw InvalidInput("basis cannot hold more than d*d' states");
    states_.push_back(std::move(s));
    labels_.push_back(std::move(label));
  }

  std::size_t d() const { return d_; }
  std::size_t d_prime() const { return d_prime_; }
  std::size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }
  const std::vector<PureState>& states() const { return states_; }
  const std::vector<std::vector<int>>& labels() const { return labels_; }
  const PureState& operator[](std::size_t i) const { return states_[i]; }
  const Provenance& provenance() const { return provenance_; }

  friend bool operator==(const BasisSet&, const BasisSet&) = default;

 private:
  std::size_t d_;
  std::size_t d_prime_;
  std::vector<PureState> states_;
  std::vector<std::vector<int>> labels_;
  Provenance provenance_;
};

/// Moves coefficient (m, t) of every state to (row_order[m], col_order[t]).
/// With the orders of a CanonicalHoleForm this is the pullback
/// (P^-1 (x) Q^-1) from staircase coordinates to the original ones.
inline BasisSet permute_basis(const BasisSet& basis, const std::vector<std::size_t>& row_order,
                              const std::vector<std::size_t>& col_order, Provenance provenance) {
  detail::check_permutation(row_order, basis.d(), "row permutation");
  detail::check_permutation(col_order, basis.d_prime(), "column permutation");
  BasisSet out(basis.d(), basis.d_prime(), std::move(provenance));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& s = basis[i];
    std::vector<Complex> c(s.coeffs().size(), 0.0);
    for (std::size_t m = 0; m < s.d(); ++m)
      for (std::size_t t = 0; t < s.d_prime(); ++t) c[row_order[m] * s.d_prime() + col_order[t]] = s.coeff(m, t);
    out.add(PureState::unnormalized(s.d(), s.d_prime(), std::move(c)), basis.labels()[i]);
  }
  return out;
}

/// States (1/sqrt d) sum_m w^{nm} |m>|t_{mj}> on the staircase b, labels (j, n),
/// ordered by j then n.
inline BasisSet theorem1_canonical(const std::vector<std::size_t>& b, std::size_t d_prime) {
  check_staircase(b, d_prime);
  const std::size_t d = b.size();
  Provenance prov;
  prov.kind = ConstructionKind::theorem1;
  std::vector<Hole> holes;
  for (std::size_t i = 0; i < d; ++i) holes.push_back({i, b[i]});
  prov.holes = HolePattern(d, d_prime, std::move(holes));
  CanonicalHoleForm form{std::vector<std::size_t>(d), std::vector<std::size_t>(d_prime), b, b.back() + 1};
  std::iota(form.row_order.begin(), form.row_order.end(), std::size_t{0});
  std::iota(form.col_order.begin(), form.col_order.end(), std::size_t{0});
  prov.canonical = std::move(form);
  BasisSet out(d, d_prime, std::move(prov));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j + 1 < d_prime; ++j) {
    const auto t = t_sequence(b, d_prime, j);
    for (std::size_t n = 0; n < d; ++n) {
      std::vector<Complex> c(d * d_prime, 0.0);
      for (std::size_t m = 0; m < d; ++m) c[m * d_prime + t[m]] = amp * root_of_unity(d, n * m);
      out.add(PureState(d, d_prime, std::move(c)), {static_cast<int>(j), static_cast<int>(n)});
    }
  }
  return out;
}

/// d(d'-1)-member UMEB avoiding the given holes, built in the supplied
/// staircase coordinates and pulled back.
inline BasisSet theorem1_construct(const HolePattern& p, const CanonicalHoleForm& form) {
  check_canonical_form(p, form);
  Provenance prov;
  prov.kind = ConstructionKind::theorem1;
  prov.holes = p;
  prov.canonical = form;
  return permute_basis(theorem1_canonical(form.b, p.d_prime()), form.row_order, form.col_order, std::move(prov));
}

inline BasisSet theorem1_construct(const HolePattern& p) { return theorem1_construct(p, canonicalize_holes(p)); }

/// States (1/sqrt d) sum_m w^{nm} |m>|offset_j + ((l + m) mod a_{j+1})>, labels
/// (l, j, n), ordered by (j, l, n).
inline BasisSet theorem2_construct(const PartitionSpec& spec) {
  const std::size_t d = spec.d(), dp = spec.d_prime();
  Provenance prov;
  prov.kind = ConstructionKind::theorem2;
  prov.partition = spec;
  BasisSet out(d, dp, std::move(prov));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < spec.parts().size(); ++j) {
    const std::size_t a = spec.parts()[j];
    const std::size_t offset = spec.offsets()[j];
    for (std::size_t l = 0; l < a; ++l)
      for (std::size_t n = 0; n < d; ++n) {
        std::vector<Complex> c(d * dp, 0.0);
        for (std::size_t m = 0; m < d; ++m) c[m * dp + offset + (l + m) % a] = amp * root_of_unity(d, n * m);
        out.add(PureState(d, dp, std::move(c)),
                {static_cast<int>(l), static_cast<int>(j), static_cast<int>(n)});
      }
  }
  return out;
}

/// All partition specs of d'. Multisets with non-increasing parts by default;
/// with `ordered`, every composition (block order matters). Sorted by
/// (r, parts) lexicographically.
inline std::vector<PartitionSpec> enumerate_partitions(std::size_t d, std::size_t d_prime, bool ordered = false) {
  if (d < 2) throw InvalidInput("partitions require d >= 2");
  if (d >= d_prime) throw InvalidInput("partitions require d < d'");
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> found;
  std::vector<std::size_t> parts;
  // Parts are emitted in non-increasing order unless `ordered`.
  auto recurse = [&](auto&& self, std::size_t remaining, std::size_t max_part, std::size_t r) -> void {
    if (remaining == 0) {
      found.emplace_back(r, parts);
      return;
    }
    for (std::size_t a = d; a <= std::min(remaining, max_part); ++a) {
      parts.push_back(a);
      self(self, remaining - a, ordered ? d_prime : a, r);
      parts.pop_back();
    }
  };
  for (std::size_t r = 1; r < d; ++r) {
    if (r >= d_prime) break;
    recurse(recurse, d_prime - r, d_prime, r);
  }
  std::sort(found.begin(), found.end());
  std::vector<PartitionSpec> out;
  out.reserve(found.size());
  for (auto& [r, p] : found) out.emplace_back(d, d_prime, std::move(p));
  return out;
}

/// Columns touched (|coefficient| > tol) by any state.
inline std::set<std::size_t> column_support(const BasisSet& basis, double tol = 1e-12) {
  std::set<std::size_t> cols;
  for (const auto& s : basis.states())
    for (std::size_t k = 0; k < s.d(); ++k)
      for (std::size_t l = 0; l < s.d_prime(); ++l)
        if (std::abs(s.coeff(k, l)) > tol) cols.insert(l);
  return cols;
}

/// Union of `left` and `right` with right's columns shifted by column_offset.
/// The output width defaults to the smallest that holds both; an empty side
/// contributes no width, and composing with an empty basis at offset 0
/// returns the other side unchanged.
inline BasisSet compose_direct_sum(const BasisSet& left, const BasisSet& right, std::size_t column_offset,
                                   std::optional<std::size_t> output_width = std::nullopt) {
  if (left.d() != right.d()) {
    throw InvalidInput("compose: d mismatch (" + std::to_string(left.d()) + " vs " + std::to_string(right.d()) + ")");
  }
  if (column_offset == 0 && !output_width) {
    if (left.empty()) return right;
    if (right.empty()) return left;
  }
  std::size_t width = 0;
  if (!left.empty()) width = left.d_prime();
  if (!right.empty()) width = std::max(width, column_offset + right.d_prime());
  if (output_width) {
    if (*output_width < width) {
      throw InvalidInput("compose: declared width " + std::to_string(*output_width) + " < required " +
                         std::to_string(width));
    }
    width = *output_width;
  }
  width = std::max<std::size_t>(width, 1);
  const std::size_t d = left.d();
  if (d > width) throw InvalidInput("compose: output width smaller than d");

  const auto left_cols = column_support(left);
  for (auto c : column_support(right)) {
    if (left_cols.count(c + column_offset)) {
      throw InvalidInput("compose: column supports overlap at column " + std::to_string(c + column_offset));
    }
  }

  Provenance prov;
  prov.kind = ConstructionKind::composition;
  prov.column_offset = column_offset;
  prov.inputs = {left.provenance(), right.provenance()};
  BasisSet out(d, width, std::move(prov));
  auto place = [&](const BasisSet& src, std::size_t offset) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      const auto& s = src[i];
      std::vector<Complex> c(d * width, 0.0);
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < s.d_prime(); ++l) c[k * width + offset + l] = s.coeff(k, l);
      out.add(PureState::unnormalized(d, width, std::move(c)), src.labels()[i]);
    }
  };
  place(left, 0);
  place(right, column_offset);
  return out;
}

}  // namespace umeb
