#pragma once

// Certification of UMEB candidates:
//   (i)   every member is maximally entangled,
//   (ii)  members are orthonormal,
//   (iii) fewer than d*d' members and no maximally entangled state in the
//         orthogonal complement.
// (iii) is certified structurally: every complement matrix has rank < d. A
// seeded random-restart search for a complement element with all singular
// values equal to 1 corroborates it (and can refute, never prove).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "umeb/constructions.hpp"

namespace umeb {

struct VerifyConfig {
  double tol = 1e-9;            // exact-construction checks
  double oracle_tol = 1e-6;     // oracle verdict margin
  std::size_t oracle_restarts = 64;
  std::size_t oracle_iters = 2000;
  std::size_t generic_trials = 50;
  std::uint64_t seed = 0;
};

struct CheckResult {
  bool passed = false;
  double deviation = 0.0;
};

/// max_{i,j} |<phi_i|phi_j> - delta_ij|.
inline CheckResult check_orthonormality(const BasisSet& basis, double tol = kDefaultTol) {
  if (basis.empty()) throw InvalidInput("check_orthonormality: empty basis");
  double dev = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) {
      const Complex g = inner(basis[i], basis[j]);
      dev = std::max(dev, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return {dev <= tol, dev};
}

/// Worst |sigma - 1| over all members.
inline CheckResult check_max_entanglement(const BasisSet& basis, double tol = kDefaultTol) {
  double dev = 0.0;
  for (const auto& s : basis.states()) dev = std::max(dev, is_maximally_entangled(s, tol).max_deviation);
  return {dev <= tol, dev};
}

/// Unit-Frobenius coefficient matrices of the members, as a subspace basis.
inline SubspaceBasis span_of(const BasisSet& basis, double tol = kDefaultTol) {
  std::vector<ComplexMatrix> elems;
  elems.reserve(basis.size());
  for (const auto& s : basis.states()) elems.emplace_back(s.d(), s.d_prime(), s.coeffs());
  return SubspaceBasis(basis.d(), basis.d_prime(), std::move(elems), tol);
}

inline SubspaceBasis complement_of(const BasisSet& basis, double tol = kDefaultTol) {
  return orthonormal_complement(span_of(basis, tol), tol);
}

struct StructuralResult {
  bool passed = false;
  SubspaceBasis complement;
  std::vector<std::size_t> column_support;  // columns any complement element touches
  bool full_support = false;
  std::size_t generic_rank = 0;
  bool extension_exhibited = false;  // a complement element was itself maximally entangled
};

namespace detail {

inline std::vector<std::size_t> support_columns(const SubspaceBasis& sub, double tol) {
  std::set<std::size_t> cols;
  for (const auto& e : sub.elements())
    for (std::size_t r = 0; r < e.rows(); ++r)
      for (std::size_t c = 0; c < e.cols(); ++c)
        if (std::abs(e(r, c)) > tol) cols.insert(c);
  return {cols.begin(), cols.end()};
}

inline bool is_sv1_scaled(const ComplexMatrix& unit_norm_elem, double tol) {
  ComplexMatrix x = unit_norm_elem;
  x *= std::sqrt(static_cast<double>(std::min(x.rows(), x.cols())));
  for (double s : singular_values(x))
    if (std::abs(s - 1.0) > tol) return false;
  return true;
}

}  // namespace detail

/// Requires an orthonormal basis. Passes when the complement's generic rank is
/// below d. When every complement element lives in fewer than d columns that
/// alone bounds the rank; otherwise the bound rests on seeded sampling.
inline StructuralResult structural_unextendibility(const BasisSet& basis, const VerifyConfig& cfg = {}) {
  StructuralResult out{false, complement_of(basis, cfg.tol), {}, false, 0, false};
  const std::size_t d = basis.d();
  out.column_support = detail::support_columns(out.complement, cfg.tol);
  out.full_support = out.column_support.size() == basis.d_prime();
  out.generic_rank = generic_rank(out.complement, std::max<std::size_t>(cfg.generic_trials, 50), cfg.seed, cfg.tol);
  for (const auto& e : out.complement.elements()) {
    if (detail::is_sv1_scaled(e, cfg.tol)) {
      out.extension_exhibited = true;
      break;
    }
  }
  const bool narrow = !out.complement.empty() && out.column_support.size() < d;
  out.passed = !out.extension_exhibited && (narrow || out.generic_rank < d);
  return out;
}

struct OracleResult {
  double best_sigma_min = 0.0;
  std::size_t best_restart = 0;
  std::size_t restarts_run = 0;
  std::vector<Complex> best_coefficients;  // on the complement basis, unit norm
};

namespace detail {

// Sparse view of the complement basis so each objective evaluation only
// touches nonzero entries.
struct SparseElement {
  std::vector<std::size_t> index;
  std::vector<Complex> value;
};

class SigmaMinObjective {
 public:
  explicit SigmaMinObjective(const SubspaceBasis& complement)
      : rows_(complement.rows()), cols_(complement.cols()), work_(rows_ * cols_) {
    for (const auto& e : complement.elements()) {
      SparseElement s;
      auto data = e.data();
      for (std::size_t k = 0; k < data.size(); ++k)
        if (data[k] != Complex{}) {
          s.index.push_back(k);
          s.value.push_back(data[k]);
        }
      elems_.push_back(std::move(s));
    }
  }

  std::size_t dim() const { return elems_.size(); }

  /// Smallest singular value of sum_k c_k E_k rescaled to HS norm sqrt(d).
  double operator()(const std::vector<Complex>& c) {
    std::fill(work_.begin(), work_.end(), Complex{});
    double n2 = 0.0;
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      n2 += std::norm(c[k]);
      const auto& e = elems_[k];
      for (std::size_t i = 0; i < e.index.size(); ++i) work_[e.index[i]] += c[k] * e.value[i];
    }
    if (n2 == 0.0) return 0.0;
    const double scale = std::sqrt(static_cast<double>(std::min(rows_, cols_)) / n2);
    for (auto& z : work_) z *= scale;
    double smallest;
    if (rows_ <= cols_) {
      const auto sq = orthogonalize_rows(work_, rows_, cols_);
      smallest = *std::min_element(sq.begin(), sq.end());
    } else {
      smallest = singular_values(ComplexMatrix(rows_, cols_, work_)).back();
      smallest *= smallest;
    }
    return std::sqrt(std::max(smallest, 0.0));
  }

 private:
  std::size_t rows_, cols_;
  std::vector<SparseElement> elems_;
  std::vector<Complex> work_;
};

inline void normalize(std::vector<Complex>& c) {
  double n2 = 0.0;
  for (const auto& z : c) n2 += std::norm(z);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : c) z *= inv;
}

}  // namespace detail

/// Searches the complement for an element whose singular values are all 1:
/// random restarts, each a derivative-free hill climb on the complex
/// combination coefficients (step 0.5, x0.9 on every rejected move, stop
/// below 1e-7 or after `iters` moves). Restart k draws from its own stream
/// seeded by (seed, k), so the best value is deterministic and monotone in
/// `restarts`. The search ends early once the value reaches 1 - stop_at_tol.
inline OracleResult numeric_unextendibility_oracle(const SubspaceBasis& complement, std::size_t restarts,
                                                   std::size_t iters, std::uint64_t seed,
                                                   double stop_at_tol = 1e-6) {
  OracleResult out;
  if (complement.empty()) return out;
  detail::SigmaMinObjective objective(complement);
  const std::size_t k = objective.dim();
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double dir_scale = 1.0 / std::sqrt(2.0 * static_cast<double>(k));

  for (std::size_t r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r), 0x554d4542u};
    std::mt19937_64 rng(seq);
    std::vector<Complex> c(k);
    for (auto& z : c) z = Complex(gauss(rng), gauss(rng));
    detail::normalize(c);
    double value = objective(c);
    double step = 0.5;
    std::vector<Complex> cand(k);
    for (std::size_t it = 0; it < iters && step >= 1e-7; ++it) {
      for (std::size_t i = 0; i < k; ++i) cand[i] = c[i] + step * dir_scale * Complex(gauss(rng), gauss(rng));
      detail::normalize(cand);
      const double v = objective(cand);
      if (v > value * (1.0 + 1e-12) + 1e-15) {
        c.swap(cand);
        value = v;
      } else {
        step *= 0.9;
      }
    }
    ++out.restarts_run;
    if (r == 0 || value > out.best_sigma_min) {
      out.best_sigma_min = value;
      out.best_restart = r;
      out.best_coefficients = c;
    }
    if (out.best_sigma_min >= 1.0 - stop_at_tol) break;
  }
  return out;
}

inline OracleResult numeric_unextendibility_oracle(const BasisSet& basis, std::size_t restarts, std::size_t iters,
                                                   std::uint64_t seed, double tol = kDefaultTol) {
  return numeric_unextendibility_oracle(complement_of(basis, tol), restarts, iters, seed);
}

/// Largest Schmidt number seen among `trials` random unit vectors of the
/// complement (complex Gaussian coefficients). 0 for an empty complement.
inline std::size_t exhibit_schmidt_ceiling(const BasisSet& basis, std::size_t trials, std::uint64_t seed,
                                           double tol = kDefaultTol) {
  const auto comp = complement_of(basis, tol);
  if (comp.empty()) return 0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::size_t best = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Complex> c(comp.size());
    for (auto& z : c) z = Complex(gauss(rng), gauss(rng));
    detail::normalize(c);
    std::vector<Complex> x(basis.d() * basis.d_prime(), 0.0);
    for (std::size_t k = 0; k < comp.size(); ++k) {
      auto e = comp[k].data();
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += c[k] * e[i];
    }
    const PureState s(basis.d(), basis.d_prime(), std::move(x));
    best = std::max(best, schmidt_number(s, tol));
  }
  return best;
}

enum class Verdict { MEB, UMEB, EXTENDIBLE, NOT_ORTHONORMAL, NOT_MAX_ENTANGLED, INCONCLUSIVE };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::MEB: return "MEB";
    case Verdict::UMEB: return "UMEB";
    case Verdict::EXTENDIBLE: return "EXTENDIBLE";
    case Verdict::NOT_ORTHONORMAL: return "NOT_ORTHONORMAL";
    case Verdict::NOT_MAX_ENTANGLED: return "NOT_MAX_ENTANGLED";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

struct VerificationReport {
  std::size_t d = 0;
  std::size_t d_prime = 0;
  CheckResult orthonormality;
  CheckResult max_entanglement;
  std::size_t member_count = 0;
  // Complement facts are only meaningful once orthonormality passes.
  std::optional<std::size_t> complement_dim;
  std::vector<std::size_t> complement_column_support;
  bool complement_support_full = false;
  std::size_t complement_generic_rank = 0;
  bool structural_unextendible = false;
  double numeric_oracle_max_sigma_min = 0.0;
  std::size_t oracle_restarts_run = 0;
  Verdict verdict = Verdict::NOT_ORTHONORMAL;
  std::string qualifier;
  VerifyConfig config;
};

inline bool is_passing(Verdict v) { return v == Verdict::UMEB || v == Verdict::MEB; }

inline VerificationReport verify_umeb(const BasisSet& basis, const VerifyConfig& cfg = {}) {
  VerificationReport rep;
  rep.d = basis.d();
  rep.d_prime = basis.d_prime();
  rep.config = cfg;
  rep.member_count = basis.size();
  const std::size_t full = basis.d() * basis.d_prime();

  rep.orthonormality = basis.empty() ? CheckResult{true, 0.0} : check_orthonormality(basis, cfg.tol);
  rep.max_entanglement = check_max_entanglement(basis, cfg.tol);
  if (!rep.orthonormality.passed) {
    rep.verdict = Verdict::NOT_ORTHONORMAL;
    return rep;
  }

  bool exhibited = false;
  if (rep.member_count == full) {
    rep.complement_dim = 0;
    rep.structural_unextendible = true;
  } else {
    auto st = structural_unextendibility(basis, cfg);
    rep.complement_dim = st.complement.size();
    rep.complement_column_support = st.column_support;
    rep.complement_support_full = st.full_support;
    rep.complement_generic_rank = st.generic_rank;
    rep.structural_unextendible = st.passed;
    exhibited = st.extension_exhibited;
    const auto oracle =
        numeric_unextendibility_oracle(st.complement, cfg.oracle_restarts, cfg.oracle_iters, cfg.seed, cfg.oracle_tol);
    rep.numeric_oracle_max_sigma_min = oracle.best_sigma_min;
    rep.oracle_restarts_run = oracle.restarts_run;
  }

  if (!rep.max_entanglement.passed) {
    rep.verdict = Verdict::NOT_MAX_ENTANGLED;
  } else if (rep.member_count == full) {
    rep.verdict = Verdict::MEB;
  } else if (exhibited || rep.numeric_oracle_max_sigma_min >= 1.0 - cfg.oracle_tol) {
    rep.verdict = Verdict::EXTENDIBLE;
  } else if (rep.structural_unextendible) {
    rep.verdict = Verdict::UMEB;
  } else {
    rep.verdict = Verdict::INCONCLUSIVE;
    rep.qualifier = "structural check inconclusive; oracle found no extension";
  }
  return rep;
}

struct UpbOptions {
  std::size_t restarts = 200;
  std::size_t iters = 500;
  std::uint64_t seed = 0;
  double tol = 1e-6;  // residual at or below this counts as an orthogonal product state
};

struct UpbResult {
  bool passed = false;      // no orthogonal product state found
  double best_residual = 0; // smallest max_i |<phi_i|a (x) b>| reached
  std::vector<Complex> best_a;
  std::vector<Complex> best_b;
  std::size_t restarts = 0;
};

namespace detail {

struct ProductFactors {
  std::vector<Complex> x;
  std::vector<Complex> y;
};

// Writes a rank-one state as x (x) y with x a unit vector.
inline ProductFactors factor_product(const PureState& s) {
  std::size_t kmax = 0, lmax = 0;
  for (std::size_t k = 0; k < s.d(); ++k)
    for (std::size_t l = 0; l < s.d_prime(); ++l)
      if (std::abs(s.coeff(k, l)) > std::abs(s.coeff(kmax, lmax))) {
        kmax = k;
        lmax = l;
      }
  ProductFactors f{std::vector<Complex>(s.d()), std::vector<Complex>(s.d_prime(), 0.0)};
  double n2 = 0.0;
  for (std::size_t k = 0; k < s.d(); ++k) {
    f.x[k] = s.coeff(k, lmax);
    n2 += std::norm(f.x[k]);
  }
  for (auto& z : f.x) z /= std::sqrt(n2);
  for (std::size_t l = 0; l < s.d_prime(); ++l)
    for (std::size_t k = 0; k < s.d(); ++k) f.y[l] += std::conj(f.x[k]) * s.coeff(k, l);
  return f;
}

inline Complex dot(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

// Minimizer of sum_i w_i |<u_i|v>|^2 over unit v.
inline std::vector<Complex> weighted_min_vector(const std::vector<std::vector<Complex>>& us,
                                                const std::vector<double>& w, double& value) {
  const std::size_t n = us.front().size();
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) h(r, c) += w[i] * us[i][r] * std::conj(us[i][c]);
  const auto eig = hermitian_eigen(h);
  value = eig.values.front();
  std::vector<Complex> v(n);
  for (std::size_t r = 0; r < n; ++r) v[r] = eig.vectors(r, 0);
  return v;
}

}  // namespace detail

/// Searches for a product state a (x) b orthogonal to every input by
/// alternating minimization of sum_i |<phi_i|a (x) b>|^2 (each half-step is a
/// smallest-eigenvector problem) from seeded random starts. Inputs must be
/// pairwise orthogonal product states.
inline UpbResult verify_upb(const std::vector<PureState>& states, const UpbOptions& opt = {}) {
  if (states.empty()) throw InvalidInput("verify_upb: no states");
  const std::size_t d = states.front().d(), dp = states.front().d_prime();
  std::vector<std::vector<Complex>> xs, ys;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    if (s.d() != d || s.d_prime() != dp) throw DimensionMismatch("verify_upb: states differ in dimensions");
    if (schmidt_number(s) != 1) {
      throw InvalidInput("verify_upb: non-product input (state " + std::to_string(i) + " has Schmidt number " +
                         std::to_string(schmidt_number(s)) + ")");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(inner(states[j], s)) > kDefaultTol) {
        throw InvalidInput("verify_upb: states " + std::to_string(j) + " and " + std::to_string(i) +
                           " are not orthogonal");
      }
    auto f = detail::factor_product(s);
    xs.push_back(std::move(f.x));
    ys.push_back(std::move(f.y));
  }

  UpbResult out;
  out.best_residual = 2.0;  // above any attainable overlap
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> w(states.size());
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    std::vector<Complex> a(d), b(dp);
    for (auto& z : a) z = Complex(gauss(rng), gauss(rng));
    for (auto& z : b) z = Complex(gauss(rng), gauss(rng));
    detail::normalize(a);
    detail::normalize(b);
    double prev = 2.0;
    for (std::size_t it = 0; it < opt.iters; ++it) {
      double value = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::norm(detail::dot(ys[i], b));
      a = detail::weighted_min_vector(xs, w, value);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::norm(detail::dot(xs[i], a));
      b = detail::weighted_min_vector(ys, w, value);
      if (value < 1e-30 || prev - value <= 1e-15 * prev) break;
      prev = value;
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      residual = std::max(residual, std::abs(detail::dot(xs[i], a) * detail::dot(ys[i], b)));
    ++out.restarts;
    if (residual < out.best_residual) {
      out.best_residual = residual;
      out.best_a = a;
      out.best_b = b;
    }
  }
  out.passed = out.best_residual > opt.tol;
  return out;
}

}  // namespace umeb
