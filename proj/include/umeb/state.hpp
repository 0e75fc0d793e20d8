#pragma once

// Bipartite pure states on C^d (x) C^d' and their coefficient matrices.
// A state sum_{k,l} a_{kl} |k>|l'> corresponds to the d x d' matrix with
// entries sqrt(d) a_{kl}; rank is the Schmidt number, and the state is
// maximally entangled iff every singular value of that matrix is 1.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "umeb/linalg.hpp"

namespace umeb {

/// Norm tolerance enforced on validated states.
inline constexpr double kNormTol = 1e-10;

class PureState {
 public:
  /// Validated: lengths, finiteness and unit norm within kNormTol.
  PureState(std::size_t d, std::size_t d_prime, std::vector<Complex> coeffs)
      : PureState(d, d_prime, std::move(coeffs), Unchecked{}) {
    const double n2 = norm_sq();
    if (std::abs(n2 - 1.0) > kNormTol) {
      throw InvalidInput("pure state norm^2 is " + std::to_string(n2) + ", expected 1");
    }
  }

  /// Skips the norm check. Used for verification inputs, where a bad norm is
  /// a finding to report rather than a construction error.
  static PureState unnormalized(std::size_t d, std::size_t d_prime, std::vector<Complex> coeffs) {
    return PureState(d, d_prime, std::move(coeffs), Unchecked{});
  }

  /// |k>|l'>.
  static PureState basis_ket(std::size_t d, std::size_t d_prime, std::size_t k, std::size_t l) {
    std::vector<Complex> c(d * d_prime, 0.0);
    c.at(k * d_prime + l) = 1.0;
    return PureState(d, d_prime, std::move(c));
  }

  /// x (x) y for local vectors; normalizes the product.
  static PureState product(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    std::vector<Complex> c(x.size() * y.size());
    double n2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
      for (std::size_t l = 0; l < y.size(); ++l) {
        c[k * y.size() + l] = x[k] * y[l];
        n2 += std::norm(c[k * y.size() + l]);
      }
    if (n2 == 0.0) throw InvalidInput("product of zero vectors");
    for (auto& z : c) z /= std::sqrt(n2);
    return PureState(x.size(), y.size(), std::move(c));
  }

  std::size_t d() const { return d_; }
  std::size_t d_prime() const { return d_prime_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(std::size_t k, std::size_t l) const { return coeffs_[k * d_prime_ + l]; }

  double norm_sq() const {
    double acc = 0.0;
    for (const auto& z : coeffs_) acc += std::norm(z);
    return acc;
  }

  bool is_normalized() const { return std::abs(norm_sq() - 1.0) <= kNormTol; }

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  struct Unchecked {};

  PureState(std::size_t d, std::size_t d_prime, std::vector<Complex> coeffs, Unchecked)
      : d_(d), d_prime_(d_prime), coeffs_(std::move(coeffs)) {
    if (d == 0 || d_prime == 0) throw InvalidInput("state dimensions must be positive");
    if (d > d_prime) {
      throw InvalidInput("state dimensions require d <= d' (got d=" + std::to_string(d) +
                         ", d'=" + std::to_string(d_prime) + ")");
    }
    if (coeffs_.size() != d * d_prime) {
      throw InvalidInput("state has " + std::to_string(coeffs_.size()) + " coefficients, expected d*d' = " +
                         std::to_string(d * d_prime));
    }
    for (const auto& z : coeffs_) {
      if (!is_finite(z)) throw InvalidInput("state coefficients must be finite");
    }
  }

  std::size_t d_;
  std::size_t d_prime_;
  std::vector<Complex> coeffs_;
};

/// <s|t> on coefficients.
inline Complex inner(const PureState& s, const PureState& t) {
  if (s.d() != t.d() || s.d_prime() != t.d_prime()) throw DimensionMismatch("inner: states differ in dimensions");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) acc += std::conj(s.coeffs()[i]) * t.coeffs()[i];
  return acc;
}

/// sqrt(d) * a_{kl}, without any norm check.
inline ComplexMatrix coefficient_matrix(const PureState& s) {
  const double scale = std::sqrt(static_cast<double>(s.d()));
  std::vector<Complex> e(s.coeffs());
  for (auto& z : e) z *= scale;
  return ComplexMatrix(s.d(), s.d_prime(), std::move(e));
}

inline ComplexMatrix state_to_matrix(const PureState& s) {
  if (!s.is_normalized()) {
    throw InvalidInput("state_to_matrix: state norm^2 is " + std::to_string(s.norm_sq()) + ", expected 1");
  }
  return coefficient_matrix(s);
}

/// Requires Tr(A^dagger A) = d (rows) within a relative 1e-10.
inline PureState matrix_to_state(const ComplexMatrix& a) {
  const double d = static_cast<double>(a.rows());
  const double trace = frobenius_norm_sq(a);
  if (std::abs(trace - d) > kNormTol * d) {
    throw InvalidInput("matrix_to_state: Tr(A^dagger A) = " + std::to_string(trace) + ", expected d = " +
                       std::to_string(a.rows()));
  }
  const double inv = 1.0 / std::sqrt(d);
  std::vector<Complex> c(a.data().begin(), a.data().end());
  for (auto& z : c) z *= inv;
  return PureState(a.rows(), a.cols(), std::move(c));
}

inline std::size_t schmidt_number(const PureState& s, double tol = kDefaultTol) {
  return numerical_rank(state_to_matrix(s), tol);
}

struct EntanglementCheck {
  bool maximally_entangled;
  double max_deviation;  // max_i |sigma_i - 1|
};

/// Works on the scaled coefficient matrix directly, so unnormalized inputs are
/// reported rather than rejected.
inline EntanglementCheck is_maximally_entangled(const PureState& s, double tol = kDefaultTol) {
  double dev = 0.0;
  for (double sigma : singular_values(coefficient_matrix(s))) dev = std::max(dev, std::abs(sigma - 1.0));
  return {dev <= tol, dev};
}

}  // namespace umeb
