#pragma once

// Small dense complex linear algebra: the matrix type behind the state/matrix
// correspondence, the Hilbert-Schmidt inner product, Jacobi-based Hermitian
// eigensolver and SVD, and subspace complements in the matrix space.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "umeb/error.hpp"

namespace umeb {

using Complex = std::complex<double>;

/// Default tolerance for rank and orthogonality decisions.
inline constexpr double kDefaultTol = 1e-9;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw InvalidInput("matrix dimensions must be positive");
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw InvalidInput("matrix dimensions must be positive");
    if (data_.size() != rows * cols) {
      throw InvalidInput("matrix entry count " + std::to_string(data_.size()) + " != rows*cols = " +
                         std::to_string(rows * cols));
    }
    for (const auto& z : data_) {
      if (!is_finite(z)) throw InvalidInput("matrix entries must be finite");
    }
  }

  static ComplexMatrix identity(std::size_t n) { return padded_identity(n, n); }

  /// Identity on the leading min(rows, cols) diagonal, zeros elsewhere.
  static ComplexMatrix padded_identity(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) m(i, i) = 1.0;
    return m;
  }

  /// Matrix unit E_{r,c}.
  static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c) {
    ComplexMatrix m(rows, cols);
    m(r, c) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  bool same_shape(const ComplexMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

inline std::string shape_string(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

/// Tr(A^dagger B).
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) {
    throw DimensionMismatch("hs_inner: incompatible shapes " + shape_string(a) + " and " + shape_string(b));
  }
  Complex acc = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

inline double frobenius_norm_sq(const ComplexMatrix& a) {
  double acc = 0.0;
  for (const auto& z : a.data()) acc += std::norm(z);
  return acc;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("multiply: incompatible shapes " + shape_string(a) + " and " + shape_string(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

/// Permutation matrix P with P(i, perm[i]) = 1, so (P A) row i is row perm[i] of A.
inline ComplexMatrix permutation_matrix(std::span<const std::size_t> perm) {
  ComplexMatrix p(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p(i, perm[i]) = 1.0;
  return p;
}

namespace detail {

// Unitary G acting on coordinates (p, q) that diagonalizes the Hermitian block
// [[a, h], [conj(h), b]] via G^dagger H G. Stored as its four entries.
struct Rotation {
  Complex pp, pq, qp, qq;
};

inline Rotation jacobi_rotation(double a, double b, Complex h) {
  const double g = std::abs(h);
  const Complex phase = std::conj(h) / g;  // e^{-i arg h}
  const double zeta = (b - a) / (2.0 * g);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  return {c, s, -s * phase, c * phase};
}

}  // namespace detail

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column i is the eigenvector of values[i]
};

/// Cyclic Jacobi eigensolver for a Hermitian matrix. Only the upper triangle
/// and real part of the diagonal are trusted.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& h_in, int max_sweeps = 100) {
  if (h_in.rows() != h_in.cols()) throw DimensionMismatch("hermitian_eigen: matrix is " + shape_string(h_in));
  const std::size_t n = h_in.rows();
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = h_in(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = h_in(i, j);
      h(j, i) = std::conj(h_in(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::sqrt(frobenius_norm_sq(h));

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(h(p, q));
    if (off == 0.0 || std::sqrt(off) <= 1e-16 * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex hpq = h(p, q);
        if (std::abs(hpq) <= 1e-300) continue;
        const auto g = detail::jacobi_rotation(h(p, p).real(), h(q, q).real(), hpq);
        // H <- H G
        for (std::size_t k = 0; k < n; ++k) {
          const Complex kp = h(k, p), kq = h(k, q);
          h(k, p) = kp * g.pp + kq * g.qp;
          h(k, q) = kp * g.pq + kq * g.qq;
        }
        // H <- G^dagger H
        for (std::size_t k = 0; k < n; ++k) {
          const Complex pk = h(p, k), qk = h(q, k);
          h(p, k) = std::conj(g.pp) * pk + std::conj(g.qp) * qk;
          h(q, k) = std::conj(g.pq) * pk + std::conj(g.qq) * qk;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex kp = v(k, p), kq = v(k, q);
          v(k, p) = kp * g.pp + kq * g.qp;
          v(k, q) = kp * g.pq + kq * g.qq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return h(i, i).real() < h(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = h(order[i], order[i]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

namespace detail {

// One-sided Jacobi on the rows of a row-major (m x n) block with m <= n: the
// rotations are exactly those of cyclic Jacobi on A A^dagger, applied to A so
// that small singular values keep full absolute accuracy. Returns squared row
// norms after convergence (the eigenvalues of A A^dagger).
inline std::vector<double> orthogonalize_rows(std::vector<Complex>& a, std::size_t m, std::size_t n,
                                              int max_sweeps = 60) {
  auto row = [&](std::size_t i) { return a.data() + i * n; };
  std::vector<double> norms(m, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) norms[i] += std::norm(row(i)[k]);
    total += norms[i];
  }
  // Rows below roundoff of the whole block carry no resolvable direction;
  // rotating them would never meet the relative orthogonality test.
  const double negligible = 1e-32 * total;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double alpha = norms[p];
        const double beta = norms[q];
        if (alpha <= negligible || beta <= negligible) continue;
        Complex gamma = 0.0;
        const Complex* rp = row(p);
        const Complex* rq = row(q);
        for (std::size_t k = 0; k < n; ++k) gamma += rp[k] * std::conj(rq[k]);
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const auto g = jacobi_rotation(alpha, beta, gamma);
        Complex* wp = row(p);
        Complex* wq = row(q);
        double np = 0.0, nq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = wp[k], y = wq[k];
          wp[k] = std::conj(g.pp) * x + std::conj(g.qp) * y;
          wq[k] = std::conj(g.pq) * x + std::conj(g.qq) * y;
          np += std::norm(wp[k]);
          nq += std::norm(wq[k]);
        }
        norms[p] = np;
        norms[q] = nq;
      }
    }
    if (!rotated) break;
  }
  return norms;
}

}  // namespace detail

/// Singular values in descending order; min(rows, cols) of them.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
  const bool wide = a.rows() <= a.cols();
  const std::size_t m = wide ? a.rows() : a.cols();
  const std::size_t n = wide ? a.cols() : a.rows();
  std::vector<Complex> work;
  if (wide) {
    work.assign(a.data().begin(), a.data().end());
  } else {
    const auto t = adjoint(a);
    work.assign(t.data().begin(), t.data().end());
  }
  auto sq = detail::orthogonalize_rows(work, m, n);
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = std::sqrt(std::max(sq[i], 0.0));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Number of singular values strictly above tol.
inline std::size_t numerical_rank(const ComplexMatrix& a, double tol = kDefaultTol) {
  if (!(tol > 0.0)) throw InvalidInput("numerical_rank: tol must be positive");
  const auto sv = singular_values(a);
  return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [tol](double s) { return s > tol; }));
}

/// Orthonormal family of same-shape matrices, orthonormal under Tr(A^dagger B)
/// (each element has unit Frobenius norm).
class SubspaceBasis {
 public:
  /// Empty subspace of the rows x cols matrix space.
  SubspaceBasis(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) throw InvalidInput("subspace ambient dimensions must be positive");
  }

  /// Checks shapes and that the Gram matrix is the identity within tol.
  SubspaceBasis(std::size_t rows, std::size_t cols, std::vector<ComplexMatrix> elements, double tol = kDefaultTol)
      : SubspaceBasis(rows, cols) {
    for (const auto& e : elements) {
      if (e.rows() != rows || e.cols() != cols) {
        throw DimensionMismatch("subspace element is " + shape_string(e) + ", expected " + std::to_string(rows) +
                                "x" + std::to_string(cols));
      }
    }
    elements_ = std::move(elements);
    const double dev = max_gram_deviation();
    if (dev > tol) {
      throw InvalidInput("subspace elements are not orthonormal: max Gram deviation " + std::to_string(dev));
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t i) const { return elements_[i]; }

  double max_gram_deviation() const {
    double dev = 0.0;
    for (std::size_t i = 0; i < elements_.size(); ++i)
      for (std::size_t j = i; j < elements_.size(); ++j) {
        const Complex g = hs_inner(elements_[i], elements_[j]);
        dev = std::max(dev, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    return dev;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<ComplexMatrix> elements_;
};

/// Orthonormal basis of the orthogonal complement of `span` inside the full
/// rows x cols matrix space. Candidates are the matrix units; at each step the
/// candidate with the largest residual (first in row-major order on ties) is
/// accepted and the others are re-orthogonalized against it. Candidates whose
/// residual drops below tol are discarded.
inline SubspaceBasis orthonormal_complement(const SubspaceBasis& span, double tol = kDefaultTol) {
  const std::size_t rows = span.rows(), cols = span.cols();
  const std::size_t n = rows * cols;
  const std::size_t target = n - std::min(n, span.size());

  std::vector<std::vector<Complex>> cand(n, std::vector<Complex>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) cand[i][i] = 1.0;

  // Two passes of modified Gram-Schmidt against the span.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& s : span.elements()) {
      auto sd = s.data();
      for (auto& v : cand) {
        Complex overlap = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          if (sd[k] != Complex{}) overlap += std::conj(sd[k]) * v[k];
        if (overlap == Complex{}) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (sd[k] != Complex{}) v[k] -= overlap * sd[k];
      }
    }
  }

  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    norms[i] = 0.0;
    for (const auto& z : cand[i]) norms[i] += std::norm(z);
  }
  std::vector<bool> used(n, false);
  std::vector<ComplexMatrix> out;
  out.reserve(target);

  while (out.size() < target) {
    std::size_t best = n;
    double best_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && norms[i] > best_norm) {
        best = i;
        best_norm = norms[i];
      }
    if (best == n || std::sqrt(best_norm) < tol) break;
    used[best] = true;
    std::vector<Complex> q = cand[best];
    const double inv = 1.0 / std::sqrt(best_norm);
    for (auto& z : q) z *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      Complex overlap = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (q[k] != Complex{}) overlap += std::conj(q[k]) * cand[i][k];
      if (overlap == Complex{}) continue;
      double nrm = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (q[k] != Complex{}) cand[i][k] -= overlap * q[k];
        nrm += std::norm(cand[i][k]);
      }
      norms[i] = nrm;
    }
    out.emplace_back(rows, cols, std::move(q));
  }
  if (out.size() != target) {
    throw InvalidInput("orthonormal_complement: found " + std::to_string(out.size()) + " complement vectors, expected " +
                       std::to_string(target) + " (input not numerically orthonormal?)");
  }
  return SubspaceBasis(rows, cols, std::move(out), 1e-8);
}

/// Maximum numerical rank over `trials` random combinations of the subspace
/// basis, with coefficients uniform on [0,1) + i[0,1). Deterministic per seed;
/// a longer run extends the same sample stream, so the result is monotone in
/// trials.
inline std::size_t generic_rank(const SubspaceBasis& subspace, std::size_t trials, std::uint64_t seed,
                                double tol = kDefaultTol) {
  if (trials < 1) throw InvalidInput("generic_rank: trials must be >= 1");
  if (subspace.empty()) return 0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t cap = std::min(subspace.rows(), subspace.cols());
  std::size_t best = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    ComplexMatrix x(subspace.rows(), subspace.cols());
    for (const auto& e : subspace.elements()) {
      const double re = unit(rng);
      const double im = unit(rng);
      const Complex c(re, im);
      auto xd = x.data();
      auto ed = e.data();
      for (std::size_t k = 0; k < xd.size(); ++k) xd[k] += c * ed[k];
    }
    best = std::max(best, numerical_rank(x, tol));
    if (best == cap) break;
  }
  return best;
}

}  // namespace umeb
