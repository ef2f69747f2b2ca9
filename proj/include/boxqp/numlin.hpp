#pragma once

// Dense linear algebra for the small (n <= ~50) symmetric problems used
// throughout the library. Symmetric eigendecomposition is cyclic Jacobi.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "boxqp/error.hpp"

namespace boxqp {

inline constexpr double kDefaultPsdTol = 1e-8;

class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n, double value = 0.0) : data_(n, value) {}
  Vec(std::initializer_list<double> values) : data_(values) {}
  explicit Vec(std::vector<double> values) : data_(std::move(values)) {}

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  std::span<const double> view() const noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  static Vec ones(std::size_t n) { return Vec(n, 1.0); }

  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  std::vector<double> data_;
};

/// General dense matrix, row-major.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> view() const noexcept { return data_; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix with full storage. Every write goes through set(), which
/// updates both triangles, so entries(i,j) == entries(j,i) holds exactly.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n, double value = 0.0) : n_(n), data_(n * n, value) {}

  /// Symmetrizes as (A + A^T) / 2.
  static SymMatrix from_mat(const Mat& a) {
    if (a.rows() != a.cols()) {
      throw Error(Errc::dimension_mismatch, "symmetric matrix needs a square source");
    }
    SymMatrix s(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = i; j < a.cols(); ++j) s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
    }
    return s;
  }

  /// Builds from nested rows; the lower triangle is taken from the upper one.
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    SymMatrix s(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != rows.size()) {
        throw Error(Errc::dimension_mismatch, "ragged rows for symmetric matrix");
      }
      std::size_t j = 0;
      for (double v : row) {
        if (j >= i) s.set(i, j, v);
        ++j;
      }
      ++i;
    }
    return s;
  }

  static SymMatrix identity(std::size_t n) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
    return s;
  }

  static SymMatrix outer(const Vec& a) {
    SymMatrix s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i; j < a.size(); ++j) s.set(i, j, a[i] * a[j]);
    }
    return s;
  }

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double value) {
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
  }

  void add(std::size_t i, std::size_t j, double delta) { set(i, j, (*this)(i, j) + delta); }

  Mat to_mat() const {
    Mat m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    }
    return m;
  }

  /// Principal submatrix on the given indices.
  SymMatrix principal(std::span<const std::size_t> idx) const {
    SymMatrix s(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a; b < idx.size(); ++b) s.set(a, b, (*this)(idx[a], idx[b]));
    }
    return s;
  }

  std::span<const double> view() const noexcept { return data_; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Small helpers

inline double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

inline double max_norm(const Vec& v) { return max_abs(v.view()); }
inline double max_norm(const Mat& m) { return max_abs(m.view()); }
inline double max_norm(const SymMatrix& m) { return max_abs(m.view()); }

inline double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(Errc::dimension_mismatch, "dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Trace inner product <A, B> = sum_ij A_ij B_ij.
template <typename A, typename B>
double inner(const A& a, const B& b) {
  auto x = a.view();
  auto y = b.view();
  if (x.size() != y.size()) throw Error(Errc::dimension_mismatch, "trace inner product");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Vec multiply(const SymMatrix& a, const Vec& x) {
  if (a.size() != x.size()) throw Error(Errc::dimension_mismatch, "matrix-vector product");
  Vec y(x.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline double sum(const Vec& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

/// e^T A e
template <typename M>
double sum_entries(const M& m) {
  auto v = m.view();
  return std::accumulate(v.begin(), v.end(), 0.0);
}

// ---------------------------------------------------------------------------
// Eigendecomposition

struct EigenDecomposition {
  Vec values;   // ascending
  Mat vectors;  // column k pairs with values[k]
};

/// Cyclic Jacobi rotations on a symmetric matrix. Throws numerical_failure
/// when the off-diagonal mass has not vanished after max_sweeps sweeps.
inline EigenDecomposition eig_sym(const SymMatrix& input, int max_sweeps = 100) {
  const std::size_t n = input.size();
  if (n == 0) return {Vec{}, Mat{}};

  Mat a = input.to_mat();
  Mat v = Mat::identity(n);

  auto off_norm2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    }
    return s;
  };
  double total2 = 0.0;
  for (double x : a.view()) total2 += x * x;
  const double stop = 1e-26 * total2;

  bool converged = off_norm2() <= stop;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Rotation angle zeroing a(p,q); t = tan(theta), smaller root.
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm2() <= stop;
  }
  if (!converged) {
    throw Error(Errc::numerical_failure, "Jacobi eigensolver did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition out{Vec(n), Mat(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline double min_eigenvalue(const SymMatrix& a) {
  if (a.size() == 0) return 0.0;
  return eig_sym(a).values[0];
}

/// lambda_min(A) >= -tol * max(1, ||A||_max)
inline bool is_psd(const SymMatrix& a, double tol = kDefaultPsdTol) {
  if (tol < 0.0) throw Error(Errc::invalid_argument, "negative PSD tolerance");
  if (a.size() == 0) return true;
  return min_eigenvalue(a) >= -tol * std::max(1.0, max_norm(a));
}

struct MinNormSolution {
  Vec solution;
  bool consistent = false;
  std::size_t nullity = 0;
  /// Eigenvectors spanning the numerical kernel, one per entry.
  std::vector<Vec> kernel;
};

/// Minimum-norm least-squares solve of A x = b through the spectral
/// pseudo-inverse. Eigenvalues with |lambda| <= tol * max(1, ||A||_max) are
/// treated as zero.
inline MinNormSolution solve_min_norm(const SymMatrix& a, const Vec& b, double tol) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(Errc::dimension_mismatch, "solve_min_norm");
  MinNormSolution out{Vec(n), false, 0, {}};
  if (n == 0) {
    out.consistent = true;
    return out;
  }
  const auto eig = eig_sym(a);
  const double cutoff = tol * std::max(1.0, max_norm(a));
  for (std::size_t k = 0; k < n; ++k) {
    double proj = 0.0;
    for (std::size_t i = 0; i < n; ++i) proj += eig.vectors(i, k) * b[i];
    if (std::abs(eig.values[k]) <= cutoff) {
      ++out.nullity;
      Vec kv(n);
      for (std::size_t i = 0; i < n; ++i) kv[i] = eig.vectors(i, k);
      out.kernel.push_back(std::move(kv));
      continue;
    }
    const double coef = proj / eig.values[k];
    for (std::size_t i = 0; i < n; ++i) out.solution[i] += coef * eig.vectors(i, k);
  }
  const Vec ax = multiply(a, out.solution);
  double resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::abs(ax[i] - b[i]));
  out.consistent = resid <= tol * std::max(1.0, max_norm(b));
  return out;
}

}  // namespace boxqp
