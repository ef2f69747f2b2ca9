#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "boxqp/boxqp.hpp"

namespace boxqp::testing {

/// Q = [[-1, -2], [-2, 1]], c = (1, 1): nonconvex, optima at 0 and e.
inline BoxQpInstance two_dim_nonconvex() {
  return BoxQpInstance(SymMatrix::from_rows({{-1.0, -2.0}, {-2.0, 1.0}}), Vec{1.0, 1.0});
}

/// Q = (1/m) e e^T - I, c = 0.
inline BoxQpInstance concave_ones(std::size_t m) {
  SymMatrix q(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) q.set(i, j, 1.0 / static_cast<double>(m) - (i == j ? 1.0 : 0.0));
  }
  return BoxQpInstance(std::move(q), Vec(m));
}

inline SymMatrix random_sym(std::size_t n, CounterRng& rng, double scale = 1.0) {
  SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) a.set(i, j, rng.uniform(-scale, scale));
  }
  return a;
}

inline Vec random_vec(std::size_t n, CounterRng& rng, double lo, double hi) {
  Vec v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

inline BoxQpInstance random_instance(std::size_t n, CounterRng& rng) {
  return BoxQpInstance(random_sym(n, rng), random_vec(n, rng, -1.0, 1.0));
}

inline Vec vertex_from_bits(std::size_t n, std::size_t bits) {
  Vec v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = (bits >> j) & 1U ? 1.0 : 0.0;
  return v;
}

inline double scaled(double tol, double value) { return tol * std::max(1.0, std::abs(value)); }

inline bool has(const std::vector<std::string>& names, const std::string& name) {
  for (const auto& n : names) {
    if (n == name) return true;
  }
  return false;
}

/// Sum of 1/2 Q_ij X_ij + c^T x computed entry by entry.
inline double objective_by_entries(const BoxQpInstance& inst, const Vec& x, const SymMatrix& X) {
  double s = 0.0;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    s += inst.c()[i] * x[i];
    for (std::size_t j = 0; j < inst.n(); ++j) s += 0.5 * inst.Q()(i, j) * X(i, j);
  }
  return s;
}

}  // namespace boxqp::testing
