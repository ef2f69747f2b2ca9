#pragma once

// Ground truth for small instances: the global optimum by enumerating every
// face of the box, a uniform-grid cross-check, and first-order KKT checks.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "boxqp/model.hpp"
#include "boxqp/parallel.hpp"
#include "boxqp/rlt.hpp"

namespace boxqp {

inline constexpr std::size_t kFaceDimensionCap = 12;
inline constexpr std::size_t kGridDimensionCap = 4;
inline constexpr double kDefaultOracleTol = 1e-9;

enum class OracleMethod { face_enumeration, grid };

inline const char* to_string(OracleMethod m) {
  return m == OracleMethod::grid ? "grid" : "face-enumeration";
}

struct GlobalSolution {
  double value = 0.0;
  Vec argmin;
  OracleMethod method = OracleMethod::face_enumeration;
  std::size_t candidates_examined = 0;
  /// Faces whose stationarity system had a kernel of dimension >= 2.
  std::size_t degenerate_faces = 0;
};

namespace detail {

struct FaceCandidate {
  bool found = false;
  bool degenerate = false;
  double value = 0.0;
  Vec x;
};

inline bool lex_less(const Vec& a, const Vec& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return true;
    if (a[j] > b[j]) return false;
  }
  return false;
}

inline bool strictly_inside(double t, double margin) { return t > margin && t < 1.0 - margin; }

/// Face pattern digit per coordinate: 0 -> fixed at 0, 1 -> free, 2 -> fixed at 1.
inline FaceCandidate solve_face(const BoxQpInstance& inst, std::size_t pattern, double tol) {
  const std::size_t n = inst.n();
  std::vector<int> digit(n);
  for (std::size_t j = n; j-- > 0;) {
    digit[j] = static_cast<int>(pattern % 3);
    pattern /= 3;
  }
  std::vector<std::size_t> free;
  Vec x(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (digit[j] == 1) free.push_back(j);
    if (digit[j] == 2) x[j] = 1.0;
  }

  FaceCandidate out;
  if (!free.empty()) {
    const auto& Q = inst.Q();
    const SymMatrix qbb = Q.principal(free);
    // Q_BB x_B = -(c_B + Q_BU e_U)
    Vec rhs(free.size());
    for (std::size_t a = 0; a < free.size(); ++a) {
      double s = inst.c()[free[a]];
      for (std::size_t j = 0; j < n; ++j) {
        if (digit[j] == 2) s += Q(free[a], j);
      }
      rhs[a] = -s;
    }
    const auto sol = solve_min_norm(qbb, rhs, tol);
    if (!sol.consistent) return out;
    out.degenerate = sol.nullity >= 2;

    auto inside = [&](const Vec& y) {
      for (double t : y) {
        if (!strictly_inside(t, tol)) return false;
      }
      return true;
    };
    Vec xb = sol.solution;
    bool ok = inside(xb);
    // q is constant on the stationary affine set; look along each kernel
    // direction for an in-box representative.
    for (std::size_t k = 0; !ok && k < sol.kernel.size(); ++k) {
      const Vec& dir = sol.kernel[k];
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      bool feasible = true;
      for (std::size_t a = 0; a < xb.size() && feasible; ++a) {
        const double d = dir[a];
        if (std::abs(d) <= 1e-14) {
          feasible = strictly_inside(xb[a], tol);
          continue;
        }
        const double t0 = (tol - xb[a]) / d;
        const double t1 = (1.0 - tol - xb[a]) / d;
        lo = std::max(lo, std::min(t0, t1));
        hi = std::min(hi, std::max(t0, t1));
      }
      if (feasible && lo < hi) {
        const double t = 0.5 * (lo + hi);
        Vec y = xb;
        for (std::size_t a = 0; a < y.size(); ++a) y[a] += t * dir[a];
        if (inside(y)) {
          xb = y;
          ok = true;
        }
      }
    }
    if (!ok) return out;
    for (std::size_t a = 0; a < free.size(); ++a) x[free[a]] = xb[a];
  }
  out.found = true;
  out.value = eval_q(inst, x);
  out.x = std::move(x);
  return out;
}

}  // namespace detail

/// Global minimum of q over the box by enumerating all 3^n faces. On each face
/// the stationarity system of the free coordinates is solved in the min-norm
/// sense and the solution kept if it lies strictly inside the face; every
/// vertex is a candidate. Ties go to the lexicographically smallest point.
inline GlobalSolution solve_global(const BoxQpInstance& inst, double tol = kDefaultOracleTol,
                                   std::size_t dimension_cap = kFaceDimensionCap) {
  const std::size_t n = inst.n();
  if (n > dimension_cap) {
    throw Error(Errc::dimension_cap,
                "face enumeration limited to n <= " + std::to_string(dimension_cap));
  }
  const std::size_t total = detail::pow3(n);
  std::vector<detail::FaceCandidate> faces(total);
  parallel_chunks(
      total,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) faces[p] = detail::solve_face(inst, p, tol);
      },
      512);

  GlobalSolution best;
  best.value = std::numeric_limits<double>::infinity();
  bool have = false;
  for (auto& f : faces) {
    if (f.degenerate) ++best.degenerate_faces;
    if (!f.found) continue;
    ++best.candidates_examined;
    if (!have) {
      best.value = f.value;
      best.argmin = f.x;
      have = true;
      continue;
    }
    const double tie = 1e-12 * std::max(1.0, std::abs(best.value));
    if (f.value < best.value - tie ||
        (f.value <= best.value + tie && detail::lex_less(f.x, best.argmin))) {
      best.value = f.value;
      best.argmin = f.x;
    }
  }
  return best;
}

/// Minimum of q over a uniform grid with points_per_axis points per
/// coordinate. Odd counts include 1/2. An upper bound on the global value.
inline GlobalSolution solve_grid(const BoxQpInstance& inst, std::size_t points_per_axis) {
  const std::size_t n = inst.n();
  if (n > kGridDimensionCap) {
    throw Error(Errc::dimension_cap,
                "grid oracle limited to n <= " + std::to_string(kGridDimensionCap));
  }
  if (points_per_axis < 2) throw Error(Errc::invalid_argument, "grid needs at least 2 points per axis");
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= points_per_axis;
  const double step = 1.0 / static_cast<double>(points_per_axis - 1);

  GlobalSolution best;
  best.method = OracleMethod::grid;
  best.value = std::numeric_limits<double>::infinity();
  best.candidates_examined = total;
  Vec x(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t j = n; j-- > 0;) {
      x[j] = static_cast<double>(rem % points_per_axis) * step;
      rem /= points_per_axis;
    }
    const double v = eval_q(inst, x);
    if (v < best.value) {
      best.value = v;
      best.argmin = x;
    }
  }
  return best;
}

struct FirstOrderReport {
  bool ok = false;
  Vec gradient;
  Vec u;  // multipliers of x <= e, nonzero on U
  Vec v;  // multipliers of x >= 0, nonzero on L
};

/// First-order conditions at x: with g = Qx + c, u_j = -g_j on U, v_j = g_j
/// on L. Passes when u, v >= -tol and |g_j| <= tol on B.
inline FirstOrderReport check_first_order(const BoxQpInstance& inst, const Vec& x,
                                          double tol = 1e-7, double partition_tol = kDefaultPartitionTol) {
  if (x.size() != inst.n()) throw Error(Errc::dimension_mismatch, "check_first_order");
  const auto part = partition_of(x, partition_tol);
  const std::size_t n = inst.n();
  FirstOrderReport rep{true, multiply(inst.Q(), x), Vec(n), Vec(n)};
  const double scale = std::max({1.0, max_norm(inst.Q()), max_norm(inst.c())});
  for (std::size_t j = 0; j < n; ++j) {
    rep.gradient[j] += inst.c()[j];
    const double g = rep.gradient[j];
    switch (part.role(j)) {
      case Role::upper:
        rep.u[j] = -g;
        if (rep.u[j] < -tol * scale) rep.ok = false;
        break;
      case Role::lower:
        rep.v[j] = g;
        if (rep.v[j] < -tol * scale) rep.ok = false;
        break;
      case Role::interior:
        if (std::abs(g) > tol * scale) rep.ok = false;
        break;
    }
  }
  return rep;
}

/// Necessary second-order condition: Q restricted to the interior
/// coordinates of x is PSD (vacuous at a vertex).
inline bool check_qbb_psd(const BoxQpInstance& inst, const Vec& x, double tol = kDefaultPsdTol,
                          double partition_tol = kDefaultPartitionTol) {
  if (x.size() != inst.n()) throw Error(Errc::dimension_mismatch, "check_qbb_psd");
  const auto interior = partition_of(x, partition_tol).interior();
  if (interior.empty()) return true;
  return is_psd(inst.Q().principal(interior), tol);
}

}  // namespace boxqp
