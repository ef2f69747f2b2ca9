#pragma once

// The RLT (McCormick) relaxation: closed-form underestimator, exact optimal
// value by enumeration of the {0, 1/2, 1}^n lattice, feasibility of lifted
// points and verification of primal-dual optimality certificates.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "boxqp/model.hpp"
#include "boxqp/parallel.hpp"

namespace boxqp {

inline constexpr double kDefaultCertTol = 1e-8;
inline constexpr std::size_t kLatticeDimensionCap = 12;

/// One violated inequality of a lifted point. Indices are 0-based.
struct Violation {
  std::string constraint;
  std::size_t i = 0;
  std::size_t j = 0;
  double amount = 0.0;
};

struct MembershipReport {
  bool ok = true;
  std::vector<Violation> violations;

  double worst() const {
    double w = 0.0;
    for (const auto& v : violations) w = std::max(w, v.amount);
    return w;
  }
};

/// Residual of one optimality condition against its scaled bound.
struct ConditionResidual {
  std::string name;
  double residual = 0.0;
  double bound = 0.0;
  bool ok = true;
};

struct CertReport {
  bool verified = true;
  std::vector<ConditionResidual> conditions;
  MembershipReport membership;

  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& c : conditions) {
      if (!c.ok) out.push_back(c.name);
    }
    return out;
  }

  bool failed(const std::string& name) const {
    for (const auto& c : conditions) {
      if (c.name == name) return !c.ok;
    }
    return false;
  }

  void add(std::string name, double residual, double bound) {
    const bool ok = residual <= bound;
    conditions.push_back({std::move(name), residual, bound, ok});
    verified = verified && ok;
  }
};

struct RltSolution {
  double value = 0.0;
  Vec argmin_x;
  SymMatrix argmin_X;
  std::size_t lattice_minimizers = 0;
};

namespace detail {

inline double ell_r_unchecked(const BoxQpInstance& inst, const double* x) {
  const auto& q = inst.Q();
  const std::size_t n = inst.n();
  double quad = 0.0;
  double lin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lin += inst.c()[i] * x[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double qij = q(i, j);
      if (qij > 0.0) {
        quad += qij * std::max(0.0, x[i] + x[j] - 1.0);
      } else if (qij < 0.0) {
        quad += qij * std::min(x[i], x[j]);
      }
    }
  }
  return 0.5 * quad + lin;
}

inline std::size_t pow3(std::size_t n) {
  std::size_t p = 1;
  for (std::size_t k = 0; k < n; ++k) p *= 3;
  return p;
}

/// Lattice point number `index` in row-major base-3 order; digit d maps to d/2.
inline void lattice_point(std::size_t index, std::size_t n, double* x) {
  for (std::size_t j = n; j-- > 0;) {
    x[j] = 0.5 * static_cast<double>(index % 3);
    index /= 3;
  }
}

}  // namespace detail

/// Best value of the RLT relaxation with x pinned (piecewise-linear, convex).
inline double ell_r(const BoxQpInstance& inst, const Vec& x) {
  if (x.size() != inst.n()) throw Error(Errc::dimension_mismatch, "ell_r point dimension");
  require_in_box(x, 1e-12, "ell_r");
  return detail::ell_r_unchecked(inst, x.view().data());
}

/// Lifted matrix attaining ell_r(x): each X_ij sits on the McCormick bound
/// selected by the sign of Q_ij.
inline SymMatrix lift_rlt(const BoxQpInstance& inst, const Vec& x) {
  const std::size_t n = inst.n();
  SymMatrix X(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double lo = std::max(0.0, x[i] + x[j] - 1.0);
      X.set(i, j, inst.Q()(i, j) < 0.0 ? std::min(x[i], x[j]) : lo);
    }
  }
  return X;
}

/// Exact RLT optimal value by scanning the 3^n half-integral lattice.
/// Ties (within round-off) go to the lexicographically smallest point.
inline RltSolution solve_rlt(const BoxQpInstance& inst,
                             std::size_t dimension_cap = kLatticeDimensionCap) {
  const std::size_t n = inst.n();
  if (n > dimension_cap) {
    throw Error(Errc::dimension_cap, "lattice enumeration limited to n <= " +
                                         std::to_string(dimension_cap));
  }
  const std::size_t total = detail::pow3(n);
  std::vector<double> values(total);
  parallel_chunks(total, [&](std::size_t begin, std::size_t end) {
    std::vector<double> x(n);
    for (std::size_t idx = begin; idx < end; ++idx) {
      detail::lattice_point(idx, n, x.data());
      values[idx] = detail::ell_r_unchecked(inst, x.data());
    }
  });

  double best = std::numeric_limits<double>::infinity();
  for (double v : values) best = std::min(best, v);
  const double tie = 1e-12 * std::max(1.0, std::abs(best));

  std::size_t first = total;
  std::size_t count = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (values[idx] <= best + tie) {
      if (first == total) first = idx;
      ++count;
    }
  }

  RltSolution out;
  out.argmin_x = Vec(n);
  std::vector<double> x(n);
  detail::lattice_point(first, n, x.data());
  for (std::size_t j = 0; j < n; ++j) out.argmin_x[j] = x[j];
  out.value = values[first];
  out.argmin_X = lift_rlt(inst, out.argmin_x);
  out.lattice_minimizers = count;
  return out;
}

/// 1/2 <Q, X> + c^T x
inline double lifted_objective(const BoxQpInstance& inst, const LiftedPoint& p) {
  return 0.5 * inner(inst.Q(), p.X) + dot(inst.c(), p.x);
}

inline void require_same_dim(const LiftedPoint& p, std::size_t n) {
  if (p.x.size() != n || p.X.size() != n) {
    throw Error(Errc::dimension_mismatch, "lifted point dimension");
  }
}

/// 0 <= x <= e and max{x_i + x_j - 1, 0} <= X_ij <= min{x_i, x_j} for all i <= j.
inline MembershipReport check_fr_membership(std::size_t n, const LiftedPoint& p,
                                            double tol = kDefaultCertTol) {
  require_same_dim(p, n);
  MembershipReport rep;
  auto flag = [&](const char* what, std::size_t i, std::size_t j, double amount) {
    if (amount > tol) {
      rep.ok = false;
      rep.violations.push_back({what, i, j, amount});
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    flag("box_lower", i, i, -p.x[i]);
    flag("box_upper", i, i, p.x[i] - 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double xij = p.X(i, j);
      flag("mccormick_nonneg", i, j, -xij);
      flag("mccormick_sum", i, j, p.x[i] + p.x[j] - 1.0 - xij);
      flag("mccormick_upper", i, j, xij - std::min(p.x[i], p.x[j]));
    }
  }
  return rep;
}

struct MDecomposition {
  SymMatrix M;
  bool in_set = false;
};

/// M = X - x x^T and whether M lies in the box-shaped set that characterizes
/// RLT-feasible completions of x: bounded on B x B, zero elsewhere.
inline MDecomposition decompose_m(const Vec& x, const SymMatrix& X, double tol = kDefaultCertTol) {
  const std::size_t n = x.size();
  if (X.size() != n) throw Error(Errc::dimension_mismatch, "decompose_m");
  require_in_box(x, tol, "decompose_m");
  const auto part = partition_of(x);
  MDecomposition out{SymMatrix(n), true};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double m = X(i, j) - x[i] * x[j];
      out.M.set(i, j, m);
      const bool both_interior =
          part.role(i) == Role::interior && part.role(j) == Role::interior;
      if (both_interior) {
        const double xx = x[i] * x[j];
        const double hi = std::min(x[i] - xx, x[j] - xx);
        const double lo = std::max(-xx, x[i] + x[j] - 1.0 - xx);
        if (m > hi + tol || m < lo - tol) out.in_set = false;
      } else if (std::abs(m) > tol) {
        out.in_set = false;
      }
    }
  }
  return out;
}

/// -e^T u - 1/2 e^T W e
inline double rlt_dual_objective(const RltCert& cert) {
  return -sum(cert.u) - 0.5 * sum_entries(cert.W);
}

namespace detail {

inline void require_cert_dims(const RltCert& c, std::size_t n) {
  if (c.u.size() != n || c.v.size() != n || c.W.size() != n || c.Y.rows() != n ||
      c.Y.cols() != n || c.Z.size() != n) {
    throw Error(Errc::dimension_mismatch, "certificate dimension");
  }
}

inline double negative_part(std::span<const double> values) {
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, -v);
  return worst;
}

/// Stationarity, complementary slackness and sign conditions shared by the
/// RLT and SDP-RLT duals. extra_Q / extra_c carry the SDP multipliers (H, h).
inline void check_rlt_conditions(const BoxQpInstance& inst, const LiftedPoint& p, const RltCert& cert,
                                 const SymMatrix* extra_Q, const Vec* extra_c, double tol,
                                 CertReport& rep) {
  const std::size_t n = inst.n();
  const auto& Q = inst.Q();
  const auto& W = cert.W;
  const auto& Y = cert.Y;
  const auto& Z = cert.Z;

  // Q = W - Y - Y^T + Z (+ H)
  double rq = 0.0;
  double scale_q = std::max({1.0, max_norm(Q), max_norm(W), max_norm(Y), max_norm(Z)});
  if (extra_Q) scale_q = std::max(scale_q, max_norm(*extra_Q));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double rhs = W(i, j) - Y(i, j) - Y(j, i) + Z(i, j);
      if (extra_Q) rhs += (*extra_Q)(i, j);
      rq = std::max(rq, std::abs(Q(i, j) - rhs));
    }
  }
  rep.add("stationarity_Q", rq, tol * scale_q);

  // c = -u + v - W e + Y^T e (+ h)
  double rc = 0.0;
  const double nd = static_cast<double>(n);
  double scale_c = std::max({1.0, max_norm(inst.c()), max_norm(cert.u), max_norm(cert.v),
                             nd * max_norm(W), nd * max_norm(Y)});
  if (extra_c) scale_c = std::max(scale_c, max_norm(*extra_c));
  for (std::size_t i = 0; i < n; ++i) {
    double rhs = -cert.u[i] + cert.v[i];
    for (std::size_t j = 0; j < n; ++j) rhs += -W(i, j) + Y(j, i);
    if (extra_c) rhs += (*extra_c)[i];
    rc = std::max(rc, std::abs(inst.c()[i] - rhs));
  }
  rep.add("stationarity_c", rc, tol * scale_c);

  const auto& x = p.x;
  const auto& X = p.X;
  double su = 0.0, sv = 0.0, sw = 0.0, sy = 0.0, sz = 0.0;
  double gap_w = 0.0, gap_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    su += cert.u[i] * (1.0 - x[i]);
    sv += cert.v[i] * x[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double wslack = X(i, j) - x[i] - x[j] + 1.0;
      const double yslack = x[j] - X(i, j);
      sw += W(i, j) * wslack;
      sy += Y(i, j) * yslack;
      sz += Z(i, j) * X(i, j);
      gap_w = std::max(gap_w, std::abs(wslack));
      gap_y = std::max(gap_y, std::abs(yslack));
    }
  }
  double gap_x = 0.0;
  for (std::size_t i = 0; i < n; ++i) gap_x = std::max(gap_x, std::abs(1.0 - x[i]));
  rep.add("slack_u", std::abs(su), tol * std::max(1.0, max_norm(cert.u) * gap_x));
  rep.add("slack_v", std::abs(sv), tol * std::max(1.0, max_norm(cert.v) * max_norm(x)));
  rep.add("slack_W", std::abs(sw), tol * std::max(1.0, max_norm(W) * gap_w));
  rep.add("slack_Y", std::abs(sy), tol * std::max(1.0, max_norm(Y) * gap_y));
  rep.add("slack_Z", std::abs(sz), tol * std::max(1.0, max_norm(Z) * max_norm(X)));

  rep.add("sign_u", negative_part(cert.u.view()), tol * std::max(1.0, max_norm(cert.u)));
  rep.add("sign_v", negative_part(cert.v.view()), tol * std::max(1.0, max_norm(cert.v)));
  rep.add("sign_W", negative_part(W.view()), tol * std::max(1.0, max_norm(W)));
  rep.add("sign_Y", negative_part(Y.view()), tol * std::max(1.0, max_norm(Y)));
  rep.add("sign_Z", negative_part(Z.view()), tol * std::max(1.0, max_norm(Z)));
}

}  // namespace detail

/// Checks that (p, cert) is a primal-dual optimal pair for the RLT relaxation.
/// A failed check is a verdict in the report, not an exception.
inline CertReport verify_rlt_cert(const BoxQpInstance& inst, const LiftedPoint& p,
                                  const RltCert& cert, double tol = kDefaultCertTol) {
  const std::size_t n = inst.n();
  require_same_dim(p, n);
  detail::require_cert_dims(cert, n);
  CertReport rep;
  detail::check_rlt_conditions(inst, p, cert, nullptr, nullptr, tol, rep);
  rep.membership = check_fr_membership(n, p, tol);
  rep.add("primal_feasible", rep.membership.worst(), tol);
  return rep;
}

/// Dual-feasibility only (stationarity and signs); slackness is ignored.
/// Such a certificate's objective is a lower bound on the RLT value.
inline bool is_rlt_dual_feasible(const BoxQpInstance& inst, const RltCert& cert,
                                 double tol = kDefaultCertTol) {
  const std::size_t n = inst.n();
  detail::require_cert_dims(cert, n);
  CertReport rep;
  detail::check_rlt_conditions(inst, LiftedPoint::rank_one(Vec(n)), cert, nullptr, nullptr, tol,
                               rep);
  for (const auto& c : rep.conditions) {
    if (c.name.rfind("slack_", 0) == 0) continue;
    if (!c.ok) return false;
  }
  return true;
}

}  // namespace boxqp
