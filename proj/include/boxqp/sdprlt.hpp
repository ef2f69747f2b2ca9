#pragma once

// SDP-RLT relaxation without a numeric SDP solver: its optimal value is only
// pinned by a verified primal-dual certificate, bounded above by a feasible
// lifted point, or bounded below by a dual-feasible point.

#include <cmath>
#include <string>

#include "boxqp/rlt.hpp"

namespace boxqp {

struct PinnedSdpRltValue {
  double value = 0.0;
  LiftedPoint witness_point;
  SdpRltCert certificate;
};

/// RLT membership plus X - x x^T being PSD.
inline MembershipReport check_frs_membership(const LiftedPoint& p, double tol = kDefaultCertTol) {
  const std::size_t n = p.x.size();
  auto rep = check_fr_membership(n, p, tol);
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) m.set(i, j, p.X(i, j) - p.x[i] * p.x[j]);
  }
  const double lmin = min_eigenvalue(m);
  const double floor = -tol * std::max(1.0, max_norm(m));
  if (lmin < floor) {
    rep.ok = false;
    rep.violations.push_back({"psd_lift", 0, 0, -lmin});
  }
  return rep;
}

namespace detail {

inline void require_sdp_dims(const SdpRltCert& c, std::size_t n) {
  require_cert_dims(c.base, n);
  if (c.h.size() != n || c.H.size() != n) {
    throw Error(Errc::dimension_mismatch, "SDP certificate dimension");
  }
}

inline void check_bordered_psd(const SdpRltCert& cert, double tol, CertReport& rep) {
  const SymMatrix b = cert.bordered();
  const double lmin = min_eigenvalue(b);
  rep.add("psd_bordered", std::max(0.0, -lmin), tol * std::max(1.0, max_norm(b)));
}

}  // namespace detail

/// Checks that (p, cert) is a primal-dual optimal pair for the SDP-RLT
/// relaxation: RLT conditions with the H and h terms added to stationarity,
/// a PSD bordered multiplier, and zero inner product of that multiplier with
/// [[1, x^T], [x, X]].
inline CertReport verify_sdprlt_cert(const BoxQpInstance& inst, const LiftedPoint& p,
                                     const SdpRltCert& cert, double tol = kDefaultCertTol) {
  const std::size_t n = inst.n();
  require_same_dim(p, n);
  detail::require_sdp_dims(cert, n);
  CertReport rep;
  detail::check_rlt_conditions(inst, p, cert.base, &cert.H, &cert.h, tol, rep);
  detail::check_bordered_psd(cert, tol, rep);

  const double slack = cert.beta + 2.0 * dot(cert.h, p.x) + inner(cert.H, p.X);
  const double scale = std::max({1.0, std::abs(cert.beta), max_norm(cert.h), max_norm(cert.H)});
  rep.add("slack_bordered", std::abs(slack), tol * scale);

  rep.membership = check_frs_membership(p, tol);
  rep.add("primal_feasible", rep.membership.worst(), tol);
  return rep;
}

/// -e^T u - 1/2 e^T W e - 1/2 beta
inline double sdprlt_dual_objective(const SdpRltCert& cert) {
  return rlt_dual_objective(cert.base) - 0.5 * cert.beta;
}

/// The SDP-RLT optimal value, established by matching primal and dual values
/// of a verified certificate.
inline PinnedSdpRltValue pin_sdprlt_value(const BoxQpInstance& inst, const LiftedPoint& p,
                                          const SdpRltCert& cert, double tol = kDefaultCertTol) {
  const auto rep = verify_sdprlt_cert(inst, p, cert, tol);
  if (!rep.verified) {
    std::string why;
    for (const auto& name : rep.failed()) why += (why.empty() ? "" : ", ") + name;
    throw Error(Errc::certificate_invalid, "SDP-RLT certificate fails: " + why);
  }
  const double primal = lifted_objective(inst, p);
  const double dual = sdprlt_dual_objective(cert);
  if (std::abs(primal - dual) > tol * std::max(1.0, std::abs(primal))) {
    throw Error(Errc::certificate_invalid, "primal value " + std::to_string(primal) +
                                               " differs from dual value " + std::to_string(dual));
  }
  return {primal, p, cert};
}

/// Objective at an SDP-RLT feasible point: an upper bound on the SDP-RLT value.
inline double sdprlt_upper_bound_from_witness(const BoxQpInstance& inst, const LiftedPoint& p,
                                              double tol = kDefaultCertTol) {
  require_same_dim(p, inst.n());
  const auto rep = check_frs_membership(p, tol);
  if (!rep.ok) {
    const auto& v = rep.violations.front();
    throw Error(Errc::infeasible_witness, "witness violates " + v.constraint + " at (" +
                                              std::to_string(v.i + 1) + "," +
                                              std::to_string(v.j + 1) + ")");
  }
  return lifted_objective(inst, p);
}

/// Objective of a dual-feasible point (stationarity, signs, PSD bordered
/// multiplier): a lower bound on the SDP-RLT value. Slackness is not needed.
inline double sdprlt_lower_bound_from_dual(const BoxQpInstance& inst, const SdpRltCert& cert,
                                           double tol = kDefaultCertTol) {
  const std::size_t n = inst.n();
  detail::require_sdp_dims(cert, n);
  CertReport rep;
  detail::check_rlt_conditions(inst, LiftedPoint::rank_one(Vec(n)), cert.base, &cert.H, &cert.h,
                               tol, rep);
  detail::check_bordered_psd(cert, tol, rep);
  for (const auto& c : rep.conditions) {
    if (c.name.rfind("slack_", 0) == 0) continue;
    if (!c.ok) throw Error(Errc::certificate_invalid, "dual point violates " + c.name);
  }
  return sdprlt_dual_objective(cert);
}

/// Certificate for a convex objective at a box minimizer xhat: H = Q,
/// h = -Q xhat, beta = xhat^T Q xhat, with u and v read off the gradient.
/// The result verifies exactly when Q is PSD and xhat satisfies first-order
/// conditions, so callers must still run verify_sdprlt_cert.
inline SdpRltCert certify_convex(const BoxQpInstance& inst, const Vec& xhat) {
  const std::size_t n = inst.n();
  if (xhat.size() != n) throw Error(Errc::dimension_mismatch, "certify_convex");
  const auto part = partition_of(xhat);
  SdpRltCert cert = SdpRltCert::zeros(n);
  cert.H = inst.Q();
  const Vec qx = multiply(inst.Q(), xhat);
  for (std::size_t i = 0; i < n; ++i) cert.h[i] = -qx[i];
  cert.beta = dot(xhat, qx);
  // c = -u + v + h  =>  v - u = c + Q xhat = gradient
  for (std::size_t i = 0; i < n; ++i) {
    const double g = qx[i] + inst.c()[i];
    if (part.role(i) == Role::upper) cert.base.u[i] = -g;
    if (part.role(i) == Role::lower) cert.base.v[i] = g;
  }
  return cert;
}

}  // namespace boxqp
