#pragma once

// Combines the oracles with whatever certificates are at hand into an
// E1-E4 exactness label. Without an SDP solver the SDP-RLT value is only ever
// known through certificates, so some instances stay PARTIAL.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "boxqp/forge.hpp"
#include "boxqp/oracle.hpp"
#include "boxqp/rlt.hpp"
#include "boxqp/sdprlt.hpp"

namespace boxqp {

struct ClassifyHints {
  /// Primal-dual pairs that may pin the SDP-RLT value.
  std::vector<SdpRltEvidence> certificates;
  /// SDP-RLT feasible points (upper bounds).
  std::vector<LiftedPoint> witnesses;
  /// SDP-RLT dual-feasible points (lower bounds).
  std::vector<SdpRltCert> dual_points;
};

inline ClassifyHints hints_from(const ForgedInstance& f) {
  ClassifyHints h;
  if (f.sdprlt) h.certificates.push_back(*f.sdprlt);
  if (f.witness) h.witnesses.push_back(*f.witness);
  return h;
}

struct ClassifyOptions {
  double equality_tol = 1e-7;  // scaled by max(1, |global value|)
  double cert_tol = kDefaultCertTol;
  double oracle_tol = kDefaultOracleTol;
};

inline ExactnessReport classify(const BoxQpInstance& inst, const ClassifyHints& hints = {},
                                const ClassifyOptions& opt = {}) {
  const auto rlt = solve_rlt(inst);
  const auto global = solve_global(inst, opt.oracle_tol);

  ExactnessReport rep;
  rep.rlt_value = rlt.value;
  rep.global_value = global.value;
  const double eq = opt.equality_tol * std::max(1.0, std::abs(global.value));
  auto equal = [&](double a, double b) { return std::abs(a - b) <= eq; };

  if (rlt.value > global.value + eq) {
    throw Error(Errc::inconsistent_bounds, "RLT value exceeds the global value");
  }
  rep.rlt_exact = equal(rlt.value, global.value);

  double lower = rlt.value;
  double upper = global.value;
  std::optional<double> pinned;
  if (rep.rlt_exact) {
    pinned = global.value;
    rep.evidence.push_back("sandwich: RLT value equals global value");
  }

  auto try_pin = [&](const SdpRltEvidence& ev, const char* source) {
    if (ev.point.x.size() != inst.n()) return;
    const auto check = verify_sdprlt_cert(inst, ev.point, ev.cert, opt.cert_tol);
    if (!check.verified) {
      rep.evidence.push_back(std::string(source) + ": certificate rejected");
      return;
    }
    try {
      const auto p = pin_sdprlt_value(inst, ev.point, ev.cert, opt.cert_tol);
      if (!pinned) pinned = p.value;
      rep.evidence.push_back(std::string(source) + ": pinned SDP-RLT value " + std::to_string(p.value));
    } catch (const Error&) {
      rep.evidence.push_back(std::string(source) + ": primal and dual values disagree");
    }
  };
  for (const auto& ev : hints.certificates) try_pin(ev, "certificate");
  if (!pinned && is_psd(inst.Q())) {
    const SdpRltCert cert = certify_convex(inst, global.argmin);
    try_pin({LiftedPoint::rank_one(global.argmin), cert}, "convex objective");
  }
  for (const auto& w : hints.witnesses) {
    try {
      const double ub = sdprlt_upper_bound_from_witness(inst, w, opt.cert_tol);
      upper = std::min(upper, ub);
      rep.evidence.push_back("witness: SDP-RLT value <= " + std::to_string(ub));
    } catch (const Error&) {
      rep.evidence.push_back("witness: infeasible, ignored");
    }
  }
  for (const auto& d : hints.dual_points) {
    try {
      const double lb = sdprlt_lower_bound_from_dual(inst, d, opt.cert_tol);
      lower = std::max(lower, lb);
      rep.evidence.push_back("dual point: SDP-RLT value >= " + std::to_string(lb));
    } catch (const Error&) {
      rep.evidence.push_back("dual point: infeasible, ignored");
    }
  }
  if (pinned) {
    lower = *pinned;
    upper = *pinned;
  }

  // R <= RS <= global must hold for everything gathered above.
  if (lower > upper + eq || lower < rlt.value - eq || upper > global.value + eq) {
    throw Error(Errc::inconsistent_bounds, "SDP-RLT bounds contradict the relaxation ordering");
  }
  rep.sdprlt_value = pinned;
  rep.sdprlt_lower = lower;
  rep.sdprlt_upper = upper;

  const bool rs_exact = lower >= global.value - eq;
  const bool rs_inexact = upper < global.value - eq;
  if (rs_exact) rep.sdprlt_exact = true;
  if (rs_inexact) rep.sdprlt_exact = false;

  if (rep.rlt_exact) {
    rep.label = ExactnessLabel::E1;
    rep.detail = "RLT and SDP-RLT relaxations are exact";
  } else if (rs_exact) {
    rep.label = ExactnessLabel::E2;
    rep.detail = "RLT inexact, SDP-RLT exact";
  } else if (rs_inexact && upper <= rlt.value + eq) {
    rep.label = ExactnessLabel::E3;
    rep.detail = "RLT and SDP-RLT values coincide below the global value";
  } else if (rs_inexact && lower > rlt.value + eq) {
    rep.label = ExactnessLabel::E4;
    rep.detail = "SDP-RLT strictly between RLT and global values";
  } else if (rs_inexact) {
    rep.label = ExactnessLabel::Partial;
    rep.detail = "RLT and SDP-RLT inexact; E3 or E4 undetermined";
  } else {
    rep.label = ExactnessLabel::Partial;
    rep.detail = "RLT inexact; SDP-RLT exactness undetermined";
  }
  return rep;
}

}  // namespace boxqp
