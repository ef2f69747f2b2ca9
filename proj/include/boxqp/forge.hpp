#pragma once

// Instance generators with known relaxation behaviour. Each generator picks
// dual multipliers with a prescribed sign and support pattern, then reads
// (Q, c) off the dual stationarity equations, so the multipliers double as an
// optimality certificate for a designated primal point.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boxqp/model.hpp"
#include "boxqp/rlt.hpp"
#include "boxqp/rng.hpp"
#include "boxqp/sdprlt.hpp"

namespace boxqp {

enum class InstanceKind {
  ExactRlt,
  InexactRlt,
  ExactSdpRlt,
  ExactSdpRltInexactRlt,
  InexactSdpRltFamily,
};

inline const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::ExactRlt: return "exact-rlt";
    case InstanceKind::InexactRlt: return "inexact-rlt";
    case InstanceKind::ExactSdpRlt: return "exact-sdprlt";
    case InstanceKind::ExactSdpRltInexactRlt: return "exact-sdprlt-inexact-rlt";
    case InstanceKind::InexactSdpRltFamily: return "inexact-sdprlt-family";
  }
  return "exact-rlt";
}

inline std::optional<InstanceKind> parse_instance_kind(std::string_view s) {
  for (auto k : {InstanceKind::ExactRlt, InstanceKind::InexactRlt, InstanceKind::ExactSdpRlt,
                 InstanceKind::ExactSdpRltInexactRlt, InstanceKind::InexactSdpRltFamily}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

/// A certificate together with the lifted point it certifies.
struct RltEvidence {
  LiftedPoint point;
  RltCert cert;
  friend bool operator==(const RltEvidence&, const RltEvidence&) = default;
};

struct SdpRltEvidence {
  LiftedPoint point;
  SdpRltCert cert;
  friend bool operator==(const SdpRltEvidence&, const SdpRltEvidence&) = default;
};

struct ForgedInstance {
  BoxQpInstance instance;
  InstanceKind kind = InstanceKind::ExactRlt;
  Vec designated_point;
  IndexPartition partition;
  /// The coordinate k forced to 1/2 in every RLT optimum (inexact-rlt only).
  std::optional<std::size_t> pivot;
  std::optional<RltEvidence> rlt;
  std::optional<SdpRltEvidence> sdprlt;
  /// SDP-RLT feasible point beating the global value (family only).
  std::optional<LiftedPoint> witness;
  ForgeSpec spec;

  friend bool operator==(const ForgedInstance&, const ForgedInstance&) = default;
};

// ---------------------------------------------------------------------------
// Assembly from multipliers

/// Q = W - Y - Y^T + Z
inline SymMatrix assemble_q(const RltCert& m) {
  const std::size_t n = m.n();
  SymMatrix q(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      q.set(i, j, m.W(i, j) - m.Y(i, j) - m.Y(j, i) + m.Z(i, j));
    }
  }
  return q;
}

/// c = -u + v - W e + Y^T e
inline Vec assemble_c(const RltCert& m) {
  const std::size_t n = m.n();
  Vec c(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = -m.u[i] + m.v[i];
    for (std::size_t j = 0; j < n; ++j) s += -m.W(i, j) + m.Y(j, i);
    c[i] = s;
  }
  return c;
}

namespace detail {

using VecMask = bool (*)(Role);
using MatMask = bool (*)(Role, Role);

inline void require_pattern(const Vec& v, const IndexPartition& part, VecMask allowed,
                            const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) throw Error(Errc::invalid_argument, std::string(name) + " must be nonnegative");
    if (!allowed(part.role(i)) && v[i] != 0.0) {
      throw Error(Errc::invalid_argument,
                  std::string(name) + " must vanish at index " + std::to_string(i + 1));
    }
  }
}

template <typename M>
void require_pattern(const M& m, const IndexPartition& part, MatMask allowed, const char* name) {
  const std::size_t n = part.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < 0.0) {
        throw Error(Errc::invalid_argument, std::string(name) + " must be nonnegative");
      }
      if (!allowed(part.role(i), part.role(j)) && m(i, j) != 0.0) {
        throw Error(Errc::invalid_argument, std::string(name) + " must vanish at (" +
                                                std::to_string(i + 1) + "," +
                                                std::to_string(j + 1) + ")");
      }
    }
  }
}

inline void require_dims(const RltCert& m, std::size_t n) {
  if (m.n() != n) throw Error(Errc::dimension_mismatch, "multiplier dimension");
  require_cert_dims(m, n);
}

constexpr bool is_l(Role r) { return r == Role::lower; }
constexpr bool is_b(Role r) { return r == Role::interior; }
constexpr bool is_u(Role r) { return r == Role::upper; }

// Supports of the exact-RLT construction (vertex partition L, U).
inline bool alg1_u(Role r) { return !is_l(r); }
inline bool alg1_v(Role r) { return !is_u(r); }
inline bool alg1_w(Role a, Role b) { return !(is_l(a) && is_l(b)); }
inline bool alg1_y(Role a, Role b) { return !(is_l(a) && is_u(b)); }
inline bool alg1_z(Role a, Role b) { return !(is_u(a) && is_u(b)); }

// Supports shared by the inexact-RLT and both SDP-RLT constructions.
inline bool slack_u(Role r) { return is_u(r); }
inline bool slack_v(Role r) { return is_l(r); }
inline bool slack_y(Role a, Role b) {
  // zero on LB, LU, BB, BU
  if (is_l(a) && !is_l(b)) return false;
  if (is_b(a) && !is_l(b)) return false;
  return true;
}

// Inexact RLT: W zero on LL, LB, BL; Z zero on BU, UB, UU.
inline bool alg2_w(Role a, Role b) {
  if (is_l(a) && (is_l(b) || is_b(b))) return false;
  if (is_b(a) && is_l(b)) return false;
  return true;
}
inline bool alg2_z(Role a, Role b) {
  if (is_b(a) && is_u(b)) return false;
  if (is_u(a) && (is_b(b) || is_u(b))) return false;
  return true;
}

// Exact SDP-RLT: W zero on (B u L)^2, Z zero on (B u U)^2.
inline bool sdp_w(Role a, Role b) { return is_u(a) || is_u(b); }
inline bool sdp_z(Role a, Role b) { return is_l(a) || is_l(b); }

/// Draws for "arbitrary nonnegative" and "strictly positive" parameters.
class ParameterSampler {
 public:
  ParameterSampler(const ForgeSpec& spec, CounterRng rng) : spec_(spec), rng_(rng) {}

  double nonneg() {
    const double value = rng_.uniform(0.0, spec_.magnitude);
    return rng_.bernoulli(spec_.density) ? value : 0.0;
  }

  double strict() { return rng_.uniform(spec_.strict_floor, spec_.strict_floor + spec_.magnitude); }

  Vec vec(const IndexPartition& part, VecMask allowed) {
    Vec out(part.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double value = nonneg();
      if (allowed(part.role(i))) out[i] = value;
    }
    return out;
  }

  /// Full nonnegative draw, symmetrized, then masked on both (i,j) and (j,i).
  SymMatrix sym(const IndexPartition& part, MatMask allowed) {
    const std::size_t n = part.size();
    Mat raw(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) raw(i, j) = nonneg();
    }
    SymMatrix out = SymMatrix::from_mat(raw);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        if (!allowed(part.role(i), part.role(j)) || !allowed(part.role(j), part.role(i))) {
          out.set(i, j, 0.0);
        }
      }
    }
    return out;
  }

  Mat full(const IndexPartition& part, MatMask allowed) {
    const std::size_t n = part.size();
    Mat out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double value = nonneg();
        if (allowed(part.role(i), part.role(j))) out(i, j) = value;
      }
    }
    return out;
  }

  CounterRng& rng() { return rng_; }

 private:
  ForgeSpec spec_;
  CounterRng rng_;
};

enum Stream : std::uint64_t { kU = 1, kV, kW, kY, kZ, kH, kStructure };

inline ParameterSampler sampler(const ForgeSpec& spec, Stream s) {
  return ParameterSampler(spec, CounterRng(spec.seed).split(s));
}

inline void require_interior_index(const IndexPartition& part, std::size_t k) {
  if (k >= part.size() || part.role(k) != Role::interior) {
    throw Error(Errc::invalid_argument, "pivot must belong to the interior set");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Deterministic construction from explicit multipliers

/// Exact RLT relaxation: partition must be a vertex (L, U). The vertex v with
/// v_L = 0, v_U = 1 and the multipliers form an optimal RLT pair.
inline ForgedInstance build_exact_rlt(const IndexPartition& part, const RltCert& m,
                                      const ForgeSpec& spec = {}) {
  const std::size_t n = part.size();
  detail::require_dims(m, n);
  if (!part.is_vertex()) throw Error(Errc::invalid_argument, "exact-rlt needs an L/U partition");
  detail::require_pattern(m.u, part, detail::alg1_u, "u");
  detail::require_pattern(m.v, part, detail::alg1_v, "v");
  detail::require_pattern(m.W, part, detail::alg1_w, "W");
  detail::require_pattern(m.Y, part, detail::alg1_y, "Y");
  detail::require_pattern(m.Z, part, detail::alg1_z, "Z");

  ForgedInstance out;
  out.instance = BoxQpInstance(assemble_q(m), assemble_c(m));
  out.kind = InstanceKind::ExactRlt;
  out.designated_point = vertex_of(part);
  out.partition = part;
  out.rlt = RltEvidence{LiftedPoint::rank_one(out.designated_point), m};
  out.spec = spec;
  return out;
}

/// (x, X) with x = 0 on L, 1/2 on B, 1 on U; X_BU = 1/2, X_UU = 1, zero elsewhere.
inline LiftedPoint half_fractional_point(const IndexPartition& part) {
  const std::size_t n = part.size();
  LiftedPoint p{Vec(n), SymMatrix(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (part.role(i) == Role::interior) p.x[i] = 0.5;
    if (part.role(i) == Role::upper) p.x[i] = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Role a = part.role(i);
      const Role b = part.role(j);
      if (a == Role::upper && b == Role::upper) {
        p.X.set(i, j, 1.0);
      } else if ((a == Role::upper && b == Role::interior) ||
                 (a == Role::interior && b == Role::upper)) {
        p.X.set(i, j, 0.5);
      }
    }
  }
  return p;
}

/// Inexact RLT relaxation: B nonempty, k in B, W_kk > 0 and Z_kk > 0 force
/// x_k = 1/2 at every RLT optimum.
inline ForgedInstance build_inexact_rlt(const IndexPartition& part, std::size_t k,
                                        const RltCert& m, const ForgeSpec& spec = {}) {
  const std::size_t n = part.size();
  detail::require_dims(m, n);
  detail::require_interior_index(part, k);
  detail::require_pattern(m.u, part, detail::slack_u, "u");
  detail::require_pattern(m.v, part, detail::slack_v, "v");
  detail::require_pattern(m.W, part, detail::alg2_w, "W");
  detail::require_pattern(m.Y, part, detail::slack_y, "Y");
  detail::require_pattern(m.Z, part, detail::alg2_z, "Z");
  if (!(m.W(k, k) > 0.0) || !(m.Z(k, k) > 0.0)) {
    throw Error(Errc::invalid_argument, "W_kk and Z_kk must be strictly positive");
  }

  ForgedInstance out;
  out.instance = BoxQpInstance(assemble_q(m), assemble_c(m));
  out.kind = InstanceKind::InexactRlt;
  const LiftedPoint p = half_fractional_point(part);
  out.designated_point = p.x;
  out.partition = part;
  out.pivot = k;
  out.rlt = RltEvidence{p, m};
  out.spec = spec;
  return out;
}

/// Exact SDP-RLT relaxation at xhat: H PSD, h = -H xhat, beta = xhat^T H xhat.
/// With strict_h the construction also requires H positive definite, which
/// makes xhat the unique minimizer and (for non-vertex xhat) the RLT inexact.
inline ForgedInstance build_exact_sdprlt(const Vec& xhat, const RltCert& m, const SymMatrix& H,
                                         bool strict_h, const ForgeSpec& spec = {}) {
  const std::size_t n = xhat.size();
  require_in_box(xhat, kDefaultPartitionTol, "exact-sdprlt point");
  detail::require_dims(m, n);
  if (H.size() != n) throw Error(Errc::dimension_mismatch, "H dimension");
  const auto part = partition_of(xhat);
  const Vec x = snap_to_partition(xhat, part);
  if (strict_h && part.is_vertex()) {
    throw Error(Errc::invalid_argument, "exact-sdprlt-inexact-rlt needs a non-vertex point");
  }
  detail::require_pattern(m.u, part, detail::slack_u, "u");
  detail::require_pattern(m.v, part, detail::slack_v, "v");
  detail::require_pattern(m.W, part, detail::sdp_w, "W");
  detail::require_pattern(m.Y, part, detail::slack_y, "Y");
  detail::require_pattern(m.Z, part, detail::sdp_z, "Z");
  const double lmin = min_eigenvalue(H);
  if (strict_h ? !(lmin > 0.0) : lmin < -kDefaultPsdTol * std::max(1.0, max_norm(H))) {
    throw Error(Errc::invalid_argument, strict_h ? "H must be positive definite" : "H must be PSD");
  }

  SdpRltCert cert{m, 0.0, Vec(n), H};
  const Vec hx = multiply(H, x);
  for (std::size_t i = 0; i < n; ++i) cert.h[i] = -hx[i];
  cert.beta = -dot(cert.h, x);

  SymMatrix q = assemble_q(m);
  Vec c = assemble_c(m);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] += cert.h[i];
    for (std::size_t j = i; j < n; ++j) q.add(i, j, H(i, j));
  }

  ForgedInstance out;
  out.instance = BoxQpInstance(std::move(q), std::move(c));
  out.kind = strict_h ? InstanceKind::ExactSdpRltInexactRlt : InstanceKind::ExactSdpRlt;
  out.designated_point = x;
  out.partition = part;
  out.sdprlt = SdpRltEvidence{LiftedPoint::rank_one(x), cert};
  out.spec = spec;
  return out;
}

// ---------------------------------------------------------------------------
// Seeded generators

/// A^T A with A uniform in [-magnitude, magnitude]; plus strict_floor * I when strict.
inline SymMatrix sample_psd(std::size_t n, const ForgeSpec& spec, bool strict) {
  CounterRng rng = CounterRng(spec.seed).split(detail::kH);
  Mat a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-spec.magnitude, spec.magnitude);
  }
  SymMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a(k, i) * a(k, j);
      h.set(i, j, s);
    }
    if (strict) h.add(i, i, spec.strict_floor);
  }
  return h;
}

inline ForgedInstance gen_exact_rlt(std::size_t n, const std::vector<std::size_t>& lower,
                                    const ForgeSpec& spec) {
  spec.validate();
  if (n == 0) throw Error(Errc::invalid_argument, "n must be positive");
  std::vector<std::size_t> upper;
  std::vector<bool> in_lower(n, false);
  for (std::size_t j : lower) {
    if (j >= n) throw Error(Errc::invalid_argument, "L index out of range");
    in_lower[j] = true;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!in_lower[j]) upper.push_back(j);
  }
  const auto part = IndexPartition::from_sets(n, lower, {}, upper);

  RltCert m;
  m.u = detail::sampler(spec, detail::kU).vec(part, detail::alg1_u);
  m.v = detail::sampler(spec, detail::kV).vec(part, detail::alg1_v);
  m.W = detail::sampler(spec, detail::kW).sym(part, detail::alg1_w);
  m.Y = detail::sampler(spec, detail::kY).full(part, detail::alg1_y);
  m.Z = detail::sampler(spec, detail::kZ).sym(part, detail::alg1_z);
  return build_exact_rlt(part, m, spec);
}

inline ForgedInstance gen_inexact_rlt(std::size_t n, const std::vector<std::size_t>& interior,
                                      const std::vector<std::size_t>& lower, std::size_t k,
                                      const ForgeSpec& spec) {
  spec.validate();
  if (interior.empty()) throw Error(Errc::invalid_argument, "B must be nonempty");
  std::vector<int> used(n, 0);
  for (std::size_t j : interior) {
    if (j >= n) throw Error(Errc::invalid_argument, "B index out of range");
    used[j] = 1;
  }
  for (std::size_t j : lower) {
    if (j >= n) throw Error(Errc::invalid_argument, "L index out of range");
    if (used[j]) throw Error(Errc::invalid_argument, "L and B overlap");
    used[j] = 1;
  }
  std::vector<std::size_t> upper;
  for (std::size_t j = 0; j < n; ++j) {
    if (!used[j]) upper.push_back(j);
  }
  const auto part = IndexPartition::from_sets(n, lower, interior, upper);
  detail::require_interior_index(part, k);

  RltCert m;
  m.u = detail::sampler(spec, detail::kU).vec(part, detail::slack_u);
  m.v = detail::sampler(spec, detail::kV).vec(part, detail::slack_v);
  auto ws = detail::sampler(spec, detail::kW);
  m.W = ws.sym(part, detail::alg2_w);
  m.W.set(k, k, ws.strict());
  m.Y = detail::sampler(spec, detail::kY).full(part, detail::slack_y);
  auto zs = detail::sampler(spec, detail::kZ);
  m.Z = zs.sym(part, detail::alg2_z);
  m.Z.set(k, k, zs.strict());
  return build_inexact_rlt(part, k, m, spec);
}

namespace detail {

inline RltCert sample_sdp_multipliers(const IndexPartition& part, const ForgeSpec& spec) {
  RltCert m;
  m.u = sampler(spec, kU).vec(part, slack_u);
  m.v = sampler(spec, kV).vec(part, slack_v);
  m.W = sampler(spec, kW).sym(part, sdp_w);
  m.Y = sampler(spec, kY).full(part, slack_y);
  m.Z = sampler(spec, kZ).sym(part, sdp_z);
  return m;
}

}  // namespace detail

/// H is zero with probability (1 - density), otherwise A^T A.
inline ForgedInstance gen_exact_sdprlt(const Vec& xhat, const ForgeSpec& spec) {
  spec.validate();
  require_in_box(xhat, kDefaultPartitionTol, "exact-sdprlt point");
  const auto part = partition_of(xhat);
  const std::size_t n = xhat.size();
  CounterRng pick = CounterRng(spec.seed).split(detail::kStructure);
  const SymMatrix H = pick.bernoulli(spec.density) ? sample_psd(n, spec, false) : SymMatrix(n);
  return build_exact_sdprlt(xhat, detail::sample_sdp_multipliers(part, spec), H, false, spec);
}

/// H = A^T A + strict_floor * I, so lambda_min(H) >= strict_floor.
inline ForgedInstance gen_exact_sdprlt_inexact_rlt(const Vec& xhat, const ForgeSpec& spec) {
  spec.validate();
  require_in_box(xhat, kDefaultPartitionTol, "exact-sdprlt-inexact-rlt point");
  const auto part = partition_of(xhat);
  if (part.is_vertex()) {
    throw Error(Errc::invalid_argument, "exact-sdprlt-inexact-rlt needs a non-vertex point");
  }
  const SymMatrix H = sample_psd(xhat.size(), spec, true);
  return build_exact_sdprlt(xhat, detail::sample_sdp_multipliers(part, spec), H, true, spec);
}

// ---------------------------------------------------------------------------
// Concave family with an inexact SDP-RLT relaxation

/// Odd core dimension m used for dimension n (n itself, or n - 1 when even).
inline std::size_t family_core_dim(std::size_t n) { return n % 2 == 1 ? n : n - 1; }

/// Global value 1/2 (k^2/m - k) with m = 2k + 1.
inline double family_optimal_value(std::size_t n) {
  const double m = static_cast<double>(family_core_dim(n));
  const double k = (m - 1.0) / 2.0;
  return 0.5 * (k * k / m - k);
}

/// Objective at the SDP-RLT feasible witness: -m / 8.
inline double family_witness_value(std::size_t n) {
  return -static_cast<double>(family_core_dim(n)) / 8.0;
}

/// Q = (1/m) e e^T - I on the odd core, c = 0, zero-padded for even n.
/// Witness x = e/2, X = 1/4 (1 + 1/(m-1)) I + 1/4 (1 - 1/(m-1)) e e^T on the core.
inline ForgedInstance gen_inexact_sdprlt_family(std::size_t n) {
  if (n < 3) throw Error(Errc::invalid_argument, "family needs n >= 3");
  const std::size_t m = family_core_dim(n);
  const double md = static_cast<double>(m);
  SymMatrix q(n);
  SymMatrix X(n);
  Vec x(n);
  const double diag_coef = 0.25 * (1.0 + 1.0 / (md - 1.0));
  const double ones_coef = 0.25 * (1.0 - 1.0 / (md - 1.0));
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = 0.5;
    for (std::size_t j = i; j < m; ++j) {
      q.set(i, j, 1.0 / md - (i == j ? 1.0 : 0.0));
      X.set(i, j, ones_coef + (i == j ? diag_coef : 0.0));
    }
  }
  ForgedInstance out;
  out.instance = BoxQpInstance(std::move(q), Vec(n));
  out.kind = InstanceKind::InexactSdpRltFamily;
  out.designated_point = x;
  out.partition = partition_of(x);
  out.witness = LiftedPoint{x, X};
  return out;
}

/// Certificate check for the family: closed-form (Q, c), witness feasibility
/// and the witness objective -m/8.
inline CertReport verify_family_claim(const BoxQpInstance& inst, const LiftedPoint& witness,
                                      double tol = kDefaultCertTol) {
  const std::size_t n = inst.n();
  require_same_dim(witness, n);
  CertReport rep;
  if (n < 3) {
    rep.add("family_structure", 1.0, 0.0);
    return rep;
  }
  const auto ref = gen_inexact_sdprlt_family(n);
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diff = std::max(diff, std::abs(inst.c()[i]));
    for (std::size_t j = 0; j < n; ++j) {
      diff = std::max(diff, std::abs(inst.Q()(i, j) - ref.instance.Q()(i, j)));
    }
  }
  rep.add("family_structure", diff, tol);
  rep.membership = check_frs_membership(witness, tol);
  rep.add("witness_feasible", rep.membership.worst(), tol);
  rep.add("witness_value", std::abs(lifted_objective(inst, witness) - family_witness_value(n)),
          tol * std::max(1.0, std::abs(family_witness_value(n))));
  return rep;
}

// ---------------------------------------------------------------------------
// Random structural choices (used when the caller does not fix them)

/// Each index joins L with probability 1/2.
inline std::vector<std::size_t> sample_lower_set(std::size_t n, CounterRng& rng) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (rng.bernoulli(0.5)) out.push_back(j);
  }
  return out;
}

/// Nonempty random subset of {0..n-1}.
inline std::vector<std::size_t> sample_nonempty_set(std::size_t n, CounterRng& rng) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (rng.bernoulli(0.5)) out.push_back(j);
  }
  if (out.empty()) out.push_back(static_cast<std::size_t>(rng.below(n)));
  return out;
}

/// Each coordinate is 0, 1 or uniform in [0.05, 0.95] with probability 1/3.
/// With need_interior at least one coordinate is interior.
inline Vec sample_box_point(std::size_t n, CounterRng& rng, bool need_interior) {
  Vec x(n);
  bool any_interior = false;
  for (std::size_t j = 0; j < n; ++j) {
    switch (rng.below(3)) {
      case 0: x[j] = 0.0; break;
      case 1: x[j] = rng.uniform(0.05, 0.95); any_interior = true; break;
      default: x[j] = 1.0; break;
    }
  }
  if (need_interior && !any_interior) x[rng.below(n)] = rng.uniform(0.05, 0.95);
  return x;
}

// ---------------------------------------------------------------------------
// One entry point for every kind, filling unspecified structure from the seed

struct ForgeRequest {
  InstanceKind kind = InstanceKind::ExactRlt;
  std::size_t n = 0;
  std::optional<IndexPartition> partition;
  std::optional<std::size_t> pivot;
  std::optional<Vec> point;
};

/// Missing choices are drawn from a stream of spec.seed that the multiplier
/// samplers never touch:
///   exact-rlt: each index joins L with probability 1/2, the rest form U;
///   inexact-rlt: B random nonempty, L empty, pivot = smallest index of B;
///   SDP-RLT kinds: point from sample_box_point (a partition fixes the roles
///   and only the interior values are drawn).
inline ForgedInstance forge_instance(const ForgeRequest& req, const ForgeSpec& spec) {
  spec.validate();
  const std::size_t n = req.n;
  if (n == 0) throw Error(Errc::invalid_argument, "n must be positive");
  if (req.partition && req.partition->size() != n) {
    throw Error(Errc::dimension_mismatch, "partition size differs from n");
  }
  if (req.point && req.point->size() != n) throw Error(Errc::dimension_mismatch, "point size differs from n");
  CounterRng rng = CounterRng(spec.seed).split(detail::kStructure + 1);

  auto point_from = [&](bool need_interior) {
    if (req.point) return *req.point;
    if (!req.partition) return sample_box_point(n, rng, need_interior);
    Vec x = snap_to_partition(Vec(n), *req.partition);
    for (std::size_t j : req.partition->interior()) x[j] = rng.uniform(0.05, 0.95);
    return x;
  };

  switch (req.kind) {
    case InstanceKind::ExactRlt: {
      if (req.point) throw Error(Errc::invalid_argument, "exact-rlt takes a partition, not a point");
      if (req.partition) {
        if (!req.partition->is_vertex()) throw Error(Errc::invalid_argument, "exact-rlt needs B empty");
        return gen_exact_rlt(n, req.partition->lower(), spec);
      }
      return gen_exact_rlt(n, sample_lower_set(n, rng), spec);
    }
    case InstanceKind::InexactRlt: {
      if (req.point) throw Error(Errc::invalid_argument, "inexact-rlt takes a partition, not a point");
      std::vector<std::size_t> interior;
      std::vector<std::size_t> lower;
      if (req.partition) {
        interior = req.partition->interior();
        lower = req.partition->lower();
      } else {
        interior = sample_nonempty_set(n, rng);
      }
      if (interior.empty()) throw Error(Errc::invalid_argument, "inexact-rlt needs B nonempty");
      return gen_inexact_rlt(n, interior, lower, req.pivot.value_or(interior.front()), spec);
    }
    case InstanceKind::ExactSdpRlt:
      return gen_exact_sdprlt(point_from(false), spec);
    case InstanceKind::ExactSdpRltInexactRlt:
      return gen_exact_sdprlt_inexact_rlt(point_from(true), spec);
    case InstanceKind::InexactSdpRltFamily: {
      auto out = gen_inexact_sdprlt_family(n);
      out.spec = spec;
      return out;
    }
  }
  throw Error(Errc::invalid_argument, "unknown instance kind");
}

}  // namespace boxqp
