#pragma once

// Core value types: BoxQP instances, coordinate partitions, lifted points,
// dual certificates and exactness reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxqp/numlin.hpp"

namespace boxqp {

inline constexpr double kDefaultPartitionTol = 1e-9;

/// min 1/2 x^T Q x + c^T x  subject to  0 <= x <= e.
class BoxQpInstance {
 public:
  BoxQpInstance() = default;
  BoxQpInstance(SymMatrix q, Vec c) : q_(std::move(q)), c_(std::move(c)) {
    if (q_.size() != c_.size()) {
      throw Error(Errc::dimension_mismatch, "Q and c have different dimensions");
    }
    if (c_.empty()) throw Error(Errc::invalid_argument, "instance dimension must be positive");
  }

  static BoxQpInstance zero(std::size_t n) { return {SymMatrix(n), Vec(n)}; }

  std::size_t n() const noexcept { return c_.size(); }
  const SymMatrix& Q() const noexcept { return q_; }
  const Vec& c() const noexcept { return c_; }

  friend bool operator==(const BoxQpInstance&, const BoxQpInstance&) = default;

 private:
  SymMatrix q_;
  Vec c_;
};

enum class Role : std::uint8_t { lower, interior, upper };

/// Disjoint cover (L, B, U) of {0..n-1}: coordinates at 0, strictly inside, at 1.
class IndexPartition {
 public:
  IndexPartition() = default;
  explicit IndexPartition(std::vector<Role> roles) : roles_(std::move(roles)) {}

  /// Validates that the three sets are disjoint and cover {0..n-1}.
  static IndexPartition from_sets(std::size_t n, const std::vector<std::size_t>& lower,
                                  const std::vector<std::size_t>& interior,
                                  const std::vector<std::size_t>& upper) {
    std::vector<int> seen(n, 0);
    std::vector<Role> roles(n, Role::lower);
    auto mark = [&](const std::vector<std::size_t>& set, Role r) {
      for (std::size_t j : set) {
        if (j >= n) throw Error(Errc::invalid_argument, "partition index out of range");
        if (seen[j]++) throw Error(Errc::invalid_argument, "partition sets overlap");
        roles[j] = r;
      }
    };
    mark(lower, Role::lower);
    mark(interior, Role::interior);
    mark(upper, Role::upper);
    for (int s : seen) {
      if (s == 0) throw Error(Errc::invalid_argument, "partition does not cover every index");
    }
    return IndexPartition(std::move(roles));
  }

  std::size_t size() const noexcept { return roles_.size(); }
  Role role(std::size_t j) const { return roles_[j]; }
  const std::vector<Role>& roles() const noexcept { return roles_; }

  std::vector<std::size_t> lower() const { return collect(Role::lower); }
  std::vector<std::size_t> interior() const { return collect(Role::interior); }
  std::vector<std::size_t> upper() const { return collect(Role::upper); }

  bool is_vertex() const {
    for (Role r : roles_) {
      if (r == Role::interior) return false;
    }
    return true;
  }

  friend bool operator==(const IndexPartition&, const IndexPartition&) = default;

 private:
  std::vector<std::size_t> collect(Role r) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < roles_.size(); ++j) {
      if (roles_[j] == r) out.push_back(j);
    }
    return out;
  }

  std::vector<Role> roles_;
};

/// A point (x, X) of the lifted space. Feasibility is checked elsewhere.
struct LiftedPoint {
  Vec x;
  SymMatrix X;

  /// (x, x x^T)
  static LiftedPoint rank_one(const Vec& x) { return {x, SymMatrix::outer(x)}; }

  friend bool operator==(const LiftedPoint&, const LiftedPoint&) = default;
};

/// Multipliers of the RLT dual: u for x <= e, v for x >= 0, W for
/// X - xe^T - ex^T + ee^T >= 0, Y for ex^T - X >= 0, Z for X >= 0.
struct RltCert {
  Vec u;
  Vec v;
  SymMatrix W;
  Mat Y;
  SymMatrix Z;

  static RltCert zeros(std::size_t n) {
    return {Vec(n), Vec(n), SymMatrix(n), Mat(n, n), SymMatrix(n)};
  }

  std::size_t n() const noexcept { return u.size(); }

  friend bool operator==(const RltCert&, const RltCert&) = default;
};

/// RLT multipliers plus the bordered PSD multiplier [[beta, h^T], [h, H]].
struct SdpRltCert {
  RltCert base;
  double beta = 0.0;
  Vec h;
  SymMatrix H;

  static SdpRltCert zeros(std::size_t n) { return {RltCert::zeros(n), 0.0, Vec(n), SymMatrix(n)}; }

  std::size_t n() const noexcept { return base.n(); }

  /// [[beta, h^T], [h, H]] as an (n+1) x (n+1) symmetric matrix.
  SymMatrix bordered() const {
    const std::size_t n = H.size();
    SymMatrix m(n + 1);
    m.set(0, 0, beta);
    for (std::size_t i = 0; i < n; ++i) {
      m.set(0, i + 1, h[i]);
      for (std::size_t j = i; j < n; ++j) m.set(i + 1, j + 1, H(i, j));
    }
    return m;
  }

  friend bool operator==(const SdpRltCert&, const SdpRltCert&) = default;
};

enum class ExactnessLabel { E1, E2, E3, E4, Partial };

inline const char* to_string(ExactnessLabel label) {
  switch (label) {
    case ExactnessLabel::E1: return "E1";
    case ExactnessLabel::E2: return "E2";
    case ExactnessLabel::E3: return "E3";
    case ExactnessLabel::E4: return "E4";
    case ExactnessLabel::Partial: return "PARTIAL";
  }
  return "PARTIAL";
}

/// What is known about the three optimal values of one instance.
/// sdprlt_lower/upper always bracket the SDP-RLT value; sdprlt_value is set
/// only when a verified certificate (or the sandwich) pins it exactly.
struct ExactnessReport {
  double rlt_value = 0.0;
  std::optional<double> global_value;
  std::optional<double> sdprlt_value;
  double sdprlt_lower = 0.0;
  double sdprlt_upper = 0.0;
  bool rlt_exact = false;
  std::optional<bool> sdprlt_exact;
  ExactnessLabel label = ExactnessLabel::Partial;
  std::string detail;
  std::vector<std::string> evidence;
};

/// Sampling controls for the instance generators.
struct ForgeSpec {
  std::uint64_t seed = 0;
  double magnitude = 1.0;
  double density = 1.0;
  double strict_floor = 0.1;

  void validate() const {
    if (!(magnitude > 0.0)) throw Error(Errc::invalid_argument, "magnitude must be positive");
    if (!(density > 0.0 && density <= 1.0)) {
      throw Error(Errc::invalid_argument, "density must lie in (0, 1]");
    }
    if (!(strict_floor > 0.0)) throw Error(Errc::invalid_argument, "strict_floor must be positive");
  }

  friend bool operator==(const ForgeSpec&, const ForgeSpec&) = default;
};

// ---------------------------------------------------------------------------

/// q(x) = 1/2 x^T Q x + c^T x
inline double eval_q(const BoxQpInstance& inst, const Vec& x) {
  if (x.size() != inst.n()) throw Error(Errc::dimension_mismatch, "eval_q point dimension");
  return 0.5 * dot(x, multiply(inst.Q(), x)) + dot(inst.c(), x);
}

inline void require_in_box(const Vec& x, double tol, const char* where) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] >= -tol && x[j] <= 1.0 + tol)) {
      throw Error(Errc::out_of_box, std::string(where) + ": coordinate " + std::to_string(j + 1) +
                                        " = " + std::to_string(x[j]) + " outside [0,1]");
    }
  }
}

inline IndexPartition partition_of(const Vec& x, double tol = kDefaultPartitionTol) {
  require_in_box(x, tol, "partition_of");
  std::vector<Role> roles(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] <= tol) {
      roles[j] = Role::lower;
    } else if (x[j] >= 1.0 - tol) {
      roles[j] = Role::upper;
    } else {
      roles[j] = Role::interior;
    }
  }
  return IndexPartition(std::move(roles));
}

/// Rounds coordinates in L to 0 and in U to 1.
inline Vec snap_to_partition(const Vec& x, const IndexPartition& part) {
  Vec out = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (part.role(j) == Role::lower) out[j] = 0.0;
    if (part.role(j) == Role::upper) out[j] = 1.0;
  }
  return out;
}

/// Vertex with v_j = 0 on L, 1 on U. Requires an empty B.
inline Vec vertex_of(const IndexPartition& part) {
  if (!part.is_vertex()) throw Error(Errc::invalid_argument, "partition has interior coordinates");
  Vec v(part.size());
  for (std::size_t j = 0; j < part.size(); ++j) v[j] = part.role(j) == Role::upper ? 1.0 : 0.0;
  return v;
}

}  // namespace boxqp
