// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace boxqp;
using namespace boxqp::testing;

namespace {

// Pinned tolerances.
constexpr double kTolSmallExample = 1e-9;
constexpr double kTolFamily = 1e-10;
constexpr double kTolConcave = 1e-10;
constexpr double kTolExactRlt = 1e-8;     // scaled by max(1, |value|)
constexpr double kGapRlt = 1e-9;
constexpr double kTolExactSdpRlt = 1e-7;  // scaled by max(1, |value|)
constexpr double kTolArgmin = 1e-6;
constexpr double kTolProperty = 1e-10;
constexpr double kTamper = 1e-3;

constexpr double kBudgetSmallExample = 0.1;
constexpr double kBudgetFamily = 1.0;
constexpr double kBudgetRoundTrip = 30.0;

constexpr int kRoundTrips = 200;
constexpr int kPropertyDraws = 1000;
constexpr int kTampersPerKind = 50;

struct Outcome {
  std::vector<std::string> failures;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  int failed = 0;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---------------------------------------------------------------------------

Outcome small_example() {
  Outcome o;
  const auto inst = two_dim_nonconvex();
  const auto g = solve_global(inst);
  o.require(near(g.value, 0.0, kTolSmallExample), "global value " + fmt(g.value));
  const bool at_vertex = g.argmin == Vec{0, 0} || g.argmin == Vec{1, 1};
  o.require(at_vertex, "global argmin not in {0, e}");
  const double center = ell_r(inst, Vec{0.5, 0.5});
  o.require(near(center, -0.25, kTolSmallExample), "ell_r(1/2,1/2) = " + fmt(center));
  const auto r = solve_rlt(inst);
  o.require(near(r.value, -0.25, kTolSmallExample), "RLT value " + fmt(r.value));
  o.require(r.argmin_x == Vec{0.5, 0.5}, "RLT argmin is not (1/2, 1/2)");
  o.summary = "global 0 at a vertex, ell_r(1/2 e) = -1/4 = RLT value at 1/2 e";
  return o;
}

Outcome family() {
  Outcome o;
  struct Case {
    std::size_t n;
    double optimum;
    double witness;
  };
  for (const Case c : {Case{3, -1.0 / 3.0, -3.0 / 8.0}, Case{5, -3.0 / 5.0, -5.0 / 8.0},
                       Case{4, -1.0 / 3.0, -3.0 / 8.0}}) {
    const auto f = gen_inexact_sdprlt_family(c.n);
    const std::string tag = "n=" + std::to_string(c.n) + ": ";
    const double opt = solve_global(f.instance).value;
    o.require(near(opt, c.optimum, kTolFamily), tag + "global value " + fmt(opt));
    o.require(check_frs_membership(*f.witness, kTolFamily).ok, tag + "witness not SDP-RLT feasible");
    double ub = 0.0;
    try {
      ub = sdprlt_upper_bound_from_witness(f.instance, *f.witness, kTolFamily);
    } catch (const Error& e) {
      o.require(false, tag + e.what());
      continue;
    }
    o.require(near(ub, c.witness, kTolFamily), tag + "witness value " + fmt(ub));
    o.require(ub < opt - kTolFamily, tag + "witness does not separate SDP-RLT from the optimum");
  }
  o.summary = "n=3: -1/3 vs -3/8; n=5: -3/5 vs -5/8; n=4 padded: -1/3 vs -3/8";
  return o;
}

Outcome concave() {
  Outcome o;
  const auto inst = concave_ones(3);
  const double center = ell_r(inst, Vec{0.5, 0.5, 0.5});
  o.require(near(center, -0.5, kTolConcave), "ell_r(1/2 e) = " + fmt(center));
  const double r = solve_rlt(inst).value;
  o.require(r <= -0.5 + kTolConcave, "RLT value " + fmt(r));
  const double g = solve_global(inst).value;
  o.require(near(g, -1.0 / 3.0, kTolConcave), "global value " + fmt(g));
  o.require(r < g - kTolConcave, "RLT not strictly below global");
  o.summary = "ell_r(1/2 e) = -1/2 < -1/3 = global value";
  return o;
}

std::vector<std::size_t> random_subset(std::size_t n, CounterRng& rng,
                                       const std::vector<std::size_t>& exclude = {}) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j) {
    bool skip = false;
    for (std::size_t e : exclude) skip = skip || e == j;
    if (!skip && rng.bernoulli(0.5)) out.push_back(j);
  }
  return out;
}

Outcome exact_rlt_round_trip() {
  Outcome o;
  CounterRng rng(1001);
  for (int t = 0; t < kRoundTrips; ++t) {
    const std::size_t n = 2 + rng.below(5);
    const auto lower = random_subset(n, rng);
    const auto f = gen_exact_rlt(n, lower, ForgeSpec{rng.next()});
    const std::string tag = "draw " + std::to_string(t) + ": ";
    o.require(verify_rlt_cert(f.instance, f.rlt->point, f.rlt->cert).verified, tag + "certificate rejected");
    const double qv = eval_q(f.instance, f.designated_point);
    const double tol = kTolExactRlt * std::max(1.0, std::abs(qv));
    const double dual = rlt_dual_objective(f.rlt->cert);
    const double r = solve_rlt(f.instance).value;
    const double g = solve_global(f.instance).value;
    o.require(near(dual, qv, tol), tag + "dual " + fmt(dual) + " vs q(v) " + fmt(qv));
    o.require(near(r, qv, tol), tag + "RLT " + fmt(r) + " vs q(v) " + fmt(qv));
    o.require(near(g, qv, tol), tag + "global " + fmt(g) + " vs q(v) " + fmt(qv));
  }
  o.summary = std::to_string(kRoundTrips) + " draws: certificate verified, dual = q(v) = RLT = global";
  return o;
}

Outcome inexact_rlt_round_trip() {
  Outcome o;
  CounterRng rng(1002);
  for (int t = 0; t < kRoundTrips; ++t) {
    const std::size_t n = 2 + rng.below(5);
    auto interior = random_subset(n, rng);
    if (interior.empty()) interior.push_back(rng.below(n));
    const auto lower = random_subset(n, rng, interior);
    const std::size_t k = interior[rng.below(interior.size())];
    const auto f = gen_inexact_rlt(n, interior, lower, k, ForgeSpec{rng.next()});
    const std::string tag = "draw " + std::to_string(t) + ": ";
    const auto r = solve_rlt(f.instance);
    const double g = solve_global(f.instance).value;
    o.require(r.value < g - kGapRlt, tag + "RLT " + fmt(r.value) + " not below global " + fmt(g));
    o.require(r.argmin_x[k] == 0.5, tag + "lattice argmin has x_k = " + fmt(r.argmin_x[k]));
  }
  o.summary = std::to_string(kRoundTrips) + " draws: RLT < global - 1e-9 and x_k = 1/2 at the lattice argmin";
  return o;
}

Outcome sdprlt_round_trip(bool strict) {
  Outcome o;
  CounterRng rng(strict ? 1004 : 1003);
  for (int t = 0; t < kRoundTrips; ++t) {
    const std::size_t n = 2 + rng.below(5);
    const Vec xhat = sample_box_point(n, rng, strict);
    const ForgeSpec spec{rng.next()};
    const auto f = strict ? gen_exact_sdprlt_inexact_rlt(xhat, spec) : gen_exact_sdprlt(xhat, spec);
    const std::string tag = "draw " + std::to_string(t) + ": ";
    const auto& ev = *f.sdprlt;
    const auto rep = verify_sdprlt_cert(f.instance, ev.point, ev.cert);
    o.require(rep.verified, tag + "certificate rejected");
    const double qx = eval_q(f.instance, xhat);
    const double tol = kTolExactSdpRlt * std::max(1.0, std::abs(qx));
    try {
      const double pinned = pin_sdprlt_value(f.instance, ev.point, ev.cert).value;
      o.require(near(pinned, qx, tol), tag + "pinned " + fmt(pinned) + " vs q " + fmt(qx));
    } catch (const Error& e) {
      o.require(false, tag + e.what());
    }
    const auto g = solve_global(f.instance);
    o.require(near(g.value, qx, tol), tag + "global " + fmt(g.value) + " vs q " + fmt(qx));
    if (strict) {
      const double r = solve_rlt(f.instance).value;
      o.require(r < qx - kGapRlt, tag + "RLT " + fmt(r) + " not below q " + fmt(qx));
      double dist = 0.0;
      for (std::size_t j = 0; j < n; ++j) dist = std::max(dist, std::abs(g.argmin[j] - xhat[j]));
      o.require(dist <= kTolArgmin, tag + "global argmin off by " + fmt(dist));
    }
  }
  o.summary = std::to_string(kRoundTrips) +
              (strict ? " non-vertex draws: pinned = q(x) = global, RLT strictly lower, unique argmin"
                      : " draws: certificate verified, pinned = q(x) = global");
  return o;
}

// Bound on q(grid point) - q(x*) for the grid point nearest x*: with d <= h/2
// per coordinate, g.d + 1/2 d^T Q d <= (h/2)|g|_1 + 1/2 (h/2)^2 sum|Q_ij|.
double grid_gap_bound(const BoxQpInstance& inst, const Vec& x, double h) {
  const Vec qx = multiply(inst.Q(), x);
  double g1 = 0.0;
  double qsum = 0.0;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    g1 += std::abs(qx[i] + inst.c()[i]);
    for (std::size_t j = 0; j < inst.n(); ++j) qsum += std::abs(inst.Q()(i, j));
  }
  return 0.5 * h * g1 + 0.125 * h * h * qsum;
}

Outcome properties() {
  Outcome o;
  CounterRng rng(1005);
  for (int t = 0; t < kPropertyDraws; ++t) {
    const std::size_t n = 1 + rng.below(5);
    const auto inst = random_instance(n, rng);
    const std::string tag = "draw " + std::to_string(t) + ": ";
    const Vec a = random_vec(n, rng, 0.0, 1.0);
    const Vec b = random_vec(n, rng, 0.0, 1.0);
    Vec mid(n);
    for (std::size_t j = 0; j < n; ++j) mid[j] = 0.5 * (a[j] + b[j]);
    o.require(ell_r(inst, a) <= eval_q(inst, a) + kTolProperty, tag + "ell_r above q");
    o.require(ell_r(inst, mid) <= 0.5 * (ell_r(inst, a) + ell_r(inst, b)) + kTolProperty,
              tag + "midpoint convexity");
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
      const Vec v = vertex_from_bits(n, bits);
      o.require(near(ell_r(inst, v), eval_q(inst, v), kTolProperty), tag + "vertex equality");
    }
    const auto g = solve_global(inst);
    o.require(solve_rlt(inst).value <= g.value + kTolProperty, tag + "RLT above global");
    o.require(check_first_order(inst, g.argmin).ok, tag + "first-order conditions fail at argmin");
    o.require(check_qbb_psd(inst, g.argmin), tag + "Q_BB not PSD at argmin");
  }
  for (std::size_t n : {2U, 3U}) {
    const std::size_t points = n == 2 ? 101 : 21;
    const double h = 1.0 / static_cast<double>(points - 1);
    for (int t = 0; t < 100; ++t) {
      const auto inst = random_instance(n, rng);
      const auto g = solve_global(inst);
      const double grid = solve_grid(inst, points).value;
      const std::string tag = "grid n=" + std::to_string(n) + " draw " + std::to_string(t) + ": ";
      o.require(grid >= g.value - kTolProperty, tag + "grid below global");
      o.require(grid <= g.value + grid_gap_bound(inst, g.argmin, h) + kTolProperty,
                tag + "grid gap " + fmt(grid - g.value));
    }
  }
  o.summary = std::to_string(kPropertyDraws) +
              " draws: ell_r <= q, midpoint convexity, vertex equality, RLT <= global, KKT at argmin; 200 grid cross-checks";
  return o;
}

// Responsible conditions for each tampered quantity.
const std::set<std::string>& responsible(const std::string& what) {
  static const std::map<std::string, std::set<std::string>> table = {
      {"Q", {"stationarity_Q"}},
      {"c", {"stationarity_c"}},
      {"u", {"stationarity_c", "slack_u", "sign_u"}},
      {"v", {"stationarity_c", "slack_v", "sign_v"}},
      {"W", {"stationarity_Q", "stationarity_c", "slack_W", "sign_W"}},
      {"Y", {"stationarity_Q", "stationarity_c", "slack_Y", "sign_Y"}},
      {"Z", {"stationarity_Q", "slack_Z", "sign_Z"}},
      {"beta", {"psd_bordered", "slack_bordered"}},
      {"h", {"stationarity_c", "psd_bordered", "slack_bordered"}},
      {"H", {"stationarity_Q", "psd_bordered", "slack_bordered"}},
      {"family_Q", {"family_structure"}},
      {"family_c", {"family_structure"}},
      {"witness", {"witness_feasible", "witness_value"}},
  };
  return table.at(what);
}

BoxQpInstance tamper_q(const BoxQpInstance& inst, CounterRng& rng) {
  SymMatrix q = inst.Q();
  q.add(rng.below(inst.n()), rng.below(inst.n()), kTamper);
  return {q, inst.c()};
}

BoxQpInstance tamper_c(const BoxQpInstance& inst, CounterRng& rng) {
  Vec c = inst.c();
  c[rng.below(inst.n())] += kTamper;
  return {inst.Q(), c};
}

std::string tamper_rlt_multiplier(RltCert& m, CounterRng& rng) {
  const std::size_t n = m.n();
  const std::size_t i = rng.below(n);
  const std::size_t j = rng.below(n);
  switch (rng.below(5)) {
    case 0: m.u[i] += kTamper; return "u";
    case 1: m.v[i] += kTamper; return "v";
    case 2: m.W.add(i, j, kTamper); return "W";
    case 3: m.Y(i, j) += kTamper; return "Y";
    default: m.Z.add(i, j, kTamper); return "Z";
  }
}

std::string tamper_sdp_multiplier(SdpRltCert& m, CounterRng& rng) {
  const std::size_t n = m.h.size();
  switch (rng.below(8)) {
    case 0: m.beta += kTamper; return "beta";
    case 1: m.h[rng.below(n)] += kTamper; return "h";
    case 2: m.H.add(rng.below(n), rng.below(n), kTamper); return "H";
    default: return tamper_rlt_multiplier(m.base, rng);
  }
}

Outcome negative_verification() {
  Outcome o;
  CounterRng rng(1009);
  int total = 0;
  for (int kind = 0; kind < 5; ++kind) {
    for (int t = 0; t < kTampersPerKind; ++t) {
      ForgeRequest req;
      req.kind = static_cast<InstanceKind>(kind);
      req.n = 3 + rng.below(4);
      const auto f = forge_instance(req, ForgeSpec{rng.next()});
      BoxQpInstance inst = f.instance;
      const int target = t % 3;  // 0: Q, 1: c, 2: multiplier (or witness)
      std::string what = target == 0 ? "Q" : "c";
      if (target == 0) inst = tamper_q(inst, rng);
      if (target == 1) inst = tamper_c(inst, rng);

      CertReport rep;
      switch (f.kind) {
        case InstanceKind::ExactRlt:
        case InstanceKind::InexactRlt: {
          RltEvidence ev = *f.rlt;
          if (target == 2) what = tamper_rlt_multiplier(ev.cert, rng);
          rep = verify_rlt_cert(inst, ev.point, ev.cert);
          break;
        }
        case InstanceKind::ExactSdpRlt:
        case InstanceKind::ExactSdpRltInexactRlt: {
          SdpRltEvidence ev = *f.sdprlt;
          if (target == 2) what = tamper_sdp_multiplier(ev.cert, rng);
          rep = verify_sdprlt_cert(inst, ev.point, ev.cert);
          break;
        }
        case InstanceKind::InexactSdpRltFamily: {
          LiftedPoint w = *f.witness;
          if (target == 2) {
            const std::size_t i = rng.below(family_core_dim(req.n));
            const std::size_t j = rng.below(family_core_dim(req.n));
            if (rng.bernoulli(0.5)) {
              w.X.add(i, j, kTamper);
            } else {
              w.x[i] += kTamper;
            }
            what = "witness";
          } else {
            what = "family_" + what;
          }
          rep = verify_family_claim(inst, w);
          break;
        }
      }
      ++total;
      const std::string tag = std::string(to_string(f.kind)) + " draw " + std::to_string(t) + " (" + what + "): ";
      o.require(!rep.verified, tag + "tampered certificate still verifies");
      bool named = false;
      for (const auto& name : rep.failed()) named = named || responsible(what).count(name) > 0;
      o.require(named, tag + "responsible condition not among the failures");
    }
  }
  o.summary = std::to_string(total) + " tampered instances (50 per kind) rejected with the responsible condition named";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
    double budget;  // seconds, 0 for none
  };
  const std::vector<Criterion> criteria = {
      {1, "two-variable nonconvex instance", small_example, kBudgetSmallExample},
      {2, "concave family with inexact SDP-RLT", family, kBudgetFamily},
      {3, "concave three-variable instance", concave, 0.0},
      {4, "exact-RLT generator round trip", exact_rlt_round_trip, kBudgetRoundTrip},
      {5, "inexact-RLT generator round trip", inexact_rlt_round_trip, kBudgetRoundTrip},
      {6, "exact-SDP-RLT generator round trip", [] { return sdprlt_round_trip(false); }, 0.0},
      {7, "exact-SDP-RLT / inexact-RLT generator round trip", [] { return sdprlt_round_trip(true); }, 0.0},
      {8, "property suites", properties, 0.0},
      {9, "negative verification", negative_verification, 0.0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0.0) o.require(secs < c.budget, "runtime " + fmt(secs) + " s over budget " + fmt(c.budget) + " s");
    const bool ok = o.failed == 0;
    failed += ok ? 0 : 1;
    std::printf("criterion %d %s  %s: %s (%.3f s)\n", c.id, ok ? "PASS" : "FAIL", c.title,
                ok ? o.summary.c_str() : (std::to_string(o.failed) + " check(s) failed").c_str(), secs);
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
