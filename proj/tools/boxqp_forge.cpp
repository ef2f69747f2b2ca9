// boxqp-forge: generate, solve, verify and classify box-constrained QP
// instances. Every command prints one JSON document on stdout.

#include <charconv>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boxqp/boxqp.hpp"

namespace {

using boxqp::Errc;
using boxqp::Error;
using boxqp::io::json;

enum Exit : int { kOk = 0, kRejected = 1, kUsage = 2, kNumeric = 3 };

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::dimension_cap:
    case Errc::numerical_failure:
    case Errc::inconsistent_bounds:
      return kNumeric;
    case Errc::certificate_invalid:
    case Errc::infeasible_witness:
      return kRejected;
    default:
      return kUsage;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& tok) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  while (first < last && *first == ' ') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw Error(Errc::invalid_argument, "bad number '" + tok + "'");
  return v;
}

boxqp::Vec parse_point(const std::string& csv) {
  const auto toks = split(csv, ',');
  boxqp::Vec x(toks.size());
  for (std::size_t j = 0; j < toks.size(); ++j) x[j] = parse_double(toks[j]);
  return x;
}

// "L:B:U" with comma-separated 1-based indices, e.g. "1,3::2,4".
boxqp::IndexPartition parse_partition(const std::string& text, std::size_t n) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw Error(Errc::invalid_argument, "partition must look like L:B:U");
  std::vector<std::size_t> sets[3];
  for (int s = 0; s < 3; ++s) {
    if (parts[s].empty()) continue;
    for (const auto& tok : split(parts[s], ',')) {
      std::size_t k = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), k);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || k < 1 || k > n) {
        throw Error(Errc::invalid_argument, "bad partition index '" + tok + "'");
      }
      sets[s].push_back(k - 1);
    }
  }
  return boxqp::IndexPartition::from_sets(n, sets[0], sets[1], sets[2]);
}

void emit(const json& doc) { std::cout << boxqp::io::dump(doc); }

struct GenArgs {
  std::string kind;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string partition;
  std::string point;
  std::optional<std::size_t> pivot;
  boxqp::ForgeSpec spec;
  std::string output;
};

int run_gen(const GenArgs& a) {
  const auto kind = boxqp::parse_instance_kind(a.kind);
  if (!kind) throw Error(Errc::invalid_argument, "unknown kind '" + a.kind + "'");
  boxqp::ForgeRequest req;
  req.kind = *kind;
  req.n = a.n;
  if (!a.partition.empty()) req.partition = parse_partition(a.partition, a.n);
  if (!a.point.empty()) req.point = parse_point(a.point);
  if (a.pivot) {
    if (*a.pivot < 1 || *a.pivot > a.n) throw Error(Errc::invalid_argument, "pivot out of range");
    req.pivot = *a.pivot - 1;
  }
  boxqp::ForgeSpec spec = a.spec;
  spec.seed = a.seed;

  const auto forged = boxqp::forge_instance(req, spec);
  const auto doc = boxqp::io::to_document(forged);
  if (a.output == "-") {
    boxqp::io::save_instance_file(doc, "-");
    return kOk;
  }
  boxqp::io::save_instance_file(doc, a.output);
  emit(json{{"written", a.output}, {"kind", boxqp::to_string(forged.kind)}, {"n", forged.instance.n()}});
  return kOk;
}

struct SolveArgs {
  std::string file;
  bool rlt = false;
  bool global = false;
  std::optional<std::size_t> grid;
};

int run_solve(const SolveArgs& a) {
  const auto doc = boxqp::io::load_instance_file(a.file);
  const bool all = !a.rlt && !a.global && !a.grid;
  json out = json::object();
  if (all || a.rlt) out["rlt"] = boxqp::io::encode(boxqp::solve_rlt(doc.instance));
  if (all || a.global) out["global"] = boxqp::io::encode(boxqp::solve_global(doc.instance));
  if (a.grid) out["grid"] = boxqp::io::encode(boxqp::solve_grid(doc.instance, *a.grid));
  emit(out);
  return kOk;
}

struct VerifyArgs {
  std::string file;
  std::string cert;
  std::string kind;
};

int run_verify(const VerifyArgs& a) {
  const auto doc = boxqp::io::load_instance_file(a.file);
  const auto& inst = doc.instance;
  std::optional<boxqp::RltEvidence> rlt = doc.rlt;
  std::optional<boxqp::SdpRltEvidence> sdp = doc.sdprlt;
  if (!a.cert.empty()) {
    auto c = boxqp::io::load_certificate_file(a.cert, inst.n());
    if (c.rlt) rlt = c.rlt;
    if (c.sdprlt) sdp = c.sdprlt;
  }

  boxqp::CertReport rep;
  json out{{"kind", a.kind}};
  if (a.kind == "rlt") {
    if (!rlt) throw Error(Errc::invalid_argument, "no RLT certificate in the instance or --cert");
    rep = boxqp::verify_rlt_cert(inst, rlt->point, rlt->cert);
    out["primal_objective"] = boxqp::lifted_objective(inst, rlt->point);
    out["dual_objective"] = boxqp::rlt_dual_objective(rlt->cert);
  } else if (a.kind == "sdprlt") {
    if (!sdp) throw Error(Errc::invalid_argument, "no SDP-RLT certificate in the instance or --cert");
    rep = boxqp::verify_sdprlt_cert(inst, sdp->point, sdp->cert);
    out["primal_objective"] = boxqp::lifted_objective(inst, sdp->point);
    out["dual_objective"] = boxqp::sdprlt_dual_objective(sdp->cert);
  } else {
    if (doc.witnesses.empty()) throw Error(Errc::invalid_argument, "no witness in the instance");
    rep = boxqp::verify_family_claim(inst, doc.witnesses.front());
    out["witness_objective"] = boxqp::lifted_objective(inst, doc.witnesses.front());
  }
  out.update(boxqp::io::encode(rep));
  emit(out);
  if (!rep.verified) {
    std::cerr << "verification failed:";
    for (const auto& name : rep.failed()) std::cerr << ' ' << name;
    std::cerr << '\n';
    return kRejected;
  }
  return kOk;
}

int run_classify(const std::string& file) {
  const auto doc = boxqp::io::load_instance_file(file);
  boxqp::ClassifyHints hints;
  if (doc.sdprlt) hints.certificates.push_back(*doc.sdprlt);
  hints.witnesses = doc.witnesses;
  emit(boxqp::io::encode(boxqp::classify(doc.instance, hints)));
  return kOk;
}

int run_eval(const std::string& file, const std::string& point) {
  const auto doc = boxqp::io::load_instance_file(file);
  const auto x = parse_point(point);
  if (x.size() != doc.instance.n()) throw Error(Errc::dimension_mismatch, "point length differs from n");
  emit(json{{"x", boxqp::io::encode(x)},
            {"q", boxqp::eval_q(doc.instance, x)},
            {"ell_r", boxqp::ell_r(doc.instance, x)}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box-constrained QP instance forge with RLT / SDP-RLT exactness certificates"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate an instance with a known exactness status");
  g->add_option("--kind", gen.kind, "exact-rlt | inexact-rlt | exact-sdprlt | exact-sdprlt-inexact-rlt | inexact-sdprlt-family")
      ->required();
  g->add_option("--n", gen.n, "Dimension")->required()->check(CLI::Range(1, 64));
  g->add_option("--seed", gen.seed, "Seed")->required();
  g->add_option("--partition", gen.partition, "L:B:U with comma-separated 1-based indices");
  g->add_option("--point", gen.point, "Designated point, comma-separated");
  g->add_option("--pivot", gen.pivot, "Interior index k forced to 1/2 (inexact-rlt, 1-based)");
  g->add_option("--magnitude", gen.spec.magnitude, "Multiplier magnitude")->capture_default_str();
  g->add_option("--density", gen.spec.density, "Probability a free multiplier is nonzero")->capture_default_str();
  g->add_option("--strict-floor", gen.spec.strict_floor, "Lower bound on lambda_min(H)")->capture_default_str();
  g->add_option("-o,--output", gen.output, "Output file ('-' for stdout)")->required();

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "RLT value, global value and grid check");
  s->add_option("file", solve.file)->required();
  s->add_flag("--rlt", solve.rlt, "RLT relaxation by lattice enumeration");
  s->add_flag("--global", solve.global, "Global optimum by face enumeration");
  s->add_option("--grid", solve.grid, "Uniform grid with K points per axis (n <= 4)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a primal-dual certificate");
  v->add_option("file", verify.file)->required();
  v->add_option("--cert", verify.cert, "Certificate file overriding the embedded one");
  v->add_option("--kind", verify.kind)->required()->check(CLI::IsMember({"rlt", "sdprlt", "witness"}));

  std::string classify_file;
  auto* c = app.add_subcommand("classify", "E1-E4 exactness label");
  c->add_option("file", classify_file)->required();

  std::string eval_file;
  std::string eval_point;
  auto* e = app.add_subcommand("eval", "q(x) and the RLT underestimator at x");
  e->add_option("file", eval_file)->required();
  e->add_option("--point", eval_point)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return run_gen(gen);
    if (*s) return run_solve(solve);
    if (*v) return run_verify(verify);
    if (*c) return run_classify(classify_file);
    if (*e) return run_eval(eval_file, eval_point);
  } catch (const Error& err) {
    std::cerr << "error (" << boxqp::to_string(err.code()) << "): " << err.what() << '\n';
    return exit_code_for(err.code());
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
