#pragma once

// JSON persistence (format "boxqp-forge/1"). Indices are 1-based on disk.
// Doubles are written in shortest round-trip form, so load(save(x)) == x.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boxqp/classify.hpp"
#include "boxqp/forge.hpp"
#include "boxqp/model.hpp"
#include "boxqp/oracle.hpp"
#include "boxqp/rlt.hpp"

namespace boxqp::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "boxqp-forge/1";
inline constexpr double kSymmetryTol = 1e-12;

/// Everything an instance file can carry. Only the instance is mandatory.
struct InstanceDocument {
  BoxQpInstance instance;
  std::optional<InstanceKind> kind;
  std::optional<Vec> designated_point;
  std::optional<IndexPartition> partition;
  std::optional<std::size_t> pivot;
  std::optional<ForgeSpec> spec;
  std::optional<RltEvidence> rlt;
  std::optional<SdpRltEvidence> sdprlt;
  std::vector<LiftedPoint> witnesses;

  friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

struct CertificateDocument {
  std::optional<RltEvidence> rlt;
  std::optional<SdpRltEvidence> sdprlt;
};

// ---------------------------------------------------------------------------
// Encoding

inline json encode(const Vec& v) { return json(v.values()); }

template <typename M>
json encode_rows(const M& m, std::size_t rows, std::size_t cols) {
  json out = json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < cols; ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

inline json encode(const SymMatrix& m) { return encode_rows(m, m.size(), m.size()); }
inline json encode(const Mat& m) { return encode_rows(m, m.rows(), m.cols()); }

inline json encode_indices(const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (std::size_t j : idx) out.push_back(j + 1);
  return out;
}

inline json encode(const IndexPartition& p) {
  return json{{"L", encode_indices(p.lower())},
              {"B", encode_indices(p.interior())},
              {"U", encode_indices(p.upper())}};
}

inline json encode(const LiftedPoint& p) { return json{{"x", encode(p.x)}, {"X", encode(p.X)}}; }

inline void encode_multipliers(const RltCert& c, json& out) {
  out["u"] = encode(c.u);
  out["v"] = encode(c.v);
  out["W"] = encode(c.W);
  out["Y"] = encode(c.Y);
  out["Z"] = encode(c.Z);
}

inline json encode(const RltEvidence& e) {
  json out = encode(e.point);
  encode_multipliers(e.cert, out);
  return out;
}

inline json encode(const SdpRltEvidence& e) {
  json out = encode(e.point);
  encode_multipliers(e.cert.base, out);
  out["beta"] = e.cert.beta;
  out["h"] = encode(e.cert.h);
  out["H"] = encode(e.cert.H);
  return out;
}

inline json encode(const InstanceDocument& doc) {
  const auto& inst = doc.instance;
  json out;
  out["format_version"] = kFormatVersion;
  out["n"] = inst.n();
  out["Q"] = encode(inst.Q());
  out["c"] = encode(inst.c());

  json meta = json::object();
  if (doc.kind) meta["kind"] = to_string(*doc.kind);
  if (doc.designated_point) meta["designated_point"] = encode(*doc.designated_point);
  if (doc.partition) meta["partition"] = encode(*doc.partition);
  if (doc.pivot) meta["pivot"] = *doc.pivot + 1;
  if (doc.spec) {
    meta["seed"] = doc.spec->seed;
    meta["spec"] = json{{"magnitude", doc.spec->magnitude},
                        {"density", doc.spec->density},
                        {"strict_floor", doc.spec->strict_floor}};
  }
  if (doc.rlt || doc.sdprlt) {
    json certs = json::object();
    if (doc.rlt) certs["rlt"] = encode(*doc.rlt);
    if (doc.sdprlt) certs["sdprlt"] = encode(*doc.sdprlt);
    meta["certificates"] = std::move(certs);
  }
  if (!doc.witnesses.empty()) {
    json ws = json::array();
    for (const auto& w : doc.witnesses) ws.push_back(encode(w));
    meta["witnesses"] = std::move(ws);
  }
  if (!meta.empty()) out["metadata"] = std::move(meta);
  return out;
}

inline json encode_certificate(const RltEvidence& e) {
  json out;
  out["format_version"] = kFormatVersion;
  out["certificate"] = "rlt";
  out.update(encode(e));
  return out;
}

inline json encode_certificate(const SdpRltEvidence& e) {
  json out;
  out["format_version"] = kFormatVersion;
  out["certificate"] = "sdprlt";
  out.update(encode(e));
  return out;
}

inline InstanceDocument to_document(const ForgedInstance& f) {
  InstanceDocument doc;
  doc.instance = f.instance;
  doc.kind = f.kind;
  doc.designated_point = f.designated_point;
  doc.partition = f.partition;
  doc.pivot = f.pivot;
  doc.spec = f.spec;
  doc.rlt = f.rlt;
  doc.sdprlt = f.sdprlt;
  if (f.witness) doc.witnesses.push_back(*f.witness);
  return doc;
}

inline ForgedInstance to_forged(const InstanceDocument& doc) {
  if (!doc.kind || !doc.designated_point || !doc.partition) {
    throw Error(Errc::malformed_json, "instance metadata lacks kind, designated_point or partition");
  }
  ForgedInstance f;
  f.instance = doc.instance;
  f.kind = *doc.kind;
  f.designated_point = *doc.designated_point;
  f.partition = *doc.partition;
  f.pivot = doc.pivot;
  f.spec = doc.spec.value_or(ForgeSpec{});
  f.rlt = doc.rlt;
  f.sdprlt = doc.sdprlt;
  if (!doc.witnesses.empty()) f.witness = doc.witnesses.front();
  return f;
}

// ---------------------------------------------------------------------------
// Decoding

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw Error(Errc::malformed_json, what); }

inline const json& field(const json& obj, const char* name) {
  if (!obj.is_object()) malformed(std::string("expected an object holding '") + name + "'");
  auto it = obj.find(name);
  if (it == obj.end()) malformed(std::string("missing field '") + name + "'");
  return *it;
}

inline double number(const json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + ": expected a number");
  return j.get<double>();
}

inline Vec decode_vec(const json& j, std::size_t n, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + ": expected an array");
  if (j.size() != n) {
    throw Error(Errc::dimension_mismatch, std::string(what) + ": expected length " + std::to_string(n));
  }
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = number(j[i], what);
  return v;
}

inline Mat decode_mat(const json& j, std::size_t n, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + ": expected an array of rows");
  if (j.size() != n) {
    throw Error(Errc::dimension_mismatch, std::string(what) + ": expected " + std::to_string(n) + " rows");
  }
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = decode_vec(j[i], n, what);
    for (std::size_t k = 0; k < n; ++k) m(i, k) = row[k];
  }
  return m;
}

inline SymMatrix decode_sym(const json& j, std::size_t n, const char* what) {
  const Mat m = decode_mat(j, n, what);
  SymMatrix s(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const double x = m(a, b);
      const double y = m(b, a);
      if (std::abs(x - y) > kSymmetryTol * std::max({1.0, std::abs(x), std::abs(y)})) {
        throw Error(Errc::symmetry_violation, std::string(what) + " is not symmetric at (" +
                                                  std::to_string(a + 1) + "," +
                                                  std::to_string(b + 1) + ")");
      }
      s.set(a, b, x == y ? x : 0.5 * (x + y));
    }
  }
  return s;
}

inline std::vector<std::size_t> decode_indices(const json& j, std::size_t n, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + ": expected an index array");
  std::vector<std::size_t> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) malformed(std::string(what) + ": indices must be integers");
    const auto k = e.get<long long>();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
      throw Error(Errc::dimension_mismatch, std::string(what) + ": index out of range");
    }
    out.push_back(static_cast<std::size_t>(k - 1));
  }
  return out;
}

inline LiftedPoint decode_point(const json& j, std::size_t n) {
  return {decode_vec(field(j, "x"), n, "x"), decode_sym(field(j, "X"), n, "X")};
}

inline RltCert decode_multipliers(const json& j, std::size_t n) {
  return {decode_vec(field(j, "u"), n, "u"), decode_vec(field(j, "v"), n, "v"),
          decode_sym(field(j, "W"), n, "W"), decode_mat(field(j, "Y"), n, "Y"),
          decode_sym(field(j, "Z"), n, "Z")};
}

inline RltEvidence decode_rlt(const json& j, std::size_t n) {
  return {decode_point(j, n), decode_multipliers(j, n)};
}

inline SdpRltEvidence decode_sdprlt(const json& j, std::size_t n) {
  SdpRltCert cert{decode_multipliers(j, n), number(field(j, "beta"), "beta"),
                  decode_vec(field(j, "h"), n, "h"), decode_sym(field(j, "H"), n, "H")};
  return {decode_point(j, n), std::move(cert)};
}

inline void check_version(const json& j) {
  const auto& v = field(j, "format_version");
  if (!v.is_string()) malformed("format_version must be a string");
  if (v.get<std::string>() != kFormatVersion) {
    throw Error(Errc::version_mismatch,
                "unsupported format_version '" + v.get<std::string>() + "'");
  }
}

inline json parse(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

}  // namespace detail

inline InstanceDocument decode_instance(const json& j) {
  using namespace detail;
  check_version(j);
  const auto& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<long long>() < 1) malformed("n must be a positive integer");
  const auto n = static_cast<std::size_t>(nj.get<long long>());

  InstanceDocument doc;
  doc.instance = BoxQpInstance(decode_sym(field(j, "Q"), n, "Q"), decode_vec(field(j, "c"), n, "c"));
  auto it = j.find("metadata");
  if (it == j.end()) return doc;
  const json& meta = *it;
  if (!meta.is_object()) malformed("metadata must be an object");

  if (auto k = meta.find("kind"); k != meta.end()) {
    if (!k->is_string()) malformed("kind must be a string");
    doc.kind = parse_instance_kind(k->get<std::string>());
    if (!doc.kind) malformed("unknown kind '" + k->get<std::string>() + "'");
  }
  if (auto p = meta.find("designated_point"); p != meta.end()) {
    doc.designated_point = decode_vec(*p, n, "designated_point");
  }
  if (auto p = meta.find("partition"); p != meta.end()) {
    try {
      doc.partition = IndexPartition::from_sets(n, decode_indices(field(*p, "L"), n, "L"),
                                                decode_indices(field(*p, "B"), n, "B"),
                                                decode_indices(field(*p, "U"), n, "U"));
    } catch (const Error& e) {
      if (e.code() == Errc::invalid_argument) throw Error(Errc::dimension_mismatch, e.what());
      throw;
    }
  }
  if (auto p = meta.find("pivot"); p != meta.end()) {
    const auto idx = decode_indices(json::array({*p}), n, "pivot");
    doc.pivot = idx.front();
  }
  if (meta.contains("seed") || meta.contains("spec")) {
    ForgeSpec spec;
    if (auto s = meta.find("seed"); s != meta.end()) {
      if (!s->is_number_unsigned()) malformed("seed must be an unsigned integer");
      spec.seed = s->get<std::uint64_t>();
    }
    if (auto s = meta.find("spec"); s != meta.end()) {
      spec.magnitude = number(field(*s, "magnitude"), "magnitude");
      spec.density = number(field(*s, "density"), "density");
      spec.strict_floor = number(field(*s, "strict_floor"), "strict_floor");
    }
    doc.spec = spec;
  }
  if (auto c = meta.find("certificates"); c != meta.end()) {
    if (!c->is_object()) malformed("certificates must be an object");
    if (auto r = c->find("rlt"); r != c->end()) doc.rlt = decode_rlt(*r, n);
    if (auto s = c->find("sdprlt"); s != c->end()) doc.sdprlt = decode_sdprlt(*s, n);
  }
  if (auto w = meta.find("witnesses"); w != meta.end()) {
    if (!w->is_array()) malformed("witnesses must be an array");
    for (const auto& e : *w) doc.witnesses.push_back(decode_point(e, n));
  }
  return doc;
}

inline CertificateDocument decode_certificate(const json& j, std::size_t n) {
  using namespace detail;
  check_version(j);
  const auto& type = field(j, "certificate");
  if (!type.is_string()) malformed("certificate type must be a string");
  CertificateDocument doc;
  if (type == "rlt") {
    doc.rlt = decode_rlt(j, n);
  } else if (type == "sdprlt") {
    doc.sdprlt = decode_sdprlt(j, n);
  } else {
    malformed("unknown certificate type");
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Streams and files

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void save_instance(const InstanceDocument& doc, std::ostream& out) { out << dump(encode(doc)); }

inline InstanceDocument load_instance(std::istream& in) { return decode_instance(detail::parse(in)); }

inline InstanceDocument load_instance_string(const std::string& text) {
  std::istringstream in(text);
  return load_instance(in);
}

inline CertificateDocument load_certificate(std::istream& in, std::size_t n) {
  return decode_certificate(detail::parse(in), n);
}

/// "-" means standard input/output.
inline InstanceDocument load_instance_file(const std::string& path) {
  if (path == "-") return load_instance(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(Errc::malformed_json, "cannot open '" + path + "'");
  return load_instance(in);
}

inline CertificateDocument load_certificate_file(const std::string& path, std::size_t n) {
  if (path == "-") return load_certificate(std::cin, n);
  std::ifstream in(path);
  if (!in) throw Error(Errc::malformed_json, "cannot open '" + path + "'");
  return load_certificate(in, n);
}

inline void save_instance_file(const InstanceDocument& doc, const std::string& path) {
  if (path == "-") {
    save_instance(doc, std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
  save_instance(doc, out);
}

// ---------------------------------------------------------------------------
// Result documents

inline json encode(const RltSolution& s) {
  return json{{"value", s.value},
              {"argmin_x", encode(s.argmin_x)},
              {"argmin_X", encode(s.argmin_X)},
              {"lattice_minimizers", s.lattice_minimizers}};
}

inline json encode(const GlobalSolution& s) {
  return json{{"value", s.value},
              {"argmin", encode(s.argmin)},
              {"method", to_string(s.method)},
              {"candidates_examined", s.candidates_examined},
              {"degenerate_faces", s.degenerate_faces}};
}

inline json encode(const MembershipReport& m) {
  json vs = json::array();
  for (const auto& v : m.violations) {
    vs.push_back(json{{"constraint", v.constraint}, {"i", v.i + 1}, {"j", v.j + 1}, {"amount", v.amount}});
  }
  return json{{"ok", m.ok}, {"violations", std::move(vs)}};
}

inline json encode(const CertReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions) {
    conds.push_back(json{{"name", c.name}, {"residual", c.residual}, {"bound", c.bound}, {"ok", c.ok}});
  }
  json failed = json::array();
  for (const auto& f : r.failed()) failed.push_back(f);
  return json{{"verified", r.verified},
              {"failed", std::move(failed)},
              {"conditions", std::move(conds)},
              {"membership", encode(r.membership)}};
}

inline json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json encode(const ExactnessReport& r) {
  json out{{"label", to_string(r.label)},
           {"detail", r.detail},
           {"rlt_value", r.rlt_value},
           {"global_value", optional_number(r.global_value)},
           {"sdprlt_value", optional_number(r.sdprlt_value)},
           {"sdprlt_lower", r.sdprlt_lower},
           {"sdprlt_upper", r.sdprlt_upper},
           {"rlt_exact", r.rlt_exact}};
  out["sdprlt_exact"] = r.sdprlt_exact ? json(*r.sdprlt_exact) : json(nullptr);
  out["evidence"] = r.evidence;
  return out;
}

}  // namespace boxqp::io
