#include <cstring>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace boxqp;
using namespace boxqp::testing;
using boxqp::io::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string save_string(const io::InstanceDocument& doc) {
  std::ostringstream out;
  io::save_instance(doc, out);
  return out.str();
}

Errc load_error(const std::string& text) {
  try {
    io::load_instance_string(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "load succeeded";
  return Errc::invalid_argument;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

const char* kMinimal = R"({"format_version": "boxqp-forge/1", "n": 2,
  "Q": [[-1, -2], [-2, 1]], "c": [1, 1]})";

}  // namespace

TEST(Io, RoundTripsEveryKind) {
  CounterRng rng(81);
  for (int trial = 0; trial < 50; ++trial) {
    ForgeRequest req;
    req.kind = static_cast<InstanceKind>(trial % 5);
    req.n = 3 + rng.below(4);
    const ForgeSpec spec{rng.next(), rng.uniform(0.5, 3.0), rng.uniform(0.3, 1.0), rng.uniform(0.05, 0.5)};
    const auto forged = forge_instance(req, spec);
    const auto doc = io::to_document(forged);
    const auto text = save_string(doc);
    const auto back = io::load_instance_string(text);
    EXPECT_EQ(back, doc);
    EXPECT_EQ(io::to_forged(back), forged);
    EXPECT_EQ(save_string(back), text);
  }
}

TEST(Io, DoublesRoundTripBitExactly) {
  CounterRng rng(82);
  SymMatrix q(3);
  Vec c(3);
  for (std::size_t i = 0; i < 3; ++i) {
    c[i] = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-300.0, 300.0));
    for (std::size_t j = i; j < 3; ++j) q.set(i, j, rng.uniform(-1.0, 1.0) / 3.0);
  }
  c[0] = 0.1;
  c[1] = -0.0;
  io::InstanceDocument doc;
  doc.instance = BoxQpInstance(q, c);
  const auto back = io::load_instance_string(save_string(doc));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(bit_equal(back.instance.c()[i], c[i])) << i;
    for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(bit_equal(back.instance.Q()(i, j), q(i, j)));
  }
}

TEST(Io, MinimalDocumentLoads) {
  const auto doc = io::load_instance_string(kMinimal);
  EXPECT_EQ(doc.instance, two_dim_nonconvex());
  EXPECT_FALSE(doc.kind.has_value());
  EXPECT_TRUE(doc.witnesses.empty());
}

TEST(Io, PartitionIsOneBasedOnDisk) {
  const auto f = gen_exact_rlt(3, {1}, ForgeSpec{1});
  const auto j = io::encode(io::to_document(f));
  EXPECT_EQ(j["metadata"]["partition"]["L"], json::array({2}));
  EXPECT_EQ(j["metadata"]["partition"]["U"], json::array({1, 3}));
}

TEST(Io, RejectsAsymmetricQ) {
  EXPECT_EQ(load_error(R"({"format_version": "boxqp-forge/1", "n": 2,
    "Q": [[1, 0.5], [0.4, 1]], "c": [0, 0]})"),
            Errc::symmetry_violation);
  // within 1e-12 is accepted
  EXPECT_NO_THROW(io::load_instance_string(R"({"format_version": "boxqp-forge/1", "n": 2,
    "Q": [[1, 0.5], [0.5000000000001, 1]], "c": [0, 0]})"));
}

TEST(Io, RejectsOtherVersion) {
  EXPECT_EQ(load_error(R"({"format_version": "boxqp-forge/2", "n": 1, "Q": [[1]], "c": [0]})"),
            Errc::version_mismatch);
}

TEST(Io, RejectsMalformedJson) {
  EXPECT_EQ(load_error("{\"format_version\": "), Errc::malformed_json);
  EXPECT_EQ(load_error(R"({"format_version": "boxqp-forge/1", "n": 1, "Q": [["a"]], "c": [0]})"),
            Errc::malformed_json);
  EXPECT_EQ(load_error(R"({"format_version": "boxqp-forge/1", "n": 1, "c": [0]})"), Errc::malformed_json);
}

TEST(Io, RejectsInconsistentDimensions) {
  EXPECT_EQ(load_error(R"({"format_version": "boxqp-forge/1", "n": 2, "Q": [[1, 0], [0, 1]], "c": [0]})"),
            Errc::dimension_mismatch);
  EXPECT_EQ(load_error(R"({"format_version": "boxqp-forge/1", "n": 2, "Q": [[1, 0]], "c": [0, 0]})"),
            Errc::dimension_mismatch);
  EXPECT_EQ(load_error(R"({"format_version": "boxqp-forge/1", "n": 2, "Q": [[1, 0], [0, 1]], "c": [0, 0],
    "metadata": {"designated_point": [0, 0, 0]}})"),
            Errc::dimension_mismatch);
  EXPECT_EQ(load_error(R"({"format_version": "boxqp-forge/1", "n": 2, "Q": [[1, 0], [0, 1]], "c": [0, 0],
    "metadata": {"partition": {"L": [1], "B": [], "U": [3]}}})"),
            Errc::dimension_mismatch);
}

TEST(Io, CertificateFile) {
  const auto f = gen_exact_sdprlt(Vec{0, 0.5, 1}, ForgeSpec{2});
  std::istringstream in(io::dump(io::encode_certificate(*f.sdprlt)));
  const auto c = io::load_certificate(in, 3);
  ASSERT_TRUE(c.sdprlt.has_value());
  EXPECT_FALSE(c.rlt.has_value());
  EXPECT_EQ(*c.sdprlt, *f.sdprlt);

  std::istringstream wrong(io::dump(io::encode_certificate(*f.sdprlt)));
  EXPECT_THROW(io::load_certificate(wrong, 4), Error);
}

TEST(Io, GoldenFileIsStable) {
  // Regenerating the instance must reproduce the stored bytes, and loading
  // the stored file must reproduce the instance.
  const std::string path = std::string(BOXQP_TEST_DATA_DIR) + "/golden_exact_rlt.json";
  const std::string stored = read_file(path);
  ASSERT_FALSE(stored.empty()) << path;
  ForgeRequest req;
  req.kind = InstanceKind::ExactRlt;
  req.n = 4;
  const auto forged = forge_instance(req, ForgeSpec{7});
  EXPECT_EQ(save_string(io::to_document(forged)), stored);
  EXPECT_EQ(io::to_forged(io::load_instance_string(stored)), forged);
}

TEST(Io, ReportsEncode) {
  const auto f = gen_inexact_sdprlt_family(3);
  const auto j = io::encode(classify(f.instance, hints_from(f)));
  EXPECT_EQ(j["label"], "PARTIAL");
  EXPECT_TRUE(j["sdprlt_value"].is_null());
  EXPECT_EQ(j["sdprlt_exact"], false);

  const auto rep = verify_rlt_cert(BoxQpInstance::zero(2), LiftedPoint::rank_one(Vec{0.5, 2.0}), RltCert::zeros(2));
  const auto r = io::encode(rep);
  EXPECT_EQ(r["verified"], false);
  EXPECT_EQ(r["failed"], json::array({"primal_feasible"}));
  EXPECT_EQ(r["membership"]["violations"][0]["i"], 2);
}
