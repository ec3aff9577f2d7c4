#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "dnzeta/io.hpp"
#include "dnzeta/verify.hpp"

using namespace dnzeta;

TEST(Json, DeterministicFloats) {
  io::json j;
  j["x"] = 0.1;
  j["n"] = 3;
  j["s"] = "a\"b";
  j["nan"] = std::nan("");
  const std::string out = io::dump(j);
  EXPECT_NE(out.find("\"x\": 1.0000000000000001e-01"), std::string::npos);
  EXPECT_NE(out.find("\"n\": 3"), std::string::npos);
  EXPECT_NE(out.find("\"s\": \"a\\\"b\""), std::string::npos);
  EXPECT_NE(out.find("\"nan\": null"), std::string::npos);
  EXPECT_EQ(out, io::dump(j));
  // round trip keeps every bit
  const double back = io::json::parse(out)["x"].get<double>();
  EXPECT_EQ(back, 0.1);
}

TEST(Json, Fingerprint) {
  EXPECT_EQ(io::fingerprint(""), "cbf29ce484222325");
  EXPECT_EQ(io::fingerprint("a"), "af63dc4c8601ec8c");
  EXPECT_NE(io::fingerprint("annulus;rho=2"), io::fingerprint("annulus;rho=3"));
}

TEST(Spectrum, RoundTrip) {
  const auto spec = hyperbolic::cyclic_spectrum(1.25);
  const auto j = io::to_json(spec, {2.0});
  const auto back = io::spectrum_from_json(io::json::parse(io::dump(j)));
  ASSERT_EQ(back.spectrum.entries.size(), 2u);
  EXPECT_EQ(back.spectrum.entries[0].length, 1.25);
  EXPECT_TRUE(back.spectrum.exhaustive);
  EXPECT_EQ(back.boundary_lengths, std::vector<double>{2.0});
}

TEST(Spectrum, InfiniteCutoffRoundTrip) {
  hyperbolic::LengthSpectrum s;
  s.cutoff = std::numeric_limits<double>::infinity();
  s.complete_up_to = 4.0;
  s.entries = {{2.0, 1, 1, "ab"}};
  const auto back = io::spectrum_from_json(io::json::parse(io::dump(io::to_json(s))));
  EXPECT_TRUE(std::isinf(back.spectrum.cutoff));
  EXPECT_EQ(*back.spectrum.entries[0].reflections, 1);
}

TEST(Spectrum, MalformedInputsRejected) {
  EXPECT_THROW(io::spectrum_from_json(io::json::parse(R"({"entries": []})")), io::FormatError);
  EXPECT_THROW(io::spectrum_from_json(io::json::parse(R"({"cutoff": 1, "complete_up_to": 1})")), io::FormatError);
  EXPECT_THROW(io::spectrum_from_json(io::json::parse(
                   R"({"cutoff": 1, "complete_up_to": 1, "entries": [{"length": -2}]})")),
               io::FormatError);
  EXPECT_THROW(io::spectrum_from_json(io::json::parse(
                   R"({"cutoff": 1, "complete_up_to": 1, "entries": [{"length": 1, "multiplicity": 0}]})")),
               io::FormatError);
  EXPECT_THROW(io::spectrum_from_json(io::json::parse("[1, 2]")), io::FormatError);
  EXPECT_THROW(io::read_json_file("/nonexistent/spec.json"), io::FormatError);
}

TEST(Generators, Parse) {
  const auto j = io::json::parse(R"({"generators": [
      {"a": 2.352409615243247, "b": 2.1292794550948173, "c": 2.1292794550948173, "d": 2.352409615243247, "label": "a"},
      {"a": 2.352409615243247, "b": 6.387838365284452, "c": 0.7097598183649391, "d": 2.352409615243247, "label": "b"}]})");
  const auto g = io::generators_from_json(j);
  EXPECT_EQ(g.rank(), 2u);
  EXPECT_EQ(g.labels()[1], "b");
  EXPECT_THROW(io::generators_from_json(io::json::parse(R"({"generators": [{"a": 1}]})")), io::FormatError);
  EXPECT_THROW(io::generators_from_json(io::json::parse(R"({"gens": []})")), io::FormatError);
}

TEST(Omega, BothForms) {
  const auto a = io::conformal_factor_from_json(io::json::parse("[0.0, 0.3]"));
  EXPECT_EQ(a.cos, (std::vector<double>{0.0, 0.3}));
  const auto b = io::conformal_factor_from_json(io::json::parse(R"({"cos": [0.0], "sin": [0.2]})"));
  EXPECT_EQ(b.sin, std::vector<double>{0.2});
  EXPECT_THROW(io::conformal_factor_from_json(io::json::parse("3")), io::FormatError);
  EXPECT_THROW(io::conformal_factor_from_json(io::json::parse(R"(["x"])")), io::FormatError);
}

TEST(LambdaGrid, InclusiveEndpoints) {
  EXPECT_EQ(io::parse_lambda_grid("1.5"), std::vector<double>{1.5});
  const auto g = io::parse_lambda_grid("1:2:0.1");
  ASSERT_EQ(g.size(), 11u);
  EXPECT_NEAR(g.back(), 2.0, 1e-12);
  EXPECT_EQ(io::parse_lambda_grid("1.5:3:0.5").size(), 4u);
  EXPECT_THROW(io::parse_lambda_grid("2:1:0.5"), DomainError);
  EXPECT_THROW(io::parse_lambda_grid("1:2"), DomainError);
  EXPECT_THROW(io::parse_lambda_grid("1:2:0"), DomainError);
  EXPECT_THROW(io::parse_lambda_grid("abc"), DomainError);
}

TEST(Csv, Row) {
  zeta_dyn::ZetaValue v;
  v.log_value = cplx(-0.5, 0.0);
  v.tail_bound = 1e-10;
  EXPECT_EQ(io::zeta_csv_header(), "re_lambda,im_lambda,log_abs,arg,tail_bound\n");
  EXPECT_EQ(io::zeta_csv_row(2.0, v),
            "2.0000000000000000e+00,0.0000000000000000e+00,-5.0000000000000000e-01,0.0000000000000000e+00,"
            "1.0000000000000000e-10\n");
}

TEST(Report, Fields) {
  DetReport r;
  r.value = 2.0;
  r.method = DetMethod::zeta_pipeline;
  r.inputs = {{"rho", 2.0}};
  r.error_estimate = 1e-15;
  const auto j = io::to_json(r);
  EXPECT_EQ(j["method"], "zeta_pipeline");
  EXPECT_EQ(j["inputs"]["rho"], 2.0);
  EXPECT_FALSE(j.contains("det_prime"));
  EXPECT_TRUE(j.contains("error_estimate"));
}

TEST(Verify, BridgeSuiteMessage) {
  const auto r = verify::bridge_suite();
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks.size(), 10u);
  EXPECT_EQ(r.message.rfind("cylinder↔annulus identity max err < 1e-12", 0), 0u);
}

TEST(Verify, UnknownSuite) { EXPECT_THROW(verify::run("nope"), DomainError); }

TEST(Verify, FastSuitesPass) {
  for (const char* name : {"appendix", "lemma", "theorem4"}) {
    for (const auto& r : verify::run(name)) EXPECT_TRUE(r.passed()) << r.name << ": " << r.message;
  }
}
