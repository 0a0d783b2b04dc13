#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <ptchain/io.hpp>

#include "schema_check.hpp"

using namespace ptchain;

namespace {

json load_schema() {
  std::ifstream f(PTCHAIN_SCHEMA_PATH);
  REQUIRE(f);
  return json::parse(f);
}

json meta_stub() {
  return json{{"wall_time_s", 0.001},
              {"max_residual", 1e-15},
              {"max_orthogonality_defect", 1e-15},
              {"threads", 1}};
}

json config_stub() {
  return json{{"format", "json"}, {"sites", 5}, {"alpha", 0.0}, {"t0", 1.0},
              {"phase_tol", 1e-12}};
}

}  // namespace

TEST_CASE("fmt_g round trips doubles exactly") {
  const double cases[] = {0.0,
                          1.0,
                          -1.0,
                          0.1,
                          1.0 / 3.0,
                          std::numbers::pi,
                          -2.5e-17,
                          1e-308,
                          1.7976931348623157e308,
                          123456789.123456789};
  for (double x : cases) {
    const std::string s = fmt_g(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 1000; ++i) {
    const double x = ((rng() >> 11) * 0x1.0p-53 - 0.5) * std::exp2(static_cast<int>(rng() % 64) - 32);
    CHECK(std::strtod(fmt_g(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("csv writers produce exact bytes") {
  std::ostringstream os;

  SECTION("spectrum") {
    write_spectrum_csv(os, {-1.5, 2.0});
    CHECK(os.str() == "n,energy\n1,-1.5\n2,2\n");
  }
  SECTION("histogram") {
    DOSHistogram h;
    h.bin_edges = {0.0, 0.5, 1.0};
    h.counts = {3.0, 4.0};
    write_histogram_csv(os, h);
    CHECK(os.str() == "bin_lo,bin_hi,count\n0,0.5,3\n0.5,1,4\n");
  }
  SECTION("ipr") {
    write_ipr_csv(os, {-1.0, 1.0}, {0.25, 0.5});
    CHECK(os.str() == "state,energy,ipr\n1,-1,0.25\n2,1,0.5\n");
  }
  SECTION("scaling") {
    ScalingStudy study;
    study.rows = {{100, 0.01, 0.25}, {200, 0.0625, 0.125}};
    write_scaling_csv(os, study);
    CHECK(os.str() == "N,min_ipr,max_ipr\n100,0.01,0.25\n200,0.0625,0.125\n");
  }
  SECTION("scale") {
    SimilarityScale scale;
    scale.log_m = {0.0, 0.5};
    write_scale_csv(os, scale);
    CHECK(os.str() == "k,log_m\n1,0\n2,0.5\n");
  }
  SECTION("hermitian") {
    HermitianChain h;
    h.n_sites = 3;
    h.off_mag = {1.0, 2.0};
    h.off_phase = {0.0, -0.5};
    write_hermitian_csv(os, h);
    CHECK(os.str() == "k,off_mag,off_phase\n1,1,0\n2,2,-0.5\n");
  }
  SECTION("roots") {
    write_roots_csv(os, {{1.0, -2.0}});
    CHECK(os.str() == "n,re,im\n1,1,-2\n");
  }
}

TEST_CASE("hopping csv round trips") {
  std::vector<cplx> t = {{1.0, 0.0}, {0.5, -0.25}, {1.0 / 3.0, std::numbers::pi}};
  std::ostringstream os;
  os << "k,re,im\n";
  for (std::size_t k = 0; k < t.size(); ++k)
    os << k + 1 << ',' << fmt_g(t[k].real()) << ',' << fmt_g(t[k].imag()) << '\n';
  std::istringstream is(os.str());
  const auto back = read_hopping_csv(is);
  REQUIRE(back.size() == t.size());
  for (std::size_t k = 0; k < t.size(); ++k) CHECK(back[k] == t[k]);
}

TEST_CASE("hopping csv tolerates CRLF and blank lines") {
  std::istringstream is("k,re,im\r\n1,1,0\r\n\r\n2,0.5,-0.25\r\n");
  const auto t = read_hopping_csv(is);
  REQUIRE(t.size() == 2);
  CHECK(t[0] == cplx{1.0, 0.0});
  CHECK(t[1] == cplx{0.5, -0.25});
}

TEST_CASE("hopping csv accepts padded numbers") {
  std::istringstream is("k,re,im\n1, 1.5 ,\t-2\n");
  const auto t = read_hopping_csv(is);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == cplx{1.5, -2.0});
}

TEST_CASE("hopping csv rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return read_hopping_csv(is);
  };
  CHECK_THROWS_WITH(parse(""), Catch::Matchers::ContainsSubstring("empty"));
  CHECK_THROWS_WITH(parse("k,real,imag\n1,1,0\n"),
                    Catch::Matchers::ContainsSubstring("header"));
  CHECK_THROWS_WITH(parse("k,re,im\n1,1\n"),
                    Catch::Matchers::ContainsSubstring("3 fields"));
  CHECK_THROWS_WITH(parse("k,re,im\n1,x,0\n"),
                    Catch::Matchers::ContainsSubstring("bad number 'x'"));
  CHECK_THROWS_WITH(parse("k,re,im\n1,1,0\n3,1,0\n"),
                    Catch::Matchers::ContainsSubstring("out of order"));
  CHECK_THROWS_WITH(parse("k,re,im\n0,1,0\n"),
                    Catch::Matchers::ContainsSubstring("out of order"));
  CHECK_THROWS_WITH(parse("k,re,im\n"), Catch::Matchers::ContainsSubstring("no bonds"));
  CHECK_THROWS_WITH(read_hopping_csv(std::string("/nonexistent/hoppings.csv")),
                    Catch::Matchers::ContainsSubstring("cannot open"));
}

TEST_CASE("json envelopes validate against the shipped schema") {
  const json schema = load_schema();
  std::string err;

  SECTION("spectrum") {
    const json env = make_envelope("spectrum", config_stub(),
                                   json{{"values", std::vector<double>{-1.0, 0.0, 1.0}}},
                                   meta_stub());
    CHECK(schema_check::validate(schema, env, err));
    INFO(err);
    CHECK(err.empty());
  }
  SECTION("dos histogram payload") {
    const auto h = dos({-1.0, 0.0, 1.0}, 2);
    json cfg = config_stub();
    cfg["bins"] = 2;
    const json env = make_envelope("dos", cfg, to_json(h), meta_stub());
    CHECK(schema_check::validate(schema, env, err));
  }
  SECTION("ipr per-state payload") {
    const json data{{"energies", std::vector<double>{-1.0, 1.0}},
                    {"ipr", std::vector<double>{0.5, 0.5}},
                    {"min_ipr", 0.5},
                    {"max_ipr", 0.5}};
    const json env = make_envelope("ipr", config_stub(), data, meta_stub());
    CHECK(schema_check::validate(schema, env, err));
  }
  SECTION("scaling payload") {
    ScalingStudy study;
    study.rows = {{100, 0.01, 0.2}, {200, 0.005, 0.15}};
    study.min_fit = {1.0, 0.4, 0.999, {100, 200}, false};
    study.max_fit = {0.4, -1.0, 0.99, {100, 200}, false};
    json cfg = config_stub();
    cfg["sizes"] = std::vector<int>{100, 200};
    const json env = make_envelope("scaling", cfg, to_json(study), meta_stub());
    CHECK(schema_check::validate(schema, env, err));
  }
  SECTION("roots payload") {
    const json env = make_envelope("roots", config_stub(),
                                   json{{"roots", to_json(std::vector<cplx>{{0.0, 2.0}})}},
                                   meta_stub());
    CHECK(schema_check::validate(schema, env, err));
  }
  SECTION("unknown command fails the envelope enum") {
    const json env = make_envelope("spectral", config_stub(),
                                   json{{"values", std::vector<double>{0.0}}}, meta_stub());
    CHECK_FALSE(schema_check::validate(schema, env, err));
  }
  SECTION("payload shape must match the command") {
    const auto h = dos({-1.0, 0.0, 1.0}, 2);
    const json env = make_envelope("spectrum", config_stub(), to_json(h), meta_stub());
    CHECK_FALSE(schema_check::validate(schema, env, err));
    CHECK(err.find("oneOf") != std::string::npos);
  }
  SECTION("meta requires wall_time_s") {
    json env = make_envelope("spectrum", config_stub(),
                             json{{"values", std::vector<double>{0.0}}}, meta_stub());
    env["meta"].erase("wall_time_s");
    CHECK_FALSE(schema_check::validate(schema, env, err));
    CHECK(err.find("wall_time_s") != std::string::npos);
  }
  SECTION("config requires format") {
    json env = make_envelope("spectrum", json::object(),
                             json{{"values", std::vector<double>{0.0}}}, meta_stub());
    CHECK_FALSE(schema_check::validate(schema, env, err));
    CHECK(err.find("format") != std::string::npos);
  }
}

TEST_CASE("schema validator primitives") {
  std::string err;
  CHECK(schema_check::validate(json{{"type", "integer"}}, json(2), err));
  CHECK_FALSE(schema_check::validate(json{{"type", "integer"}}, json(1.5), err));
  CHECK(schema_check::validate(json{{"type", "number"}}, json(1.5), err));
  CHECK(schema_check::validate(json{{"const", "x"}}, json("x"), err));
  CHECK_FALSE(schema_check::validate(json{{"const", "x"}}, json("y"), err));
  CHECK(schema_check::validate(json{{"enum", {1, 2}}}, json(2), err));
  CHECK_FALSE(schema_check::validate(json{{"enum", {1, 2}}}, json(3), err));

  const json arr_schema{{"type", "array"}, {"items", {{"type", "string"}}}};
  CHECK(schema_check::validate(arr_schema, json::array({"a", "b"}), err));
  CHECK_FALSE(schema_check::validate(arr_schema, json::array({"a", 1}), err));
  CHECK(err.find("$[1]") != std::string::npos);

  const json req_schema{{"type", "object"}, {"required", {"a"}}};
  CHECK(schema_check::validate(req_schema, json{{"a", 1}}, err));
  CHECK_FALSE(schema_check::validate(req_schema, json::object(), err));

  // exactly one branch may match
  const json one{{"oneOf", {{{"type", "number"}}, {{"type", "integer"}}}}};
  CHECK_FALSE(schema_check::validate(one, json(2), err));  // integer matches both
  CHECK(schema_check::validate(one, json(1.5), err));
  CHECK_FALSE(schema_check::validate(one, json("s"), err));
}
