#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cli_support.hpp"
#include "doctest.h"
#include "framelab/errors.hpp"

using namespace framelab;
using framelab::cli::UsageError;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "framelab_test_" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("complex tokens") {
  CHECK(cli::parse_complex("0.5") == cplx(0.5, 0.0));
  CHECK(cli::parse_complex("0.3+0.4i") == cplx(0.3, 0.4));
  CHECK(cli::parse_complex("-0.3-0.4j") == cplx(-0.3, -0.4));
  CHECK(cli::parse_complex("1e-3-2e-2i") == cplx(1e-3, -2e-2));
  CHECK(cli::parse_complex("2e+1+1e+0i") == cplx(20.0, 1.0));
  CHECK(cli::parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(cli::parse_complex(" 0.25i ") == cplx(0.0, 0.25));
  CHECK_THROWS_AS(cli::parse_complex("0.3+x"), UsageError);
  CHECK_THROWS_AS(cli::parse_complex(""), UsageError);
  for (const cplx z : {cplx(0.1, -0.2), cplx(-1e-300, 3.0), cplx(0.0, 0.0)}) {
    CHECK(cli::parse_complex(cli::format_complex(z)) == z);
  }
  CHECK(cli::parse_complex_list("1, 0.5i;2").size() == 3);
}

TEST_CASE("symbols, weights and zeros") {
  const auto phi = cli::parse_symbol("1,0.5,0.5,1");
  CHECK(phi.is_automorphism());
  CHECK_THROWS_AS(cli::parse_symbol("1,0,1"), UsageError);
  CHECK(std::abs(cli::parse_weight_kind("kernel:0.5")(0.0) - 1.0) < 1e-16);
  CHECK(std::abs(cli::parse_weight_kind("bn:0.6,1")(0.0) - 0.8) < 1e-15);
  CHECK(std::abs(cli::parse_weight_kind("poly:1,2")(0.5) - 2.0) < 1e-16);
  CHECK_THROWS_AS(cli::parse_weight_kind("two"), UsageError);
  CHECK_THROWS_AS(cli::parse_weight_kind("bn:0.5"), UsageError);

  const auto zeros = cli::parse_zeros("0.3,0,0.6,0.1,0.5,0:2");
  REQUIRE(zeros.size() == 3);
  CHECK(zeros[1].point.value() == cplx(0.6, 0.1));
  CHECK(zeros[2].multiplicity == 2);
  CHECK_THROWS_AS(cli::parse_zeros("0.3,0,0.6"), UsageError);
  CHECK_THROWS_AS(cli::parse_zeros("0.3,0:0"), UsageError);
  CHECK_THROWS_AS(cli::parse_zeros("1.3,0"), OutsideDisc);
  CHECK_THROWS_AS(cli::parse_count("-3", "n"), UsageError);
}

TEST_CASE("config files") {
  auto known = [](const std::string& k) { return k == "zeros" || k == "cutoff" || k == "riesz"; };
  auto is_flag = [](const std::string& k) { return k == "riesz"; };

  const auto ok = write_temp("ok.json", "{\"experiment\": \"model\", \"zeros\": [0.3, 0], \"cutoff\": 64, \"riesz\": true}");
  const cli::ConfigArgs args = cli::config_to_args(ok, known, is_flag);
  REQUIRE(args.experiment);
  CHECK(*args.experiment == "model");
  CHECK(args.tokens == std::vector<std::string>{"--cutoff=64", "--riesz", "--zeros=0.29999999999999999,0"});

  const auto bad = write_temp("bad.json", "{\n  \"zeros\": \"0.3,0\",\n  \"cutof\": 64\n}\n");
  try {
    (void)cli::config_to_args(bad, known, is_flag);
    FAIL("expected UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()) == bad + ":3: field 'cutof': unknown field");
  }
  const auto broken = write_temp("broken.json", "{\n  \"zeros\": [1,\n}\n");
  try {
    (void)cli::config_to_args(broken, known, is_flag);
    FAIL("expected UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).rfind(broken + ":3:1: invalid JSON", 0) == 0);
  }
  const auto flagval = write_temp("flag.json", "{\"riesz\": 1}");
  CHECK_THROWS_AS(cli::config_to_args(flagval, known, is_flag), UsageError);
  const auto nested = write_temp("nested.json", "{\"cutoff\": {\"a\": 1}}");
  CHECK_THROWS_AS(cli::config_to_args(nested, known, is_flag), UsageError);
  CHECK_THROWS_AS(cli::config_to_args("does_not_exist.json", known, is_flag), UsageError);
  for (const auto& p : {ok, bad, broken, flagval, nested}) std::remove(p.c_str());
}

TEST_CASE("output carries the generator id and is deterministic") {
  cli::Output o;
  o.command = "demo";
  o.seed = 42;
  o.table.header = {"x", "value", "tail_bound"};
  o.table.add_row({"0.1", "0.5", "1e-16"});
  std::ostringstream a;
  std::ostringstream b;
  cli::write_output(o, "csv", a);
  cli::write_output(o, "csv", b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("# prng=mt19937_64 seed=42") != std::string::npos);
  CHECK(a.str().find("x,value,tail_bound\n0.1,0.5,1e-16\n") != std::string::npos);
  std::ostringstream j;
  cli::write_output(o, "json", j);
  const auto doc = nlohmann::json::parse(j.str());
  CHECK(doc["meta"]["prng"] == "mt19937_64");
  CHECK(doc["meta"]["seed"] == 42);
  CHECK(doc["rows"][0]["tail_bound"] == 1e-16);
}

}
