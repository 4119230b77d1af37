#include "doctest.h"
#include "painweyl/report/report.hpp"

using namespace painweyl::report;

namespace {
CheckResult make(std::string id, Status s) {
  CheckResult r;
  r.id = std::move(id);
  r.anchor = "plumbing";
  r.status = s;
  return r;
}
}  // namespace

TEST_CASE("summary and exit code") {
  std::vector<CheckResult> none;
  auto s = summarize(none);
  CHECK(s.total() == 0);
  CHECK(exit_code(none) == 0);
  auto j = to_json(none, RunConfig{});
  CHECK(j["summary"]["pass"] == 0);
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["results"].empty());

  std::vector<CheckResult> two{make("a", Status::Pass), make("b", Status::Fail)};
  s = summarize(two);
  CHECK(s.pass == 1);
  CHECK(s.fail == 1);
  CHECK(exit_code(two) == 1);

  std::vector<CheckResult> mixed{make("a", Status::Pass), make("b", Status::ProbabilisticPass),
                                 make("c", Status::Reported)};
  s = summarize(mixed);
  CHECK(s.pass == 1);
  CHECK(s.probabilistic == 1);
  CHECK(s.reported == 1);
  CHECK(exit_code(mixed) == 0);
  auto jm = to_json(mixed, RunConfig{});
  CHECK(jm["summary"]["probabilistic_pass"] == 1);
  CHECK(jm["results"][1]["status"] == "probabilistic-pass");
  CHECK(jm["results"][2]["status"] == "reported");
}

TEST_CASE("report schema") {
  auto r = make("x", Status::Pass);
  r.duration_ms = 12.5;
  auto j = to_json({r}, RunConfig{});
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"version", "config", "results", "summary"});
  CHECK(j["version"] == std::string(kVersion));
  CHECK_FALSE(j["results"][0].contains("duration_ms"));
  CHECK(j["config"]["seed"] == 1);
  auto text = to_text({r});
  CHECK(text.find("12.5") != std::string::npos);
  CHECK(text.find("summary: 1 checks, 1 pass") != std::string::npos);
}

TEST_CASE("config parsing") {
  auto cfg = parse_config(R"(# sample
model = coupled-eta
alpha_mode = numeric
alpha = -23/420, 1/3, -2/7, 1/5, 2/9, -1/4, 3/8
eta = -2.5
seed = 42
method = probabilistic
waypoints = 0.5,0.5; 1.5, 0.5 ; 2,-1.25
tol = 1e-9
)");
  REQUIRE(cfg.model.has_value());
  CHECK(*cfg.model == painweyl::models::ModelKind::CoupledEta);
  CHECK(cfg.eta == painweyl::sym::Rational(-5, 2));
  CHECK(cfg.seed == 42);
  CHECK(cfg.probabilistic);
  CHECK(cfg.waypoints.size() == 3);
  CHECK(cfg.waypoints[2] == std::complex<double>(2.0, -1.25));
  CHECK(cfg.tol == 1e-9);
  CHECK(cfg.alpha[0] == painweyl::sym::Rational(-23, 420));

  auto w = painweyl::models::normalization_weights(7);
  painweyl::sym::Rational sum = 0;
  for (std::size_t i = 0; i < 7; ++i) sum += w[i] * cfg.alpha[i];
  if (sum == 1) CHECK_NOTHROW(cfg.validate());
  else CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg.alpha = cfg.numeric_alpha(painweyl::models::ModelKind::PviEta);
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // wrong count for coupled-eta
  cfg.alpha = RunConfig{}.numeric_alpha(painweyl::models::ModelKind::CoupledEta);
  CHECK_NOTHROW(cfg.validate());
  cfg.alpha[3] += 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  CHECK_THROWS_AS(parse_config("eta"), ConfigError);
  CHECK_THROWS_AS(parse_config("colour = red"), ConfigError);
  CHECK_THROWS_AS(parse_config("model = p7"), ConfigError);
  CHECK_THROWS_AS(parse_config("waypoints = 1,2,3"), ConfigError);
  CHECK_THROWS_AS(parse_config("eta = x"), ConfigError);
  CHECK_THROWS_AS(parse_config("eta = 1").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("etas = 100, 0").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("alpha = 1, 2").validate(), ConfigError);
  CHECK(parse_number("3/4") == painweyl::sym::Rational(3, 4));
  CHECK(parse_number("-0.125") == painweyl::sym::Rational(-1, 8));
}

TEST_CASE("selectors") {
  for (const char* s : {"all", "symplectic", "coxeter", "equivariance", "charts", "divisors", "limit", "wedge",
                        "singular", "local-index", "resolve", "numeric"})
    CHECK(valid_selector(s));
  CHECK_FALSE(valid_selector("everything"));
  CHECK_THROWS_AS(run_suite("everything", RunConfig{}), ConfigError);
  RunConfig bad;
  bad.eta = 0;
  CHECK_THROWS_AS(run_suite("wedge", bad), ConfigError);
}

TEST_CASE("divisor and wedge suites") {
  auto d = run_suite("divisors", RunConfig{});
  CHECK(d.size() == 12);
  for (const auto& r : d) {
    INFO(r.id);
    CHECK(r.status == Status::Pass);
  }
  auto w = run_suite("wedge", RunConfig{});
  int asserted = 0;
  for (const auto& r : w) {
    INFO(r.id);
    CHECK(r.status != Status::Fail);
    asserted += r.status == Status::Pass;
  }
  CHECK(asserted == 6);
}
