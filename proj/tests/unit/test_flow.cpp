#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "painweyl/flow/flow.hpp"
#include "painweyl/sym/parser.hpp"

using namespace painweyl::flow;
using namespace painweyl::sym;
using painweyl::models::ModelKind;

namespace {
RationalFunction E(const char* s) { return parse_expression(s); }

VectorField field(ModelKind k) {
  return painweyl::models::vector_field(painweyl::models::build_hamiltonian(k));
}

NumericParams generic_params() {
  NumericParams p{{0, Rational(1, 3), Rational(-2, 7), Rational(1, 5), Rational(2, 9), Rational(-1, 4),
                   Rational(3, 8)},
                  Rational(-2)};
  return p.normalized(0);
}

const State kStart{{0.3, 0.2}, {0.4, -0.1}, {0.7, 0.3}, {-0.2, 0.5}};
const std::vector<cplx> kUnitPath{{0.5, 0.5}, {1.5, 0.5}};

ComplexPath unit_path(const NumericParams& p) {
  return ComplexPath::avoiding_singular_times(kUnitPath, 0.1, p.eta.get_d());
}
}  // namespace

TEST_CASE("compile") {
  auto h = painweyl::models::HamiltonianModel::custom(E("q1*p1"), {{vars::q1, vars::p1}});
  auto cf = compile(painweyl::models::vector_field(h), {});
  auto out = cf(State{2.0, 0.0}, 0.0);
  CHECK(out[0] == cplx(2.0));
  CHECK(out[1] == cplx(0.0));

  for (auto k : {ModelKind::CoupledEta, ModelKind::CoupledLimit, ModelKind::PviEta, ModelKind::PviLimit}) {
    NumericParams p{std::vector<Rational>(painweyl::models::parameter_count(k)), Rational(-2)};
    for (std::size_t i = 0; i < p.alpha.size(); ++i) p.alpha[i] = Rational(static_cast<long>(2 * i + 1), 7);
    auto c = compile(field(k), p);
    double rel = agreement(c);
    INFO(painweyl::models::model_name(k), " ", rel);
    CHECK(rel <= 1e-12);
  }

  NumericParams bad = generic_params();
  bad.eta = 1;
  CHECK_THROWS_AS(compile(field(ModelKind::CoupledEta), bad), FlowError);
  bad.eta = 0;
  CHECK_THROWS_AS(compile(field(ModelKind::CoupledEta), bad), FlowError);
  // The limit system has no eta, so the value is irrelevant there.
  CHECK_NOTHROW(compile(field(ModelKind::CoupledLimit), bad));

  VectorField odd({vars::x}, {E("1/(a0-1)")});
  NumericParams one{{1}, 2};
  CHECK_THROWS_AS(compile(odd, one), FlowError);
}

TEST_CASE("complex paths") {
  auto ok = ComplexPath::avoiding_singular_times(kUnitPath, 0.1, cplx(-2.0));
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.length() == doctest::Approx(1.0));
  CHECK(ok.min_distance() == doctest::Approx(0.5));
  auto through = ComplexPath::avoiding_singular_times({{0.5, 0.0}, {1.5, 0.0}}, 0.1, std::nullopt);
  CHECK_THROWS_AS(through.validate(), FlowError);
  auto tight = ComplexPath::avoiding_singular_times(kUnitPath, 0.6, std::nullopt);
  CHECK_THROWS_AS(tight.validate(), FlowError);
}

TEST_CASE("integrator closed forms") {
  VectorField zero({vars::x}, {RationalFunction(0)});
  auto z = integrate(compile(zero, {}), {cplx(3.0, -1.0)}, ComplexPath{kUnitPath, 0.0, {}});
  REQUIRE(z.complete);
  for (const auto& s : z.samples) CHECK(s.y[0] == cplx(3.0, -1.0));

  VectorField lin({vars::x}, {E("x")});
  auto cf = compile(lin, {});
  const double tol = 1e-10;
  ComplexPath unit{{0.0, 1.0}, 0.0, {}};
  auto tr = integrate(cf, {cplx(1.5, 0.5)}, unit, {.tol = tol});
  REQUIRE(tr.complete);
  CHECK(std::abs(tr.endpoint()[0] - std::exp(1.0) * cplx(1.5, 0.5)) < 10 * tol);
  for (std::size_t i = 1; i < tr.samples.size(); ++i) CHECK(tr.samples[i].error <= tol * (1 + 10.0));

  // Along a complex segment the exact solution is x0 * exp(t1 - t0).
  ComplexPath tilted{{{0.0, 0.0}, {0.6, 0.8}}, 0.0, {}};
  auto tt = integrate(cf, {1.0}, tilted, {.tol = tol});
  CHECK(std::abs(tt.endpoint()[0] - std::exp(cplx(0.6, 0.8))) < 10 * tol);

  // Movable pole: x' = x^2 from x(0) = 1 blows up at t = 1.
  VectorField riccati({vars::x}, {E("x^2")});
  auto blow = integrate(compile(riccati, {}), {1.0}, ComplexPath{{0.0, 2.0}, 0.0, {}}, {.tol = tol});
  CHECK_FALSE(blow.complete);
  CHECK(blow.diagnostic.find("collapsed") != std::string::npos);
  CHECK(blow.samples.back().t.real() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("reversibility and convergence on the coupled system") {
  auto p = generic_params();
  auto cf = compile(field(ModelKind::CoupledEta), p);
  auto path = unit_path(p);
  const double tol = 1e-10;
  auto fwd = integrate(cf, kStart, path, {.tol = tol});
  REQUIRE(fwd.complete);
  auto back = integrate(cf, fwd.endpoint(), path.reversed(), {.tol = tol});
  REQUIRE(back.complete);
  MESSAGE("round trip ", distance(back.endpoint(), kStart), " steps ", fwd.stats.accepted);
  CHECK(distance(back.endpoint(), kStart) < 10 * tol);

  auto conv = convergence(cf, kStart, path, 1e-6);
  MESSAGE("drifts ", conv.drifts[0], " ", conv.drifts[1], " ratio ", conv.ratio);
  CHECK(conv.converged);
}

TEST_CASE("trajectory export") {
  VectorField lin({vars::x}, {E("x")});
  auto tr = integrate(compile(lin, {}), {1.0}, ComplexPath{{0.0, 1.0}, 0.0, {}}, {.tol = 1e-8});
  std::ostringstream os;
  write_jsonl(os, tr, {vars::x});
  std::istringstream is(os.str());
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j.contains("t_re"));
    CHECK(j.contains("t_im"));
    CHECK(j.contains("x_re"));
    CHECK(j.contains("x_im"));
    CHECK(j.contains("err"));
    ++n;
  }
  CHECK(n == tr.samples.size());
}

TEST_CASE("numerical Backlund equivariance") {
  auto p = generic_params();
  auto path = unit_path(p);
  for (const auto& name : painweyl::weyl::generator_names(painweyl::weyl::Family::D6)) {
    auto m = painweyl::weyl::generator(painweyl::weyl::Family::D6, name);
    auto r = verify_backlund_numeric(m, ModelKind::CoupledEta, p, kStart, path, 1e-10);
    INFO(name, " ", r.diagnostic);
    REQUIRE(r.ok);
    MESSAGE(name, " deviation ", r.max_deviation);
    CHECK(r.max_deviation < 1e-8);
  }

  auto s4 = painweyl::weyl::generator(painweyl::weyl::Family::D6, "s4");
  auto fixed = p;
  fixed.alpha[4] = 0;
  fixed = fixed.normalized(0);
  auto id = verify_backlund_numeric(s4, ModelKind::CoupledEta, fixed, kStart, path, 1e-10);
  REQUIRE(id.ok);
  CHECK(id.max_deviation < 1e-12);

  // Control: keep the original parameters for the image.
  auto wrong = verify_backlund_numeric(s4, ModelKind::CoupledEta, p, kStart, path, 1e-10, p.alpha);
  REQUIRE(wrong.ok);
  std::size_t mid = wrong.deviations.size() / 2;
  MESSAGE("wrong image: mid ", wrong.deviations[mid], " end ", wrong.deviations.back());
  CHECK(wrong.max_deviation > 1e-4);
  CHECK(wrong.deviations.back() > wrong.deviations[mid]);
  CHECK(wrong.deviations[mid] > wrong.deviations[mid / 4]);

  NumericParams q{{0, Rational(1, 3), Rational(-2, 7), Rational(1, 5), Rational(2, 9)}, Rational(-2)};
  q = q.normalized(0);
  for (const auto& name : painweyl::weyl::generator_names(painweyl::weyl::Family::D4)) {
    auto m = painweyl::weyl::generator(painweyl::weyl::Family::D4, name);
    auto r = verify_backlund_numeric(m, ModelKind::PviEta, q, {kStart[0], kStart[1]}, path, 1e-10);
    INFO("D4 ", name, " ", r.diagnostic);
    REQUIRE(r.ok);
    CHECK(r.max_deviation < 1e-8);
  }

  auto d4 = painweyl::weyl::generator(painweyl::weyl::Family::D4, "s1");
  CHECK_THROWS_AS(verify_backlund_numeric(d4, ModelKind::CoupledEta, p, kStart, path, 1e-10), FlowError);
}

TEST_CASE("eta to infinity") {
  auto p = generic_params();
  auto r = verify_eta_limit_numeric(kStart, kUnitPath, p.alpha, {100, 1000, 10000}, 1e-10);
  REQUIRE(r.diagnostic.empty());
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) MESSAGE("eta ", row.eta, " deviation ", row.deviation);
  MESSAGE("decay exponent ", r.decay_exponent);
  CHECK(r.monotone);
  CHECK(r.rows.back().deviation < 1e-3);
  // Regression value for this start, path and parameter choice.
  CHECK(r.rows.back().deviation == doctest::Approx(1.91002e-4).epsilon(1e-3));
}

TEST_CASE("divisors stay invariant along the flow") {
  auto p = generic_params();
  auto path = unit_path(p);
  const double tol = 1e-10;
  auto rows = painweyl::models::coupled_divisor_table();
  auto p1 = divisor_flow(rows[2], ModelKind::CoupledEta, p, kStart, path, tol);
  INFO(p1.diagnostic);
  CHECK(p1.pass);
  CHECK(p1.max_value < 100 * tol);
  for (const auto& row : rows) {
    auto r = divisor_flow(row, ModelKind::CoupledEta, p, kStart, path, tol);
    INFO(row.label, " ", r.diagnostic, " ", r.max_value);
    CHECK(r.pass);
  }
  // Control: without alpha_2 = 0 the flow leaves p1 = 0.
  auto cf = compile(field(ModelKind::CoupledEta), p);
  State s = kStart;
  s[1] = 0.0;
  auto tr = integrate(cf, s, path, {.tol = tol});
  REQUIRE(tr.complete);
  CHECK(std::abs(tr.endpoint()[1]) > 1e-3);
}
