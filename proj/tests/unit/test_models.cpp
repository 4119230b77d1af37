#include "doctest.h"
#include "painweyl/models/painleve_models.hpp"
#include "painweyl/sym/parser.hpp"
#include "painweyl/sym/sampling.hpp"

using namespace painweyl::models;
using namespace painweyl::sym;

namespace {
RationalFunction E(const char* s) { return parse_expression(s); }

bool fields_equal(const VectorField& a, const VectorField& b) {
  if (a.dimension() != b.dimension()) return false;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (!(a.component(i) == b.component(i))) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("model names round-trip") {
  for (auto k : {ModelKind::CoupledEta, ModelKind::CoupledLimit, ModelKind::PviEta, ModelKind::PviLimit}) {
    CHECK(parse_model_kind(model_name(k)) == k);
  }
  CHECK_FALSE(parse_model_kind("pvii").has_value());
}

TEST_CASE("parameter vectors") {
  CHECK_FALSE(ParameterVector::symbolic(7).satisfies_normalization());
  CHECK(ParameterVector::normalized(7).satisfies_normalization());
  CHECK(ParameterVector::normalized(5).satisfies_normalization());
  auto b = parameter_bindings(7, ParameterMode::Normalized, 0);
  REQUIRE(b.size() == 2);
  CHECK(b[0].first == vars::a1);
  CHECK(b[0].second == E("1-2*a2-2*a3-2*a4-a5-a6"));
  CHECK(b[1].first == vars::a0);
  CHECK_THROWS_AS(build_hamiltonian(ModelKind::PviEta, ParameterVector::symbolic(7)), ModelError);
}

TEST_CASE("build_hamiltonian examples") {
  auto pvi = build_hamiltonian(ModelKind::PviEta);
  auto scaled = pvi.hamiltonian() * E("t*(t-1)*(t-eta)");
  auto coeffs = coefficients_in(scaled, vars::p);
  REQUIRE(coeffs.size() == 3);
  CHECK(coeffs[2] == E("q1*(q1-1)*(q1-eta)*(q1-t)"));

  ParameterVector zero;
  zero.alpha.assign(5, RationalFunction{});
  auto lim = build_hamiltonian(ModelKind::PviLimit, zero);
  CHECK(lim.hamiltonian() == E("p1^2*(q1-t)*(q1-1)*q1/(t*(t-1)) + p1*(q1-1)*q1/(t*(t-1))"));

  auto coupled = build_hamiltonian(ModelKind::CoupledEta);
  auto at_origin = substitute(coupled.hamiltonian(), {{vars::q1, RationalFunction{}},
                                                      {vars::p1, RationalFunction{}},
                                                      {vars::q2, RationalFunction{}},
                                                      {vars::p2, RationalFunction{}}});
  CHECK(at_origin.is_zero());
}

TEST_CASE("phase degrees") {
  CHECK(phase_degree(build_hamiltonian(ModelKind::CoupledEta)) == 6);
  CHECK(phase_degree(build_hamiltonian(ModelKind::PviEta)) == 6);
  CHECK(phase_degree(build_hamiltonian(ModelKind::CoupledLimit)) == 5);
}

TEST_CASE("vector_field examples") {
  auto toy = HamiltonianModel::custom(E("q1*p1"), {{vars::q1, vars::p1}});
  auto vf = vector_field(toy);
  CHECK(vf.component(0) == E("q1"));
  CHECK(vf.component(1) == E("-p1"));

  auto no_p = HamiltonianModel::custom(E("q1^2*t"), {{vars::q1, vars::p1}});
  CHECK(vector_field(no_p).component(0).is_zero());

  // The coupling term of the coupled system contributes to dq2/dt.
  auto coupled = build_hamiltonian(ModelKind::CoupledEta);
  auto v = vector_field(coupled);
  auto without = HamiltonianModel::custom(
      coupled.hamiltonian() - E("2*(q1-eta)*q2*((q1-t)*p1+a2)*((q2-1)*p2+a4)/(t*(t-1)*(t-eta))"),
      coupled.pairs());
  CHECK(v.component(2) - vector_field(without).component(2) ==
        E("2*(q1-eta)*q2*((q1-t)*p1+a2)*(q2-1)/(t*(t-1)*(t-eta))"));
}

TEST_CASE("Hamilton property for every model") {
  for (auto k : {ModelKind::CoupledEta, ModelKind::CoupledLimit, ModelKind::PviEta, ModelKind::PviLimit}) {
    auto m = build_hamiltonian(k);
    for (const auto& d : pair_divergences(m, vector_field(m))) CHECK(d.is_zero());
  }
}

TEST_CASE("second-order reduction") {
  auto toy = HamiltonianModel::custom(E("p1^2/2"), {{vars::q1, vars::p1}});
  CHECK(second_order_reduction(toy).qdd.is_zero());
  auto bad = HamiltonianModel::custom(E("q1*p1"), {{vars::q1, vars::p1}});
  CHECK_THROWS_AS(second_order_reduction(bad), ModelError);

  auto lim = second_order_reduction(build_hamiltonian(ModelKind::PviLimit));
  auto c = coefficients_in(lim.qdd, vars::qd);
  REQUIRE(c.size() == 3);
  CHECK(c[2] == E("(1/q1 + 1/(q1-1) + 1/(q1-t))/2"));
  CHECK(c[1] == E("-(1/t + 1/(t-1) + 1/(q1-t))"));

  auto eta = second_order_reduction(build_hamiltonian(ModelKind::PviEta));
  auto ce = coefficients_in(eta.qdd, vars::qd);
  REQUIRE(ce.size() == 3);
  CHECK(ce[2] == E("(1/q1 + 1/(q1-1) + 1/(q1-t) + 1/(q1-eta))/2"));
  CHECK(ce[1] == E("-(1/t + 1/(t-1) + 1/(q1-t) + 1/(t-eta))"));

  for (auto k : {ModelKind::PviLimit, ModelKind::PviEta}) {
    auto groups = compare_ode_groups(second_order_reduction(build_hamiltonian(k)),
                                     printed_second_order_ode(k));
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].power == 2);
    CHECK(groups[0].matches);
    CHECK(groups[1].matches);
    CHECK(groups[2].matches_normalized);
    MESSAGE(model_name(k), " constant group matches: ", groups[2].matches,
            " normalized: ", groups[2].matches_normalized);
    if (!groups[2].matches) MESSAGE("difference: ", groups[2].difference.to_string());
  }
}

TEST_CASE("eta limit") {
  auto coupled_eta = vector_field(build_hamiltonian(ModelKind::CoupledEta));
  auto coupled_lim = vector_field(build_hamiltonian(ModelKind::CoupledLimit));
  auto limit = eta_limit(coupled_eta);
  bool free_equal = fields_equal(limit, coupled_lim);
  auto norm = parameter_bindings(7, ParameterMode::Normalized);
  bool normalized_equal = fields_equal(limit.substituted(norm), coupled_lim.substituted(norm));
  MESSAGE("coupled eta-limit free: ", free_equal, " normalized: ", normalized_equal);
  CHECK(normalized_equal);

  auto pvi_lim = eta_limit(vector_field(build_hamiltonian(ModelKind::PviEta)));
  auto pvi_ref = vector_field(build_hamiltonian(ModelKind::PviLimit));
  auto n5 = parameter_bindings(5, ParameterMode::Normalized);
  CHECK(fields_equal(pvi_lim.substituted(n5), pvi_ref.substituted(n5)));

  VectorField constant({vars::q1}, {E("q1*t")});
  CHECK(eta_limit(constant).component(0) == E("q1*t"));
  VectorField diverging({vars::q1}, {E("eta^2*q1")});
  CHECK_THROWS_AS(eta_limit(diverging), LimitDivergence);
}

TEST_CASE("invariant divisors") {
  auto coupled = vector_field(build_hamiltonian(ModelKind::CoupledEta));
  for (const auto& row : coupled_divisor_table()) {
    auto r = check_invariant_divisor(coupled, row.divisor, row.parameter, 7);
    INFO(row.label);
    CHECK(r.pass);
    MESSAGE("coupled ", row.label, " mode ", mode_name(r.mode));
  }
  auto pvi = vector_field(build_hamiltonian(ModelKind::PviEta));
  for (const auto& row : pvi_divisor_table()) {
    auto r = check_invariant_divisor(pvi, row.divisor, row.parameter, 5);
    INFO(row.label);
    CHECK(r.pass);
    MESSAGE("pvi ", row.label, " mode ", mode_name(r.mode));
  }
  // p1 is not invariant when alpha2 stays generic.
  RationalFunction vp1 = lie_derivative(coupled, E("p1"));
  CHECK_FALSE(as_polynomial_in(vp1 / E("p1"), phase4()).has_value());
  RationalSampler s(7);
  auto pt = s.point();
  pt[vars::p1.index] = 0;
  auto val = vp1.try_evaluate(pt);
  CHECK((val && *val != 0));
}
