#include "doctest.h"
#include "painweyl/charts/charts.hpp"
#include "painweyl/sym/parser.hpp"

using namespace painweyl::charts;
using namespace painweyl::sym;
using painweyl::models::ModelKind;

namespace {
RationalFunction E(const char* s) { return parse_expression(s); }

VectorField field(ModelKind k) {
  return painweyl::models::vector_field(painweyl::models::build_hamiltonian(k));
}
}  // namespace

TEST_CASE("every chart round-trips exactly") {
  for (const auto& n : chart_names()) {
    auto c = chart(n);
    auto r = check_round_trip(c);
    INFO(n);
    CHECK(r.forward_inverse);
    CHECK(r.inverse_forward);
  }
  CHECK(chart("r0").t_dependent());
  CHECK_FALSE(chart("U3").t_dependent());
  CHECK(chart("U1").alpha_dependent());
  CHECK_FALSE(chart("U0").alpha_dependent());
  CHECK_THROWS_AS(chart("r7"), ChartError);
  CHECK_THROWS_AS(chart("U12"), ChartError);
}

TEST_CASE("composite chart equals the two-step path") {
  auto b = painweyl::models::parameter_bindings(7, painweyl::models::ParameterMode::Normalized);
  auto vf = field(ModelKind::CoupledLimit).substituted(b);
  auto direct = push_system(chart("r1p").substituted(b), vf);
  auto stepped = push_through({chart("r2p").substituted(b), chart("r1p-local").substituted(b)}, vf);
  CHECK(direct.polynomial);
  REQUIRE(direct.field.dimension() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(direct.field.component(i) == stepped.field.component(i));
  CHECK(direct.polynomial == stepped.polynomial);
}

TEST_CASE("push_system examples") {
  auto vf = field(ModelKind::CoupledEta);
  auto r2 = push_system(chart("r2"), vf);
  CHECK(r2.polynomial);

  auto id = push_system(chart("U0"), vf);
  auto renamed = vf.substituted(std::vector<Binding>{{vars::q1, E("x")}, {vars::p1, E("y")},
                                                     {vars::q2, E("z")}, {vars::p2, E("w")}});
  for (std::size_t i = 0; i < 4; ++i) CHECK(id.field.component(i) == renamed.component(i));

  // Without the alpha shift the r0 chart leaves a pole along y = 0.
  auto bad = chart("r0");
  bad.forward[0] = E("-(q1-t)*p1^2");
  bad.inverse[0] = E("t-x*y^2");
  REQUIRE(check_round_trip(bad).forward_inverse);
  auto ps = push_system(bad, vf);
  CHECK_FALSE(ps.polynomial);
  CHECK(ps.witness.find("(y)") != std::string::npos);
}

TEST_CASE("holomorphy condition sets") {
  for (auto s : {ConditionSet::R, ConditionSet::RPrime, ConditionSet::Pvi}) {
    auto entries = verify_holomorphy(s);
    CHECK(entries.size() == (s == ConditionSet::R ? 7u : s == ConditionSet::RPrime ? 7u : 5u));
    for (const auto& e : entries) {
      INFO(condition_set_name(s), " ", e.chart, " ", e.witness);
      CHECK(e.polynomial);
      CHECK(e.hamiltonian);
      MESSAGE(condition_set_name(s), " ", e.chart, " ", painweyl::models::mode_name(e.mode));
    }
  }
}

TEST_CASE("hamiltonian reconstruction") {
  auto h = painweyl::models::HamiltonianModel::custom(E("q1*p1"), {{vars::q1, vars::p1}, {vars::q2, vars::p2}});
  auto ps = push_system(chart("U0"), painweyl::models::vector_field(h));
  auto rec = reconstruct_hamiltonian(ps);
  REQUIRE(rec.hamiltonian.has_value());
  CHECK(*rec.hamiltonian == E("x*y"));

  PushedSystem fake{"fake", VectorField({vars::x, vars::y, vars::z, vars::w}, {E("x"), 0, 0, 0}), true, {}};
  auto bad = reconstruct_hamiltonian(fake);
  CHECK_FALSE(bad.closed);
  CHECK_FALSE(bad.hamiltonian.has_value());
  CHECK_FALSE(bad.witness.empty());

  auto r2 = push_system(chart("r2"), field(ModelKind::CoupledEta));
  auto k = reconstruct_hamiltonian(r2);
  REQUIRE(k.hamiltonian.has_value());
  CHECK(partial_derivative(*k.hamiltonian, vars::y) == r2.field.component(0));
  CHECK(partial_derivative(*k.hamiltonian, vars::w) == r2.field.component(2));

  CHECK(integrate_in(E("3*x^2*t/(t-1)"), vars::x) == E("x^3*t/(t-1)"));
  CHECK_THROWS_AS(integrate_in(E("1/x"), vars::x), ChartError);
}

TEST_CASE("wedge factors") {
  for (std::string n : {"U0", "U1", "U2", "U5"}) {
    INFO(n);
    CHECK(wedge_factor(chart(n)) == RationalFunction(1));
  }
  CHECK(wedge_factor(chart("U3")) == E("-1/p1^3"));
  auto y1 = chart("U1").forward[1];
  CHECK(wedge_factor(chart("U6")) == -(RationalFunction(1) / y1.pow(3)) * wedge_factor(chart("U1")));
  auto y5 = chart("U5").forward[1];
  CHECK(wedge_factor(chart("U8")) == -(RationalFunction(1) / y5.pow(3)) * wedge_factor(chart("U5")));
  for (int j = 0; j <= 11; ++j) {
    auto n = "U" + std::to_string(j);
    MESSAGE(n, " wedge ", wedge_factor(chart(n)).to_string());
  }
}

TEST_CASE("degree check") {
  CHECK(degree_check(painweyl::models::build_hamiltonian(ModelKind::CoupledEta)) == 6);
  CHECK(degree_check(painweyl::models::build_hamiltonian(ModelKind::CoupledLimit)) == 5);
  CHECK(degree_check(painweyl::models::build_hamiltonian(ModelKind::PviEta)) == 6);
}

TEST_CASE("atlas closed under the swap") {
  const int expected[12] = {0, 2, 1, 4, 3, 5, 11, 10, 9, 8, 7, 6};
  for (const auto& s : atlas_swap_closure()) {
    INFO("U", s.from);
    CHECK(s.to == expected[s.from]);
  }
}

TEST_CASE("polynomial charts of the atlas") {
  auto vf = field(ModelKind::CoupledEta);
  for (std::string n : {"U1", "U2", "U5"}) {
    auto ps = push_system(chart(n), vf);
    INFO(n, " ", ps.witness);
    CHECK(ps.polynomial);
  }
}
