#include "doctest.h"
#include "painweyl/singular/singular.hpp"
#include "painweyl/sym/parser.hpp"

using namespace painweyl::singular;
using namespace painweyl::sym;
using painweyl::models::ModelKind;

namespace {
RationalFunction E(const char* s) { return parse_expression(s); }

VectorField field(ModelKind k) {
  return painweyl::models::vector_field(painweyl::models::build_hamiltonian(k));
}

BoundaryChartSystem bcs_for(const AccessibleLocus& l) {
  auto kind = locus_model(l);
  if (kind == ModelKind::CoupledLimit) {
    // The limit field has the log-pole form in U6/U8 only on the normalization hyperplane.
    auto b = painweyl::models::parameter_bindings(7, painweyl::models::ParameterMode::Normalized);
    return log_pole_form(painweyl::charts::chart(l.chart).substituted(b), field(kind).substituted(b), l.boundary);
  }
  return log_pole_form(painweyl::charts::chart(l.chart), field(kind), l.boundary);
}

RFMatrix ints(const std::vector<std::vector<long>>& rows) { return RFMatrix::from_integers(rows); }
}  // namespace

TEST_CASE("log-pole form") {
  auto vf = field(ModelKind::CoupledEta);
  CHECK(log_pole_form(painweyl::charts::chart("U3"), vf, vars::y).admissible);
  CHECK(log_pole_form(painweyl::charts::chart("U4"), vf, vars::w).admissible);
  auto id = log_pole_form(painweyl::charts::chart("U0"), vf, vars::x);
  CHECK(id.admissible);
  // The pushed field has no pole at all there, so b * component vanishes on b = 0
  // only where the component does; the form still exists.
  CHECK(id.a.size() == 4);
  // A double pole along the boundary is rejected.
  VectorField bad({vars::x, vars::y, vars::z, vars::w}, {E("1/y^2"), 0, 0, 0});
  auto r = log_pole_form("fake", bad, vars::y);
  CHECK_FALSE(r.admissible);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("accessible loci") {
  for (const auto& n : locus_names()) {
    auto l = locus(n);
    auto res = verify_locus(l, bcs_for(l));
    INFO(n, " ", res.witness);
    CHECK(res.pass);
  }
  auto moved = locus("C0");
  moved.point[0].second = E("t+1");
  auto res = verify_locus(moved, bcs_for(locus("C0")));
  CHECK_FALSE(res.pass);
  CHECK_FALSE(res.witness.empty());
  CHECK_THROWS_AS(locus("C9"), SingularError);
}

TEST_CASE("local index table") {
  struct Row {
    std::string locus;
    std::vector<long> printed;
  };
  const std::vector<Row> rows{{"C0", {2, 1, 0, 1}}, {"C1", {2, 1, 0, 1}}, {"C2-U4", {0, 1, 2, 1}},
                              {"C3", {0, 1, 2, 1}}, {"C4", {0, 1, 2, 1}}};
  for (const auto& row : rows) {
    auto l = locus(row.locus);
    auto li = local_index(l, bcs_for(l));
    INFO(row.locus, " ", li.detail);
    auto sorted = row.printed;
    std::sort(sorted.begin(), sorted.end());
    CHECK(li.integral);
    CHECK(li.semisimple);
    CHECK(li.multiset == sorted);
    // The free parameter survives only in the C2 prefactor.
    CHECK(li.prefactor.depends_on(vars::a) == (row.locus == "C2-U4"));
    if (li.ordered) CHECK(*li.ordered == row.printed);
    MESSAGE(row.locus, " prefactor ", li.prefactor.to_string());
  }
  auto c4 = local_index(locus("C4"), bcs_for(locus("C4")));
  CHECK(c4.prefactor == E("eta/((t-1)*(eta-t))"));
}

TEST_CASE("example with diagonal linear part") {
  auto l = locus("C0");
  for (auto& [x, val] : l.point)
    if (x == vars::z) val = 0;
  auto li = local_index(l, bcs_for(l));
  CHECK(li.singular_part == ints({{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}}));
  CHECK(li.prefactor == RationalFunction(1));
  REQUIRE(li.ordered.has_value());
  CHECK(*li.ordered == std::vector<long>{2, 1, 0, 1});
  // The full linear part differs only in the boundary column.
  CHECK_FALSE(li.linear_part(2, 1).is_zero());
}

TEST_CASE("example with a non-diagonal linear part") {
  auto l = locus("C2-U4");
  for (auto& [x, val] : l.point)
    if (val == E("a")) val = 0;
  auto li = local_index(l, bcs_for(l));
  auto c = E("eta/((t-1)*(t-eta))");
  auto printed = ints({{2, 0, -2, 0}, {-2, 1, 2, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}});
  CHECK(li.prefactor == c);
  CHECK(li.singular_part == printed.scaled(c));
  CHECK(li.multiset == std::vector<long>{0, 1, 1, 2});
  REQUIRE(li.q.has_value());
  CHECK(*li.q * li.singular_part * li.q->inverse() == [&] {
    RFMatrix d(4, 4);
    for (std::size_t i = 0; i < 4; ++i) d(i, i) = c * RationalFunction(li.q_order[i]);
    return d;
  }());

  auto q = ints({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 1, 0}, {2, 1, -2, 0}});
  CHECK(q * printed * q.inverse() == ints({{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}}));
}

TEST_CASE("characteristic polynomial and spectra") {
  auto m = ints({{2, 1}, {0, 3}});
  auto c = characteristic_coefficients(m);
  CHECK(c[0] == RationalFunction(6));
  CHECK(c[1] == RationalFunction(-5));

  std::string reason;
  RFMatrix sym2(2, 2);
  sym2(0, 0) = E("t");
  sym2(1, 1) = E("3*t");
  auto s = integer_spectrum(sym2, reason);
  REQUIRE(s.has_value());
  CHECK(s->ratios == std::vector<long>{1, 3});
  CHECK(s->prefactor == E("t"));

  auto rot = ints({{0, -1}, {1, 0}});
  CHECK_FALSE(integer_spectrum(rot, reason).has_value());
  CHECK_FALSE(reason.empty());
  RFMatrix irr(2, 2);
  irr(0, 1) = 2;
  irr(1, 0) = 1;
  CHECK_FALSE(integer_spectrum(irr, reason).has_value());
}

TEST_CASE("blow-up resolutions") {
  for (const char* n : {"C4", "C2"}) {
    auto r = resolve(n);
    INFO(n);
    CHECK(r.chart_matches);
    CHECK(r.system_matches);
    CHECK(r.steps.size() == 3);
  }
  CHECK(resolve("C4").target_chart == "r6");
  CHECK(resolve("C2").target_chart == "r3");

  VectorField zero({vars::x, vars::y, vars::z, vars::w}, {0, 0, 0, 0});
  auto steps = resolution_steps("C4");
  auto out = blow_up(steps[0], zero);
  for (std::size_t i = 0; i < 4; ++i) CHECK(out.component(i).is_zero());
  CHECK_THROWS_AS(resolution_steps("C0"), SingularError);
}

TEST_CASE("boundary scans") {
  auto vf = field(ModelKind::CoupledEta);
  for (auto [chart, b] : {std::pair{std::string("U3"), vars::y}, std::pair{std::string("U4"), vars::w}}) {
    auto rep = scan(painweyl::charts::chart(chart), b, vf);
    INFO(chart);
    for (const auto& [n, found] : rep.listed) {
      INFO(n);
      CHECK(found);
    }
    for (const auto& c : rep.curves) {
      std::string s;
      for (const auto& [x, val] : c.point) s += std::string(VariableRegistry::name(x)) + "=" + val.to_string() + " ";
      MESSAGE(chart, " curve ", s, c.matches.value_or("UNLISTED"));
    }
    for (const auto& p : rep.isolated) {
      std::string s;
      for (const auto& [x, val] : p.point) s += std::string(VariableRegistry::name(x)) + "=" + val.to_string() + " ";
      MESSAGE(chart, " point ", s, p.on_curve.value_or("off every curve"));
    }
    CHECK(rep.complement_violations == rep.complement_points);
    CHECK(rep.complete);
  }
}

TEST_CASE("C1 tends to Cinf") {
  auto r = c1_cinf_limit();
  CHECK(r.c1_accessible_u6);
  CHECK(r.c1_accessible_u8);
  CHECK(r.cinf_accessible_u6);
  CHECK(r.cinf_accessible_u8);
  CHECK(r.binding_limit);
  CHECK(r.c1_mode == painweyl::models::ParameterMode::Free);
  CHECK(r.cinf_mode == painweyl::models::ParameterMode::Normalized);
  CHECK_FALSE(r.emendation.empty());
  CHECK(parse_boundary("Y3") == vars::y);
  CHECK_FALSE(parse_boundary("Q").has_value());
}
