#include "doctest.h"
#include "painweyl/sym/parser.hpp"
#include "painweyl/weyl/weyl_actions.hpp"

using namespace painweyl::weyl;
using namespace painweyl::sym;
using painweyl::models::ParameterMode;

namespace {
RationalFunction E(const char* s) { return parse_expression(s); }

painweyl::models::VectorField field_of(Family f) {
  return painweyl::models::vector_field(painweyl::models::build_hamiltonian(model_kind(f)));
}
}  // namespace

TEST_CASE("generator examples") {
  auto s2 = generator(Family::D6, "s2");
  Point pt{};
  pt[vars::q1.index] = 2;
  pt[vars::p1.index] = 3;
  pt[vars::a2.index] = 3;
  auto img = apply_map(s2, pt);
  CHECK(img[vars::q1.index] == 3);
  CHECK(img[vars::p1.index] == 3);

  auto s5 = generator(Family::D6, "s5");
  auto s5_zero = s5;
  for (auto& c : s5_zero.components) c = substitute(c, {{vars::a5, RationalFunction{}}});
  auto id = BirationalMap::identity(Family::D6);
  CHECK(s5_zero.components == id.components);

  auto s3 = generator(Family::D6, "s3");
  auto imgs = s3.parameter_images();
  CHECK(imgs[2] == E("a2+a3"));
  CHECK(imgs[3] == E("-a3"));
  CHECK(imgs[4] == E("a4+a3"));

  CHECK_THROWS_AS(generator(Family::D4, "s5"), WeylError);
  CHECK(generator_names(Family::D6).size() == 10);
  CHECK(generator_names(Family::D4).size() == 8);
}

TEST_CASE("apply examples") {
  auto s0 = generator(Family::D6, "s0");
  RationalSampler s(3);
  Point pt = random_state(Family::D6, s);
  pt[vars::q1.index] = pt[vars::t.index];
  try {
    apply_map(s0, pt);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.factor() == E("q1-t").numerator());
  }

  auto pi2 = generator(Family::D6, "pi2");
  for (int i = 0; i < 20; ++i) {
    Point x = random_state(Family::D6, s);
    auto back = apply_map(pi2, apply_map(pi2, x));
    CHECK(back == x);
  }
  Point x = random_state(Family::D4, s);
  CHECK(apply_map(word_map(Family::D4, ""), x) == x);
}

TEST_CASE("compose examples") {
  auto id = BirationalMap::identity(Family::D6);
  auto s6 = generator(Family::D6, "s6");
  CHECK(maps_equal(compose(s6, s6), id));
  auto s0 = generator(Family::D6, "s0"), s1 = generator(Family::D6, "s1");
  CHECK(maps_equal(compose(s0, s1), compose(s1, s0)));
  CHECK(maps_equal(compose(id, s6), s6));
  CHECK(parse_word("  s2 s3\ts2 ") == std::vector<std::string>{"s2", "s3", "s2"});
  CHECK_THROWS_AS(compose(s6, generator(Family::D4, "s0")), WeylError);
}

TEST_CASE("involutivity at random states") {
  for (auto f : {Family::D6, Family::D4}) {
    RationalSampler s(11);
    for (std::size_t i = 0; i < rank(f); ++i) {
      auto si = generator(f, "s" + std::to_string(i));
      int ok = 0;
      while (ok < 20) {
        Point x = random_state(f, s);
        try {
          if (apply_map(si, apply_map(si, x)) == x) ++ok;
          else FAIL("s_i^2 != id");
        } catch (const PoleError&) {
        }
      }
    }
  }
}

TEST_CASE("symplecticity") {
  for (auto f : {Family::D6, Family::D4}) {
    for (const auto& name : generator_names(f)) {
      INFO(family_name(f), " ", name);
      CHECK(check_symplectic(generator(f, name)).pass);
    }
  }
  auto bad = generator(Family::D6, "s3");
  bad.components[3] = E("p2");
  auto r = check_symplectic(bad);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("equivariance") {
  for (auto f : {Family::D6, Family::D4}) {
    auto field = field_of(f);
    for (const auto& name : generator_names(f)) {
      auto r = check_equivariance(generator(f, name), field);
      INFO(family_name(f), " ", name, " ", r.witness);
      CHECK(r.pass);
      MESSAGE(family_name(f), " ", name, " ", r.method, " ", painweyl::models::mode_name(r.mode));
      if (name[0] == 's') CHECK(r.method == "exact");
      else CHECK(r.points >= 20);
    }
  }
  auto wrong = generator(Family::D6, "s2");
  wrong.param_matrix = BirationalMap::identity(Family::D6).param_matrix;
  CHECK_FALSE(check_equivariance(wrong, field_of(Family::D6)).pass);
}

TEST_CASE("cartan matrix matches the diagram") {
  for (auto f : {Family::D6, Family::D4}) {
    auto a = cartan_matrix(f);
    auto g = DynkinGraph::of(f);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < a.size(); ++j) {
        long expect = i == j ? 2 : (g.adjacent(static_cast<int>(i), static_cast<int>(j)) ? -1 : 0);
        CHECK(a[i][j] == expect);
      }
    }
  }
}

TEST_CASE("coxeter relations") {
  for (auto f : {Family::D6, Family::D4}) {
    for (const auto& r : check_coxeter(f)) {
      INFO(family_name(f), " ", r.relation, " ", r.detail);
      MESSAGE(family_name(f), " ", r.relation, " -> ", r.holds, " ", r.method, " ",
              painweyl::models::mode_name(r.mode), " ", r.detail);
      CHECK(r.holds);
    }
  }
  auto sigma = diagram_automorphism(generator(Family::D6, "pi2"));
  REQUIRE(sigma.has_value());
  CHECK((*sigma)[5] == 6);
  CHECK((*sigma)[6] == 5);
}

TEST_CASE("divisors mapped by the diagram automorphisms") {
  auto table = painweyl::models::coupled_divisor_table();
  for (const auto& name : {"pi1", "pi2", "pi3"}) {
    auto pi = generator(Family::D6, name);
    auto sigma = diagram_automorphism(pi);
    REQUIRE(sigma.has_value());
    for (const auto& row : table) {
      auto r = check_divisor_mapping(pi, row.divisor, table[(*sigma)[row.parameter]].divisor,
                                     row.parameter);
      INFO(name, " ", row.label);
      CHECK(r.pass);
    }
  }
  // s_i preserves the divisors of non-adjacent nodes.
  auto g = DynkinGraph::of(Family::D6);
  for (int i = 0; i < 7; ++i) {
    for (const auto& row : table) {
      if (row.parameter == i || g.adjacent(i, row.parameter)) continue;
      auto r = check_divisor_mapping(generator(Family::D6, "s" + std::to_string(i)), row.divisor, row.divisor,
                                     row.parameter);
      INFO("s", i, " ", row.label);
      CHECK(r.pass);
    }
  }
}
