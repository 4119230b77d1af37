#include "painweyl/charts/charts.hpp"

#include "painweyl/sym/matrix.hpp"
#include "painweyl/sym/parser.hpp"

namespace painweyl::charts {

using models::ParameterMode;
using sym::Binding;
using sym::VarSet;
namespace v = sym::vars;

namespace {

VarSet set_of(const std::vector<Var>& vs) {
  VarSet s;
  for (Var x : vs) s.insert(x);
  return s;
}

std::vector<RationalFunction> parse_all(std::initializer_list<const char*> exprs) {
  std::vector<RationalFunction> out;
  for (const char* e : exprs) out.push_back(sym::parse_expression(e));
  return out;
}

const std::vector<Var> kPhase4{v::q1, v::p1, v::q2, v::p2};
const std::vector<Var> kChart4{v::x, v::y, v::z, v::w};
const std::vector<Var> kPhase2{v::q1, v::p1};
const std::vector<Var> kChart2{v::x, v::y};

ChartTransform make4(std::string name, std::initializer_list<const char*> fwd,
                     std::initializer_list<const char*> inv) {
  return {std::move(name), kPhase4, kChart4, parse_all(fwd), parse_all(inv)};
}

ChartTransform make2(std::string name, std::initializer_list<const char*> fwd,
                     std::initializer_list<const char*> inv) {
  return {std::move(name), kPhase2, kChart2, parse_all(fwd), parse_all(inv)};
}

// Holomorphy charts r0..r6 on the coupled system. The primed set for the
// limit system uses the same formulas (r1' is the composite below).
ChartTransform r_chart(int i, const std::string& name) {
  switch (i) {
    case 0:
      return make4(name, {"-((q1-t)*p1-a0)*p1", "1/p1", "q2", "p2"},
                   {"t+y*(a0-x*y)", "1/y", "z", "w"});
    case 1:
      return make4(name, {"-((q1-eta)*p1-a1)*p1", "1/p1", "q2", "p2"},
                   {"eta+y*(a1-x*y)", "1/y", "z", "w"});
    case 2:
      return make4(name, {"1/q1", "-(q1*p1+a2)*q1", "q2", "p2"}, {"1/x", "-x*(x*y+a2)", "z", "w"});
    case 3:
      return make4(name, {"-((q1-q2)*p1-a3)*p1", "1/p1", "q2", "p2+p1"},
                   {"z+y*(a3-x*y)", "1/y", "z", "w-1/y"});
    case 4:
      return make4(name, {"q1", "p1", "1/q2", "-(q2*p2+a4)*q2"}, {"x", "y", "1/z", "-z*(z*w+a4)"});
    case 5:
      return make4(name, {"q1", "p1", "-((q2-1)*p2-a5)*p2", "1/p2"},
                   {"x", "y", "1+w*(a5-z*w)", "1/w"});
    case 6:
      return make4(name, {"q1", "p1", "-(q2*p2-a6)*p2", "1/p2"}, {"x", "y", "w*(a6-z*w)", "1/w"});
    default:
      throw ChartError("no chart r" + std::to_string(i));
  }
}

// The change (x2,y2,z2,w2) -> (x1,y1,z1,w1) applied after r2'.
ChartTransform r1p_local() {
  return {"r1p-local", kChart4, kChart4, parse_all({"-(x*y-a1)*y", "1/y", "z", "w"}),
          parse_all({"(a1-x*y)*y", "1/y", "z", "w"})};
}

ChartTransform pvi_chart(int i) {
  std::string name = "pvi-r" + std::to_string(i);
  switch (i) {
    case 0: return make2(name, {"-((q1-t)*p1-a0)*p1", "1/p1"}, {"t+y*(a0-x*y)", "1/y"});
    case 1: return make2(name, {"-((q1-eta)*p1-a1)*p1", "1/p1"}, {"eta+y*(a1-x*y)", "1/y"});
    case 2: return make2(name, {"1/q1", "-(q1*p1+a2)*q1"}, {"1/x", "-x*(x*y+a2)"});
    case 3: return make2(name, {"-((q1-1)*p1-a3)*p1", "1/p1"}, {"1+y*(a3-x*y)", "1/y"});
    case 4: return make2(name, {"-(q1*p1-a4)*p1", "1/p1"}, {"y*(a4-x*y)", "1/y"});
    default: throw ChartError("no chart " + name);
  }
}

// Twelve-chart atlas. u = (q1 p1 + a2) q1, v = (q2 p2 + a4) q2.
ChartTransform u_chart(int j) {
  std::string name = "U" + std::to_string(j);
  switch (j) {
    case 0: return make4(name, {"q1", "p1", "q2", "p2"}, {"x", "y", "z", "w"});
    case 1: return make4(name, {"1/q1", "-(q1*p1+a2)*q1", "q2", "p2"}, {"1/x", "-x*(x*y+a2)", "z", "w"});
    case 2: return make4(name, {"q1", "p1", "1/q2", "-(q2*p2+a4)*q2"}, {"x", "y", "1/z", "-z*(z*w+a4)"});
    case 3: return make4(name, {"q1", "1/p1", "q2", "p2/p1"}, {"x", "1/y", "z", "w/y"});
    case 4: return make4(name, {"q1", "p1/p2", "q2", "1/p2"}, {"x", "y/w", "z", "1/w"});
    case 5:
      return make4(name, {"1/q1", "-(q1*p1+a2)*q1", "1/q2", "-(q2*p2+a4)*q2"},
                   {"1/x", "-x*(x*y+a2)", "1/z", "-z*(z*w+a4)"});
    case 6:
      return make4(name, {"1/q1", "-1/((q1*p1+a2)*q1)", "q2", "-p2/((q1*p1+a2)*q1)"},
                   {"1/x", "-x*(x+a2*y)/y", "z", "w/y"});
    case 7:
      return make4(name, {"1/q1", "-(q1*p1+a2)*q1/p2", "q2", "1/p2"},
                   {"1/x", "(-x*y/w-a2)*x", "z", "1/w"});
    case 8:
      return make4(name,
                   {"1/q1", "-1/((q1*p1+a2)*q1)", "1/q2", "((q2*p2+a4)*q2)/((q1*p1+a2)*q1)"},
                   {"1/x", "(-x/y-a2)*x", "1/z", "(-w*z/y-a4)*z"});
    case 9:
      return make4(name,
                   {"1/q1", "((q1*p1+a2)*q1)/((q2*p2+a4)*q2)", "1/q2", "-1/((q2*p2+a4)*q2)"},
                   {"1/x", "(-x*y/w-a2)*x", "1/z", "(-z/w-a4)*z"});
    case 10:
      return make4(name, {"q1", "1/p1", "1/q2", "-(q2*p2+a4)*q2/p1"},
                   {"x", "1/y", "1/z", "(-w*z/y-a4)*z"});
    case 11:
      return make4(name, {"q1", "-p1/((q2*p2+a4)*q2)", "1/q2", "-1/((q2*p2+a4)*q2)"},
                   {"x", "y/w", "1/z", "(-z/w-a4)*z"});
    default: throw ChartError("no chart " + name);
  }
}

std::string describe_denominator(const RationalFunction& f, const VarSet& vars) {
  std::string out;
  for (const auto& d : f.denominator_factors()) {
    if (!d.base.depends_on(vars)) continue;
    if (!out.empty()) out += " * ";
    out += "(" + d.base.to_string() + ")";
    if (d.exponent != 1) out += "^" + std::to_string(d.exponent);
  }
  return out;
}

}  // namespace

bool ChartTransform::t_dependent() const {
  for (const auto& f : forward) {
    if (f.depends_on(v::t) || f.depends_on(v::eta)) return true;
  }
  return false;
}

bool ChartTransform::alpha_dependent() const {
  for (const auto& f : forward) {
    for (int i = 0; i < 7; ++i) {
      if (f.depends_on(v::alpha(i))) return true;
    }
  }
  return false;
}

ChartTransform ChartTransform::substituted(std::span<const Binding> b) const {
  ChartTransform c = *this;
  for (auto& f : c.forward) f = sym::substitute(f, b);
  for (auto& f : c.inverse) f = sym::substitute(f, b);
  return c;
}

ChartTransform compose_charts(const ChartTransform& first, const ChartTransform& second,
                              std::string name) {
  if (second.source != first.target) throw ChartError("chart composition: variable mismatch");
  std::vector<Binding> to_first, to_second;
  for (std::size_t i = 0; i < first.target.size(); ++i) {
    to_first.emplace_back(second.source[i], first.forward[i]);
    to_second.emplace_back(first.target[i], second.inverse[i]);
  }
  ChartTransform c{std::move(name), first.source, second.target, {}, {}};
  for (const auto& f : second.forward) c.forward.push_back(sym::substitute(f, to_first));
  for (const auto& f : first.inverse) c.inverse.push_back(sym::substitute(f, to_second));
  return c;
}

ChartTransform chart(std::string_view name) {
  std::string n(name);
  if (n == "r1p-local") return r1p_local();
  if (n == "r1p") return compose_charts(r_chart(2, "r2p"), r1p_local(), "r1p");
  if (n.size() == 2 && n[0] == 'r' && n[1] >= '0' && n[1] <= '6') return r_chart(n[1] - '0', n);
  if (n.size() == 3 && n[0] == 'r' && n[2] == 'p' && n[1] >= '0' && n[1] <= '6') {
    // Printed r6' reads x6 = q2; the chart is only invertible with x6 = q1.
    return r_chart(n[1] - '0', n);
  }
  if (n.size() == 6 && n.starts_with("pvi-r") && n[5] >= '0' && n[5] <= '4') return pvi_chart(n[5] - '0');
  if (n.size() >= 2 && n[0] == 'U') {
    try {
      std::size_t used = 0;
      int j = std::stoi(n.substr(1), &used);
      if (used == n.size() - 1 && j >= 0 && j <= 11) return u_chart(j);
    } catch (const std::exception&) {
    }
  }
  throw ChartError("unknown chart '" + n + "'");
}

std::vector<std::string> chart_names() {
  std::vector<std::string> out;
  for (int i = 0; i <= 6; ++i) out.push_back("r" + std::to_string(i));
  for (int i = 0; i <= 6; ++i) out.push_back("r" + std::to_string(i) + "p");
  out.push_back("r1p-local");
  for (int i = 0; i <= 4; ++i) out.push_back("pvi-r" + std::to_string(i));
  for (int j = 0; j <= 11; ++j) out.push_back("U" + std::to_string(j));
  return out;
}

RoundTrip check_round_trip(const ChartTransform& c) {
  std::vector<Binding> to_source, to_target;
  for (std::size_t i = 0; i < c.source.size(); ++i) {
    to_source.emplace_back(c.source[i], c.inverse[i]);
    to_target.emplace_back(c.target[i], c.forward[i]);
  }
  RoundTrip r{true, true};
  for (std::size_t i = 0; i < c.target.size(); ++i) {
    if (!(sym::substitute(c.forward[i], to_source) == RationalFunction::variable(c.target[i])))
      r.forward_inverse = false;
    if (!(sym::substitute(c.inverse[i], to_target) == RationalFunction::variable(c.source[i])))
      r.inverse_forward = false;
  }
  return r;
}

PushedSystem push_system(const ChartTransform& c, const VectorField& vf) {
  if (vf.variables() != c.source) throw ChartError("chart " + c.name + ": field variables mismatch");
  std::vector<Binding> to_chart;
  for (std::size_t i = 0; i < c.source.size(); ++i) to_chart.emplace_back(c.source[i], c.inverse[i]);

  PushedSystem ps{c.name, {}, true, {}};
  VarSet target = set_of(c.target);
  std::vector<RationalFunction> comps;
  for (std::size_t k = 0; k < c.forward.size(); ++k) {
    RationalFunction d = partial_derivative(c.forward[k], v::t);
    for (std::size_t i = 0; i < c.source.size(); ++i) {
      d += partial_derivative(c.forward[k], c.source[i]) * vf.component(i);
    }
    RationalFunction in_chart = sym::substitute(d, to_chart);
    if (auto poly = sym::as_polynomial_in(in_chart, target)) {
      in_chart = *poly;
    } else if (ps.polynomial) {
      ps.polynomial = false;
      ps.witness = "component " + std::to_string(k) + " (d" +
                   std::string(sym::VariableRegistry::name(c.target[k])) + "/dt) has pole along " +
                   describe_denominator(in_chart, target);
    }
    comps.push_back(std::move(in_chart));
  }
  ps.field = VectorField(c.target, std::move(comps));
  return ps;
}

PushedSystem push_through(const std::vector<ChartTransform>& path, const VectorField& vf) {
  if (path.empty()) throw ChartError("empty chart path");
  PushedSystem ps;
  VectorField cur = vf;
  std::string name;
  for (const auto& c : path) {
    ps = push_system(c, cur);
    cur = ps.field;
    name = name.empty() ? c.name : name + "/" + c.name;
  }
  if (!ps.polynomial) ps.witness = "after " + path.back().name + ": " + ps.witness;
  ps.chart = name;
  return ps;
}

RationalFunction integrate_in(const RationalFunction& f, Var var) {
  auto w = sym::as_polynomial_in(f, VarSet{var});
  if (!w) throw ChartError("integrand is not polynomial in " + std::string(sym::VariableRegistry::name(var)));
  std::vector<sym::Term> terms;
  for (const auto& term : w->numerator().terms()) {
    sym::Monomial m = term.mono;
    unsigned e = m[var];
    m.set(var, e + 1);
    terms.push_back({m, term.coeff / sym::Rational(e + 1)});
  }
  return RationalFunction::from_parts(sym::Polynomial::from_terms(std::move(terms)),
                                      w->denominator_factors());
}

Reconstruction reconstruct_hamiltonian(const PushedSystem& ps) {
  const auto& vs = ps.field.variables();
  if (vs.size() % 2 != 0) throw ChartError("odd-dimensional system");
  // One-form coefficients: dK = sum c_k dv_k with c_{x} = -dy/dt, c_{y} = dx/dt.
  std::vector<RationalFunction> c(vs.size());
  for (std::size_t i = 0; i < vs.size(); i += 2) {
    c[i] = -ps.field.component(i + 1);
    c[i + 1] = ps.field.component(i);
  }
  Reconstruction r;
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      if (!(partial_derivative(c[a], vs[b]) == partial_derivative(c[b], vs[a]))) {
        r.witness = "d/d" + std::string(sym::VariableRegistry::name(vs[b])) + " of the " +
                    std::string(sym::VariableRegistry::name(vs[a])) + "-coefficient differs from d/d" +
                    std::string(sym::VariableRegistry::name(vs[a])) + " of the " +
                    std::string(sym::VariableRegistry::name(vs[b])) + "-coefficient";
        return r;
      }
    }
  }
  r.closed = true;
  // Coordinate path from the origin; coefficients never involve the phase
  // variables, so the origin is never a pole.
  RationalFunction k;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::vector<Binding> later;
    for (std::size_t j = i + 1; j < vs.size(); ++j) later.emplace_back(vs[j], RationalFunction{});
    k += integrate_in(sym::substitute(c[i], later), vs[i]);
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!(partial_derivative(k, vs[i]) == c[i])) {
      r.witness = "integrated K fails d/d" + std::string(sym::VariableRegistry::name(vs[i]));
      return r;
    }
  }
  r.hamiltonian = std::move(k);
  return r;
}

RationalFunction wedge_factor(const ChartTransform& c) {
  sym::RFMatrix j(c.forward.size(), c.source.size());
  for (std::size_t r = 0; r < c.forward.size(); ++r) {
    for (std::size_t s = 0; s < c.source.size(); ++s) j(r, s) = partial_derivative(c.forward[r], c.source[s]);
  }
  return j.determinant();
}

std::optional<ConditionSet> parse_condition_set(std::string_view name) {
  if (name == "r") return ConditionSet::R;
  if (name == "r-prime" || name == "rp") return ConditionSet::RPrime;
  if (name == "pvi") return ConditionSet::Pvi;
  return std::nullopt;
}

std::string_view condition_set_name(ConditionSet s) {
  switch (s) {
    case ConditionSet::R: return "r";
    case ConditionSet::RPrime: return "r-prime";
    case ConditionSet::Pvi: return "pvi";
  }
  return "?";
}

models::ModelKind condition_model(ConditionSet s) {
  switch (s) {
    case ConditionSet::R: return models::ModelKind::CoupledEta;
    case ConditionSet::RPrime: return models::ModelKind::CoupledLimit;
    case ConditionSet::Pvi: return models::ModelKind::PviEta;
  }
  return models::ModelKind::CoupledEta;
}

std::vector<std::vector<ChartTransform>> condition_paths(ConditionSet s) {
  std::vector<std::vector<ChartTransform>> out;
  switch (s) {
    case ConditionSet::R:
      for (int i = 0; i <= 6; ++i) out.push_back({chart("r" + std::to_string(i))});
      break;
    case ConditionSet::RPrime:
      for (int i : {0, 2, 3, 4, 5, 6}) out.push_back({chart("r" + std::to_string(i) + "p")});
      out.push_back({chart("r2p"), r1p_local()});
      break;
    case ConditionSet::Pvi:
      for (int i = 0; i <= 4; ++i) out.push_back({pvi_chart(i)});
      break;
  }
  return out;
}

HolomorphyEntry verify_chart(const std::vector<ChartTransform>& path, const VectorField& vf,
                             std::size_t parameter_slots) {
  HolomorphyEntry e;
  for (auto mode : {ParameterMode::Free, ParameterMode::Normalized}) {
    auto b = models::parameter_bindings(parameter_slots, mode);
    std::vector<ChartTransform> p;
    for (const auto& c : path) p.push_back(mode == ParameterMode::Free ? c : c.substituted(b));
    VectorField f = mode == ParameterMode::Free ? vf : vf.substituted(b);
    auto ps = push_through(p, f);
    e.chart = ps.chart;
    e.mode = mode;
    e.polynomial = ps.polynomial;
    e.hamiltonian = false;
    e.witness = ps.witness;
    if (!ps.polynomial) continue;
    auto rec = reconstruct_hamiltonian(ps);
    e.hamiltonian = rec.hamiltonian.has_value();
    if (e.hamiltonian) {
      e.witness.clear();
      return e;
    }
    e.witness = rec.witness;
  }
  return e;
}

std::vector<HolomorphyEntry> verify_holomorphy(ConditionSet s) {
  auto kind = condition_model(s);
  auto vf = models::vector_field(models::build_hamiltonian(kind));
  std::vector<HolomorphyEntry> out;
  for (const auto& path : condition_paths(s)) out.push_back(verify_chart(path, vf, models::parameter_count(kind)));
  return out;
}

std::vector<AtlasSwap> atlas_swap_closure() {
  const std::vector<Binding> pi{{v::q1, RationalFunction::variable(v::q2)},
                                {v::p1, RationalFunction::variable(v::p2)},
                                {v::q2, RationalFunction::variable(v::q1)},
                                {v::p2, RationalFunction::variable(v::p1)},
                                {v::a2, RationalFunction::variable(v::a4)},
                                {v::a4, RationalFunction::variable(v::a2)}};
  std::vector<ChartTransform> atlas;
  for (int j = 0; j <= 11; ++j) atlas.push_back(u_chart(j));
  std::vector<AtlasSwap> out;
  for (int j = 0; j <= 11; ++j) {
    std::vector<RationalFunction> conj;
    for (const auto& f : atlas[j].forward) conj.push_back(sym::substitute(f, pi));
    int found = -1;
    for (int k = 0; k <= 11 && found < 0; ++k) {
      const auto& g = atlas[k].forward;
      if (conj[0] == g[2] && conj[1] == g[3] && conj[2] == g[0] && conj[3] == g[1]) found = k;
    }
    out.push_back({j, found});
  }
  return out;
}

}  // namespace painweyl::charts
