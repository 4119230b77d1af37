#include "painweyl/weyl/weyl_actions.hpp"

#include <sstream>
#include <tuple>

#include "painweyl/sym/matrix.hpp"
#include "painweyl/sym/parser.hpp"

namespace painweyl::weyl {

namespace v = sym::vars;
using models::ParameterMode;
using sym::Binding;
using sym::Rational;
using RF = RationalFunction;

std::string_view family_name(Family f) { return f == Family::D6 ? "D6" : "D4"; }
std::size_t rank(Family f) { return f == Family::D6 ? 7 : 5; }

std::vector<Var> phase_variables(Family f) {
  if (f == Family::D6) return {v::q1, v::p1, v::q2, v::p2};
  return {v::q1, v::p1};
}

models::ModelKind model_kind(Family f) {
  return f == Family::D6 ? models::ModelKind::CoupledEta : models::ModelKind::PviEta;
}

BirationalMap BirationalMap::identity(Family f) {
  BirationalMap m;
  m.name = "id";
  m.family = f;
  for (Var x : phase_variables(f)) m.components.push_back(RF::variable(x));
  m.t_image = RF::variable(v::t);
  m.eta_image = RF::variable(v::eta);
  std::size_t n = rank(f);
  m.param_matrix.assign(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m.param_matrix[i][i] = 1;
  m.param_offset.assign(n, 0);
  return m;
}

std::vector<RF> BirationalMap::parameter_images() const {
  std::vector<RF> out;
  for (std::size_t i = 0; i < param_matrix.size(); ++i) {
    RF acc(param_offset[i]);
    for (std::size_t j = 0; j < param_matrix[i].size(); ++j) {
      if (param_matrix[i][j] != 0) acc += RF(param_matrix[i][j]) * RF::variable(v::alpha(static_cast<int>(j)));
    }
    out.push_back(std::move(acc));
  }
  return out;
}

std::size_t BirationalMap::size() const {
  std::size_t s = t_image.size() + eta_image.size();
  for (const auto& c : components) s += c.size();
  return s;
}

namespace {

struct Spec {
  const char* name;
  std::vector<const char*> components;
  const char* eta;
  const char* t;
  std::vector<const char*> params;
};

// Transcribed as printed; q, p of the single-pair family use q1, p1.
const std::vector<Spec>& d6_specs() {
  static const std::vector<Spec> specs = {
      {"s0", {"q1", "p1-a0/(q1-t)", "q2", "p2"}, "eta", "t", {"-a0", "a1", "a2+a0", "a3", "a4", "a5", "a6"}},
      {"s1", {"q1", "p1-a1/(q1-eta)", "q2", "p2"}, "eta", "t", {"a0", "-a1", "a2+a1", "a3", "a4", "a5", "a6"}},
      {"s2", {"q1+a2/p1", "p1", "q2", "p2"}, "eta", "t", {"a0+a2", "a1+a2", "-a2", "a3+a2", "a4", "a5", "a6"}},
      {"s3", {"q1", "p1-a3/(q1-q2)", "q2", "p2+a3/(q1-q2)"}, "eta", "t",
       {"a0", "a1", "a2+a3", "-a3", "a4+a3", "a5", "a6"}},
      {"s4", {"q1", "p1", "q2+a4/p2", "p2"}, "eta", "t", {"a0", "a1", "a2", "a3+a4", "-a4", "a5+a4", "a6+a4"}},
      {"s5", {"q1", "p1", "q2", "p2-a5/(q2-1)"}, "eta", "t", {"a0", "a1", "a2", "a3", "a4+a5", "-a5", "a6"}},
      {"s6", {"q1", "p1", "q2", "p2-a6/q2"}, "eta", "t", {"a0", "a1", "a2", "a3", "a4+a6", "a5", "-a6"}},
      {"pi1",
       {"(t-1)*q1/(t-q1-eta*t+eta*t*q1)",
        "(-t+q1+eta*t-eta*t*q1)*(t*p1-q1*p1-a2-eta*t*p1+eta*t*q1*p1+a2*eta*t)/(t*(t-1)*(eta-1))",
        "(t-1)*q2/(t-q2-eta*t+eta*t*q2)",
        "(-t+q2+eta*t-eta*t*q2)*(t*p2-q2*p2-a4-eta*t*p2+eta*t*q2*p2+a4*eta*t)/(t*(t-1)*(eta-1))"},
       "1/eta",
       "eta*(t-1)/(t-eta-eta*t+eta^2*t)",
       {"a1", "a0", "a2", "a3", "a4", "a5", "a6"}},
      {"pi2", {"1-q1", "-p1", "1-q2", "-p2"}, "1-eta", "1-t", {"a0", "a1", "a2", "a3", "a4", "a6", "a5"}},
      {"pi3",
       {"t*(q2-eta)/(t*(q2-eta)+eta^2*(t-q2))",
        "(t*(q2-eta)+eta^2*(t-q2))*(t*(q2-eta)*p2+a4*(t-eta^2)+eta^2*(t-q2)*p2)/(t*eta^2*(t-eta))",
        "t*(q1-eta)/(t*(q1-eta)+eta^2*(t-q1))",
        "(t*(q1-eta)+eta^2*(t-q1))*(t*(q1-eta)*p1+a2*(t-eta^2)+eta^2*(t-q1)*p1)/(t*eta^2*(t-eta))"},
       "-1/(eta-1)",
       "-(eta-1)*t/(t-eta*t+eta^2*(t-1))",
       {"a5", "a6", "a4", "a3", "a2", "a0", "a1"}},
  };
  return specs;
}

const std::vector<Spec>& d4_specs() {
  static const std::vector<Spec> specs = {
      // The printed s0 line carries a stray third entry; the map is 2-component.
      {"s0", {"q1", "p1-a0/(q1-t)"}, "eta", "t", {"-a0", "a1", "a2+a0", "a3", "a4"}},
      {"s1", {"q1", "p1-a1/(q1-eta)"}, "eta", "t", {"a0", "-a1", "a2+a1", "a3", "a4"}},
      {"s2", {"q1+a2/p1", "p1"}, "eta", "t", {"a0+a2", "a1+a2", "-a2", "a3+a2", "a4+a2"}},
      {"s3", {"q1", "p1-a3/(q1-1)"}, "eta", "t", {"a0", "a1", "a2+a3", "-a3", "a4"}},
      {"s4", {"q1", "p1-a4/q1"}, "eta", "t", {"a0", "a1", "a2+a4", "a3", "-a4"}},
      {"pi1", {"1-q1", "-p1"}, "1-eta", "1-t", {"a0", "a1", "a2", "a4", "a3"}},
      {"pi2", {"(eta-q1)/(eta-1)", "(1-eta)*p1"}, "eta/(eta-1)", "(eta-t)/(eta-1)",
       {"a0", "a4", "a2", "a3", "a1"}},
      {"pi3",
       {"(eta-1)^2*(q1-t)/((eta*(t-2)+1)*q1+(eta-eta^2-1)*t+eta^2)",
        "(1-t)*p1+(q1-1)*((q1-1)*p1+a2)*(eta*(t-2)+1)/((eta-1)^2*(t-1))"
        "+(q1-t)*((q1-t)*p1+a2)*(eta*(t-2)+1)/(eta*(t-1)*(t-eta))"},
       "1-eta",
       "(eta-1)^2*t/(t-eta*t+eta^2*(t-1))",
       {"a4", "a1", "a2", "a3", "a0"}},
  };
  return specs;
}

const std::vector<Spec>& specs_for(Family f) { return f == Family::D6 ? d6_specs() : d4_specs(); }

BirationalMap from_spec(Family f, const Spec& s) {
  BirationalMap m;
  m.name = s.name;
  m.family = f;
  for (const char* c : s.components) m.components.push_back(sym::parse_expression(c));
  m.eta_image = sym::parse_expression(s.eta);
  m.t_image = sym::parse_expression(s.t);
  std::size_t n = rank(f);
  for (const char* expr : s.params) {
    sym::Polynomial p = sym::parse_expression(expr).numerator();
    std::vector<long> row(n, 0);
    long offset = 0;
    for (const auto& term : p.terms()) {
      if (term.mono.degree == 0) {
        offset = term.coeff.get_num().get_si();
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (term.mono[v::alpha(static_cast<int>(j))] == 1) row[j] = term.coeff.get_num().get_si();
      }
    }
    m.param_matrix.push_back(std::move(row));
    m.param_offset.push_back(offset);
  }
  return m;
}

std::vector<Binding> bindings_of(const BirationalMap& m) {
  std::vector<Binding> b;
  auto phase = phase_variables(m.family);
  for (std::size_t i = 0; i < phase.size(); ++i) b.emplace_back(phase[i], m.components[i]);
  b.emplace_back(v::t, m.t_image);
  b.emplace_back(v::eta, m.eta_image);
  auto imgs = m.parameter_images();
  for (std::size_t i = 0; i < imgs.size(); ++i) b.emplace_back(v::alpha(static_cast<int>(i)), imgs[i]);
  return b;
}

std::vector<Binding> norm_bindings(Family f, ParameterMode mode) {
  return models::parameter_bindings(rank(f), mode);
}

std::string describe_point(const Point& p, Family f) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](Var x) {
    os << (first ? "" : ", ") << sym::VariableRegistry::name(x) << "=" << p[x.index].get_str();
    first = false;
  };
  for (Var x : phase_variables(f)) emit(x);
  emit(v::t);
  emit(v::eta);
  for (std::size_t i = 0; i < rank(f); ++i) emit(v::alpha(static_cast<int>(i)));
  return os.str();
}

bool states_equal(const Point& a, const Point& b, Family f) {
  for (Var x : phase_variables(f)) {
    if (a[x.index] != b[x.index]) return false;
  }
  if (a[v::t.index] != b[v::t.index] || a[v::eta.index] != b[v::eta.index]) return false;
  for (std::size_t i = 0; i < rank(f); ++i) {
    Var x = v::alpha(static_cast<int>(i));
    if (a[x.index] != b[x.index]) return false;
  }
  return true;
}

using Affine = std::pair<std::vector<std::vector<long>>, std::vector<long>>;

// Parameter action of "first, then second".
Affine then(const BirationalMap& first, const BirationalMap& second) {
  std::size_t n = first.param_matrix.size();
  Affine out{std::vector<std::vector<long>>(n, std::vector<long>(n, 0)), second.param_offset};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      long s = second.param_matrix[i][k];
      if (s == 0) continue;
      out.second[i] += s * first.param_offset[k];
      for (std::size_t j = 0; j < n; ++j) out.first[i][j] += s * first.param_matrix[k][j];
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> generator_names(Family f) {
  std::vector<std::string> out;
  for (const auto& s : specs_for(f)) out.emplace_back(s.name);
  return out;
}

BirationalMap generator(Family f, std::string_view name) {
  for (const auto& s : specs_for(f)) {
    if (name == s.name) return from_spec(f, s);
  }
  if (name == "id") return BirationalMap::identity(f);
  throw WeylError("unknown generator '" + std::string(name) + "' for " + std::string(family_name(f)));
}

Point apply_map(const BirationalMap& m, const Point& state) {
  Point out = state;
  auto phase = phase_variables(m.family);
  for (std::size_t i = 0; i < phase.size(); ++i) out[phase[i].index] = m.components[i].evaluate(state);
  out[v::t.index] = m.t_image.evaluate(state);
  out[v::eta.index] = m.eta_image.evaluate(state);
  for (std::size_t i = 0; i < m.param_matrix.size(); ++i) {
    Rational acc(m.param_offset[i]);
    for (std::size_t j = 0; j < m.param_matrix[i].size(); ++j) {
      acc += Rational(m.param_matrix[i][j]) * state[v::alpha(static_cast<int>(j)).index];
    }
    out[v::alpha(static_cast<int>(i)).index] = acc;
  }
  return out;
}

BirationalMap compose(const BirationalMap& first, const BirationalMap& second, std::size_t budget) {
  if (first.family != second.family) throw WeylError("composing maps of different families");
  auto b = bindings_of(first);
  BirationalMap out;
  out.name = first.name + " " + second.name;
  out.family = first.family;
  std::size_t used = 0;
  auto sub = [&](const RF& f) {
    RF r = sym::substitute(f, b);
    used += r.size();
    if (used > budget) throw BudgetExceeded("composition '" + out.name + "' exceeds size budget");
    return r;
  };
  for (const auto& c : second.components) out.components.push_back(sub(c));
  out.t_image = sub(second.t_image);
  out.eta_image = sub(second.eta_image);
  std::tie(out.param_matrix, out.param_offset) = then(first, second);
  return out;
}

std::vector<std::string> parse_word(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

BirationalMap word_map(Family f, std::string_view text, std::size_t budget) {
  BirationalMap m = BirationalMap::identity(f);
  bool first = true;
  for (const auto& name : parse_word(text)) {
    BirationalMap g = generator(f, name);
    m = first ? g : compose(m, g, budget);
    first = false;
  }
  m.name = std::string(text);
  return m;
}

bool maps_equal(const BirationalMap& a, const BirationalMap& b, ParameterMode mode) {
  if (a.family != b.family || a.components.size() != b.components.size()) return false;
  auto norm = norm_bindings(a.family, mode);
  auto same = [&](const RF& x, const RF& y) {
    if (x == y) return true;
    if (mode == ParameterMode::Free) return false;
    return sym::substitute(sym::difference_uncancelled(x, y), norm).is_zero();
  };
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    if (!same(a.components[i], b.components[i])) return false;
  }
  if (!same(a.t_image, b.t_image) || !same(a.eta_image, b.eta_image)) return false;
  auto pa = a.parameter_images(), pb = b.parameter_images();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!same(pa[i], pb[i])) return false;
  }
  return true;
}

CheckResult check_symplectic(const BirationalMap& m) {
  auto phase = phase_variables(m.family);
  std::size_t n = phase.size();
  sym::RFMatrix j(n, n), omega(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) j(r, c) = sym::partial_derivative(m.components[r], phase[c]);
  }
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    omega(k, k + 1) = RF(1L);
    omega(k + 1, k) = RF(-1L);
  }
  sym::RFMatrix defect = j.transpose() * omega * j - omega;
  CheckResult out;
  out.method = "exact";
  out.pass = defect.is_zero();
  if (!out.pass) {
    for (std::size_t r = 0; r < n && out.witness.empty(); ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (!defect(r, c).is_zero()) {
          out.witness = "(J^T Omega J - Omega)[" + std::to_string(r) + "," + std::to_string(c) +
                        "] = " + defect(r, c).to_string();
          break;
        }
      }
    }
  }
  return out;
}

Point random_state(Family f, sym::RationalSampler& s, ParameterMode mode) {
  Point p = s.point();
  if (mode == ParameterMode::Normalized) {
    auto w = models::normalization_weights(rank(f));
    Rational rest(1);
    for (std::size_t i = 1; i < w.size(); ++i) rest -= Rational(w[i]) * p[v::alpha(static_cast<int>(i)).index];
    p[v::a0.index] = rest;
  }
  return p;
}

CheckResult check_equivariance(const BirationalMap& m, const models::VectorField& field,
                               std::uint64_t seed, int points) {
  auto phase = phase_variables(m.family);
  if (field.variables() != phase) throw WeylError("field and map act on different phase spaces");
  std::size_t n = phase.size();
  // dX_i/dx_j and dX_i/dt, shared by both strategies.
  std::vector<std::vector<RF>> jac(n, std::vector<RF>(n));
  std::vector<RF> dxdt(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) jac[i][k] = sym::partial_derivative(m.components[i], phase[k]);
    dxdt[i] = sym::partial_derivative(m.components[i], v::t);
  }
  RF dtdt = sym::partial_derivative(m.t_image, v::t);
  bool base_fixed = m.t_image == RF::variable(v::t) && m.eta_image == RF::variable(v::eta);

  CheckResult out;
  if (base_fixed) {
    out.method = "exact";
    auto b = bindings_of(m);
    std::vector<RF> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
      RF lhs = dxdt[i];
      for (std::size_t k = 0; k < n; ++k) {
        if (!jac[i][k].is_zero()) lhs += jac[i][k] * field.component(k);
      }
      RF rhs = dtdt * sym::substitute(field.component(i), b);
      residual[i] = sym::difference_uncancelled(lhs, rhs);
    }
    for (auto mode : {ParameterMode::Free, ParameterMode::Normalized}) {
      auto norm = norm_bindings(m.family, mode);
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        RF r = mode == ParameterMode::Free ? residual[i] : sym::substitute(residual[i], norm);
        if (!r.numerator().is_zero()) {
          ok = false;
          if (out.witness.empty()) {
            out.witness = "component " + std::to_string(i) + " residual numerator has " +
                          std::to_string(r.numerator().size()) + " terms";
          }
        }
      }
      if (ok) {
        out.pass = true;
        out.mode = mode;
        out.witness.clear();
        return out;
      }
    }
    out.mode = ParameterMode::Normalized;
    return out;
  }

  out.method = "probabilistic";
  for (auto mode : {ParameterMode::Free, ParameterMode::Normalized}) {
    sym::RationalSampler sampler(seed);
    auto residual = [&](const Point& pt) -> Rational {
      Point image = apply_map(m, pt);
      Rational scale = dtdt.evaluate(pt);
      for (std::size_t i = 0; i < n; ++i) {
        Rational lhs = dxdt[i].evaluate(pt);
        for (std::size_t k = 0; k < n; ++k) {
          if (!jac[i][k].is_zero()) lhs += jac[i][k].evaluate(pt) * field.component(k).evaluate(pt);
        }
        Rational rhs = scale * field.component(i).evaluate(image);
        if (lhs != rhs) return lhs - rhs;
      }
      return Rational(0);
    };
    auto prepare = [&](Point& pt) { pt = random_state(m.family, sampler, mode); };
    auto res = sym::check_at_random_points(residual, sampler, points, prepare);
    out.points = res.points_tested;
    if (res.holds) {
      out.pass = true;
      out.mode = mode;
      out.witness.clear();
      return out;
    }
    if (out.witness.empty()) out.witness = res.witness;
  }
  out.mode = ParameterMode::Normalized;
  return out;
}

bool DynkinGraph::adjacent(int i, int j) const {
  for (auto [a, b] : edges) {
    if ((a == i && b == j) || (a == j && b == i)) return true;
  }
  return false;
}

DynkinGraph DynkinGraph::of(Family f) {
  if (f == Family::D6) return {7, {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 6}}};
  return {5, {{0, 2}, {1, 2}, {2, 3}, {2, 4}}};
}

std::vector<std::vector<long>> cartan_matrix(Family f) {
  std::size_t n = rank(f);
  std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    auto s = generator(f, "s" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      // alpha_j' = alpha_j - a_ij alpha_i.
      long coeff = s.param_matrix[j][i];
      a[i][j] = (i == j) ? 1 - coeff : -coeff;
    }
  }
  return a;
}

std::optional<std::vector<int>> diagram_automorphism(const BirationalMap& pi) {
  std::size_t n = rank(pi.family);
  std::vector<BirationalMap> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(generator(pi.family, "s" + std::to_string(i)));
  std::vector<int> sigma(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    Affine left = then(s[i], pi);
    for (std::size_t j = 0; j < n && sigma[i] < 0; ++j) {
      if (then(pi, s[j]) == left) sigma[i] = static_cast<int>(j);
    }
    if (sigma[i] < 0) return std::nullopt;
  }
  return sigma;
}

namespace {

// Applies the maps left to right at random points and compares with
// applying `rhs` left to right.
sym::ProbabilisticCheck random_relation(Family f, const std::vector<BirationalMap>& lhs,
                                        const std::vector<BirationalMap>& rhs, ParameterMode mode,
                                        std::uint64_t seed, int points, std::string& witness) {
  sym::RationalSampler sampler(seed);
  auto residual = [&](const Point& pt) -> Rational {
    Point a = pt, b = pt;
    for (const auto& m : lhs) a = apply_map(m, a);
    for (const auto& m : rhs) b = apply_map(m, b);
    if (states_equal(a, b, f)) return Rational(0);
    witness = "at " + describe_point(pt, f);
    return Rational(1);
  };
  auto prepare = [&](Point& pt) { pt = random_state(f, sampler, mode); };
  return sym::check_at_random_points(residual, sampler, points, prepare);
}

RelationResult verify_relation(Family f, const std::string& label, const std::vector<BirationalMap>& lhs,
                               const std::vector<BirationalMap>& rhs, std::size_t budget,
                               std::uint64_t seed) {
  RelationResult r;
  r.relation = label;
  try {
    auto fold = [&](const std::vector<BirationalMap>& ms) {
      BirationalMap acc = BirationalMap::identity(f);
      for (const auto& m : ms) acc = compose(acc, m, budget);
      return acc;
    };
    BirationalMap a = fold(lhs), b = fold(rhs);
    r.method = "exact";
    for (auto mode : {ParameterMode::Free, ParameterMode::Normalized}) {
      if (maps_equal(a, b, mode)) {
        r.holds = true;
        r.mode = mode;
        return r;
      }
    }
    r.mode = ParameterMode::Normalized;
    r.detail = "exact composition differs";
    return r;
  } catch (const BudgetExceeded&) {
    r.method = "probabilistic";
  }
  for (auto mode : {ParameterMode::Free, ParameterMode::Normalized}) {
    std::string witness;
    auto res = random_relation(f, lhs, rhs, mode, seed, 20, witness);
    if (res.holds) {
      r.holds = true;
      r.mode = mode;
      r.detail = std::to_string(res.points_tested) + " points";
      return r;
    }
    if (r.detail.empty()) r.detail = witness;
  }
  r.mode = ParameterMode::Normalized;
  return r;
}

}  // namespace

std::optional<int> map_order(const BirationalMap& m, int max_order, std::uint64_t seed) {
  sym::RationalSampler sampler(seed);
  for (int k = 1; k <= max_order; ++k) {
    bool all = true;
    int tested = 0;
    sym::RationalSampler local(seed);
    while (tested < 20) {
      Point start = random_state(m.family, local);
      Point cur = start;
      try {
        for (int i = 0; i < k; ++i) cur = apply_map(m, cur);
      } catch (const sym::PoleError&) {
        continue;
      }
      ++tested;
      if (!states_equal(cur, start, m.family)) {
        all = false;
        break;
      }
    }
    if (all) return k;
  }
  return std::nullopt;
}

std::vector<RelationResult> check_coxeter(Family f, std::size_t budget, std::uint64_t seed) {
  std::vector<RelationResult> out;
  auto graph = DynkinGraph::of(f);
  std::size_t n = rank(f);
  std::vector<BirationalMap> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(generator(f, "s" + std::to_string(i)));
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(verify_relation(f, "s" + std::to_string(i) + "^2 = id", {s[i], s[i]}, {}, budget, seed));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int m = graph.adjacent(static_cast<int>(i), static_cast<int>(j)) ? 3 : 2;
      std::vector<BirationalMap> word;
      for (int k = 0; k < m; ++k) {
        word.push_back(s[i]);
        word.push_back(s[j]);
      }
      std::string label = "(s" + std::to_string(i) + " s" + std::to_string(j) + ")^" + std::to_string(m) + " = id";
      out.push_back(verify_relation(f, label, word, {}, budget, seed));
    }
  }
  for (const auto& name : generator_names(f)) {
    if (name.rfind("pi", 0) != 0) continue;
    BirationalMap pi = generator(f, name);
    auto order = map_order(pi, 12, seed);
    RelationResult ord;
    ord.relation = "order(" + name + ")";
    ord.method = "probabilistic";
    ord.holds = order.has_value();
    ord.detail = order ? std::to_string(*order) : "> 12";
    out.push_back(ord);
    auto sigma = diagram_automorphism(pi);
    if (!sigma) {
      RelationResult r;
      r.relation = name + " permutes the reflections";
      r.detail = "no permutation sigma matches the parameter action";
      out.push_back(r);
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      int j = (*sigma)[i];
      std::string label = "s" + std::to_string(i) + " " + name + " = " + name + " s" + std::to_string(j);
      out.push_back(verify_relation(f, label, {s[i], pi}, {pi, s[j]}, budget, seed));
    }
  }
  return out;
}

CheckResult check_divisor_mapping(const BirationalMap& m, const RF& source, const RF& target,
                                  std::optional<int> zeroed, std::uint64_t seed, int points) {
  auto phase = phase_variables(m.family);
  // Solve source = 0 for a phase variable it contains linearly with a
  // constant coefficient.
  std::optional<Var> solve_for;
  for (Var x : phase) {
    auto c = sym::coefficients_in(source, x);
    if (c.size() == 2 && c[1].is_constant()) {
      solve_for = x;
      break;
    }
  }
  if (!solve_for) throw WeylError("divisor is not linear in a phase variable");
  auto coeffs = sym::coefficients_in(source, *solve_for);
  CheckResult out;
  out.method = "probabilistic";
  sym::RationalSampler sampler(seed);
  auto residual = [&](const Point& pt) { return target.evaluate(apply_map(m, pt)); };
  auto prepare = [&](Point& pt) {
    pt = random_state(m.family, sampler);
    if (zeroed) pt[v::alpha(*zeroed).index] = 0;
    pt[solve_for->index] = -coeffs[0].evaluate(pt) / coeffs[1].evaluate(pt);
  };
  auto res = sym::check_at_random_points(residual, sampler, points, prepare);
  out.pass = res.holds;
  out.points = res.points_tested;
  out.witness = res.witness;
  return out;
}

}  // namespace painweyl::weyl
