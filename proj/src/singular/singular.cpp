#include "painweyl/singular/singular.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "painweyl/sym/parser.hpp"
#include "painweyl/sym/sampling.hpp"

namespace painweyl::singular {

using sym::Rational;
using sym::RFMatrix;
using sym::VarSet;
namespace v = sym::vars;

namespace {

RationalFunction E(const char* s) { return sym::parse_expression(s); }
RationalFunction V(Var x) { return RationalFunction::variable(x); }
std::string_view nm(Var x) { return sym::VariableRegistry::name(x); }

VarSet set_of(const std::vector<Var>& vs) {
  VarSet s;
  for (Var x : vs) s.insert(x);
  return s;
}

const RationalFunction* lookup(const std::vector<Binding>& b, Var x) {
  for (const auto& [k, val] : b) {
    if (k == x) return &val;
  }
  return nullptr;
}

std::string show(const std::vector<Binding>& b) {
  std::string out = "(";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ", ";
    out += std::string(nm(b[i].first)) + "=" + b[i].second.to_string();
  }
  return out + ")";
}

// Exact characteristic coefficients over Q for the numeric specialization.
std::vector<Rational> char_coeffs_q(const std::vector<std::vector<Rational>>& m) {
  std::size_t n = m.size();
  std::vector<Rational> c(n);
  auto mk = m;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      std::vector<std::vector<Rational>> shifted = mk;
      for (std::size_t i = 0; i < n; ++i) shifted[i][i] += c[n - k + 1];
      std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t l = 0; l < n; ++l) next[i][j] += m[i][l] * shifted[l][j];
      mk = std::move(next);
    }
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += mk[i][i];
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

// Durand-Kerner on the monic polynomial with coefficients c (low to high).
std::vector<std::complex<double>> poly_roots(const std::vector<double>& c) {
  std::size_t n = c.size();
  std::vector<std::complex<double>> z(n);
  const std::complex<double> seed(0.4, 0.9);
  double scale = 1;
  for (double x : c) scale = std::max(scale, std::pow(std::abs(x), 1.0 / static_cast<double>(n)));
  for (std::size_t i = 0; i < n; ++i) z[i] = scale * std::pow(seed, static_cast<double>(i));
  auto eval = [&](std::complex<double> x) {
    std::complex<double> r = 1;
    for (std::size_t k = n; k-- > 0;) r = r * x + c[k];
    return r;
  };
  for (int it = 0; it < 5000; ++it) {
    double moved = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> den = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      if (std::abs(den) == 0) den = 1e-300;
      auto d = eval(z[i]) / den;
      z[i] -= d;
      moved = std::max(moved, std::abs(d));
    }
    if (moved < 1e-15 * scale) break;
  }
  return z;
}

// Best rational approximation with denominator <= max_den.
std::optional<std::pair<long, long>> snap(double x, long max_den, double tol) {
  for (long d = 1; d <= max_den; ++d) {
    double n = std::round(x * static_cast<double>(d));
    if (std::abs(n / static_cast<double>(d) - x) < tol) return std::make_pair(static_cast<long>(n), d);
  }
  return std::nullopt;
}

std::vector<RationalFunction> product_coefficients(const std::vector<RationalFunction>& roots) {
  // Coefficients of prod (lambda - r), low to high, monic term dropped.
  std::vector<RationalFunction> p{RationalFunction(1)};
  for (const auto& r : roots) {
    std::vector<RationalFunction> next(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= r * p[i];
    }
    p = std::move(next);
  }
  p.pop_back();
  return p;
}

bool is_triangular(const RFMatrix& m) {
  bool upper = true, lower = true;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      if (i > j) upper = false;
      if (i < j) lower = false;
    }
  }
  return upper || lower;
}

bool is_diagonal(const RFMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && !m(i, j).is_zero()) return false;
  return true;
}

const std::vector<Var> kChart4{v::x, v::y, v::z, v::w};

ChartTransform step4(std::string name, std::initializer_list<const char*> fwd,
                     std::initializer_list<const char*> inv) {
  ChartTransform c{std::move(name), kChart4, kChart4, {}, {}};
  for (const char* f : fwd) c.forward.push_back(E(f));
  for (const char* f : inv) c.inverse.push_back(E(f));
  return c;
}

}  // namespace

std::size_t BoundaryChartSystem::boundary_index() const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i] == boundary) return i;
  }
  throw SingularError("boundary variable not among chart variables");
}

BoundaryChartSystem log_pole_form(std::string chart_name, const VectorField& pushed, Var boundary) {
  BoundaryChartSystem bcs{std::move(chart_name), boundary, pushed.variables(), {}, true, {}};
  VarSet vars = set_of(bcs.variables);
  (void)bcs.boundary_index();
  RationalFunction b = V(boundary);
  for (std::size_t i = 0; i < bcs.variables.size(); ++i) {
    RationalFunction ai = bcs.variables[i] == boundary ? pushed.component(i) : b * pushed.component(i);
    if (auto poly = sym::as_polynomial_in(ai, vars)) {
      ai = *poly;
    } else if (bcs.admissible) {
      bcs.admissible = false;
      bcs.witness = "d" + std::string(nm(bcs.variables[i])) + "/dt has a pole of order >= 2 along " +
                    std::string(nm(boundary)) + " = 0 or off the boundary";
    }
    bcs.a.push_back(std::move(ai));
  }
  return bcs;
}

BoundaryChartSystem log_pole_form(const ChartTransform& chart, const VectorField& vf, Var boundary) {
  auto ps = charts::push_system(chart, vf);
  return log_pole_form(chart.name, ps.field, boundary);
}

LocusCheck verify_locus(const AccessibleLocus& l, const BoundaryChartSystem& bcs) {
  LocusCheck r;
  if (l.chart != bcs.chart || l.boundary != bcs.boundary) {
    r.witness = "locus chart " + l.chart + " does not match " + bcs.chart;
    return r;
  }
  if (!bcs.admissible) {
    r.witness = "field violates the log-pole condition: " + bcs.witness;
    return r;
  }
  const auto* b = lookup(l.point, l.boundary);
  if (b == nullptr || !b->is_zero()) {
    r.witness = "locus is not on the boundary";
    return r;
  }
  for (std::size_t i = 0; i < bcs.variables.size(); ++i) {
    if (bcs.variables[i] == bcs.boundary) continue;
    auto val = sym::substitute(bcs.a[i], l.point);
    if (!val.is_zero()) {
      r.witness = "a_" + std::string(nm(bcs.variables[i])) + " = " + val.to_string() + " on the locus";
      return r;
    }
  }
  r.pass = true;
  return r;
}

AccessibleLocus locus(std::string_view name) {
  auto pt = [](const char* x, const char* y, const char* z, const char* w) {
    return std::vector<Binding>{{v::x, E(x)}, {v::y, E(y)}, {v::z, E(z)}, {v::w, E(w)}};
  };
  std::string n(name);
  if (n == "C0") return {n, "U3", v::y, pt("t", "0", "a", "0")};
  if (n == "C1") return {n, "U3", v::y, pt("eta", "0", "a", "0")};
  if (n == "C2") return {n, "U3", v::y, pt("a", "0", "a", "-1")};
  if (n == "C3") return {n, "U4", v::w, pt("a", "0", "1", "0")};
  if (n == "C4") return {n, "U4", v::w, pt("a", "0", "0", "0")};
  if (n == "C2-U4") return {n, "U4", v::w, pt("a", "-1", "a", "0")};
  if (n == "C1-U6") return {n, "U6", v::y, pt("1/eta", "0", "a", "0")};
  if (n == "C1-U8") return {n, "U8", v::y, pt("1/eta", "0", "a", "0")};
  if (n == "Cinf-U6") return {n, "U6", v::y, pt("0", "0", "a", "0")};
  if (n == "Cinf-U8") return {n, "U8", v::y, pt("0", "0", "a", "0")};
  throw SingularError("unknown locus '" + n + "'");
}

std::vector<std::string> locus_names() {
  return {"C0", "C1", "C2", "C3", "C4", "C2-U4", "C1-U6", "C1-U8", "Cinf-U6", "Cinf-U8"};
}

models::ModelKind locus_model(const AccessibleLocus& l) {
  return l.name.starts_with("Cinf") ? models::ModelKind::CoupledLimit : models::ModelKind::CoupledEta;
}

std::vector<RationalFunction> characteristic_coefficients(const RFMatrix& m) {
  std::size_t n = m.rows();
  std::vector<RationalFunction> c(n);
  RFMatrix mk = m;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      RFMatrix shifted = mk;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[n - k + 1];
      mk = m * shifted;
    }
    RationalFunction tr;
    for (std::size_t i = 0; i < n; ++i) tr += mk(i, i);
    c[n - k] = -tr / RationalFunction(static_cast<long>(k));
  }
  return c;
}

std::optional<IntegerSpectrum> integer_spectrum(const RFMatrix& m, std::string& reason, std::uint64_t seed) {
  std::size_t n = m.rows();
  auto exact = characteristic_coefficients(m);
  bool nilpotent = std::all_of(exact.begin(), exact.end(), [](const auto& c) { return c.is_zero(); });
  if (nilpotent) return IntegerSpectrum{RationalFunction(1), std::vector<long>(n, 0)};

  sym::RationalSampler sampler(seed, 97);
  std::vector<std::vector<Rational>> m0;
  for (int attempt = 0; attempt < 50 && m0.empty(); ++attempt) {
    auto pt = sampler.point();
    std::vector<std::vector<Rational>> trial(n, std::vector<Rational>(n));
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        auto val = m(i, j).try_evaluate(pt);
        if (!val) ok = false;
        else trial[i][j] = *val;
      }
    }
    // A specialization where the spectrum collapses gives no ratios.
    if (ok) {
      auto cq = char_coeffs_q(trial);
      bool all_zero = std::all_of(cq.begin(), cq.end(), [](const Rational& x) { return x == 0; });
      if (!all_zero) m0 = std::move(trial);
    }
  }
  if (m0.empty()) {
    reason = "no regular specialization found";
    return std::nullopt;
  }
  auto cq = char_coeffs_q(m0);
  std::vector<double> cd;
  for (const auto& c : cq) cd.push_back(c.get_d());
  auto roots = poly_roots(cd);
  double scale = 0;
  for (auto r : roots) scale = std::max(scale, std::abs(r));
  const std::complex<double>* ref = nullptr;
  for (const auto& r : roots) {
    if (std::abs(r.imag()) > 1e-6 * scale) {
      reason = "non-real eigenvalue at a specialization";
      return std::nullopt;
    }
    if (std::abs(r) > 1e-7 * scale && (ref == nullptr || std::abs(r) < std::abs(*ref))) ref = &r;
  }
  std::vector<std::pair<long, long>> q;
  for (const auto& r : roots) {
    if (std::abs(r) <= 1e-7 * scale) {
      q.emplace_back(0, 1);
      continue;
    }
    auto s = snap(r.real() / ref->real(), 12, 1e-5);
    if (!s) {
      reason = "eigenvalue ratio " + std::to_string(r.real() / ref->real()) + " is not a small rational";
      return std::nullopt;
    }
    q.push_back(*s);
  }
  long l = 1;
  for (auto [num, den] : q) l = std::lcm(l, den);
  std::vector<long> k;
  long g = 0;
  for (auto [num, den] : q) {
    k.push_back(num * (l / den));
    g = std::gcd(g, std::labs(k.back()));
  }
  long sum = 0;
  for (auto& x : k) {
    x /= g;
    sum += x;
  }
  if (sum == 0) {
    reason = "eigenvalue ratios sum to zero; prefactor not determined by the trace";
    return std::nullopt;
  }
  RationalFunction tr;
  for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
  RationalFunction c = tr / RationalFunction(sum);
  if (sum < 0) {
    c = -c;
    for (auto& x : k) x = -x;
  }
  std::vector<RationalFunction> eig;
  for (long x : k) eig.push_back(c * RationalFunction(x));
  auto expect = product_coefficients(eig);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(expect[i] == exact[i])) {
      reason = "candidate spectrum fails the exact characteristic polynomial";
      return std::nullopt;
    }
  }
  std::sort(k.begin(), k.end());
  return IntegerSpectrum{c, k};
}

LocalIndex local_index(const AccessibleLocus& at, const BoundaryChartSystem& bcs, std::uint64_t seed) {
  if (at.chart != bcs.chart) throw SingularError("point chart " + at.chart + " does not match " + bcs.chart);
  if (!verify_locus(at, bcs).pass) throw SingularError("point is not an accessible singularity");
  std::size_t n = bcs.variables.size(), bi = bcs.boundary_index();
  RationalFunction b = V(bcs.boundary);
  LocalIndex li;
  li.linear_part = RFMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto* center = lookup(at.point, bcs.variables[i]);
    if (center == nullptr) throw SingularError("point misses a coordinate");
    RationalFunction g = (i == bi ? b * bcs.a[i] : bcs.a[i]) - b * partial_derivative(*center, v::t);
    for (std::size_t j = 0; j < n; ++j) {
      li.linear_part(i, j) = sym::substitute(partial_derivative(g, bcs.variables[j]), at.point);
    }
  }
  li.singular_part = li.linear_part;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != bi) li.singular_part(i, bi) = RationalFunction{};
  }
  std::string reason;
  auto spec = integer_spectrum(li.singular_part, reason, seed);
  if (!spec) {
    li.detail = reason;
    return li;
  }
  li.prefactor = spec->prefactor;
  li.multiset = spec->ratios;
  li.integral = true;

  li.semisimple = true;
  std::vector<long> distinct = li.multiset;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (long k : distinct) {
    auto shifted = li.singular_part - RFMatrix::identity(n).scaled(li.prefactor * RationalFunction(k));
    auto mult = static_cast<std::size_t>(std::count(li.multiset.begin(), li.multiset.end(), k));
    if (n - shifted.rank() != mult) {
      li.semisimple = false;
      li.detail = "eigenvalue " + std::to_string(k) + " has a Jordan block";
    }
  }

  if (is_triangular(li.singular_part)) {
    std::vector<long> diag;
    for (std::size_t i = 0; i < n; ++i) {
      auto r = li.singular_part(i, i) / li.prefactor;
      if (!r.is_constant() || r.numerator().constant_value().get_den() != 1) {
        diag.clear();
        break;
      }
      diag.push_back(r.numerator().constant_value().get_num().get_si());
    }
    if (diag.size() == n) li.ordered = diag;
  }

  if (li.semisimple && !is_diagonal(li.singular_part)) {
    RFMatrix q(n, n);
    std::size_t row = 0;
    for (long k : distinct) {
      auto shifted = li.singular_part - RFMatrix::identity(n).scaled(li.prefactor * RationalFunction(k));
      for (const auto& vec : shifted.transpose().nullspace()) {
        for (std::size_t j = 0; j < n; ++j) q(row, j) = vec[j];
        li.q_order.push_back(k);
        ++row;
      }
    }
    li.q = q;
  }
  return li;
}

VectorField blow_up(const BlowUpStep& step, const VectorField& vf) {
  return charts::push_system(step.transform, vf).field;
}

std::vector<BlowUpStep> resolution_steps(std::string_view name) {
  if (name == "C4") {
    return {{"Y4 = Z4 = W4 = 0", "divide Y4, Z4 by W4",
             step4("C4-step1", {"x", "y/w", "z/w", "w"}, {"x", "y*w", "z*w", "w"})},
            {"Z4' - a6 = W4' = 0", "divide Z4' - a6 by W4'",
             step4("C4-step2", {"x", "y", "(z-a6)/w", "w"}, {"x", "y", "w*z+a6", "w"})},
            {"", "rename (x, y, -z, w)", step4("C4-rename", {"x", "y", "-z", "w"}, {"x", "y", "-z", "w"})}};
  }
  if (name == "C2") {
    return {{"X3 - Z3 = Y3 = 0, W3 = -1", "divide X3 - Z3, W3 + 1 by Y3",
             step4("C2-step1", {"(x-z)/y", "y", "z", "(w+1)/y"}, {"y*x+z", "y", "z", "y*w-1"})},
            {"X5' - a3 = Y5' = 0", "divide X5' - a3 by Y5'",
             step4("C2-step2", {"(x-a3)/y", "y", "z", "w"}, {"y*x+a3", "y", "z", "w"})},
            {"", "rename (-x, y, z, w)", step4("C2-rename", {"-x", "y", "z", "w"}, {"-x", "y", "z", "w"})}};
  }
  throw SingularError("no resolution recorded for '" + std::string(name) + "'");
}

Resolution resolve(std::string_view name) {
  auto steps = resolution_steps(name);
  auto l = locus(name);
  Resolution r;
  r.locus = std::string(name);
  r.target_chart = name == "C4" ? "r6" : "r3";
  auto base = charts::chart(l.chart);
  std::vector<ChartTransform> path{base};
  r.composite = base;
  for (const auto& s : steps) {
    path.push_back(s.transform);
    r.composite = charts::compose_charts(r.composite, s.transform, r.composite.name + "/" + s.transform.name);
    r.steps.push_back(s.transform.name + ": " + (s.center.empty() ? "" : "center " + s.center + "; ") + s.direction);
  }
  auto target = charts::chart(r.target_chart);
  r.chart_matches = true;
  for (std::size_t i = 0; i < target.forward.size(); ++i) {
    if (!(r.composite.forward[i] == target.forward[i])) r.chart_matches = false;
  }
  auto vf = models::vector_field(models::build_hamiltonian(models::ModelKind::CoupledEta));
  auto piped = charts::push_through(path, vf);
  auto direct = charts::push_system(target, vf);
  r.system_matches = piped.polynomial && direct.polynomial;
  for (std::size_t i = 0; i < 4 && r.system_matches; ++i) {
    if (!(piped.field.component(i) == direct.field.component(i))) r.system_matches = false;
  }
  return r;
}

ScanReport scan(const ChartTransform& chart, Var boundary, const VectorField& vf, std::uint64_t seed,
                int complement_points) {
  auto bcs = log_pole_form(chart, vf, boundary);
  if (!bcs.admissible) throw SingularError("scan: " + bcs.witness);
  ScanReport rep{chart.name, boundary, {}, {}, {}, 0, 0, false};
  std::vector<Var> free_vars;
  std::vector<RationalFunction> eqs;
  const std::vector<Binding> on_boundary{{boundary, RationalFunction{}}};
  for (std::size_t i = 0; i < bcs.variables.size(); ++i) {
    if (bcs.variables[i] == boundary) continue;
    free_vars.push_back(bcs.variables[i]);
    auto e = sym::substitute(bcs.a[i], on_boundary);
    if (!e.is_zero()) eqs.push_back(e);
  }
  const std::vector<RationalFunction> cands{E("0"), E("1"), E("-1"), E("t"), E("eta"), E("1/t"), E("1/eta")};
  const RationalFunction param = V(v::a);

  auto all_vanish = [&](const std::vector<Binding>& b) {
    for (const auto& e : eqs) {
      try {
        if (!sym::substitute(e, b).is_zero()) return false;
      } catch (const sym::DivisionByZero&) {
        return false;
      }
    }
    return true;
  };
  // Roots of the first nonvanishing equation in x, when it is linear in x
  // after removing a power of x.
  auto solve_for = [&](const std::vector<Binding>& b, Var x) -> std::vector<RationalFunction> {
    for (const auto& e : eqs) {
      RationalFunction s;
      try {
        s = sym::substitute(e, b);
      } catch (const sym::DivisionByZero&) {
        return {};
      }
      if (s.is_zero()) continue;
      auto poly = sym::as_polynomial_in(s, VarSet{x});
      if (!poly) continue;
      auto c = sym::coefficients_in(*poly, x);
      std::vector<RationalFunction> roots;
      std::size_t lo = 0;
      while (lo < c.size() && c[lo].is_zero()) ++lo;
      if (lo > 0) roots.push_back(RationalFunction{});
      if (c.size() - lo == 2) roots.push_back(-c[lo] / c[lo + 1]);
      if (c.size() - lo > 2) continue;
      return roots;
    }
    return {};
  };
  auto full = [&](std::vector<Binding> b) {
    b.insert(b.begin(), on_boundary.front());
    std::sort(b.begin(), b.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    return b;
  };
  auto same = [](const std::vector<Binding>& l, const std::vector<Binding>& r) {
    if (l.size() != r.size()) return false;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l[i].first != r[i].first || !(l[i].second == r[i].second)) return false;
    }
    return true;
  };

  // Curves: one coordinate is the parameter a, the others candidates, a, or solved.
  for (std::size_t fi = 0; fi < free_vars.size(); ++fi) {
    std::vector<Var> rest;
    for (std::size_t j = 0; j < free_vars.size(); ++j)
      if (j != fi) rest.push_back(free_vars[j]);
    auto consider = [&](std::vector<Binding> b) {
      for (std::size_t j = 0; j < fi; ++j) {
        if (const auto* val = lookup(b, free_vars[j]); val && val->depends_on(v::a)) return;
      }
      if (!all_vanish(b)) return;
      auto fb = full(b);
      for (const auto& c : rep.curves)
        if (same(c.point, fb)) return;
      rep.curves.push_back({fb, std::nullopt});
    };
    std::vector<RationalFunction> with_a = cands;
    with_a.push_back(param);
    for (int order = 0; order < 2; ++order) {
      Var fixed = rest[order], solved = rest[1 - order];
      for (const auto& c0 : with_a) {
        std::vector<Binding> b{{free_vars[fi], param}, {fixed, c0}};
        for (const auto& c1 : with_a) {
          auto bb = b;
          bb.emplace_back(solved, c1);
          consider(bb);
        }
        for (const auto& root : solve_for(b, solved)) {
          auto bb = b;
          bb.emplace_back(solved, root);
          consider(bb);
        }
      }
    }
  }
  // Isolated points: two coordinates from the candidates, the third solved.
  for (std::size_t si = 0; si < free_vars.size(); ++si) {
    std::vector<Var> rest;
    for (std::size_t j = 0; j < free_vars.size(); ++j)
      if (j != si) rest.push_back(free_vars[j]);
    for (const auto& c0 : cands) {
      for (const auto& c1 : cands) {
        const std::vector<Binding> b{{rest[0], c0}, {rest[1], c1}};
        for (const auto& root : solve_for(b, free_vars[si])) {
          auto bb = b;
          bb.emplace_back(free_vars[si], root);
          if (!all_vanish(bb)) continue;
          auto fb = full(bb);
          bool dup = false;
          for (const auto& p : rep.isolated) dup = dup || same(p.point, fb);
          if (!dup) rep.isolated.push_back({fb, std::nullopt});
        }
      }
    }
  }

  // Match against the listed loci of this chart.
  for (const auto& n : locus_names()) {
    auto l = locus(n);
    if (l.chart != chart.name || l.boundary != boundary) continue;
    auto lb = l.point;
    std::sort(lb.begin(), lb.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    bool found = false;
    for (auto& c : rep.curves) {
      if (same(c.point, lb)) {
        c.matches = n;
        found = true;
      }
    }
    rep.listed.emplace_back(n, found);
  }
  for (auto& p : rep.isolated) {
    for (const auto& c : rep.curves) {
      for (const auto& [x, val] : c.point) {
        if (!(val == param)) continue;
        const auto* px = lookup(p.point, x);
        std::vector<Binding> at{{v::a, *px}};
        bool on = true;
        for (const auto& [y, cy] : c.point) {
          if (!(sym::substitute(cy, at) == *lookup(p.point, y))) on = false;
        }
        if (on) p.on_curve = c.matches.value_or(show(c.point));
        break;
      }
      if (p.on_curve) break;
    }
  }

  sym::RationalSampler sampler(seed);
  for (int k = 0; k < complement_points; ++k) {
    auto pt = sampler.point();
    pt[boundary.index] = 0;
    bool violated = false;
    for (const auto& e : eqs) {
      auto val = e.try_evaluate(pt);
      if (val && *val != 0) violated = true;
    }
    ++rep.complement_points;
    if (violated) ++rep.complement_violations;
  }

  bool listed_all = std::all_of(rep.listed.begin(), rep.listed.end(), [](const auto& p) { return p.second; });
  bool curves_listed = std::all_of(rep.curves.begin(), rep.curves.end(), [](const auto& c) { return c.matches.has_value(); });
  rep.complete = listed_all && curves_listed && rep.complement_violations == rep.complement_points;
  return rep;
}

LimitReport c1_cinf_limit() {
  LimitReport r;
  auto eta_field = models::vector_field(models::build_hamiltonian(models::ModelKind::CoupledEta));
  auto lim_field = models::vector_field(models::build_hamiltonian(models::ModelKind::CoupledLimit));
  auto check = [](const char* locus_name, const VectorField& vf, models::ParameterMode& mode) {
    auto l = locus(locus_name);
    for (auto m : {models::ParameterMode::Free, models::ParameterMode::Normalized}) {
      auto b = models::parameter_bindings(7, m);
      auto c = charts::chart(l.chart);
      auto bcs = m == models::ParameterMode::Free ? log_pole_form(c, vf, l.boundary)
                                                  : log_pole_form(c.substituted(b), vf.substituted(b), l.boundary);
      if (verify_locus(l, bcs).pass) {
        mode = std::max(mode, m);
        return true;
      }
    }
    return false;
  };
  r.c1_accessible_u6 = check("C1-U6", eta_field, r.c1_mode);
  r.c1_accessible_u8 = check("C1-U8", eta_field, r.c1_mode);
  r.cinf_accessible_u6 = check("Cinf-U6", lim_field, r.cinf_mode);
  r.cinf_accessible_u8 = check("Cinf-U8", lim_field, r.cinf_mode);
  auto lim = sym::limit_at_infinity(*lookup(locus("C1-U6").point, v::x), v::eta);
  r.binding_limit = !lim.diverges && lim.value == *lookup(locus("Cinf-U6").point, v::x);
  r.emendation = "the U6 description writes Y3 = W3 = 0; read as Y6 = W6 = 0";
  return r;
}

std::optional<Var> parse_boundary(std::string_view name) {
  if (name.empty()) return std::nullopt;
  switch (name[0]) {
    case 'X': case 'x': return v::x;
    case 'Y': case 'y': return v::y;
    case 'Z': case 'z': return v::z;
    case 'W': case 'w': return v::w;
    default: return std::nullopt;
  }
}

}  // namespace painweyl::singular
