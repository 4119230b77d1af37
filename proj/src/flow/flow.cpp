#include "painweyl/flow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "painweyl/sym/sampling.hpp"

namespace painweyl::flow {

namespace v = sym::vars;

std::vector<sym::Binding> NumericParams::bindings() const {
  std::vector<sym::Binding> b;
  for (std::size_t i = 0; i < alpha.size(); ++i) b.emplace_back(v::alpha(static_cast<int>(i)), alpha[i]);
  b.emplace_back(v::eta, eta);
  return b;
}

NumericParams NumericParams::normalized(std::size_t solve) const {
  auto w = models::normalization_weights(alpha.size());
  NumericParams out = *this;
  Rational rest = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (i != solve) rest -= w[i] * alpha[i];
  out.alpha[solve] = rest / w[solve];
  return out;
}

namespace {

double to_double(const Rational& r) { return r.get_d(); }

cplx ipow(cplx z, unsigned e) {
  cplx r = 1.0;
  while (e) {
    if (e & 1u) r *= z;
    z *= z;
    e >>= 1u;
  }
  return r;
}

}  // namespace

CompiledFunction::CompiledFunction(const RationalFunction& f, std::vector<Var> inputs)
    : inputs_(std::move(inputs)) {
  auto slot_of = [&](std::size_t reg) -> std::uint8_t {
    for (std::size_t i = 0; i < inputs_.size(); ++i)
      if (inputs_[i].index == reg) return static_cast<std::uint8_t>(i);
    throw FlowError("cannot compile: " + std::string(sym::VariableRegistry::kNames[reg]) +
                    " is neither an input nor bound");
  };
  auto compile_poly = [&](const sym::Polynomial& p) {
    Poly out;
    for (const auto& term : p.terms()) {
      Term t{to_double(term.coeff), {}};
      for (std::size_t r = 0; r < sym::kNumVars; ++r)
        if (term.mono.exps[r]) t.powers.emplace_back(slot_of(r), term.mono.exps[r]);
      out.terms.push_back(std::move(t));
    }
    return out;
  };
  num_ = compile_poly(f.numerator());
  for (const auto& d : f.denominator_factors()) den_.emplace_back(compile_poly(d.base), d.exponent);
}

cplx CompiledFunction::Poly::eval(const cplx* in) const {
  cplx s = 0.0;
  for (const auto& t : terms) {
    cplx m = t.coeff;
    for (auto [slot, e] : t.powers) m *= ipow(in[slot], e);
    s += m;
  }
  return s;
}

cplx CompiledFunction::operator()(const cplx* in) const {
  cplx n = num_.eval(in);
  for (const auto& [p, e] : den_) n /= ipow(p.eval(in), static_cast<unsigned>(e));
  return n;
}

CompiledField compile(const VectorField& vf, const NumericParams& params) {
  CompiledField cf;
  cf.variables_ = vf.variables();
  cf.params_ = params;
  for (const auto& c : vf.components()) cf.has_eta_ = cf.has_eta_ || c.depends_on(v::eta);
  if (cf.has_eta_ && (params.eta == 0 || params.eta == 1))
    throw FlowError("eta = " + params.eta.get_str() + " is excluded; eta must avoid {0, 1}");
  auto b = params.bindings();
  try {
    cf.specialized_ = vf.substituted(b);
  } catch (const sym::DivisionByZero& e) {
    throw FlowError(std::string("parameter choice annihilates a denominator: ") + e.what());
  }
  std::vector<Var> inputs = cf.variables_;
  inputs.push_back(v::t);
  for (const auto& c : cf.specialized_.components()) cf.components_.emplace_back(c, inputs);
  return cf;
}

void CompiledField::evaluate(const cplx* y, cplx t, cplx* out) const {
  cplx in[8];
  std::size_t n = variables_.size();
  std::copy(y, y + n, in);
  in[n] = t;
  for (std::size_t i = 0; i < n; ++i) out[i] = components_[i](in);
}

State CompiledField::operator()(const State& y, cplx t) const {
  State out(y.size());
  evaluate(y.data(), t, out.data());
  return out;
}

double agreement(const CompiledField& cf, std::uint64_t seed, int points) {
  sym::RationalSampler s(seed, 50);
  double worst = 0.0;
  int done = 0, tries = 0;
  while (done < points) {
    if (++tries > 1000 * points) throw FlowError("no pole-free sample point found");
    sym::Point p = s.point();
    State y;
    for (auto x : cf.variables()) y.push_back(to_double(p[x.index]));
    cplx t = to_double(p[v::t.index]);
    State got = cf(y, t);
    bool pole = false;
    double local = 0.0;
    for (std::size_t i = 0; i < cf.dimension(); ++i) {
      auto exact = cf.specialized().component(i).try_evaluate(p);
      if (!exact) {
        pole = true;
        break;
      }
      double e = to_double(*exact);
      double d = std::abs(got[i] - e);
      local = std::max(local, e == 0.0 ? d : d / std::abs(e));
    }
    if (pole) continue;
    worst = std::max(worst, local);
    ++done;
  }
  return worst;
}

ComplexPath ComplexPath::avoiding_singular_times(std::vector<cplx> waypoints, double clearance,
                                                 std::optional<cplx> eta) {
  ComplexPath p{std::move(waypoints), clearance, {0.0, 1.0}};
  if (eta) p.excluded.push_back(*eta);
  return p;
}

double ComplexPath::length() const {
  double l = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) l += std::abs(waypoints[i] - waypoints[i - 1]);
  return l;
}

namespace {
double segment_distance(cplx a, cplx b, cplx p) {
  cplx d = b - a;
  double n = std::norm(d);
  if (n == 0.0) return std::abs(p - a);
  double s = std::clamp(((p - a) * std::conj(d)).real() / n, 0.0, 1.0);
  return std::abs(a + s * d - p);
}
}  // namespace

double ComplexPath::min_distance() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
    for (auto e : excluded) m = std::min(m, segment_distance(waypoints[i], waypoints[i + 1], e));
  if (waypoints.size() == 1)
    for (auto e : excluded) m = std::min(m, std::abs(waypoints[0] - e));
  return m;
}

void ComplexPath::validate() const {
  if (waypoints.size() < 2) throw FlowError("a path needs at least two waypoints");
  if (!(clearance > 0.0) && !excluded.empty()) throw FlowError("path clearance must be positive");
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
    for (auto e : excluded) {
      double d = segment_distance(waypoints[i], waypoints[i + 1], e);
      if (d < clearance) {
        std::ostringstream os;
        os << "segment " << i << " passes within " << d << " of excluded point " << e.real() << "+"
           << e.imag() << "i (clearance " << clearance << ")";
        throw FlowError(os.str());
      }
    }
}

ComplexPath ComplexPath::reversed() const {
  ComplexPath r = *this;
  std::reverse(r.waypoints.begin(), r.waypoints.end());
  return r;
}

double distance(const State& a, const State& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

bool finite(const State& y) {
  return std::all_of(y.begin(), y.end(), [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

Trajectory integrate(const CompiledField& cf, const State& start, const ComplexPath& path,
                     const IntegrateOptions& opt) {
  path.validate();
  if (start.size() != cf.dimension()) throw FlowError("start has the wrong dimension");
  Trajectory tr;
  tr.tolerance = opt.tol;
  const std::size_t n = start.size();
  State y0 = cf(start, path.waypoints[0]);
  if (!finite(y0)) throw FlowError("start lies on a pole of the field");
  tr.samples.push_back({path.waypoints[0], start, 0.0});
  tr.waypoint_samples.push_back(0);
  tr.stats.min_step = std::numeric_limits<double>::infinity();

  const double total = path.length();
  const double hmin = opt.min_step_fraction * total;
  State y = start, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n);
  double h = std::min(1e-3, total);
  long steps = 0;

  for (std::size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
    const cplx a = path.waypoints[seg];
    const double len = std::abs(path.waypoints[seg + 1] - a);
    if (len == 0.0) {
      tr.waypoint_samples.push_back(tr.samples.size() - 1);
      continue;
    }
    const cplx u = (path.waypoints[seg + 1] - a) / len;
    auto g = [&](double s, const State& yy, State& out) {
      cf.evaluate(yy.data(), a + s * u, out.data());
      for (auto& z : out) z *= u;
      ++tr.stats.evaluations;
    };
    double s = 0.0;
    g(s, y, k1);
    while (s < len) {
      if (++steps > opt.max_steps) {
        tr.diagnostic = "step budget exhausted near t = " + std::to_string((a + s * u).real()) + "+" +
                        std::to_string((a + s * u).imag()) + "i";
        return tr;
      }
      bool last = s + h >= len;
      double hh = last ? len - s : h;
      auto stage = [&](std::initializer_list<std::pair<double, const State*>> ks) {
        for (std::size_t i = 0; i < n; ++i) {
          cplx acc = y[i];
          for (auto [c, k] : ks) acc += hh * c * (*k)[i];
          tmp[i] = acc;
        }
      };
      stage({{a21, &k1}});
      g(s + c2 * hh, tmp, k2);
      stage({{a31, &k1}, {a32, &k2}});
      g(s + c3 * hh, tmp, k3);
      stage({{a41, &k1}, {a42, &k2}, {a43, &k3}});
      g(s + c4 * hh, tmp, k4);
      stage({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
      g(s + c5 * hh, tmp, k5);
      stage({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
      g(s + hh, tmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        y5[i] = y[i] + hh * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      double err_norm = std::numeric_limits<double>::infinity(), err_abs = 0.0;
      if (finite(y5)) {
        g(s + hh, y5, k7);
        err_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          cplx e = hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
          double ea = std::abs(e);
          err_abs = std::max(err_abs, ea);
          err_norm = std::max(err_norm, ea / (opt.tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])))));
        }
        if (!finite(k7)) err_norm = std::numeric_limits<double>::infinity();
      }
      if (err_norm <= 1.0) {
        s = last ? len : s + hh;
        y = y5;
        k1 = k7;
        ++tr.stats.accepted;
        tr.stats.min_step = std::min(tr.stats.min_step, hh);
        tr.samples.push_back({a + s * u, y, err_abs});
        if (last) s = len;
        double fac = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
        if (!last) h = hh * fac;
        else h = std::max(h, hh * fac);
      } else {
        ++tr.stats.rejected;
        double fac = std::isfinite(err_norm) ? std::clamp(0.9 * std::pow(err_norm, -0.25), 0.1, 0.9) : 0.1;
        h = hh * fac;
        if (h < hmin) {
          cplx at = a + s * u;
          std::ostringstream os;
          os << "step size collapsed to " << h << " (< " << hmin << ") at t = " << at.real() << "+" << at.imag()
             << "i; likely a movable pole";
          tr.diagnostic = os.str();
          return tr;
        }
      }
    }
    tr.samples.back().t = path.waypoints[seg + 1];
    tr.waypoint_samples.push_back(tr.samples.size() - 1);
  }
  tr.complete = true;
  return tr;
}

ConvergenceReport convergence(const CompiledField& cf, const State& start, const ComplexPath& path,
                              double tol) {
  ConvergenceReport r;
  r.tolerances = {tol, tol / 4, tol / 64};
  std::vector<std::future<Trajectory>> runs;
  for (double t : r.tolerances)
    runs.push_back(std::async(std::launch::async, [&, t] { return integrate(cf, start, path, {.tol = t}); }));
  std::vector<Trajectory> trs;
  for (auto& f : runs) trs.push_back(f.get());
  for (const auto& t : trs)
    if (!t.complete) throw FlowError("convergence run truncated: " + t.diagnostic);
  for (std::size_t i = 0; i + 1 < trs.size(); ++i) r.drifts.push_back(distance(trs[i].endpoint(), trs.back().endpoint()));
  r.ratio = r.drifts[1] == 0.0 ? std::numeric_limits<double>::infinity() : r.drifts[0] / r.drifts[1];
  r.converged = r.ratio >= 2.0;
  return r;
}

void write_jsonl(std::ostream& os, const Trajectory& tr, const std::vector<Var>& variables) {
  for (const auto& s : tr.samples) {
    nlohmann::ordered_json j;
    j["t_re"] = s.t.real();
    j["t_im"] = s.t.imag();
    for (std::size_t i = 0; i < variables.size(); ++i) {
      std::string n(sym::VariableRegistry::name(variables[i]));
      j[n + "_re"] = s.y[i].real();
      j[n + "_im"] = s.y[i].imag();
    }
    j["err"] = s.error;
    os << j.dump() << '\n';
  }
}

BacklundNumeric verify_backlund_numeric(const weyl::BirationalMap& m, models::ModelKind kind,
                                        const NumericParams& params, const State& start,
                                        const ComplexPath& path, double tol,
                                        std::optional<std::vector<Rational>> image_alpha) {
  if (weyl::model_kind(m.family) != kind)
    throw FlowError(m.name + " belongs to " + std::string(weyl::family_name(m.family)) + ", not " +
                    std::string(models::model_name(kind)));
  BacklundNumeric out;
  out.map = m.name;
  auto vf = models::vector_field(models::build_hamiltonian(kind));
  auto cf = compile(vf, params);
  auto tr = integrate(cf, start, path, {.tol = tol});
  if (!tr.complete) {
    out.diagnostic = "original trajectory: " + tr.diagnostic;
    return out;
  }

  auto b = params.bindings();
  std::vector<Var> inputs = vf.variables();
  inputs.push_back(v::t);
  std::vector<CompiledFunction> comps;
  for (const auto& c : m.components) comps.emplace_back(sym::substitute(c, b), inputs);
  CompiledFunction t_img(sym::substitute(m.t_image, b), inputs);

  NumericParams image;
  image.eta = sym::substitute(m.eta_image, b).numerator().constant_value() /
              sym::substitute(m.eta_image, b).denominator().constant_value();
  if (image_alpha) {
    image.alpha = *image_alpha;
  } else {
    for (std::size_t i = 0; i < m.param_matrix.size(); ++i) {
      Rational a = m.param_offset[i];
      for (std::size_t j = 0; j < params.alpha.size(); ++j) a += m.param_matrix[i][j] * params.alpha[j];
      image.alpha.push_back(a);
    }
  }

  std::vector<State> mapped;
  ComplexPath image_path;
  image_path.excluded = {0.0, 1.0, to_double(image.eta)};
  double along = 0.0;
  for (std::size_t k = 0; k < tr.samples.size(); ++k) {
    const auto& s = tr.samples[k];
    State in = s.y;
    in.push_back(s.t);
    State y(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) y[i] = comps[i](in.data());
    cplx tt = t_img(in.data());
    if (!finite(y) || !std::isfinite(tt.real()) || !std::isfinite(tt.imag())) {
      out.diagnostic = "map has a pole at sample " + std::to_string(k);
      return out;
    }
    if (k > 0) along += std::abs(s.t - tr.samples[k - 1].t);
    mapped.push_back(std::move(y));
    image_path.waypoints.push_back(tt);
    out.arclength.push_back(along);
  }
  image_path.clearance = std::max(image_path.min_distance(), 1e-300);

  auto icf = compile(vf, image);
  auto itr = integrate(icf, mapped[0], image_path, {.tol = tol});
  if (!itr.complete) {
    out.diagnostic = "image trajectory: " + itr.diagnostic;
    return out;
  }
  for (std::size_t k = 0; k < mapped.size(); ++k) {
    double d = distance(mapped[k], itr.samples[itr.waypoint_samples[k]].y);
    out.deviations.push_back(d);
    out.max_deviation = std::max(out.max_deviation, d);
  }
  out.ok = true;
  return out;
}

EtaLimitReport verify_eta_limit_numeric(const State& start, const std::vector<cplx>& waypoints,
                                        const std::vector<Rational>& alpha,
                                        const std::vector<Rational>& etas, double tol) {
  EtaLimitReport r;
  NumericParams base{alpha, 0};
  base = base.normalized(0);
  auto limit_vf = models::vector_field(models::build_hamiltonian(models::ModelKind::CoupledLimit));
  auto eta_vf = models::vector_field(models::build_hamiltonian(models::ModelKind::CoupledEta));

  auto limit_path = ComplexPath::avoiding_singular_times(waypoints, 1e-3, std::nullopt);
  auto lcf = compile(limit_vf, base);
  auto reference = std::async(std::launch::async, [&] { return integrate(lcf, start, limit_path, {.tol = tol}); });

  std::vector<std::future<Trajectory>> jobs;
  for (const auto& e : etas) {
    jobs.push_back(std::async(std::launch::async, [&, e] {
      NumericParams p = base;
      p.eta = e;
      auto cf = compile(eta_vf, p);
      auto path = ComplexPath::avoiding_singular_times(waypoints, 1e-3, to_double(e));
      return integrate(cf, start, path, {.tol = tol});
    }));
  }
  auto ref = reference.get();
  std::vector<Trajectory> trs;
  for (auto& j : jobs) trs.push_back(j.get());
  if (!ref.complete) {
    r.diagnostic = "limit system: " + ref.diagnostic;
    return r;
  }
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!trs[i].complete) {
      r.diagnostic = "eta = " + etas[i].get_str() + ": " + trs[i].diagnostic;
      return r;
    }
    r.rows.push_back({to_double(etas[i]), distance(trs[i].endpoint(), ref.endpoint())});
  }
  r.monotone = true;
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    r.monotone = r.monotone && r.rows[i].deviation < r.rows[i - 1].deviation;
  if (r.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = static_cast<double>(r.rows.size());
    for (const auto& row : r.rows) {
      double x = std::log(row.eta), y = -std::log(row.deviation);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    r.decay_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return r;
}

DivisorFlow divisor_flow(const models::DivisorRow& row, models::ModelKind kind, NumericParams params,
                         State start, const ComplexPath& path, double tol) {
  DivisorFlow out;
  out.label = row.label;
  out.parameter = row.parameter;
  out.bound = 100.0 * tol;
  auto k = static_cast<std::size_t>(row.parameter);
  params.alpha[k] = 0;
  params = params.normalized(k == 0 ? 1 : 0);

  auto vf = models::vector_field(models::build_hamiltonian(kind));
  auto cf = compile(vf, params);
  std::vector<Var> inputs = vf.variables();
  inputs.push_back(v::t);
  auto f = sym::substitute(row.divisor, params.bindings());
  CompiledFunction fc(f, inputs);

  // Project the start onto {f = 0} through a variable f is linear in.
  bool projected = false;
  for (std::size_t i = 0; i < vf.dimension() && !projected; ++i) {
    if (f.numerator().degree(vf.variables()[i]) != 1 || !f.is_polynomial_form()) continue;
    auto co = sym::coefficients_in(f, vf.variables()[i]);
    CompiledFunction c0(co[0], inputs), c1(co[1], inputs);
    State in = start;
    in.push_back(path.waypoints[0]);
    start[i] = -c0(in.data()) / c1(in.data());
    projected = true;
  }
  if (!projected) throw FlowError("divisor " + row.label + " is not linear in any phase variable");

  auto tr = integrate(cf, start, path, {.tol = tol});
  if (!tr.complete) out.diagnostic = tr.diagnostic;
  for (const auto& s : tr.samples) {
    State in = s.y;
    in.push_back(s.t);
    out.max_value = std::max(out.max_value, std::abs(fc(in.data())));
  }
  out.pass = tr.complete && out.max_value < out.bound;
  return out;
}

}  // namespace painweyl::flow
