#include "painweyl/models/painleve_models.hpp"

#include <array>

namespace painweyl::models {

namespace v = sym::vars;
using sym::Binding;
using sym::Polynomial;
using RF = RationalFunction;

namespace {

RF var(Var x) { return RF::variable(x); }
RF alpha_sym(int i) { return var(v::alpha(i)); }

constexpr std::array<std::pair<ModelKind, std::string_view>, 4> kNames = {{
    {ModelKind::CoupledEta, "coupled-eta"},
    {ModelKind::CoupledLimit, "coupled-limit"},
    {ModelKind::PviEta, "pvi-eta"},
    {ModelKind::PviLimit, "pvi-limit"},
}};

}  // namespace

std::string_view model_name(ModelKind kind) {
  for (const auto& [k, n] : kNames) {
    if (k == kind) return n;
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::size_t parameter_count(ModelKind kind) {
  return (kind == ModelKind::CoupledEta || kind == ModelKind::CoupledLimit) ? 7 : 5;
}

bool has_eta(ModelKind kind) { return kind == ModelKind::CoupledEta || kind == ModelKind::PviEta; }

std::string_view mode_name(ParameterMode mode) {
  return mode == ParameterMode::Free ? "free" : "normalized";
}

std::vector<long> normalization_weights(std::size_t n) {
  if (n == 7) return {1, 1, 2, 2, 2, 1, 1};
  if (n == 5) return {1, 1, 2, 1, 1};
  throw ModelError("no normalization relation for " + std::to_string(n) + " parameters");
}

std::vector<Binding> parameter_bindings(std::size_t n, ParameterMode mode, std::optional<int> zeroed) {
  std::vector<Binding> out;
  if (zeroed && (*zeroed < 0 || static_cast<std::size_t>(*zeroed) >= n)) {
    throw ModelError("parameter index out of range");
  }
  if (mode == ParameterMode::Free) {
    if (zeroed) out.emplace_back(v::alpha(*zeroed), RF(0L));
    return out;
  }
  auto w = normalization_weights(n);
  int solved = (zeroed && *zeroed == 0) ? 1 : 0;
  RF rest(1L);
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) == solved || (zeroed && static_cast<int>(i) == *zeroed)) continue;
    rest -= RF(w[i]) * alpha_sym(static_cast<int>(i));
  }
  // Weight of the solved slot is 1 for both families.
  out.emplace_back(v::alpha(solved), rest);
  if (zeroed) out.emplace_back(v::alpha(*zeroed), RF(0L));
  return out;
}

ParameterVector ParameterVector::symbolic(std::size_t n) {
  ParameterVector pv;
  for (std::size_t i = 0; i < n; ++i) pv.alpha.push_back(alpha_sym(static_cast<int>(i)));
  return pv;
}

ParameterVector ParameterVector::normalized(std::size_t n) {
  ParameterVector pv = symbolic(n);
  auto b = parameter_bindings(n, ParameterMode::Normalized);
  pv.alpha[0] = b[0].second;
  pv.constrained = true;
  return pv;
}

bool ParameterVector::satisfies_normalization() const {
  auto w = normalization_weights(alpha.size());
  RF sum;
  for (std::size_t i = 0; i < alpha.size(); ++i) sum += RF(w[i]) * alpha[i];
  return sum == RF(1L);
}

VectorField VectorField::substituted(std::span<const Binding> b) const {
  std::vector<RF> comps;
  comps.reserve(components_.size());
  for (const auto& c : components_) comps.push_back(sym::substitute(c, b));
  return VectorField(variables_, std::move(comps));
}

HamiltonianModel HamiltonianModel::custom(RF h, std::vector<SymplecticPair> pairs) {
  HamiltonianModel m;
  m.h_ = std::move(h);
  m.pairs_ = std::move(pairs);
  return m;
}

std::vector<Var> HamiltonianModel::phase_variables() const {
  std::vector<Var> out;
  for (const auto& pr : pairs_) {
    out.push_back(pr.q);
    out.push_back(pr.p);
  }
  return out;
}

sym::VarSet HamiltonianModel::phase_set() const {
  sym::VarSet s;
  for (Var x : phase_variables()) s.insert(x);
  return s;
}

RF hamiltonian_vi(Var qv, Var pv, std::span<const RF> b) {
  RF q = var(qv), p = var(pv), t = var(v::t), eta = var(v::eta);
  RF one(1L);
  RF body = q * (q - one) * (q - eta) * (q - t) * p.pow(2) +
            (b[1] * (t - eta) * q * (q - one) + RF(2L) * b[2] * q * (q - one) * (q - eta) +
             b[3] * (t - one) * q * (q - eta) + b[4] * t * (q - one) * (q - eta)) *
                p +
            b[2] * ((b[1] + b[2]) * (t - eta) + b[2] * (q - one) + b[3] * (t - one) + t * b[4]) * q;
  return body / (t * (t - one) * (t - eta));
}

RF hamiltonian_vi_limit(Var qv, Var pv, std::span<const RF> d) {
  RF q = var(qv), p = var(pv), t = var(v::t);
  RF one(1L);
  RF body = p.pow(2) * (q - t) * (q - one) * q -
            ((d[0] - one) * (q - one) * q + d[3] * (q - t) * q + d[4] * (q - t) * (q - one)) * p +
            d[2] * (d[1] + d[2]) * q;
  return body / (t * (t - one));
}

HamiltonianModel build_hamiltonian(ModelKind kind, const ParameterVector& params) {
  if (params.alpha.size() != parameter_count(kind)) {
    throw ModelError(std::string(model_name(kind)) + " takes " +
                     std::to_string(parameter_count(kind)) + " parameters, got " +
                     std::to_string(params.alpha.size()));
  }
  const auto& a = params.alpha;
  RF one(1L), two(2L);
  RF t = var(v::t), eta = var(v::eta);
  RF q1 = var(v::q1), p1 = var(v::p1), q2 = var(v::q2), p2 = var(v::p2);
  std::vector<SymplecticPair> two_pairs = {{v::q1, v::p1}, {v::q2, v::p2}};
  switch (kind) {
    case ModelKind::CoupledEta: {
      std::array<RF, 5> s1 = {a[0], a[1], a[2], a[3] + two * a[4] + a[5], a[3] + a[6]};
      std::array<RF, 5> s2 = {a[0] + two * a[2] + a[3], a[1] + a[3], a[4], a[5], a[6]};
      RF coupling = two * (q1 - eta) * q2 * ((q1 - t) * p1 + a[2]) * ((q2 - one) * p2 + a[4]) /
                    (t * (t - one) * (t - eta));
      RF h = hamiltonian_vi(v::q1, v::p1, s1) + hamiltonian_vi(v::q2, v::p2, s2) + coupling;
      return HamiltonianModel(kind, std::move(h), two_pairs, params);
    }
    case ModelKind::CoupledLimit: {
      std::array<RF, 5> s1 = {a[0], a[1], a[2], a[3] + two * a[4] + a[5], a[3] + a[6]};
      std::array<RF, 5> s2 = {a[0] + a[3], a[1] + two * a[2] + a[3], a[4], a[5], a[6]};
      RF coupling = two * (q1 - t) * p1 * q2 * ((q2 - one) * p2 + a[4]) / (t * (t - one));
      RF h = hamiltonian_vi_limit(v::q1, v::p1, s1) + hamiltonian_vi_limit(v::q2, v::p2, s2) +
             coupling;
      return HamiltonianModel(kind, std::move(h), two_pairs, params);
    }
    case ModelKind::PviEta:
      return HamiltonianModel(kind, hamiltonian_vi(v::q, v::p, a), {{v::q, v::p}}, params);
    case ModelKind::PviLimit:
      return HamiltonianModel(kind, hamiltonian_vi_limit(v::q, v::p, a), {{v::q, v::p}}, params);
  }
  throw ModelError("unknown model kind");
}

VectorField vector_field(const HamiltonianModel& model) {
  std::vector<Var> vs;
  std::vector<RF> comps;
  for (const auto& pr : model.pairs()) {
    vs.push_back(pr.q);
    comps.push_back(sym::partial_derivative(model.hamiltonian(), pr.p));
    vs.push_back(pr.p);
    comps.push_back(-sym::partial_derivative(model.hamiltonian(), pr.q));
  }
  return VectorField(std::move(vs), std::move(comps));
}

unsigned phase_degree(const HamiltonianModel& model) {
  auto witness = sym::as_polynomial_in(model.hamiltonian(), model.phase_set());
  if (!witness) throw ModelError("Hamiltonian is not polynomial in the phase variables");
  return witness->numerator().degree_in(model.phase_set());
}

std::vector<RF> pair_divergences(const HamiltonianModel& model, const VectorField& vf) {
  std::vector<RF> out;
  for (std::size_t i = 0; i < model.pairs().size(); ++i) {
    const auto& pr = model.pairs()[i];
    out.push_back(sym::partial_derivative(vf.component(2 * i), pr.q) +
                  sym::partial_derivative(vf.component(2 * i + 1), pr.p));
  }
  return out;
}

ScalarODE second_order_reduction(const HamiltonianModel& model) {
  if (model.pairs().size() != 1) throw ModelError("second-order reduction needs a single pair");
  Var qv = model.pairs()[0].q, pv = model.pairs()[0].p;
  const RF& h = model.hamiltonian();
  RF hp = sym::partial_derivative(h, pv);
  RF hq = sym::partial_derivative(h, qv);
  auto c = sym::coefficients_in(hp, pv);
  if (c.size() < 2 || c[1].is_zero()) throw ModelError("p^2 coefficient of H is identically zero");
  if (c.size() > 2) throw ModelError("H is not quadratic in p");
  // q'' = d/dt (dH/dp) along the flow.
  RF qdd = sym::partial_derivative(hp, qv) * hp - sym::partial_derivative(hp, pv) * hq +
           sym::partial_derivative(hp, v::t);
  RF p_of_qd = (var(v::qd) - c[0]) / c[1];
  return ScalarODE{sym::substitute(qdd, {{pv, p_of_qd}})};
}

ScalarODE printed_second_order_ode(ModelKind kind) {
  RF q = var(v::q), qd = var(v::qd), t = var(v::t), eta = var(v::eta);
  RF one(1L), two(2L);
  RF half = RF(sym::Rational(1, 2));
  RF a0 = alpha_sym(0), a1 = alpha_sym(1), a3 = alpha_sym(3), a4 = alpha_sym(4);
  if (kind == ModelKind::PviEta) {
    RF quad = half * (one / q + one / (q - one) + one / (q - t) + one / (q - eta));
    RF lin = -(one / t + one / (t - one) + one / (q - t) + one / (t - eta));
    RF bracket = a1.pow(2) / two * eta * (eta - one) * (t - eta) / (q - eta).pow(2) +
                 a4.pow(2) / two * eta * t / q.pow(2) +
                 a3.pow(2) / two * (eta - one) * (one - t) / (q - one).pow(2) +
                 (one - a0.pow(2)) / two * t * (t - one) * (t - eta) / (q - t).pow(2);
    RF pre = q * (q - one) * (q - t) * (q - eta) /
             (t.pow(2) * (t - one).pow(2) * (t - eta).pow(2));
    return ScalarODE{quad * qd.pow(2) + lin * qd + pre * bracket};
  }
  if (kind == ModelKind::PviLimit) {
    RF quad = half * (one / q + one / (q - one) + one / (q - t));
    RF lin = -(one / t + one / (t - one) + one / (q - t));
    RF bracket = a1.pow(2) / two - a4.pow(2) / two * t / q.pow(2) -
                 a3.pow(2) / two * (one - t) / (q - one).pow(2) +
                 (one - a0.pow(2)) / two * t * (t - one) / (q - t).pow(2);
    RF pre = q * (q - one) * (q - t) / (t.pow(2) * (t - one).pow(2));
    return ScalarODE{quad * qd.pow(2) + lin * qd + pre * bracket};
  }
  throw ModelError("no printed second-order equation for " + std::string(model_name(kind)));
}

std::vector<OdeGroupComparison> compare_ode_groups(const ScalarODE& derived, const ScalarODE& printed) {
  auto cd = sym::coefficients_in(derived.qdd, v::qd);
  auto cp = sym::coefficients_in(printed.qdd, v::qd);
  std::size_t n = std::max<std::size_t>({cd.size(), cp.size(), 3});
  cd.resize(n);
  cp.resize(n);
  auto norm = parameter_bindings(5, ParameterMode::Normalized);
  std::vector<OdeGroupComparison> out;
  for (std::size_t k = n; k-- > 0;) {
    OdeGroupComparison g;
    g.power = static_cast<int>(k);
    g.derived = cd[k];
    g.printed = cp[k];
    g.difference = cd[k] - cp[k];
    g.matches = g.difference.is_zero();
    g.matches_normalized = g.matches || sym::substitute(g.difference, norm).is_zero();
    out.push_back(std::move(g));
  }
  return out;
}

VectorField eta_limit(const VectorField& vf) {
  std::vector<RF> comps;
  for (std::size_t i = 0; i < vf.dimension(); ++i) {
    auto lim = sym::limit_at_infinity(vf.component(i), v::eta);
    if (lim.diverges) throw LimitDivergence(i, lim.leading_numerator);
    comps.push_back(std::move(lim.value));
  }
  return VectorField(vf.variables(), std::move(comps));
}

RF lie_derivative(const VectorField& vf, const RF& f) {
  RF out = sym::partial_derivative(f, v::t);
  for (std::size_t i = 0; i < vf.dimension(); ++i) {
    RF df = sym::partial_derivative(f, vf.variables()[i]);
    if (!df.is_zero()) out += vf.component(i) * df;
  }
  return out;
}

std::vector<DivisorRow> coupled_divisor_table() {
  RF q1 = var(v::q1), p1 = var(v::p1), q2 = var(v::q2), p2 = var(v::p2);
  return {
      {0, "q1-t", q1 - var(v::t)}, {1, "q1-eta", q1 - var(v::eta)}, {2, "p1", p1},
      {3, "q1-q2", q1 - q2},       {4, "p2", p2},                   {5, "q2-1", q2 - RF(1L)},
      {6, "q2", q2},
  };
}

std::vector<DivisorRow> pvi_divisor_table() {
  RF q = var(v::q), p = var(v::p);
  return {
      {0, "q-t", q - var(v::t)}, {1, "q-eta", q - var(v::eta)}, {2, "p", p},
      {3, "q-1", q - RF(1L)},    {4, "q", q},
  };
}

namespace {

bool divides_along(const VectorField& vf, const RF& f, std::string& witness) {
  sym::VarSet phase;
  for (Var x : vf.variables()) phase.insert(x);
  RF vf_f = lie_derivative(vf, f);
  if (sym::as_polynomial_in(vf_f / f, phase)) return true;
  witness = vf_f.numerator().to_string();
  if (witness.size() > 400) witness = witness.substr(0, 400) + "...";
  return false;
}

}  // namespace

DivisorCheck check_invariant_divisor(const VectorField& vf, const RF& f, int zeroed,
                                     std::size_t parameter_slots) {
  DivisorCheck out;
  for (auto mode : {ParameterMode::Free, ParameterMode::Normalized}) {
    auto b = parameter_bindings(parameter_slots, mode, zeroed);
    std::string witness;
    if (divides_along(vf.substituted(b), sym::substitute(f, b), witness)) {
      out.pass = true;
      out.mode = mode;
      out.witness.clear();
      return out;
    }
    if (out.witness.empty()) out.witness = witness;
  }
  out.mode = ParameterMode::Normalized;
  return out;
}

}  // namespace painweyl::models
