#include "painweyl/sym/rational_function.hpp"

#include <algorithm>
#include <sstream>

namespace painweyl::sym {

namespace {

bool support_subset(const Polynomial& small, const Polynomial& big) {
  VarSet s = small.support();
  VarSet b = big.support();
  for (std::size_t i = 0; i < kNumVars; ++i) {
    Var v{std::uint8_t(i)};
    if (s.contains(v) && !b.contains(v)) return false;
  }
  return true;
}

// Cheap necessary conditions before attempting an exact division.
bool may_divide(const Polynomial& d, const Polynomial& p) {
  if (d.total_degree() > p.total_degree()) return false;
  if (!d.leading_term().mono.divides(p.leading_term().mono)) return false;
  return support_subset(d, p);
}

Rational rational_pow(const Rational& c, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= c;
  return r;
}

std::vector<DenominatorFactor>::iterator find_factor(std::vector<DenominatorFactor>& fs,
                                                     const Polynomial& base) {
  return std::find_if(fs.begin(), fs.end(), [&](const DenominatorFactor& f) { return f.base == base; });
}

Polynomial expand_factors(const std::vector<DenominatorFactor>& fs) {
  Polynomial r(1L);
  for (const auto& f : fs) r *= f.base.pow(static_cast<unsigned>(f.exponent));
  return r;
}

}  // namespace

void FactorList::insert(const Polynomial& p_in, int exponent) {
  if (p_in.is_zero()) throw DivisionByZero("zero denominator");
  if (exponent == 0) return;
  if (p_in.is_constant()) {
    unit *= rational_pow(p_in.constant_value(), exponent);
    return;
  }
  Polynomial p = p_in;
  Monomial mc = p.monomial_content();
  if (mc.degree > 0) {
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (mc.exps[i] == 0) continue;
      Polynomial v = Polynomial::variable(Var{std::uint8_t(i)});
      int e = exponent * mc.exps[i];
      auto it = find_factor(factors, v);
      if (it != factors.end()) {
        it->exponent += e;
      } else {
        factors.push_back({v, e});
      }
    }
    p = p.divided_by_monomial(mc);
  }
  Rational lc = p.leading_term().coeff;
  unit *= rational_pow(lc, exponent);
  p = p.scaled(Rational(1) / lc);
  if (p.is_constant()) return;

  // Refine against known factors in both directions.
  for (std::size_t i = 0; i < factors.size(); ++i) {
    auto& f = factors[i];
    if (f.base.size() == 1) continue;  // single variables cannot divide p
    while (!p.is_constant() && may_divide(f.base, p)) {
      auto q = exact_divide(p, f.base);
      if (!q) break;
      f.exponent += exponent;
      p = std::move(*q);
    }
    if (p.is_constant()) {
      unit *= rational_pow(p.constant_value(), exponent);
      return;
    }
    if (!(f.base == p) && may_divide(p, f.base)) {
      if (auto q = exact_divide(f.base, p)) {
        // f = p * q with both monic.
        int fe = f.exponent;
        f.base = std::move(*q);
        auto it = find_factor(factors, p);
        if (it != factors.end()) {
          it->exponent += fe + exponent;
        } else {
          factors.push_back({p, fe + exponent});
        }
        return;
      }
    }
  }
  auto it = find_factor(factors, p);
  if (it != factors.end()) {
    it->exponent += exponent;
  } else {
    factors.push_back({std::move(p), exponent});
  }
}

RationalFunction RationalFunction::from_parts(Polynomial num, std::vector<DenominatorFactor> factors) {
  RationalFunction r;
  r.num_ = std::move(num);
  r.den_ = std::move(factors);
  r.cancel();
  return r;
}

RationalFunction RationalFunction::quotient(const Polynomial& n, const Polynomial& d) {
  FactorList fl;
  fl.insert(d, 1);
  return from_parts(n.scaled(Rational(1) / fl.unit), std::move(fl.factors));
}

void RationalFunction::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& f : den_) {
    while (f.exponent > 0 && !num_.is_zero() && may_divide(f.base, num_)) {
      auto q = exact_divide(num_, f.base);
      if (!q) break;
      num_ = std::move(*q);
      --f.exponent;
    }
  }
  std::erase_if(den_, [](const DenominatorFactor& f) { return f.exponent <= 0; });
}

Polynomial RationalFunction::denominator() const { return expand_factors(den_); }

bool RationalFunction::depends_on(Var v) const {
  if (num_.depends_on(v)) return true;
  return std::any_of(den_.begin(), den_.end(), [&](const auto& f) { return f.base.depends_on(v); });
}

bool RationalFunction::depends_on(const VarSet& vs) const {
  if (num_.depends_on(vs)) return true;
  return std::any_of(den_.begin(), den_.end(), [&](const auto& f) { return f.base.depends_on(vs); });
}

std::size_t RationalFunction::size() const {
  std::size_t s = num_.size();
  for (const auto& f : den_) s += f.base.size();
  return s;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction add_sub(const RationalFunction& a, const RationalFunction& b, bool subtract,
                         bool do_cancel) {
  RationalFunction r;
  if (a.den_.empty() && b.den_.empty()) {
    r.num_ = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
    return r;
  }
  if (b.num_.is_zero()) return a;
  if (a.num_.is_zero()) return subtract ? -b : b;

  std::vector<DenominatorFactor> lcm = a.den_;
  for (const auto& fb : b.den_) {
    auto it = find_factor(lcm, fb.base);
    if (it != lcm.end()) {
      it->exponent = std::max(it->exponent, fb.exponent);
    } else {
      lcm.push_back(fb);
    }
  }
  auto multiplier = [&](const std::vector<DenominatorFactor>& own) {
    Polynomial m(1L);
    for (const auto& f : lcm) {
      int have = 0;
      for (const auto& g : own) {
        if (g.base == f.base) have = g.exponent;
      }
      if (f.exponent > have) m *= f.base.pow(static_cast<unsigned>(f.exponent - have));
    }
    return m;
  };
  Polynomial na = a.num_ * multiplier(a.den_);
  Polynomial nb = b.num_ * multiplier(b.den_);
  r.num_ = subtract ? na - nb : na + nb;
  r.den_ = std::move(lcm);
  if (do_cancel) {
    r.cancel();
  } else if (r.num_.is_zero()) {
    r.den_.clear();
  }
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  *this = add_sub(*this, o, false, true);
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  *this = add_sub(*this, o, true, true);
  return *this;
}

RationalFunction difference_uncancelled(const RationalFunction& a, const RationalFunction& b) {
  return add_sub(a, b, true, false);
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (num_.is_zero() || o.num_.is_zero()) {
    *this = RationalFunction{};
    return *this;
  }
  if (den_.empty() && o.den_.empty()) {
    num_ *= o.num_;
    return *this;
  }
  // Cross-cancel before multiplying.
  Polynomial a = num_;
  Polynomial b = o.num_;
  std::vector<DenominatorFactor> da = den_;
  std::vector<DenominatorFactor> db = o.den_;
  auto cross = [](Polynomial& n, std::vector<DenominatorFactor>& fs) {
    for (auto& f : fs) {
      while (f.exponent > 0 && may_divide(f.base, n)) {
        auto q = exact_divide(n, f.base);
        if (!q) break;
        n = std::move(*q);
        --f.exponent;
      }
    }
  };
  cross(a, db);
  cross(b, da);
  for (const auto& f : db) {
    if (f.exponent <= 0) continue;
    auto it = find_factor(da, f.base);
    if (it != da.end()) {
      it->exponent += f.exponent;
    } else {
      da.push_back(f);
    }
  }
  std::erase_if(da, [](const DenominatorFactor& f) { return f.exponent <= 0; });
  num_ = a * b;
  den_ = std::move(da);
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.num_.is_zero()) throw DivisionByZero("division by the zero function");
  if (num_.is_zero()) return *this;
  Polynomial n = num_;
  Polynomial d = o.num_;
  if (!d.is_constant() && may_divide(d, n)) {
    if (auto q = exact_divide(n, d)) {
      n = std::move(*q);
      d = Polynomial(1L);
    }
  }
  FactorList fl;
  fl.factors = den_;
  fl.insert(d, 1);
  Polynomial extra = expand_factors(o.den_);
  *this = from_parts((n * extra).scaled(Rational(1) / fl.unit), std::move(fl.factors));
  return *this;
}

RationalFunction RationalFunction::pow(int n) const {
  if (n < 0) return RationalFunction(1L) / pow(-n);
  RationalFunction r;
  r.num_ = num_.pow(static_cast<unsigned>(n));
  for (const auto& f : den_) r.den_.push_back({f.base, f.exponent * n});
  if (n == 0) r.den_.clear();
  return r;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return difference_uncancelled(a, b).is_zero();
}

std::optional<Rational> RationalFunction::try_evaluate(std::span<const Rational> point) const {
  Rational d(1);
  for (const auto& f : den_) {
    Rational v = f.base.evaluate(point);
    if (sgn(v) == 0) return std::nullopt;
    d *= rational_pow(v, f.exponent);
  }
  return num_.evaluate(point) / d;
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  Rational d(1);
  for (const auto& f : den_) {
    Rational v = f.base.evaluate(point);
    if (sgn(v) == 0) {
      throw PoleError("denominator factor " + f.base.to_string() + " vanishes", f.base);
    }
    d *= rational_pow(v, f.exponent);
  }
  return num_.evaluate(point) / d;
}

std::string RationalFunction::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::ostringstream os;
  os << "(" << num_.to_string() << ")/(";
  bool first = true;
  for (const auto& f : den_) {
    if (!first) os << "*";
    first = false;
    bool paren = f.base.size() > 1;
    if (paren) os << "(";
    os << f.base.to_string();
    if (paren) os << ")";
    if (f.exponent > 1) os << "^" << f.exponent;
  }
  os << ")";
  return os.str();
}

namespace {

struct PreparedBinding {
  Var var;
  unsigned max_degree = 0;
  std::vector<Polynomial> num_pows;  // N^k
  std::vector<Polynomial> den_pows;  // D^k (expanded)
};

Polynomial substitute_levels(const Polynomial& p, std::span<PreparedBinding> bs) {
  if (bs.empty() || p.is_zero()) return p;
  PreparedBinding& b = bs.front();
  auto coeffs = p.coefficients_in(b.var);
  Polynomial acc;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    Polynomial inner = substitute_levels(coeffs[k], bs.subspan(1));
    if (inner.is_zero()) continue;
    Polynomial factor = b.num_pows[k] * b.den_pows[b.max_degree - k];
    acc += inner * factor;
  }
  return acc;
}

RationalFunction substitute_polynomial(const Polynomial& p, std::span<const Binding> bindings) {
  std::vector<PreparedBinding> prepared;
  std::vector<DenominatorFactor> den;
  for (const auto& [v, value] : bindings) {
    unsigned deg = p.degree(v);
    if (deg == 0) continue;
    PreparedBinding pb;
    pb.var = v;
    pb.max_degree = deg;
    Polynomial d = value.denominator();
    pb.num_pows.push_back(Polynomial(1L));
    pb.den_pows.push_back(Polynomial(1L));
    for (unsigned k = 1; k <= deg; ++k) {
      pb.num_pows.push_back(pb.num_pows.back() * value.numerator());
      pb.den_pows.push_back(value.is_polynomial_form() ? Polynomial(1L) : pb.den_pows.back() * d);
    }
    for (const auto& f : value.denominator_factors()) {
      auto it = find_factor(den, f.base);
      int e = f.exponent * static_cast<int>(deg);
      if (it != den.end()) {
        it->exponent += e;
      } else {
        den.push_back({f.base, e});
      }
    }
    prepared.push_back(std::move(pb));
  }
  if (prepared.empty()) return RationalFunction(p);
  Polynomial num = substitute_levels(p, prepared);
  return RationalFunction::from_parts(std::move(num), std::move(den));
}

}  // namespace

RationalFunction substitute(const RationalFunction& f, std::span<const Binding> bindings) {
  if (bindings.empty()) return f;
  bool touches = false;
  for (const auto& [v, value] : bindings) touches = touches || f.depends_on(v);
  if (!touches) return f;

  RationalFunction result = substitute_polynomial(f.num_, bindings);
  for (const auto& fac : f.den_) {
    RationalFunction s = substitute_polynomial(fac.base, bindings);
    if (s.is_zero()) {
      throw DivisionByZero("substitution makes denominator factor " + fac.base.to_string() +
                           " vanish identically");
    }
    result /= s.pow(fac.exponent);
  }
  return result;
}

RationalFunction partial_derivative(const RationalFunction& f, Var v) {
  const auto& den = f.denominator_factors();
  std::vector<std::size_t> dep;
  for (std::size_t i = 0; i < den.size(); ++i) {
    if (den[i].base.depends_on(v)) dep.push_back(i);
  }
  Polynomial dn = f.numerator().derivative(v);
  if (dep.empty()) return RationalFunction::from_parts(std::move(dn), den);

  // d(N / prod f_i^e_i) = (N' prod f_i - N sum e_i f_i' prod_{j!=i} f_j) / (D prod f_i)
  Polynomial prod_all(1L);
  for (auto i : dep) prod_all *= den[i].base;
  Polynomial num = dn * prod_all;
  for (auto i : dep) {
    Polynomial others(1L);
    for (auto j : dep) {
      if (j != i) others *= den[j].base;
    }
    num -= (f.numerator() * den[i].base.derivative(v) * others).scaled(Rational(den[i].exponent));
  }
  std::vector<DenominatorFactor> nd = den;
  for (auto i : dep) nd[i].exponent += 1;
  return RationalFunction::from_parts(std::move(num), std::move(nd));
}

std::optional<RationalFunction> as_polynomial_in(const RationalFunction& f, const VarSet& vars) {
  Polynomial num = f.numerator();
  FactorList rest;
  std::vector<Polynomial> multipliers;
  for (const auto& fac : f.denominator_factors()) {
    if (!fac.base.depends_on(vars)) {
      rest.factors.push_back(fac);
      continue;
    }
    for (int k = 0; k < fac.exponent; ++k) {
      auto r = divide_over_coefficients(num, fac.base, vars);
      if (!r) return std::nullopt;
      num = std::move(r->quotient);
      multipliers.push_back(std::move(r->multiplier));
    }
  }
  for (const auto& m : multipliers) rest.insert(m, 1);
  return RationalFunction::from_parts(num.scaled(Rational(1) / rest.unit), std::move(rest.factors));
}

LimitResult limit_at_infinity(const RationalFunction& f, Var v) {
  LimitResult out;
  if (f.is_zero()) {
    out.value = RationalFunction{};
    return out;
  }
  auto ncoeffs = f.numerator().coefficients_in(v);
  int dn = static_cast<int>(ncoeffs.size()) - 1;
  int dd = 0;
  RationalFunction lead_den(1L);
  for (const auto& fac : f.denominator_factors()) {
    auto c = fac.base.coefficients_in(v);
    dd += fac.exponent * static_cast<int>(c.size() - 1);
    lead_den *= RationalFunction(c.back()).pow(fac.exponent);
  }
  out.leading_numerator = ncoeffs.back();
  out.degree_excess = dn - dd;
  if (dn > dd) {
    out.diverges = true;
  } else if (dn < dd) {
    out.value = RationalFunction{};
  } else {
    out.value = RationalFunction(ncoeffs.back()) / lead_den;
  }
  return out;
}

std::vector<RationalFunction> coefficients_in(const RationalFunction& f, Var v) {
  for (const auto& fac : f.denominator_factors()) {
    if (fac.base.depends_on(v)) {
      throw SymbolicError("coefficients_in: denominator depends on " +
                          std::string(VariableRegistry::name(v)));
    }
  }
  std::vector<RationalFunction> out;
  for (auto& c : f.numerator().coefficients_in(v)) {
    out.push_back(RationalFunction::from_parts(std::move(c), f.denominator_factors()));
  }
  return out;
}

}  // namespace painweyl::sym
