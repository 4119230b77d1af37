#include "painweyl/sym/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace painweyl::sym {

Monomial Monomial::of(Var v, unsigned power) {
  Monomial m;
  m.set(v, power);
  return m;
}

void Monomial::set(Var v, unsigned e) {
  degree -= exps[v.index];
  exps[v.index] = static_cast<std::uint16_t>(e);
  degree += e;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    unsigned e = unsigned(exps[i]) + o.exps[i];
    if (e > 0xFFFF) throw SymbolicError("exponent overflow");
    r.exps[i] = static_cast<std::uint16_t>(e);
  }
  r.degree = degree + o.degree;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree > o.degree) return false;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (exps[i] > o.exps[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kNumVars; ++i) r.exps[i] = o.exps[i] - exps[i];
  r.degree = o.degree - degree;
  return r;
}

unsigned Monomial::degree_in(const VarSet& vs) const {
  unsigned d = 0;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (vs.contains(Var{std::uint8_t(i)})) d += exps[i];
  }
  return d;
}

bool Monomial::depends_on(const VarSet& vs) const { return degree_in(vs) > 0; }

Monomial Monomial::restricted_to(const VarSet& vs) const {
  Monomial r;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (vs.contains(Var{std::uint8_t(i)})) r.set(Var{std::uint8_t(i)}, exps[i]);
  }
  return r;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
  }
  return 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto e : m.exps) {
    h ^= e;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

namespace {

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

void sort_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_compare(a.mono, b.mono) > 0; });
}

}  // namespace

Polynomial::Polynomial(long c) {
  if (c != 0) terms_.push_back({Monomial{}, Rational(c)});
}

Polynomial::Polynomial(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(Var v) { return monomial(Monomial::of(v), Rational(1)); }

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(terms.size());
  for (auto& t : terms) acc[t.mono] += t.coeff;
  Polynomial p;
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (sgn(c) != 0) p.terms_.push_back({m, std::move(c)});
  }
  sort_terms(p.terms_);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree == 0);
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw SymbolicError("polynomial is not constant");
  return terms_[0].coeff;
}

unsigned Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree; }

unsigned Polynomial::degree_in(const VarSet& vs) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree_in(vs));
  return d;
}

unsigned Polynomial::degree(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[v]);
  return d;
}

bool Polynomial::depends_on(Var v) const { return degree(v) > 0; }

bool Polynomial::depends_on(const VarSet& vs) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.mono.depends_on(vs); });
}

VarSet Polynomial::support() const {
  VarSet s;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (t.mono.exps[i] != 0) s.insert(Var{std::uint8_t(i)});
    }
  }
  return s;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge of two sorted term lists with sign applied to the second.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size()) {
      cmp = -1;
    } else if (j == b.size()) {
      cmp = 1;
    } else {
      cmp = grlex_compare(a[i].mono, b[j].mono);
    }
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({b[j].mono, subtract ? Rational(-b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      Rational c = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (sgn(c) != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial{};
  if (a.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coeff);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.size() * b.size() / 2 + 16);
  Rational tmp;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      mpq_mul(tmp.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono);
      if (inserted) {
        it->second = tmp;
      } else {
        mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), tmp.get_mpq_t());
      }
    }
  }
  Polynomial r;
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (sgn(c) != 0) r.terms_.push_back({m, std::move(c)});
  }
  sort_terms(r.terms_);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Polynomial{};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
  if (sgn(c) == 0) return Polynomial{};
  Polynomial r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves grlex order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result(1L);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(Var v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono[v];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(v, e - 1);
    out.push_back({m, t.coeff * e});
  }
  // Lowering one exponent can reorder terms of different degree classes.
  Polynomial r;
  r.terms_ = std::move(out);
  sort_terms(r.terms_);
  return r;
}

std::vector<Polynomial> Polynomial::coefficients_in(Var v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    unsigned e = m[v];
    m.set(v, 0);
    buckets[e].push_back({m, t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    Polynomial p;
    p.terms_ = std::move(b);
    sort_terms(p.terms_);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::pair<Monomial, Polynomial>> Polynomial::collect(const VarSet& vs) const {
  std::unordered_map<Monomial, std::vector<Term>, MonomialHash> groups;
  VarSet rest = vs.complement();
  for (const auto& t : terms_) {
    groups[t.mono.restricted_to(vs)].push_back({t.mono.restricted_to(rest), t.coeff});
  }
  std::vector<std::pair<Monomial, Polynomial>> out;
  out.reserve(groups.size());
  for (auto& [key, ts] : groups) {
    Polynomial p;
    p.terms_ = std::move(ts);
    sort_terms(p.terms_);
    out.emplace_back(key, std::move(p));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return grlex_compare(a.first, b.first) > 0; });
  return out;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial m = terms_[0].mono;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < kNumVars; ++i) {
      m.exps[i] = std::min(m.exps[i], t.mono.exps[i]);
    }
  }
  m.degree = 0;
  for (auto e : m.exps) m.degree += e;
  return m;
}

Polynomial Polynomial::divided_by_monomial(const Monomial& m) const {
  Polynomial r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({m.quotient_of(t.mono), t.coeff});
  sort_terms(r.terms_);
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() < kNumVars) throw SymbolicError("evaluation point has wrong arity");
  std::array<std::vector<Rational>, kNumVars> powers;
  Rational acc(0), term;
  for (const auto& t : terms_) {
    term = t.coeff;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      unsigned e = t.mono.exps[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Rational(1));
      while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
      term *= pw[e];
    }
    acc += term;
  }
  return acc;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool unit = (c == 1);
    if (!unit || t.mono.degree == 0) {
      os << c.get_str();
      if (t.mono.degree > 0) os << "*";
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      unsigned e = t.mono.exps[i];
      if (e == 0) continue;
      if (!first_factor) os << "*";
      first_factor = false;
      os << VariableRegistry::kNames[i];
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& d) {
  if (d.is_zero()) throw DivisionByZero("exact_divide by the zero polynomial");
  if (p.is_zero()) return Polynomial{};
  if (d.is_constant()) return p.scaled(Rational(1) / d.constant_value());
  const Term& lead = d.leading_term();
  if (!lead.mono.divides(p.leading_term().mono)) return std::nullopt;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    Var v{std::uint8_t(i)};
    if (d.degree(v) > p.degree(v)) return std::nullopt;
  }

  std::map<Monomial, Rational, GrlexGreater> rem;
  for (const auto& t : p.terms()) rem.emplace(t.mono, t.coeff);
  std::vector<Term> quotient;
  Rational c, tmp;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead.mono.divides(top->first)) return std::nullopt;
    Monomial m = lead.mono.quotient_of(top->first);
    c = top->second / lead.coeff;
    quotient.push_back({m, c});
    rem.erase(top);
    bool first = true;
    for (const auto& t : d.terms()) {
      if (first) {  // leading term cancels exactly
        first = false;
        continue;
      }
      tmp = c * t.coeff;
      Monomial mm = t.mono * m;
      auto [it, inserted] = rem.try_emplace(mm);
      if (inserted) {
        it->second = -tmp;
      } else {
        it->second -= tmp;
        if (sgn(it->second) == 0) rem.erase(it);
      }
    }
  }
  // Quotient terms were produced in decreasing order.
  return Polynomial::from_terms(std::move(quotient));
}

std::optional<PseudoQuotient> divide_over_coefficients(const Polynomial& p, const Polynomial& d,
                                                       const VarSet& vars) {
  if (d.is_zero()) throw DivisionByZero("division by the zero polynomial");
  if (p.is_zero()) return PseudoQuotient{Polynomial{}, Polynomial(1L)};

  auto dc = d.collect(vars);
  const Monomial& lead_mono = dc.front().first;
  const Polynomial& lead_coeff = dc.front().second;

  std::map<Monomial, Polynomial, GrlexGreater> rem;
  for (auto& [m, c] : p.collect(vars)) rem.emplace(m, std::move(c));
  std::map<Monomial, Polynomial, GrlexGreater> quo;
  Polynomial multiplier(1L);

  auto subtract_multiple = [&](const Polynomial& coeff, const Monomial& shift) {
    for (const auto& [m, c] : dc) {
      Monomial mm = m * shift;
      auto& slot = rem[mm];
      slot -= coeff * c;
      if (slot.is_zero()) rem.erase(mm);
    }
  };

  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead_mono.divides(top->first)) return std::nullopt;
    Monomial shift = lead_mono.quotient_of(top->first);
    Polynomial top_coeff = top->second;
    if (auto g = exact_divide(top_coeff, lead_coeff)) {
      quo[shift] += *g;
      subtract_multiple(*g, shift);
    } else {
      for (auto& [m, c] : rem) c *= lead_coeff;
      for (auto& [m, c] : quo) c *= lead_coeff;
      multiplier *= lead_coeff;
      quo[shift] += top_coeff;
      subtract_multiple(top_coeff, shift);
    }
  }

  std::vector<Term> qt;
  for (const auto& [m, c] : quo) {
    for (const auto& t : c.terms()) qt.push_back({t.mono * m, t.coeff});
  }
  return PseudoQuotient{Polynomial::from_terms(std::move(qt)), std::move(multiplier)};
}

}  // namespace painweyl::sym
