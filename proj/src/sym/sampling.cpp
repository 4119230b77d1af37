#include "painweyl/sym/sampling.hpp"

namespace painweyl::sym {

Rational RationalSampler::next() {
  std::uniform_int_distribution<long> num(-bound_, bound_);
  std::uniform_int_distribution<long> den(1, bound_);
  Rational r(num(rng_), den(rng_));
  r.canonicalize();
  return r;
}

Point RationalSampler::point() {
  Point p;
  for (auto& v : p) v = next();
  return p;
}

Polynomial ExpressionSampler::polynomial(int max_terms, int max_exp) {
  static constexpr Var pool[] = {vars::q1, vars::p1, vars::t, vars::eta, vars::a2};
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> expo(0, max_exp);
  std::vector<Term> terms;
  int n = nterms(rng_);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    for (auto v : pool) m.set(v, static_cast<unsigned>(expo(rng_)));
    int c = coeff(rng_);
    Rational r(c == 0 ? 1 : c, 1 + std::abs(coeff(rng_)));
    r.canonicalize();
    terms.push_back({m, r});
  }
  auto p = Polynomial::from_terms(std::move(terms));
  return p.is_zero() ? Polynomial(1L) : p;
}

RationalFunction ExpressionSampler::rational_function() {
  return RationalFunction::quotient(polynomial(), polynomial(3, 1));
}

ProbabilisticCheck check_at_random_points(const std::function<Rational(const Point&)>& residual,
                                          RationalSampler& sampler, int points,
                                          const std::function<void(Point&)>& prepare) {
  ProbabilisticCheck out;
  constexpr int kMaxRetries = 1000;
  while (out.points_tested < points) {
    Point p = sampler.point();
    if (prepare) prepare(p);
    Rational r;
    try {
      r = residual(p);
    } catch (const PoleError&) {
      if (++out.retries > kMaxRetries) throw SymbolicError("too many singular sample points");
      continue;
    } catch (const DivisionByZero&) {
      if (++out.retries > kMaxRetries) throw SymbolicError("too many singular sample points");
      continue;
    }
    ++out.points_tested;
    if (sgn(r) != 0) {
      out.holds = false;
      out.witness = "residual " + r.get_str() + " at point #" + std::to_string(out.points_tested);
      return out;
    }
  }
  return out;
}

}  // namespace painweyl::sym
