#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "painweyl/sym/variables.hpp"

namespace painweyl::sym {

using Rational = mpq_class;

class SymbolicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public SymbolicError {
 public:
  using SymbolicError::SymbolicError;
};

/// Exponent vector over the full registry, with cached total degree.
struct Monomial {
  std::array<std::uint16_t, kNumVars> exps{};
  std::uint32_t degree = 0;

  static Monomial of(Var v, unsigned power = 1);

  unsigned operator[](Var v) const { return exps[v.index]; }
  void set(Var v, unsigned e);

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// Requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  unsigned degree_in(const VarSet& vs) const;
  bool depends_on(const VarSet& vs) const;
  Monomial restricted_to(const VarSet& vs) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
};

/// Graded lexicographic comparison in registry order. Returns <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse multivariate polynomial over Q. Terms are kept sorted in
/// decreasing grlex order with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c);  // NOLINT(google-explicit-constructor)
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  static Polynomial variable(Var v);
  static Polynomial monomial(const Monomial& m, const Rational& c);
  /// Builds from arbitrary (possibly unsorted, repeated) terms.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant value; requires is_constant().
  Rational constant_value() const;
  const Term& leading_term() const { return terms_.front(); }

  unsigned total_degree() const;
  unsigned degree_in(const VarSet& vs) const;
  unsigned degree(Var v) const;
  bool depends_on(Var v) const;
  bool depends_on(const VarSet& vs) const;
  VarSet support() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial times_monomial(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned n) const;

  Polynomial derivative(Var v) const;

  /// Coefficients of v^0, v^1, ..., v^deg as polynomials free of v.
  std::vector<Polynomial> coefficients_in(Var v) const;
  /// Groups terms by their exponent restricted to `vs`; each coefficient is
  /// free of `vs`. Sorted by decreasing grlex of the key.
  std::vector<std::pair<Monomial, Polynomial>> collect(const VarSet& vs) const;

  /// Smallest exponent vector dividing every term (zero for the zero polynomial).
  Monomial monomial_content() const;
  /// Divides every exponent vector by m; requires m | every term.
  Polynomial divided_by_monomial(const Monomial& m) const;

  Rational evaluate(std::span<const Rational> point) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Exact division in Q[all variables]: returns q with p == d*q, or nullopt.
/// Throws DivisionByZero when d is zero.
std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& d);

/// Division treating variables outside `vars` as coefficients from their
/// fraction field: finds (q, m) with m*p == q*d, m a non-zero polynomial free
/// of `vars`. Returns nullopt when d does not divide p in K[vars].
struct PseudoQuotient {
  Polynomial quotient;
  Polynomial multiplier;
};
std::optional<PseudoQuotient> divide_over_coefficients(const Polynomial& p, const Polynomial& d,
                                                       const VarSet& vars);

}  // namespace painweyl::sym
