#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "painweyl/sym/polynomial.hpp"

namespace painweyl::sym {

/// A denominator factor: monic, non-constant polynomial raised to a
/// positive power. Single-variable monomials are kept as their own factors.
struct DenominatorFactor {
  Polynomial base;
  int exponent = 1;
};

class PoleError : public SymbolicError {
 public:
  PoleError(const std::string& msg, Polynomial factor)
      : SymbolicError(msg), factor_(std::move(factor)) {}
  const Polynomial& factor() const { return factor_; }

 private:
  Polynomial factor_;
};

/// Exact quotient of multivariate polynomials over Q.
///
/// The denominator is stored as a product of factors. This gives cheap
/// common denominators (factors are matched by identity) and lets
/// cancellation proceed factor-by-factor with exact division. No
/// multivariate gcd is ever computed, so the representation is not
/// canonical; equality is decided by the numerator of the difference.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(long c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial p) : num_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  static RationalFunction variable(Var v) { return RationalFunction(Polynomial::variable(v)); }
  /// n/d with d != 0.
  static RationalFunction quotient(const Polynomial& n, const Polynomial& d);

  const Polynomial& numerator() const { return num_; }
  const std::vector<DenominatorFactor>& denominator_factors() const { return den_; }
  /// Expanded denominator polynomial.
  Polynomial denominator() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial_form() const { return den_.empty(); }
  /// True if the function is a constant (after the stored cancellation).
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  bool depends_on(Var v) const;
  bool depends_on(const VarSet& vs) const;
  /// Number of numerator terms plus denominator factor terms; used for size budgets.
  std::size_t size() const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction pow(int n) const;

  /// Exact equality (cross-multiplied: numerator of a - b vanishes).
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  /// Rational value at a full registry point; nullopt when a denominator
  /// factor vanishes there.
  std::optional<Rational> try_evaluate(std::span<const Rational> point) const;
  /// Throws PoleError naming the vanishing factor.
  Rational evaluate(std::span<const Rational> point) const;

  std::string to_string() const;

  // Low-level construction used by the kernel; `factors` must already be
  // normalized. Cancellation is attempted.
  static RationalFunction from_parts(Polynomial num, std::vector<DenominatorFactor> factors);

 private:
  void cancel();
  friend RationalFunction add_sub(const RationalFunction&, const RationalFunction&, bool, bool);
  friend RationalFunction substitute(const RationalFunction&,
                                     std::span<const std::pair<Var, RationalFunction>>);

  Polynomial num_;
  std::vector<DenominatorFactor> den_;
};

/// a - b without attempting cancellation; its numerator is zero iff a == b.
RationalFunction difference_uncancelled(const RationalFunction& a, const RationalFunction& b);

using Binding = std::pair<Var, RationalFunction>;

/// Simultaneous substitution. Throws DivisionByZero if a denominator
/// becomes identically zero.
RationalFunction substitute(const RationalFunction& f, std::span<const Binding> bindings);
inline RationalFunction substitute(const RationalFunction& f, std::initializer_list<Binding> b) {
  return substitute(f, std::span<const Binding>(b.begin(), b.size()));
}

RationalFunction partial_derivative(const RationalFunction& f, Var v);

/// Witness for is_polynomial: f as a polynomial in `vars` whose
/// coefficients are rational functions of the remaining variables. The
/// numerator is the polynomial part, the denominator is free of `vars`.
std::optional<RationalFunction> as_polynomial_in(const RationalFunction& f, const VarSet& vars);

struct LimitResult {
  bool diverges = false;
  RationalFunction value;  // meaningful when !diverges
  /// Leading coefficient of the numerator in v (diagnostic for divergence).
  Polynomial leading_numerator;
  int degree_excess = 0;   // deg(num) - deg(den) in v
};
LimitResult limit_at_infinity(const RationalFunction& f, Var v);

/// Coefficients of v^k in f; requires the denominator to be free of v.
std::vector<RationalFunction> coefficients_in(const RationalFunction& f, Var v);

/// Product of factors d_i^e_i, normalized and refined against each other.
/// The constant part is returned separately so callers can keep it in a
/// numerator.
struct FactorList {
  Rational unit{1};
  std::vector<DenominatorFactor> factors;
  void insert(const Polynomial& p, int exponent);
};

}  // namespace painweyl::sym
