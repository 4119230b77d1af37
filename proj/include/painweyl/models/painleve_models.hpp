#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "painweyl/sym/rational_function.hpp"

namespace painweyl::models {

using sym::RationalFunction;
using sym::Var;

enum class ModelKind { CoupledEta, CoupledLimit, PviEta, PviLimit };

std::string_view model_name(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);
/// Number of parameter slots: 7 for coupled kinds, 5 for P_VI kinds.
std::size_t parameter_count(ModelKind kind);
bool has_eta(ModelKind kind);

/// How parameter identities are interpreted. `Normalized` imposes the
/// linear relation sum(w_i * alpha_i) = 1 by eliminating one slot.
enum class ParameterMode { Free, Normalized };
std::string_view mode_name(ParameterMode mode);

/// Weights of the normalization relation for an n-slot family
/// (1,1,2,2,2,1,1) or (1,1,2,1,1).
std::vector<long> normalization_weights(std::size_t n);

/// Bindings realizing a parameter mode on symbolic alphas a0..a{n-1}.
/// `zeroed` additionally pins that slot to 0; in normalized mode the
/// relation then eliminates a0, or a1 when a0 itself is zeroed.
std::vector<sym::Binding> parameter_bindings(std::size_t n, ParameterMode mode,
                                             std::optional<int> zeroed = std::nullopt);

struct ParameterVector {
  std::vector<RationalFunction> alpha;
  bool constrained = false;

  /// a0..a{n-1} as free symbols.
  static ParameterVector symbolic(std::size_t n);
  /// Symbols with a0 eliminated through the normalization relation.
  static ParameterVector normalized(std::size_t n);
  /// True when sum(w_i * alpha_i) == 1 holds identically.
  bool satisfies_normalization() const;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SymplecticPair {
  Var q;
  Var p;
};

class VectorField {
 public:
  VectorField() = default;
  VectorField(std::vector<Var> variables, std::vector<RationalFunction> components)
      : variables_(std::move(variables)), components_(std::move(components)) {}

  const std::vector<Var>& variables() const { return variables_; }
  const std::vector<RationalFunction>& components() const { return components_; }
  std::size_t dimension() const { return variables_.size(); }
  const RationalFunction& component(std::size_t i) const { return components_[i]; }
  /// Applies the same substitution to every component.
  VectorField substituted(std::span<const sym::Binding> b) const;

 private:
  std::vector<Var> variables_;
  std::vector<RationalFunction> components_;
};

class HamiltonianModel {
 public:
  HamiltonianModel(ModelKind kind, RationalFunction h, std::vector<SymplecticPair> pairs,
                   ParameterVector params)
      : kind_(kind), h_(std::move(h)), pairs_(std::move(pairs)), params_(std::move(params)) {}

  /// Arbitrary Hamiltonian over the given pairs (used for custom input).
  static HamiltonianModel custom(RationalFunction h, std::vector<SymplecticPair> pairs);

  std::optional<ModelKind> kind() const { return kind_; }
  const RationalFunction& hamiltonian() const { return h_; }
  const std::vector<SymplecticPair>& pairs() const { return pairs_; }
  const ParameterVector& parameters() const { return params_; }
  std::vector<Var> phase_variables() const;
  sym::VarSet phase_set() const;

 private:
  HamiltonianModel() = default;
  std::optional<ModelKind> kind_;
  RationalFunction h_;
  std::vector<SymplecticPair> pairs_;
  ParameterVector params_;
};

/// The P_VI Hamiltonian with the extra point eta, as printed:
/// t(t-1)(t-eta) H = q(q-1)(q-eta)(q-t)p^2 + ... .
RationalFunction hamiltonian_vi(Var q, Var p, std::span<const RationalFunction> beta);
/// The classical P_VI Hamiltonian (eta at infinity).
RationalFunction hamiltonian_vi_limit(Var q, Var p, std::span<const RationalFunction> delta);

HamiltonianModel build_hamiltonian(ModelKind kind, const ParameterVector& params);
inline HamiltonianModel build_hamiltonian(ModelKind kind) {
  return build_hamiltonian(kind, ParameterVector::symbolic(parameter_count(kind)));
}

VectorField vector_field(const HamiltonianModel& model);

/// Total degree of H in the phase variables; throws if H is not polynomial there.
unsigned phase_degree(const HamiltonianModel& model);

/// div(v) per symplectic pair; all zero for a Hamiltonian field.
std::vector<RationalFunction> pair_divergences(const HamiltonianModel& model, const VectorField& vf);

struct ScalarODE {
  RationalFunction qdd;  // in q, qd, t, eta, alpha
};

ScalarODE second_order_reduction(const HamiltonianModel& model);

/// The second-order equation printed next to the given P_VI kind.
ScalarODE printed_second_order_ode(ModelKind kind);

struct OdeGroupComparison {
  int power = 0;  // power of dq/dt
  RationalFunction derived;
  RationalFunction printed;
  RationalFunction difference;  // derived - printed, free parameters
  bool matches = false;
  /// Whether the group agrees once the normalization relation is imposed.
  bool matches_normalized = false;
};

/// Compares the coefficients of qd^2, qd^1, qd^0 (P_VI: 5 parameter slots).
std::vector<OdeGroupComparison> compare_ode_groups(const ScalarODE& derived, const ScalarODE& printed);

class LimitDivergence : public ModelError {
 public:
  LimitDivergence(std::size_t component, sym::Polynomial leading)
      : ModelError("component " + std::to_string(component) + " diverges; leading eta coefficient " +
                   leading.to_string()),
        component_(component),
        leading_(std::move(leading)) {}
  std::size_t component() const { return component_; }
  const sym::Polynomial& leading() const { return leading_; }

 private:
  std::size_t component_;
  sym::Polynomial leading_;
};

/// Component-wise limit eta -> infinity.
VectorField eta_limit(const VectorField& vf);

/// v(f) = sum_i v_i df/dx_i + df/dt.
RationalFunction lie_derivative(const VectorField& vf, const RationalFunction& f);

struct DivisorRow {
  int parameter;
  std::string label;
  RationalFunction divisor;
};
/// Invariant divisor tables: coupled system (7 rows) and P_VI (5 rows).
std::vector<DivisorRow> coupled_divisor_table();
std::vector<DivisorRow> pvi_divisor_table();

struct DivisorCheck {
  bool pass = false;
  ParameterMode mode = ParameterMode::Free;
  /// On failure: the remainder-carrying v(f) numerator.
  std::string witness;
};

/// Substitutes alpha_zeroed = 0 into the field and tests whether f divides
/// v(f) as a polynomial in the phase variables. Free mode first, then
/// normalized mode.
DivisorCheck check_invariant_divisor(const VectorField& vf, const RationalFunction& f, int zeroed,
                                     std::size_t parameter_slots);

}  // namespace painweyl::models
