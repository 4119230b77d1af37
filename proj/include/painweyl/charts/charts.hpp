#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "painweyl/models/painleve_models.hpp"

namespace painweyl::charts {

using models::VectorField;
using sym::RationalFunction;
using sym::Var;

class ChartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Birational coordinate change. `forward[i]` gives target[i] in the source
/// variables (and t, eta, alpha); `inverse[i]` gives source[i] in the
/// target variables.
struct ChartTransform {
  std::string name;
  std::vector<Var> source;
  std::vector<Var> target;
  std::vector<RationalFunction> forward;
  std::vector<RationalFunction> inverse;

  bool t_dependent() const;
  bool alpha_dependent() const;
  /// Applies parameter bindings to both directions.
  ChartTransform substituted(std::span<const sym::Binding> b) const;
};

/// `first` followed by `second` (second's source must be first's target).
ChartTransform compose_charts(const ChartTransform& first, const ChartTransform& second,
                              std::string name);

/// Names: r0..r6, r0p..r6p (r1p is the composite through r2p), r1p-local,
/// pvi-r0..pvi-r4, U0..U11.
ChartTransform chart(std::string_view name);
std::vector<std::string> chart_names();

struct RoundTrip {
  bool forward_inverse = false;  // forward(inverse(x)) == x
  bool inverse_forward = false;  // inverse(forward(q)) == q
};
RoundTrip check_round_trip(const ChartTransform& c);

struct PushedSystem {
  std::string chart;
  VectorField field;  // over chart.target
  bool polynomial = false;
  /// Non-polynomial component index and its denominator, when !polynomial.
  std::string witness;
};

/// dX/dt = sum dX/dvar * v_var + dX/dt, rewritten in chart variables.
PushedSystem push_system(const ChartTransform& c, const VectorField& vf);
/// Pushes through each step in turn; intermediate steps may be non-polynomial.
PushedSystem push_through(const std::vector<ChartTransform>& path, const VectorField& vf);

struct Reconstruction {
  bool closed = false;
  std::optional<RationalFunction> hamiltonian;
  /// Offending mixed-partial pair when not closed.
  std::string witness;
};

/// Recovers K with dK/dy_i = dx_i/dt and dK/dx_i = -dy_i/dt over the
/// symplectic pairs (target[0], target[1]), (target[2], target[3]), ...
Reconstruction reconstruct_hamiltonian(const PushedSystem& ps);

/// Antiderivative in v of a function polynomial in v (coefficients free of v),
/// vanishing at v = 0.
RationalFunction integrate_in(const RationalFunction& f, Var v);

/// Total degree of H over the phase variables.
inline unsigned degree_check(const models::HamiltonianModel& m) { return models::phase_degree(m); }

/// Determinant of d(forward)/d(source).
RationalFunction wedge_factor(const ChartTransform& c);

struct HolomorphyEntry {
  std::string chart;
  bool polynomial = false;
  bool hamiltonian = false;
  models::ParameterMode mode = models::ParameterMode::Free;
  std::string witness;
};

enum class ConditionSet { R, RPrime, Pvi };
std::optional<ConditionSet> parse_condition_set(std::string_view name);
std::string_view condition_set_name(ConditionSet s);
models::ModelKind condition_model(ConditionSet s);
/// Chart paths of a set; the composite chart is a two-step path.
std::vector<std::vector<ChartTransform>> condition_paths(ConditionSet s);

/// Pushes the model field through every chart of the set; free mode first,
/// then with the normalization relation imposed on field and charts.
std::vector<HolomorphyEntry> verify_holomorphy(ConditionSet s);
HolomorphyEntry verify_chart(const std::vector<ChartTransform>& path, const VectorField& vf,
                             std::size_t parameter_slots);

/// The swap (q1,p1,a2) <-> (q2,p2,a4).
struct AtlasSwap {
  int from;
  int to;  // -1 when no chart matches
};
/// For each U_j, the U_k with U_j(pi(q)) == swap(U_k(q)).
std::vector<AtlasSwap> atlas_swap_closure();

}  // namespace painweyl::charts
