#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "painweyl/charts/charts.hpp"
#include "painweyl/sym/matrix.hpp"

namespace painweyl::singular {

using charts::ChartTransform;
using models::VectorField;
using sym::Binding;
using sym::RationalFunction;
using sym::Var;

class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field near a boundary divisor {b = 0}, written as
/// d/dt + a_b d/db + sum_{i != b} (a_i / b) d/dx_i.
struct BoundaryChartSystem {
  std::string chart;
  Var boundary;
  std::vector<Var> variables;
  /// a_i in the order of `variables`; the boundary slot holds a_1.
  std::vector<RationalFunction> a;
  /// False when some component has a pole of order >= 2 along b = 0 (or
  /// a pole elsewhere); `witness` then names it.
  bool admissible = false;
  std::string witness;

  std::size_t boundary_index() const;
};

BoundaryChartSystem log_pole_form(const ChartTransform& chart, const VectorField& vf, Var boundary);
/// Same, for a field already written in chart variables.
BoundaryChartSystem log_pole_form(std::string chart_name, const VectorField& pushed, Var boundary);

struct AccessibleLocus {
  std::string name;
  std::string chart;
  Var boundary;
  /// Chart coordinate -> value, possibly in the free parameter `a`.
  std::vector<Binding> point;
};

/// Pass iff the boundary coordinate is 0 on the locus and every a_i
/// (i != boundary) vanishes identically there.
struct LocusCheck {
  bool pass = false;
  std::string witness;
};
LocusCheck verify_locus(const AccessibleLocus& locus, const BoundaryChartSystem& bcs);

/// Named loci: C0..C4 in their printed charts, C2-U4 (the C2 table point
/// seen in U4), C1-U6, C1-U8, Cinf-U6, Cinf-U8.
AccessibleLocus locus(std::string_view name);
std::vector<std::string> locus_names();
/// Model kind whose field the locus belongs to.
models::ModelKind locus_model(const AccessibleLocus& l);

struct LocalIndex {
  sym::RFMatrix linear_part;
  /// Linear part with the off-diagonal entries of the boundary column
  /// dropped; those terms are holomorphic after division by the boundary
  /// coordinate.
  sym::RFMatrix singular_part;
  RationalFunction prefactor;
  /// Eigenvalue ratios, sorted ascending (multiset).
  std::vector<long> multiset;
  /// Diagonal of singular_part / prefactor when it is triangular.
  std::optional<std::vector<long>> ordered;
  bool semisimple = false;
  /// Rows are left eigenvectors: Q S Q^-1 = prefactor * diag(q_order).
  std::optional<sym::RFMatrix> q;
  std::vector<long> q_order;
  bool integral = false;
  std::string detail;
};

/// Linear part of b * d/dt at the (possibly moving) point, eigenvalues as
/// integer multiples of a common prefactor in Q(t, eta, alpha, a).
/// Candidates come from a numeric specialization; acceptance is exact.
LocalIndex local_index(const AccessibleLocus& at, const BoundaryChartSystem& bcs, std::uint64_t seed = 7);

/// Eigenvalues as integer multiples of a rational-function prefactor, or
/// nullopt (with reason) when the spectrum is not of that shape.
struct IntegerSpectrum {
  RationalFunction prefactor;
  std::vector<long> ratios;  // one per eigenvalue, with multiplicity
};
std::optional<IntegerSpectrum> integer_spectrum(const sym::RFMatrix& m, std::string& reason,
                                                std::uint64_t seed = 7);

/// Coefficients c_0..c_{n-1} of det(lambda I - M) = lambda^n + c_{n-1} lambda^{n-1} + ... + c_0.
std::vector<RationalFunction> characteristic_coefficients(const sym::RFMatrix& m);

struct BlowUpStep {
  std::string center;
  std::string direction;
  ChartTransform transform;  // chart coordinates to chart coordinates
};

VectorField blow_up(const BlowUpStep& step, const VectorField& vf);

struct Resolution {
  std::string locus;
  std::string target_chart;
  ChartTransform composite;
  bool chart_matches = false;   // composite forward == target forward
  bool system_matches = false;  // pushed fields agree and are polynomial
  std::vector<std::string> steps;
};

/// The two-step resolutions: C4 -> r6 and C2 -> r3.
std::vector<BlowUpStep> resolution_steps(std::string_view locus_name);
Resolution resolve(std::string_view locus_name);

struct ScanCurve {
  std::vector<Binding> point;  // in the free parameter a
  std::optional<std::string> matches;  // name of a listed locus
};
struct ScanPoint {
  std::vector<Binding> point;
  std::optional<std::string> on_curve;
};
struct ScanReport {
  std::string chart;
  Var boundary;
  std::vector<ScanCurve> curves;
  std::vector<ScanPoint> isolated;
  /// Listed loci of the chart and whether the scan found each.
  std::vector<std::pair<std::string, bool>> listed;
  int complement_points = 0;
  int complement_violations = 0;  // points where some a_i != 0
  bool complete = false;          // curves == listed loci, complement all violate
};

/// Candidate-value back-substitution on the boundary equations a_i = 0:
/// coordinates range over {0, 1, -1, t, eta, 1/t, 1/eta, a}, and one coordinate
/// may be solved when an equation is linear in it after removing a power.
ScanReport scan(const ChartTransform& chart, Var boundary, const VectorField& vf,
                std::uint64_t seed = 3, int complement_points = 40);

struct LimitReport {
  bool c1_accessible_u6 = false;
  bool c1_accessible_u8 = false;
  bool cinf_accessible_u6 = false;
  bool cinf_accessible_u8 = false;
  bool binding_limit = false;  // X = 1/eta -> 0
  /// Normalized when some chart needs the normalization relation for the
  /// log-pole form.
  models::ParameterMode c1_mode = models::ParameterMode::Free;
  models::ParameterMode cinf_mode = models::ParameterMode::Free;
  std::string emendation;
};
LimitReport c1_cinf_limit();

/// Boundary coordinate by display name: X3/Y3/Z3/W3 or x/y/z/w.
std::optional<Var> parse_boundary(std::string_view name);

}  // namespace painweyl::singular
