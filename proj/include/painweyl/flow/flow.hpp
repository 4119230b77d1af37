#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "painweyl/models/painleve_models.hpp"
#include "painweyl/weyl/weyl_actions.hpp"

namespace painweyl::flow {

using cplx = std::complex<double>;
using State = std::vector<cplx>;
using models::VectorField;
using sym::Rational;
using sym::RationalFunction;
using sym::Var;

class FlowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact numeric parameter values. `eta` is ignored by the limit models.
struct NumericParams {
  std::vector<Rational> alpha;
  Rational eta{0};

  /// Bindings a_i -> alpha_i and eta -> eta.
  std::vector<sym::Binding> bindings() const;
  /// Replaces alpha[solve] so that sum(w_i alpha_i) == 1.
  NumericParams normalized(std::size_t solve = 0) const;
};

/// A rational function compiled to double-precision complex evaluation in
/// a fixed list of inputs. Parameters must already be substituted.
class CompiledFunction {
 public:
  CompiledFunction() = default;
  CompiledFunction(const RationalFunction& f, std::vector<Var> inputs);

  cplx operator()(const cplx* in) const;
  const std::vector<Var>& inputs() const { return inputs_; }

 private:
  struct Term {
    cplx coeff;
    std::vector<std::pair<std::uint8_t, std::uint16_t>> powers;  // (input slot, exponent)
  };
  struct Poly {
    std::vector<Term> terms;
    cplx eval(const cplx* in) const;
  };
  std::vector<Var> inputs_;
  Poly num_;
  std::vector<std::pair<Poly, int>> den_;
};

/// Field v(y, t) with fixed exact parameters.
class CompiledField {
 public:
  const std::vector<Var>& variables() const { return variables_; }
  std::size_t dimension() const { return variables_.size(); }
  const NumericParams& params() const { return params_; }
  /// The field after parameter substitution (exact).
  const VectorField& specialized() const { return specialized_; }
  bool has_eta() const { return has_eta_; }

  void evaluate(const cplx* y, cplx t, cplx* out) const;
  State operator()(const State& y, cplx t) const;

 private:
  friend CompiledField compile(const VectorField& vf, const NumericParams& params);
  std::vector<Var> variables_;
  NumericParams params_;
  VectorField specialized_;
  bool has_eta_ = false;
  std::vector<CompiledFunction> components_;
};

/// Substitutes the parameters exactly and compiles. Throws FlowError for
/// eta in {0, 1} (when the field depends on eta) or when a denominator
/// vanishes identically.
CompiledField compile(const VectorField& vf, const NumericParams& params);

/// Largest relative difference between compiled and exact evaluation at
/// random rational points (phase variables and t).
double agreement(const CompiledField& cf, std::uint64_t seed = 11, int points = 20);

struct ComplexPath {
  std::vector<cplx> waypoints;
  double clearance = 0.0;
  std::vector<cplx> excluded;

  /// Excluded set {0, 1, eta} (or {0, 1} without eta).
  static ComplexPath avoiding_singular_times(std::vector<cplx> waypoints, double clearance,
                                            std::optional<cplx> eta);
  double length() const;
  /// Smallest distance from any segment to an excluded point (inf if none).
  double min_distance() const;
  /// Throws FlowError naming the offending segment.
  void validate() const;
  ComplexPath reversed() const;
};

struct Sample {
  cplx t;
  State y;
  double error = 0.0;  // local error estimate of the step that produced it
};

struct IntegratorStats {
  int accepted = 0;
  int rejected = 0;
  long evaluations = 0;
  double min_step = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;
  /// Index of the sample sitting on each reached waypoint.
  std::vector<std::size_t> waypoint_samples;
  IntegratorStats stats;
  double tolerance = 0.0;
  bool complete = false;
  /// Set when the run stopped early (step collapse, non-finite value).
  std::string diagnostic;

  const State& endpoint() const { return samples.back().y; }
};

struct IntegrateOptions {
  double tol = 1e-10;
  /// Step collapse threshold relative to the path length.
  double min_step_fraction = 1e-13;
  long max_steps = 2000000;
};

/// Adaptive Dormand-Prince 5(4) along each straight segment, parametrized
/// by arclength. A step is accepted when every component's error estimate
/// is below tol * (1 + |y_i|).
Trajectory integrate(const CompiledField& cf, const State& start, const ComplexPath& path,
                     const IntegrateOptions& opt = {});

struct ConvergenceReport {
  std::vector<double> tolerances;
  /// Endpoint distance to the tightest run, per tolerance but the last.
  std::vector<double> drifts;
  double ratio = 0.0;  // drifts[0] / drifts[1]
  bool converged = false;  // ratio >= 2
};

/// Runs tol, tol/4, tol/64 and compares endpoints against the tol/64 run.
ConvergenceReport convergence(const CompiledField& cf, const State& start, const ComplexPath& path,
                              double tol);

double distance(const State& a, const State& b);

/// One trajectory sample per line: t_re, t_im, <var>_re, <var>_im, err.
void write_jsonl(std::ostream& os, const Trajectory& tr, const std::vector<Var>& variables);

struct BacklundNumeric {
  std::string map;
  double max_deviation = 0.0;
  /// Deviation at each compared sample, in path order.
  std::vector<double> deviations;
  std::vector<double> arclength;
  bool ok = false;  // both integrations complete
  std::string diagnostic;
};

/// Integrates the model, maps every sample through `m`, and independently
/// integrates the image system (parameters M alpha + c, eta' and t' from the
/// base action) from the mapped start along the mapped sample times.
/// `image_alpha` overrides the parameter image (control experiments).
BacklundNumeric verify_backlund_numeric(const weyl::BirationalMap& m, models::ModelKind kind,
                                        const NumericParams& params, const State& start,
                                        const ComplexPath& path, double tol,
                                        std::optional<std::vector<Rational>> image_alpha = std::nullopt);

struct EtaLimitRow {
  double eta = 0.0;
  double deviation = 0.0;
};
struct EtaLimitReport {
  std::vector<EtaLimitRow> rows;
  bool monotone = false;
  /// Least-squares slope of -log(deviation) against log(eta).
  double decay_exponent = 0.0;
  std::string diagnostic;
};

/// Endpoint deviation between the coupled system at each eta and the
/// limit system. `alpha` is normalized internally (alpha_0 solved).
EtaLimitReport verify_eta_limit_numeric(const State& start, const std::vector<cplx>& waypoints,
                                        const std::vector<Rational>& alpha,
                                        const std::vector<Rational>& etas, double tol);

struct DivisorFlow {
  std::string label;
  int parameter = 0;
  double max_value = 0.0;  // max |f| along the trajectory
  double bound = 0.0;      // 100 * tol
  bool pass = false;
  std::string diagnostic;
};

/// Sets alpha_row = 0 (renormalizing through another slot), moves the start
/// onto {f = 0} by solving for a phase variable f is linear in, integrates,
/// and tracks |f|.
DivisorFlow divisor_flow(const models::DivisorRow& row, models::ModelKind kind, NumericParams params,
                         State start, const ComplexPath& path, double tol);

}  // namespace painweyl::flow
