#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "painweyl/models/painleve_models.hpp"
#include "painweyl/sym/sampling.hpp"

namespace painweyl::weyl {

using sym::Point;
using sym::RationalFunction;
using sym::Var;

enum class Family { D6, D4 };

std::string_view family_name(Family f);
std::size_t rank(Family f);  // number of alpha slots: 7 or 5
std::vector<Var> phase_variables(Family f);
models::ModelKind model_kind(Family f);

class WeylError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Birational map on (phase, t, eta, alpha). Components are the images of
/// the phase variables; t and eta map through the base action, and alpha
/// through an integer affine action alpha' = M alpha + c.
struct BirationalMap {
  std::string name;
  Family family = Family::D6;
  std::vector<RationalFunction> components;
  RationalFunction t_image;
  RationalFunction eta_image;
  std::vector<std::vector<long>> param_matrix;
  std::vector<long> param_offset;

  static BirationalMap identity(Family f);
  /// alpha'_i as a rational function of the symbolic alphas.
  std::vector<RationalFunction> parameter_images() const;
  /// Total term count of all components (composition budget).
  std::size_t size() const;
};

/// Generator names: s0..s6, pi1..pi3 (D6); s0..s4, pi1..pi3 (D4).
std::vector<std::string> generator_names(Family f);
BirationalMap generator(Family f, std::string_view name);

/// Applies the map at a rational point. Throws sym::PoleError naming the
/// vanishing denominator factor.
Point apply_map(const BirationalMap& m, const Point& state);

class BudgetExceeded : public WeylError {
 public:
  using WeylError::WeylError;
};

/// Apply `first`, then `second`. Throws BudgetExceeded when the result's
/// size passes `budget` terms.
BirationalMap compose(const BirationalMap& first, const BirationalMap& second,
                      std::size_t budget = 200000);

/// Words are whitespace-separated generator names applied left to right.
std::vector<std::string> parse_word(std::string_view text);
BirationalMap word_map(Family f, std::string_view text, std::size_t budget = 200000);

/// Exact equality of maps, optionally modulo the normalization relation.
bool maps_equal(const BirationalMap& a, const BirationalMap& b,
                models::ParameterMode mode = models::ParameterMode::Free);

struct CheckResult {
  bool pass = false;
  std::string method;  // "exact" or "probabilistic"
  models::ParameterMode mode = models::ParameterMode::Free;
  int points = 0;
  std::string witness;
};

CheckResult check_symplectic(const BirationalMap& m);

/// Chain-rule check that the map sends the field with parameters alpha to
/// the field with parameters alpha', time rescaled by dt'/dt. Exact when
/// the base action fixes t and eta; otherwise at `points` random points.
CheckResult check_equivariance(const BirationalMap& m, const models::VectorField& field,
                               std::uint64_t seed = 1, int points = 20);

struct DynkinGraph {
  std::size_t nodes = 0;
  std::vector<std::pair<int, int>> edges;
  bool adjacent(int i, int j) const;
  static DynkinGraph of(Family f);
};

/// a_ij read from the reflections: alpha_j -> alpha_j - a_ij alpha_i.
std::vector<std::vector<long>> cartan_matrix(Family f);

/// Diagram automorphism of pi: the sigma with pi s_i = s_sigma(i) pi on
/// parameters. nullopt if no such permutation exists.
std::optional<std::vector<int>> diagram_automorphism(const BirationalMap& pi);

struct RelationResult {
  std::string relation;
  bool holds = false;
  std::string method;
  models::ParameterMode mode = models::ParameterMode::Free;
  std::string detail;
};

/// s_i^2, (s_i s_j)^m by adjacency, pi s_i = s_sigma(i) pi, and the order of
/// each pi (reported).
std::vector<RelationResult> check_coxeter(Family f, std::size_t budget = 200000,
                                          std::uint64_t seed = 1);

/// Smallest k <= max_order with m^k = id, computed on random points.
std::optional<int> map_order(const BirationalMap& m, int max_order = 12, std::uint64_t seed = 1);

/// Checks that random points on {source = 0} (with alpha_zeroed = 0 when
/// given) map into {target = 0}.
CheckResult check_divisor_mapping(const BirationalMap& m, const RationalFunction& source,
                                  const RationalFunction& target, std::optional<int> zeroed,
                                  std::uint64_t seed = 1, int points = 20);

/// Random rational state for the family (phase, t, eta, alpha); in
/// normalized mode a0 is solved from the relation.
Point random_state(Family f, sym::RationalSampler& s,
                   models::ParameterMode mode = models::ParameterMode::Free);

}  // namespace painweyl::weyl
