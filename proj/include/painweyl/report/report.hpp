#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "painweyl/models/painleve_models.hpp"

namespace painweyl::report {

inline constexpr std::string_view kVersion = "0.1.0";
/// Environment variable naming the default config file.
inline constexpr const char* kConfigEnv = "PAINWEYL_CONFIG";

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, ProbabilisticPass, Reported };
std::string_view status_name(Status s);

struct CheckResult {
  std::string id;
  /// Statement the check exercises, or "plumbing".
  std::string anchor;
  Status status = Status::Fail;
  Json detail = Json::object();
  double duration_ms = 0.0;  // text output only; kept out of JSON for determinism
};

struct Summary {
  int pass = 0;
  int fail = 0;
  int probabilistic = 0;
  int reported = 0;
  int total() const { return pass + fail + probabilistic + reported; }
};
Summary summarize(const std::vector<CheckResult>& results);
/// 0 iff no check failed.
int exit_code(const std::vector<CheckResult>& results);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  /// nullopt: every applicable model.
  std::optional<models::ModelKind> model;
  enum class AlphaMode { Symbolic, Numeric } alpha_mode = AlphaMode::Symbolic;
  /// Numeric alpha values (numeric mode); must satisfy the normalization.
  std::vector<sym::Rational> alpha;
  sym::Rational eta{-2};
  int points = 20;
  long bound = 10000;
  std::size_t budget = 200000;
  std::uint64_t seed = 1;
  /// Skip exact composition and go straight to random points.
  bool probabilistic = false;

  double tol = 1e-10;
  double clearance = 0.1;
  std::vector<std::complex<double>> waypoints{{0.5, 0.5}, {1.5, 0.5}};
  std::vector<std::complex<double>> start{{0.3, 0.2}, {0.4, -0.1}, {0.7, 0.3}, {-0.2, 0.5}};
  std::vector<sym::Rational> etas{100, 1000, 10000};

  /// Throws ConfigError.
  void validate() const;
  /// Numeric alphas for a model: the configured ones in numeric mode for
  /// that model, otherwise a fixed generic normalized choice.
  std::vector<sym::Rational> numeric_alpha(models::ModelKind kind) const;
};

/// Key-value text: `key = value` per line, `#` comments. Numbers are
/// decimal strings or p/q; complex lists are `re,im; re,im; ...`.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
sym::Rational parse_number(std::string_view text);

Json config_echo(const RunConfig& cfg);

Json to_json(const std::vector<CheckResult>& results, const RunConfig& cfg);
/// Fixed-width table, one row per check, then the summary.
std::string to_text(const std::vector<CheckResult>& results);

const std::vector<std::string>& selectors();
bool valid_selector(std::string_view s);

/// Runs the checks behind a selector. "all" runs every suite, each in its
/// own job; results keep selector order.
std::vector<CheckResult> run_suite(std::string_view selector, const RunConfig& cfg);

}  // namespace painweyl::report
