#include "painweyl/report/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "painweyl/sym/parser.hpp"

namespace painweyl::report {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::ProbabilisticPass: return "probabilistic-pass";
    case Status::Reported: return "reported";
  }
  return "fail";
}

Summary summarize(const std::vector<CheckResult>& results) {
  Summary s;
  for (const auto& r : results) {
    switch (r.status) {
      case Status::Pass: ++s.pass; break;
      case Status::Fail: ++s.fail; break;
      case Status::ProbabilisticPass: ++s.probabilistic; break;
      case Status::Reported: ++s.reported; break;
    }
  }
  return s;
}

int exit_code(const std::vector<CheckResult>& results) { return summarize(results).fail == 0 ? 0 : 1; }

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::complex<double>> parse_complex_list(const std::string& key, std::string_view v) {
  std::vector<std::complex<double>> out;
  for (const auto& pair : split(v, ';')) {
    std::string p = pair;
    std::replace(p.begin(), p.end(), ',', ' ');
    std::istringstream is(p);
    std::string re, im;
    is >> re >> im;
    std::string extra;
    if (re.empty() || im.empty() || (is >> extra))
      throw ConfigError(key + ": expected `re,im` pairs separated by ';', got '" + pair + "'");
    out.emplace_back(parse_number(re).get_d(), parse_number(im).get_d());
  }
  return out;
}

std::vector<sym::Rational> parse_number_list(std::string_view v) {
  std::vector<sym::Rational> out;
  for (const auto& x : split(v, ',')) out.push_back(parse_number(x));
  return out;
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long n = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
}

}  // namespace

sym::Rational parse_number(std::string_view text) {
  std::string s = trim(text);
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      sym::Rational n = sym::parse_decimal(trim(s.substr(0, slash)));
      sym::Rational d = sym::parse_decimal(trim(s.substr(slash + 1)));
      if (d == 0) throw ConfigError("zero denominator in '" + s + "'");
      return n / d;
    }
    return sym::parse_decimal(s);
  } catch (const sym::ParseError& e) {
    throw ConfigError("not a number: '" + s + "' (" + e.what() + ")");
  }
}

RunConfig parse_config(std::string_view text, RunConfig cfg) {
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected `key = value`");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "model") {
      if (val == "all") {
        cfg.model.reset();
        continue;
      }
      auto k = models::parse_model_kind(val);
      if (!k) throw ConfigError("model: unknown model '" + val + "'");
      cfg.model = *k;
    } else if (key == "alpha_mode") {
      if (val == "symbolic") cfg.alpha_mode = RunConfig::AlphaMode::Symbolic;
      else if (val == "numeric") cfg.alpha_mode = RunConfig::AlphaMode::Numeric;
      else throw ConfigError("alpha_mode: expected symbolic or numeric");
    } else if (key == "alpha") {
      cfg.alpha = parse_number_list(val);
    } else if (key == "eta") {
      cfg.eta = parse_number(val);
    } else if (key == "points") {
      cfg.points = static_cast<int>(parse_long(key, val));
    } else if (key == "bound") {
      cfg.bound = parse_long(key, val);
    } else if (key == "budget") {
      cfg.budget = static_cast<std::size_t>(parse_long(key, val));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_long(key, val));
    } else if (key == "method") {
      if (val == "exact") cfg.probabilistic = false;
      else if (val == "probabilistic") cfg.probabilistic = true;
      else throw ConfigError("method: expected exact or probabilistic");
    } else if (key == "tol") {
      cfg.tol = parse_double(key, val);
    } else if (key == "clearance") {
      cfg.clearance = parse_double(key, val);
    } else if (key == "waypoints") {
      cfg.waypoints = parse_complex_list(key, val);
    } else if (key == "start") {
      cfg.start = parse_complex_list(key, val);
    } else if (key == "etas") {
      cfg.etas = parse_number_list(val);
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

void RunConfig::validate() const {
  if (eta == 0 || eta == 1) throw ConfigError("eta must avoid {0, 1}");
  for (const auto& e : etas)
    if (e == 0 || e == 1) throw ConfigError("etas must avoid {0, 1}");
  if (points < 1) throw ConfigError("points must be positive");
  if (bound < 1) throw ConfigError("bound must be positive");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (!(clearance > 0.0)) throw ConfigError("clearance must be positive");
  if (waypoints.size() < 2) throw ConfigError("waypoints: at least two are needed");
  if (alpha_mode == AlphaMode::Numeric) {
    if (!model) throw ConfigError("numeric alpha_mode needs a model");
    auto n = models::parameter_count(*model);
    if (alpha.size() != n)
      throw ConfigError("alpha: " + std::string(models::model_name(*model)) + " takes " + std::to_string(n) +
                        " values, got " + std::to_string(alpha.size()));
    auto w = models::normalization_weights(n);
    sym::Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * alpha[i];
    if (s != 1) throw ConfigError("alpha: constrained sum is " + s.get_str() + ", must be 1");
  } else if (!alpha.empty()) {
    throw ConfigError("alpha values need alpha_mode = numeric");
  }
  // P_VI runs use the first two entries.
  std::size_t dim = model && models::parameter_count(*model) == 5 ? 2 : 4;
  if (start.size() < dim) throw ConfigError("start: expected " + std::to_string(dim) + " complex values");
}

std::vector<sym::Rational> RunConfig::numeric_alpha(models::ModelKind kind) const {
  if (alpha_mode == AlphaMode::Numeric && model == kind) return alpha;
  std::vector<sym::Rational> a{0, sym::Rational(1, 3), sym::Rational(-2, 7), sym::Rational(1, 5),
                               sym::Rational(2, 9), sym::Rational(-1, 4), sym::Rational(3, 8)};
  a.resize(models::parameter_count(kind));
  auto w = models::normalization_weights(a.size());
  sym::Rational rest = 1;
  for (std::size_t i = 1; i < a.size(); ++i) rest -= w[i] * a[i];
  a[0] = rest / w[0];
  return a;
}

Json config_echo(const RunConfig& cfg) {
  auto complex_list = [](const std::vector<std::complex<double>>& zs) {
    Json a = Json::array();
    for (auto z : zs) a.push_back({z.real(), z.imag()});
    return a;
  };
  auto rational_list = [](const std::vector<sym::Rational>& rs) {
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(r.get_str());
    return a;
  };
  Json j;
  j["model"] = cfg.model ? std::string(models::model_name(*cfg.model)) : "all";
  j["alpha_mode"] = cfg.alpha_mode == RunConfig::AlphaMode::Symbolic ? "symbolic" : "numeric";
  j["alpha"] = rational_list(cfg.alpha);
  j["eta"] = cfg.eta.get_str();
  j["points"] = cfg.points;
  j["bound"] = cfg.bound;
  j["budget"] = cfg.budget;
  j["seed"] = cfg.seed;
  j["method"] = cfg.probabilistic ? "probabilistic" : "exact";
  j["tol"] = cfg.tol;
  j["clearance"] = cfg.clearance;
  j["waypoints"] = complex_list(cfg.waypoints);
  j["start"] = complex_list(cfg.start);
  j["etas"] = rational_list(cfg.etas);
  return j;
}

Json to_json(const std::vector<CheckResult>& results, const RunConfig& cfg) {
  Json j;
  j["version"] = kVersion;
  j["config"] = config_echo(cfg);
  j["results"] = Json::array();
  for (const auto& r : results) {
    Json e;
    e["id"] = r.id;
    e["anchor"] = r.anchor;
    e["status"] = status_name(r.status);
    e["detail"] = r.detail;
    j["results"].push_back(std::move(e));
  }
  auto s = summarize(results);
  j["summary"] = {{"total", s.total()},
                  {"pass", s.pass},
                  {"fail", s.fail},
                  {"probabilistic_pass", s.probabilistic},
                  {"reported", s.reported}};
  return j;
}

std::string to_text(const std::vector<CheckResult>& results) {
  std::size_t wid = 5;
  for (const auto& r : results) wid = std::max(wid, r.id.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(wid)) << "check" << "  " << std::setw(18) << "status"
     << std::right << std::setw(10) << "ms" << "  detail\n";
  for (const auto& r : results) {
    std::string detail = r.detail.is_object() && r.detail.empty() ? "" : r.detail.dump();
    if (detail.size() > 120) detail = detail.substr(0, 117) + "...";
    os << std::left << std::setw(static_cast<int>(wid)) << r.id << "  " << std::setw(18) << status_name(r.status)
       << std::right << std::setw(10) << std::fixed << std::setprecision(1) << r.duration_ms << "  " << detail
       << "\n";
  }
  auto s = summarize(results);
  os << "summary: " << s.total() << " checks, " << s.pass << " pass, " << s.fail << " fail, " << s.probabilistic
     << " probabilistic-pass, " << s.reported << " reported\n";
  return os.str();
}

}  // namespace painweyl::report
