#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "painweyl/charts/charts.hpp"
#include "painweyl/flow/flow.hpp"
#include "painweyl/report/report.hpp"
#include "painweyl/singular/singular.hpp"
#include "painweyl/sym/parser.hpp"

namespace {

using namespace painweyl;
using report::ConfigError;

constexpr int kUsage = 2;

struct Common {
  std::string config;
  std::string model;
};

report::RunConfig base_config(const Common& c) {
  report::RunConfig cfg;
  std::string path = c.config;
  if (path.empty())
    if (const char* env = std::getenv(report::kConfigEnv)) path = env;
  if (!path.empty()) cfg = report::load_config(path);
  if (!c.model.empty()) cfg = report::parse_config("model = " + c.model, cfg);
  return cfg;
}

std::string point_string(const std::vector<sym::Binding>& pt) {
  std::string s;
  for (const auto& [x, val] : pt) {
    if (!s.empty()) s += ", ";
    s += std::string(sym::VariableRegistry::name(x)) + " = " + val.to_string();
  }
  return s;
}

int cmd_verify(const std::string& selector, const Common& common, const std::string& json_out,
               std::optional<std::uint64_t> seed, bool exact, bool probabilistic, const std::string& format) {
  auto cfg = base_config(common);
  if (seed) cfg.seed = *seed;
  if (exact) cfg.probabilistic = false;
  if (probabilistic) cfg.probabilistic = true;
  auto results = report::run_suite(selector, cfg);
  auto doc = report::to_json(results, cfg);
  if (format == "json") std::cout << doc.dump(2) << '\n';
  else std::cout << report::to_text(results);
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) throw ConfigError("cannot write '" + json_out + "'");
    out << doc.dump(2) << '\n';
  }
  return report::exit_code(results);
}

int cmd_integrate(const Common& common, const std::string& out_path) {
  auto cfg = base_config(common);
  cfg.validate();
  auto kind = cfg.model.value_or(models::ModelKind::CoupledEta);
  auto vf = models::vector_field(models::build_hamiltonian(kind));
  flow::NumericParams p{cfg.numeric_alpha(kind), cfg.eta};
  auto cf = flow::compile(vf, p);
  std::optional<std::complex<double>> eta;
  if (cf.has_eta()) eta = cfg.eta.get_d();
  auto path = flow::ComplexPath::avoiding_singular_times(cfg.waypoints, cfg.clearance, eta);
  flow::State start(cfg.start.begin(), cfg.start.begin() + static_cast<long>(vf.dimension()));
  auto tr = flow::integrate(cf, start, path, {.tol = cfg.tol});
  if (out_path == "-") {
    flow::write_jsonl(std::cout, tr, vf.variables());
  } else {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write '" + out_path + "'");
    flow::write_jsonl(out, tr, vf.variables());
  }
  std::ostream& log = out_path == "-" ? std::cerr : std::cout;
  log << "model " << models::model_name(kind) << ", " << tr.samples.size() << " samples, " << tr.stats.accepted
      << " accepted / " << tr.stats.rejected << " rejected steps, " << tr.stats.evaluations << " evaluations\n";
  if (!tr.complete) {
    log << "truncated: " << tr.diagnostic << '\n';
    return 1;
  }
  auto conv = flow::convergence(cf, start, path, std::max(cfg.tol, 1e-8));
  log << "convergence: drift " << conv.drifts[0] << " at tol " << conv.tolerances[0] << ", " << conv.drifts[1]
      << " at tol " << conv.tolerances[1] << " (ratio " << conv.ratio << (conv.converged ? ", ok" : ", NOT converging")
      << ")\n";
  return conv.converged ? 0 : 1;
}

int cmd_resolve(const std::string& locus) {
  auto steps = singular::resolution_steps(locus);
  auto res = singular::resolve(locus);
  std::cout << "locus " << res.locus << " -> chart " << res.target_chart << "\n";
  for (const auto& s : steps) {
    std::cout << "  step " << s.transform.name << ": ";
    if (!s.center.empty()) std::cout << "center " << s.center << ", ";
    std::cout << s.direction << "\n";
  }
  std::cout << "composite:\n";
  for (std::size_t i = 0; i < res.composite.target.size(); ++i)
    std::cout << "  " << sym::VariableRegistry::name(res.composite.target[i]) << " = "
              << res.composite.forward[i].to_string() << "\n";
  std::cout << "chart matches: " << (res.chart_matches ? "yes" : "no")
            << "\nsystem matches and is polynomial: " << (res.system_matches ? "yes" : "no") << "\n";
  return res.chart_matches && res.system_matches ? 0 : 1;
}

int cmd_scan(const std::string& chart_name, const std::string& boundary) {
  auto b = singular::parse_boundary(boundary);
  if (!b) throw ConfigError("unknown boundary coordinate '" + boundary + "'");
  auto vf = models::vector_field(models::build_hamiltonian(models::ModelKind::CoupledEta));
  auto rep = singular::scan(charts::chart(chart_name), *b, vf);
  std::cout << "chart " << rep.chart << ", boundary " << sym::VariableRegistry::name(rep.boundary) << " = 0\n";
  for (const auto& c : rep.curves)
    std::cout << "  curve  " << point_string(c.point) << "  [" << c.matches.value_or("unlisted") << "]\n";
  for (const auto& p : rep.isolated)
    std::cout << "  point  " << point_string(p.point) << "  [" << p.on_curve.value_or("off every curve") << "]\n";
  for (const auto& [n, found] : rep.listed) std::cout << "  listed " << n << ": " << (found ? "found" : "MISSING") << "\n";
  std::cout << "complement: " << rep.complement_violations << "/" << rep.complement_points
            << " random boundary points are not accessible\ncomplete: " << (rep.complete ? "yes" : "no") << "\n";
  return rep.complete ? 0 : 1;
}

int cmd_local_index(const std::string& locus_name, const std::string& at) {
  auto l = singular::locus(locus_name);
  if (!at.empty()) {
    auto eq = at.find('=');
    if (eq == std::string::npos || at.substr(0, eq) != "a") throw ConfigError("--at expects a=<rational>");
    auto value = report::parse_number(at.substr(eq + 1));
    for (auto& [x, val] : l.point) val = sym::substitute(val, {{sym::vars::a, value}});
  }
  auto kind = singular::locus_model(l);
  singular::BoundaryChartSystem bcs;
  if (kind == models::ModelKind::CoupledLimit) {
    auto b = models::parameter_bindings(7, models::ParameterMode::Normalized);
    bcs = singular::log_pole_form(charts::chart(l.chart).substituted(b),
                                  models::vector_field(models::build_hamiltonian(kind)).substituted(b), l.boundary);
  } else {
    bcs = singular::log_pole_form(charts::chart(l.chart), models::vector_field(models::build_hamiltonian(kind)),
                                  l.boundary);
  }
  auto check = singular::verify_locus(l, bcs);
  std::cout << "locus " << l.name << " in " << l.chart << ": " << point_string(l.point) << "\n";
  std::cout << "accessible: " << (check.pass ? "yes" : "no " + check.witness) << "\n";
  auto li = singular::local_index(l, bcs);
  std::cout << "singular part:\n" << li.singular_part.to_string() << "\n";
  std::cout << "prefactor: " << li.prefactor.to_string() << "\nmultiset: (";
  for (std::size_t i = 0; i < li.multiset.size(); ++i) std::cout << (i ? "," : "") << li.multiset[i];
  std::cout << ")\n";
  if (li.ordered) {
    std::cout << "ordered: (";
    for (std::size_t i = 0; i < li.ordered->size(); ++i) std::cout << (i ? "," : "") << (*li.ordered)[i];
    std::cout << ")\n";
  }
  std::cout << "semisimple: " << (li.semisimple ? "yes" : "no") << ", integral: " << (li.integral ? "yes" : "no")
            << "\n";
  if (!li.detail.empty()) std::cout << li.detail << "\n";
  return check.pass && li.integral ? 0 : 1;
}

int cmd_chart(const std::string& name, const std::string& push) {
  auto c = charts::chart(name);
  std::cout << "chart " << c.name << "\nforward:\n";
  for (std::size_t i = 0; i < c.target.size(); ++i)
    std::cout << "  " << sym::VariableRegistry::name(c.target[i]) << " = " << c.forward[i].to_string() << "\n";
  std::cout << "inverse:\n";
  for (std::size_t i = 0; i < c.source.size(); ++i)
    std::cout << "  " << sym::VariableRegistry::name(c.source[i]) << " = " << c.inverse[i].to_string() << "\n";
  if (push.empty()) return 0;
  auto kind = models::parse_model_kind(push);
  if (!kind) throw ConfigError("unknown model '" + push + "'");
  auto ps = charts::push_system(c, models::vector_field(models::build_hamiltonian(*kind)));
  std::cout << "pushed " << models::model_name(*kind) << " field (" << (ps.polynomial ? "polynomial" : "not polynomial")
            << "):\n";
  for (std::size_t i = 0; i < ps.field.dimension(); ++i)
    std::cout << "  d" << sym::VariableRegistry::name(ps.field.variables()[i])
              << "/dt = " << ps.field.component(i).to_string() << "\n";
  if (!ps.polynomial) std::cout << "witness: " << ps.witness << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical verification for coupled Painleve VI systems"};
  app.set_version_flag("--version", std::string(report::kVersion));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "Key-value config file (default: $PAINWEYL_CONFIG)");
    sub->add_option("--model", common.model, "coupled-eta | coupled-limit | pvi-eta | pvi-limit");
  };

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string selector, json_out, format = "text";
  std::optional<std::uint64_t> seed;
  bool exact = false, probabilistic = false;
  verify->add_option("selector", selector, "Suite to run")->required()->check(CLI::IsMember(report::selectors()));
  add_common(verify);
  verify->add_option("--json", json_out, "Also write the JSON report to this file");
  verify->add_option("--seed", seed, "RNG seed for probabilistic checks");
  verify->add_option("--format", format, "Stdout format")->check(CLI::IsMember({"text", "json"}));
  auto* ex = verify->add_flag("--exact", exact, "Compose exactly within the size budget");
  verify->add_flag("--probabilistic", probabilistic, "Use random exact points only")->excludes(ex);

  auto* integ = app.add_subcommand("integrate", "Integrate a model along a complex path");
  std::string traj_out;
  add_common(integ);
  integ->add_option("--out", traj_out, "Trajectory JSON lines ('-' for stdout)")->required();

  auto* resolve = app.add_subcommand("resolve", "Blow-up resolution of an accessible locus");
  std::string locus;
  resolve->add_option("--locus", locus, "C4 or C2")->required();

  auto* sing = app.add_subcommand("singular", "Boundary analysis");
  sing->require_subcommand(1);
  auto* scan = sing->add_subcommand("scan", "Scan a boundary divisor for accessible points");
  std::string chart_name, boundary;
  scan->add_option("--chart", chart_name, "Atlas chart, e.g. U3")->required();
  scan->add_option("--boundary", boundary, "Boundary coordinate, e.g. Y3")->required();

  auto* li = app.add_subcommand("local-index", "Local index at an accessible locus");
  std::string at;
  li->add_option("--locus", locus, "Locus name (C0..C4, C2-U4, C1-U6, ...)")->required();
  li->add_option("--at", at, "Fix the free parameter, a=<rational>");

  auto* chart_cmd = app.add_subcommand("chart", "Print a chart and optionally a pushed field");
  std::string push;
  chart_cmd->add_option("--name", chart_name, "Chart name")->required();
  chart_cmd->add_option("--push", push, "Model whose field is pushed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(selector, common, json_out, seed, exact, probabilistic, format);
    if (*integ) return cmd_integrate(common, traj_out);
    if (*resolve) return cmd_resolve(locus);
    if (*scan) return cmd_scan(chart_name, boundary);
    if (*li) return cmd_local_index(locus, at);
    if (*chart_cmd) return cmd_chart(chart_name, push);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const charts::ChartError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const singular::SingularError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const flow::FlowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
