#include <chrono>
#include <functional>
#include <future>

#include "painweyl/charts/charts.hpp"
#include "painweyl/flow/flow.hpp"
#include "painweyl/report/report.hpp"
#include "painweyl/singular/singular.hpp"
#include "painweyl/sym/parser.hpp"
#include "painweyl/sym/sampling.hpp"
#include "painweyl/weyl/weyl_actions.hpp"

namespace painweyl::report {

namespace {

namespace v = sym::vars;
using models::ModelKind;
using models::ParameterMode;
using sym::RationalFunction;
using weyl::Family;

constexpr std::size_t kWitnessLimit = 2000;

std::string clip(std::string s) {
  if (s.size() > kWitnessLimit) s = s.substr(0, kWitnessLimit) + "...";
  return s;
}

std::string mode_str(ParameterMode m) { return std::string(models::mode_name(m)); }

Status pass_if(bool ok) { return ok ? Status::Pass : Status::Fail; }

/// Collects results; each check is timed and an exception becomes a fail.
class Runner {
 public:
  void add(std::string id, std::string anchor, const std::function<std::pair<Status, Json>()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    try {
      auto [st, detail] = fn();
      r.status = st;
      r.detail = std::move(detail);
    } catch (const std::exception& e) {
      r.status = Status::Fail;
      r.detail = {{"error", clip(e.what())}};
    }
    r.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  }
  std::vector<CheckResult> results;
};

std::vector<Family> families(const RunConfig& cfg) {
  if (!cfg.model) return {Family::D6, Family::D4};
  bool coupled = models::parameter_count(*cfg.model) == 7;
  return {coupled ? Family::D6 : Family::D4};
}

std::string family_anchor(Family f) {
  return f == Family::D6 ? "backlund-symmetry-coupled" : "backlund-symmetry-pvi";
}

std::string fam(Family f) { return std::string(weyl::family_name(f)); }

models::VectorField field(ModelKind k) { return models::vector_field(models::build_hamiltonian(k)); }

bool fields_equal(const models::VectorField& a, const models::VectorField& b) {
  if (a.dimension() != b.dimension()) return false;
  for (std::size_t i = 0; i < a.dimension(); ++i)
    if (!(a.component(i) == b.component(i))) return false;
  return true;
}

Json to_json(const std::vector<long>& v) {
  Json a = Json::array();
  for (long x : v) a.push_back(x);
  return a;
}

Json point_json(const std::vector<sym::Binding>& pt) {
  Json j = Json::object();
  for (const auto& [x, val] : pt) j[std::string(sym::VariableRegistry::name(x))] = val.to_string();
  return j;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> symplectic_suite(const RunConfig& cfg) {
  Runner r;
  for (auto f : families(cfg)) {
    for (const auto& name : weyl::generator_names(f)) {
      r.add("symplectic." + fam(f) + "." + name, family_anchor(f), [&] {
        auto c = weyl::check_symplectic(weyl::generator(f, name));
        Json d{{"method", c.method}};
        if (!c.pass) d["witness"] = clip(c.witness);
        return std::pair{pass_if(c.pass), d};
      });
    }
  }
  return r.results;
}

std::vector<CheckResult> coxeter_suite(const RunConfig& cfg) {
  Runner r;
  std::size_t budget = cfg.probabilistic ? 0 : cfg.budget;
  for (auto f : families(cfg)) {
    std::string anchor = f == Family::D6 ? "affine-weyl-relations-d6" : "affine-weyl-relations-d4";
    auto t0 = std::chrono::steady_clock::now();
    auto rels = weyl::check_coxeter(f, budget, cfg.seed);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& rel : rels) {
      CheckResult c;
      c.id = "coxeter." + fam(f) + "." + rel.relation;
      c.anchor = anchor;
      c.duration_ms = ms / static_cast<double>(rels.size());
      c.detail = {{"method", rel.method}, {"mode", mode_str(rel.mode)}};
      if (!rel.detail.empty()) c.detail["detail"] = clip(rel.detail);
      if (rel.relation.rfind("order(", 0) == 0) {
        // The orders of the diagram automorphisms are computed, not asserted.
        c.status = rel.holds ? Status::Reported : Status::Fail;
        c.detail.erase("detail");
        c.detail["order"] = rel.detail;
      } else if (!rel.holds) {
        c.status = Status::Fail;
      } else {
        c.status = rel.method == "exact" ? Status::Pass : Status::ProbabilisticPass;
      }
      r.results.push_back(std::move(c));
    }
    for (const auto& name : weyl::generator_names(f)) {
      if (name.rfind("pi", 0) != 0) continue;
      r.add("coxeter." + fam(f) + ".sigma(" + name + ")", anchor, [&] {
        auto s = weyl::diagram_automorphism(weyl::generator(f, name));
        if (!s) return std::pair{Status::Fail, Json{{"detail", "no permutation matches"}}};
        Json perm = Json::array();
        for (int k : *s) perm.push_back(k);
        return std::pair{Status::Reported, Json{{"sigma", perm}}};
      });
    }
  }
  return r.results;
}

std::vector<CheckResult> equivariance_suite(const RunConfig& cfg) {
  Runner r;
  for (auto f : families(cfg)) {
    auto vf = field(weyl::model_kind(f));
    for (const auto& name : weyl::generator_names(f)) {
      r.add("equivariance." + fam(f) + "." + name, family_anchor(f), [&] {
        auto c = weyl::check_equivariance(weyl::generator(f, name), vf, cfg.seed, cfg.points);
        Json d{{"method", c.method}, {"mode", mode_str(c.mode)}};
        if (c.method != "exact") d["points"] = c.points;
        if (!c.pass) {
          d["witness"] = clip(c.witness);
          return std::pair{Status::Fail, d};
        }
        return std::pair{c.method == "exact" ? Status::Pass : Status::ProbabilisticPass, d};
      });
    }
  }
  return r.results;
}

std::vector<CheckResult> charts_suite(const RunConfig& cfg) {
  Runner r;
  using charts::ConditionSet;
  for (auto s : {ConditionSet::R, ConditionSet::RPrime, ConditionSet::Pvi}) {
    auto kind = charts::condition_model(s);
    if (cfg.model && models::parameter_count(*cfg.model) != models::parameter_count(kind)) continue;
    std::string anchor = s == ConditionSet::R        ? "holomorphy-conditions-coupled"
                         : s == ConditionSet::RPrime ? "holomorphy-conditions-limit"
                                                     : "holomorphy-conditions-pvi";
    auto paths = charts::condition_paths(s);
    auto vf = field(kind);
    for (const auto& path : paths) {
      std::string name = path.back().name;
      if (path.size() > 1) {
        name.clear();
        for (const auto& c : path) name += (name.empty() ? "" : "+") + c.name;
      }
      r.add("charts." + std::string(charts::condition_set_name(s)) + "." + name, anchor, [&] {
        auto e = charts::verify_chart(path, vf, models::parameter_count(kind));
        Json d{{"polynomial", e.polynomial}, {"hamiltonian", e.hamiltonian}, {"mode", mode_str(e.mode)}};
        if (!e.witness.empty()) d["witness"] = clip(e.witness);
        return std::pair{pass_if(e.polynomial && e.hamiltonian), d};
      });
    }
  }
  for (const auto& n : charts::chart_names()) {
    r.add("charts.round-trip." + n, "plumbing", [&] {
      auto rt = charts::check_round_trip(charts::chart(n));
      return std::pair{pass_if(rt.forward_inverse && rt.inverse_forward),
                       Json{{"forward_inverse", rt.forward_inverse}, {"inverse_forward", rt.inverse_forward}}};
    });
  }
  if (!cfg.model || models::parameter_count(*cfg.model) == 7) {
    r.add("charts.atlas-swap", "initial-space-atlas", [&] {
      auto sw = charts::atlas_swap_closure();
      Json d = Json::object();
      bool closed = true;
      for (const auto& s : sw) {
        d["U" + std::to_string(s.from)] = s.to < 0 ? Json(nullptr) : Json("U" + std::to_string(s.to));
        closed = closed && s.to >= 0 && sw[static_cast<std::size_t>(s.to)].to == s.from;
      }
      return std::pair{pass_if(closed), d};
    });
  }
  return r.results;
}

std::vector<CheckResult> divisors_suite(const RunConfig& cfg) {
  Runner r;
  struct Table {
    ModelKind kind;
    std::vector<models::DivisorRow> rows;
    std::string anchor;
  };
  std::vector<Table> tables;
  for (auto f : families(cfg)) {
    if (f == Family::D6) tables.push_back({ModelKind::CoupledEta, models::coupled_divisor_table(), "invariant-divisors-coupled"});
    else tables.push_back({ModelKind::PviEta, models::pvi_divisor_table(), "invariant-divisors-pvi"});
  }
  for (const auto& t : tables) {
    auto vf = field(t.kind);
    for (const auto& row : t.rows) {
      r.add("divisors." + std::string(models::model_name(t.kind)) + "." + row.label, t.anchor, [&] {
        auto c = models::check_invariant_divisor(vf, row.divisor, row.parameter, models::parameter_count(t.kind));
        Json d{{"alpha", row.parameter}, {"mode", mode_str(c.mode)}};
        if (!c.pass) d["witness"] = clip(c.witness);
        return std::pair{pass_if(c.pass), d};
      });
    }
  }
  return r.results;
}

std::vector<CheckResult> limit_suite(const RunConfig& cfg) {
  Runner r;
  struct Pair {
    ModelKind from, to;
  };
  std::vector<Pair> pairs;
  for (auto f : families(cfg)) {
    if (f == Family::D6) pairs.push_back({ModelKind::CoupledEta, ModelKind::CoupledLimit});
    else pairs.push_back({ModelKind::PviEta, ModelKind::PviLimit});
  }
  for (auto [from, to] : pairs) {
    r.add("limit." + std::string(models::model_name(from)), "eta-degeneration", [&] {
      auto lim = models::eta_limit(field(from));
      auto target = field(to);
      auto n = models::parameter_count(from);
      if (fields_equal(lim, target)) return std::pair{Status::Pass, Json{{"mode", "free"}}};
      auto b = models::parameter_bindings(n, ParameterMode::Normalized);
      bool norm = fields_equal(lim.substituted(b), target.substituted(b));
      Json d{{"mode", norm ? "normalized" : "none"}};
      for (std::size_t i = 0; i < lim.dimension(); ++i) {
        auto diff = lim.component(i) - target.component(i);
        if (!diff.is_zero()) {
          d["free_difference"] = {{"component", i}, {"value", clip(diff.to_string())}};
          break;
        }
      }
      return std::pair{pass_if(norm), d};
    });
  }
  return r.results;
}

std::vector<CheckResult> ode_suite(const RunConfig& cfg) {
  Runner r;
  if (cfg.model && models::parameter_count(*cfg.model) != 5) return {};
  for (auto k : {ModelKind::PviLimit, ModelKind::PviEta}) {
    auto groups = std::make_shared<std::vector<models::OdeGroupComparison>>();
    std::string base = "ode." + std::string(models::model_name(k));
    r.add(base + ".reduction", "second-order-pvi", [&] {
      *groups = models::compare_ode_groups(models::second_order_reduction(models::build_hamiltonian(k)),
                                           models::printed_second_order_ode(k));
      return std::pair{pass_if(groups->size() == 3), Json{{"groups", groups->size()}}};
    });
    for (const auto& g : *groups) {
      std::string id = base + ".qd^" + std::to_string(g.power);
      r.add(id, "second-order-pvi", [&] {
        Json d{{"matches", g.matches}, {"matches_normalized", g.matches_normalized}};
        if (g.matches) return std::pair{Status::Pass, d};
        d["residual"] = clip(g.difference.to_string());
        // Only the parameter-only group may carry a residual; it is surfaced, never passed.
        if (g.power == 0) return std::pair{Status::Reported, d};
        return std::pair{Status::Fail, d};
      });
    }
  }
  return r.results;
}

std::vector<CheckResult> wedge_suite(const RunConfig&) {
  Runner r;
  auto w = [](const std::string& n) { return charts::wedge_factor(charts::chart(n)); };
  for (std::string n : {"U1", "U2", "U5"}) {
    r.add("wedge." + n, "atlas-wedge-factors", [&] {
      auto f = w(n);
      return std::pair{pass_if(f == RationalFunction(1)), Json{{"factor", f.to_string()}}};
    });
  }
  r.add("wedge.U3", "atlas-wedge-factors", [&] {
    auto f = w("U3");
    return std::pair{pass_if(f == sym::parse_expression("-1/p1^3")), Json{{"factor", f.to_string()}}};
  });
  for (auto [big, small] : {std::pair{"U6", "U1"}, std::pair{"U8", "U5"}}) {
    r.add(std::string("wedge.") + big + "-relative-" + small, "atlas-wedge-factors", [&] {
      auto y = charts::chart(small).forward[1];
      auto expect = -(RationalFunction(1) / y.pow(3)) * w(small);
      auto f = w(big);
      return std::pair{pass_if(f == expect), Json{{"factor", f.to_string()}, {"expected", expect.to_string()}}};
    });
  }
  r.add("wedge.all", "atlas-wedge-factors", [&] {
    Json d = Json::object();
    for (int j = 0; j <= 11; ++j) d["U" + std::to_string(j)] = w("U" + std::to_string(j)).to_string();
    return std::pair{Status::Reported, d};
  });
  return r.results;
}

singular::BoundaryChartSystem bcs_for(const singular::AccessibleLocus& l) {
  auto kind = singular::locus_model(l);
  if (kind == ModelKind::CoupledLimit) {
    auto b = models::parameter_bindings(7, ParameterMode::Normalized);
    return singular::log_pole_form(charts::chart(l.chart).substituted(b), field(kind).substituted(b), l.boundary);
  }
  return singular::log_pole_form(charts::chart(l.chart), field(kind), l.boundary);
}

std::vector<CheckResult> singular_suite(const RunConfig& cfg) {
  Runner r;
  if (cfg.model && models::parameter_count(*cfg.model) != 7) return {};
  for (const auto& n : singular::locus_names()) {
    r.add("singular.accessible." + n, "accessible-singularities", [&] {
      auto l = singular::locus(n);
      auto bcs = bcs_for(l);
      auto c = singular::verify_locus(l, bcs);
      Json d{{"chart", l.chart}, {"point", point_json(l.point)},
             {"mode", singular::locus_model(l) == ModelKind::CoupledLimit ? "normalized" : "free"}};
      if (!c.pass) d["witness"] = clip(c.witness);
      return std::pair{pass_if(bcs.admissible && c.pass), d};
    });
  }
  auto vf = field(ModelKind::CoupledEta);
  for (auto [chart, b] : {std::pair{std::string("U3"), v::y}, std::pair{std::string("U4"), v::w}}) {
    auto rep = std::make_shared<singular::ScanReport>();
    r.add("singular.scan." + chart, "accessible-singularities", [&] {
      *rep = singular::scan(charts::chart(chart), b, vf, cfg.seed);
      Json listed = Json::object();
      for (const auto& [name, found] : rep->listed) listed[name] = found;
      Json curves = Json::array();
      for (const auto& c : rep->curves) curves.push_back({{"point", point_json(c.point)}, {"matches", c.matches ? Json(*c.matches) : Json(nullptr)}});
      return std::pair{pass_if(rep->complete),
                       Json{{"listed", listed}, {"curves", curves},
                            {"complement", std::to_string(rep->complement_violations) + "/" + std::to_string(rep->complement_points)}}};
    });
    r.add("singular.scan." + chart + ".isolated", "accessible-singularities", [&] {
      Json pts = Json::array();
      for (const auto& p : rep->isolated)
        pts.push_back({{"point", point_json(p.point)}, {"on_curve", p.on_curve ? Json(*p.on_curve) : Json(nullptr)}});
      return std::pair{Status::Reported, Json{{"points", pts}}};
    });
  }
  r.add("singular.c1-to-cinf", "infinite-eta-locus", [&] {
    auto lr = singular::c1_cinf_limit();
    bool ok = lr.c1_accessible_u6 && lr.c1_accessible_u8 && lr.cinf_accessible_u6 && lr.cinf_accessible_u8 &&
              lr.binding_limit;
    return std::pair{pass_if(ok), Json{{"c1_mode", mode_str(lr.c1_mode)}, {"cinf_mode", mode_str(lr.cinf_mode)},
                                       {"emendation", lr.emendation}}};
  });
  return r.results;
}

std::vector<CheckResult> local_index_suite(const RunConfig& cfg) {
  Runner r;
  if (cfg.model && models::parameter_count(*cfg.model) != 7) return {};
  struct Row {
    std::string locus;
    std::vector<long> printed;
  };
  const std::vector<Row> rows{{"C0", {2, 1, 0, 1}}, {"C1", {2, 1, 0, 1}}, {"C2-U4", {0, 1, 2, 1}},
                              {"C3", {0, 1, 2, 1}}, {"C4", {0, 1, 2, 1}}};
  for (const auto& row : rows) {
    r.add("local-index." + row.locus, "local-index-table", [&] {
      auto l = singular::locus(row.locus);
      auto li = singular::local_index(l, bcs_for(l), cfg.seed);
      auto sorted = row.printed;
      std::sort(sorted.begin(), sorted.end());
      bool ordered_ok = !li.ordered || *li.ordered == row.printed;
      Json d{{"printed", to_json(row.printed)}, {"multiset", to_json(li.multiset)},
             {"ordered", li.ordered ? to_json(*li.ordered) : Json(nullptr)},
             {"prefactor", li.prefactor.to_string()}, {"semisimple", li.semisimple},
             {"depends_on_a", li.prefactor.depends_on(v::a)}};
      if (!li.detail.empty()) d["detail"] = clip(li.detail);
      return std::pair{pass_if(li.integral && li.multiset == sorted && ordered_ok), d};
    });
  }
  r.add("local-index.diagonal-example", "local-index-diagonal-example", [&] {
    auto l = singular::locus("C0");
    for (auto& [x, val] : l.point)
      if (x == v::z) val = 0;
    auto li = singular::local_index(l, bcs_for(l), cfg.seed);
    auto expect = sym::RFMatrix::from_integers({{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}});
    bool ok = li.singular_part == expect && li.prefactor == RationalFunction(1);
    return std::pair{pass_if(ok), Json{{"prefactor", li.prefactor.to_string()},
                                       {"ordered", li.ordered ? to_json(*li.ordered) : Json(nullptr)}}};
  });
  r.add("local-index.conjugated-example", "local-index-conjugated-example", [&] {
    auto l = singular::locus("C2-U4");
    for (auto& [x, val] : l.point)
      if (val == RationalFunction::variable(v::a)) val = 0;
    auto li = singular::local_index(l, bcs_for(l), cfg.seed);
    auto c = sym::parse_expression("eta/((t-1)*(t-eta))");
    auto printed = sym::RFMatrix::from_integers({{2, 0, -2, 0}, {-2, 1, 2, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}});
    auto q = sym::RFMatrix::from_integers({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 1, 0}, {2, 1, -2, 0}});
    bool prefactor = li.prefactor == c;
    bool matrix = li.singular_part == printed.scaled(c);
    bool diag = q * printed * q.inverse() ==
                sym::RFMatrix::from_integers({{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}});
    return std::pair{pass_if(prefactor && matrix && diag),
                     Json{{"prefactor", li.prefactor.to_string()}, {"matrix", matrix}, {"q_diagonalizes", diag},
                          {"multiset", to_json(li.multiset)}}};
  });
  return r.results;
}

std::vector<CheckResult> resolve_suite(const RunConfig& cfg) {
  Runner r;
  if (cfg.model && models::parameter_count(*cfg.model) != 7) return {};
  for (std::string n : {"C4", "C2"}) {
    r.add("resolve." + n, "blow-up-resolution", [&] {
      auto res = singular::resolve(n);
      Json steps = Json::array();
      for (const auto& s : res.steps) steps.push_back(s);
      return std::pair{pass_if(res.chart_matches && res.system_matches),
                       Json{{"target", res.target_chart}, {"chart_matches", res.chart_matches},
                            {"system_matches", res.system_matches}, {"steps", steps}}};
    });
  }
  return r.results;
}

flow::State start_for(const RunConfig& cfg, std::size_t dim) {
  return flow::State(cfg.start.begin(), cfg.start.begin() + static_cast<long>(dim));
}

std::vector<CheckResult> numeric_suite(const RunConfig& cfg) {
  Runner r;
  const double bound = 100.0 * cfg.tol;
  std::vector<ModelKind> kinds;
  for (auto f : families(cfg)) {
    if (f == Family::D6) kinds.insert(kinds.end(), {ModelKind::CoupledEta, ModelKind::CoupledLimit});
    else kinds.insert(kinds.end(), {ModelKind::PviEta, ModelKind::PviLimit});
  }
  for (auto k : kinds) {
    r.add("numeric.compile." + std::string(models::model_name(k)), "plumbing", [&] {
      flow::NumericParams p{cfg.numeric_alpha(k), cfg.eta};
      double rel = flow::agreement(flow::compile(field(k), p), cfg.seed, 20);
      return std::pair{pass_if(rel <= 1e-12), Json{{"max_relative", rel}, {"points", 20}}};
    });
  }

  for (auto f : families(cfg)) {
    auto kind = weyl::model_kind(f);
    flow::NumericParams p{cfg.numeric_alpha(kind), cfg.eta};
    auto path = flow::ComplexPath::avoiding_singular_times(cfg.waypoints, cfg.clearance, cfg.eta.get_d());
    auto start = start_for(cfg, kind == ModelKind::CoupledEta ? 4 : 2);
    auto names = weyl::generator_names(f);
    std::vector<std::future<std::pair<flow::BacklundNumeric, double>>> jobs;
    for (const auto& name : names) {
      jobs.push_back(std::async(std::launch::async, [&, name] {
        auto t0 = std::chrono::steady_clock::now();
        auto res = flow::verify_backlund_numeric(weyl::generator(f, name), kind, p, start, path, cfg.tol);
        return std::pair{res, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()};
      }));
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      CheckResult c;
      c.id = "numeric.backlund." + fam(f) + "." + names[i];
      c.anchor = family_anchor(f);
      try {
        auto [res, ms] = jobs[i].get();
        c.duration_ms = ms;
        c.status = pass_if(res.ok && res.max_deviation < bound);
        c.detail = {{"max_deviation", res.max_deviation}, {"bound", bound}, {"samples", res.deviations.size()}};
        if (!res.diagnostic.empty()) c.detail["diagnostic"] = res.diagnostic;
      } catch (const std::exception& e) {
        c.status = Status::Fail;
        c.detail = {{"error", clip(e.what())}};
      }
      r.results.push_back(std::move(c));
    }
    if (f == Family::D6) {
      r.add("numeric.backlund.D6.s4-wrong-image", "plumbing", [&] {
        auto res = flow::verify_backlund_numeric(weyl::generator(f, "s4"), kind, p, start, path, cfg.tol, p.alpha);
        if (!res.ok) return std::pair{Status::Fail, Json{{"diagnostic", res.diagnostic}}};
        std::size_t mid = res.deviations.size() / 2;
        bool grows = res.deviations.back() > res.deviations[mid] && res.deviations[mid] > res.deviations[mid / 4] &&
                     res.max_deviation > 1e3 * bound;
        return std::pair{pass_if(grows), Json{{"quarter", res.deviations[mid / 4]},
                                              {"mid", res.deviations[mid]},
                                              {"end", res.deviations.back()}}};
      });
      r.add("numeric.convergence." + std::string(models::model_name(kind)), "plumbing", [&] {
        auto conv = flow::convergence(flow::compile(field(kind), p), start, path, 1e-6);
        return std::pair{pass_if(conv.converged),
                         Json{{"tolerances", conv.tolerances}, {"drifts", conv.drifts}, {"ratio", conv.ratio}}};
      });
      r.add("numeric.eta-limit", "eta-degeneration", [&] {
        auto rep = flow::verify_eta_limit_numeric(start, cfg.waypoints, p.alpha, cfg.etas, cfg.tol);
        Json rows = Json::array();
        for (const auto& row : rep.rows) rows.push_back({{"eta", row.eta}, {"deviation", row.deviation}});
        Json d{{"rows", rows}, {"monotone", rep.monotone}, {"decay_exponent", rep.decay_exponent}};
        if (!rep.diagnostic.empty()) d["diagnostic"] = rep.diagnostic;
        return std::pair{pass_if(rep.diagnostic.empty() && rep.monotone), d};
      });
      for (const auto& row : models::coupled_divisor_table()) {
        r.add("numeric.divisor." + row.label, "invariant-divisors-coupled", [&] {
          auto res = flow::divisor_flow(row, kind, p, start, path, cfg.tol);
          Json d{{"max_value", res.max_value}, {"bound", res.bound}};
          if (!res.diagnostic.empty()) d["diagnostic"] = res.diagnostic;
          return std::pair{pass_if(res.pass), d};
        });
      }
    }
  }
  return r.results;
}

std::vector<CheckResult> kernel_suite(const RunConfig& cfg) {
  Runner r;
  const int n = std::max(100, cfg.points);
  using sym::ExpressionSampler;
  r.add("kernel.field-axioms", "plumbing", [&] {
    ExpressionSampler g(cfg.seed);
    int bad = 0;
    for (int i = 0; i < n; ++i) {
      auto a = g.rational_function(), b = g.rational_function(), c = g.rational_function();
      bool ok = (a + b) + c == a + (b + c) && a * (b + c) == a * b + a * c && a * b == b * a &&
                (a / b) * b == a && a - a == RationalFunction(0);
      bad += !ok;
    }
    return std::pair{pass_if(bad == 0), Json{{"samples", n}, {"violations", bad}}};
  });
  r.add("kernel.derivation-axioms", "plumbing", [&] {
    ExpressionSampler g(cfg.seed + 1);
    int bad = 0;
    auto d = [](const RationalFunction& x) { return sym::partial_derivative(x, v::q1); };
    for (int i = 0; i < n; ++i) {
      auto f = g.rational_function(), h = g.rational_function();
      bool ok = d(f + h) == d(f) + d(h) && d(f * h) == f * d(h) + h * d(f) &&
                sym::partial_derivative(d(f), v::t) == d(sym::partial_derivative(f, v::t));
      bad += !ok;
    }
    return std::pair{pass_if(bad == 0), Json{{"samples", n}, {"violations", bad}}};
  });
  r.add("kernel.substitution-homomorphism", "plumbing", [&] {
    ExpressionSampler g(cfg.seed + 2);
    int bad = 0, done = 0, skipped = 0;
    while (done < n) {
      auto f = g.rational_function(), h = g.rational_function();
      std::vector<sym::Binding> b{{v::q1, g.rational_function()}, {v::t, g.rational_function()}};
      try {
        bool ok = sym::substitute(f * h, b) == sym::substitute(f, b) * sym::substitute(h, b) &&
                  sym::substitute(f + h, b) == sym::substitute(f, b) + sym::substitute(h, b);
        bad += !ok;
        ++done;
      } catch (const sym::DivisionByZero&) {
        ++skipped;
      }
    }
    return std::pair{pass_if(bad == 0), Json{{"samples", n}, {"violations", bad}, {"redrawn", skipped}}};
  });
  r.add("kernel.divide-round-trip", "plumbing", [&] {
    ExpressionSampler g(cfg.seed + 3);
    int bad = 0, rejected = 0;
    for (int i = 0; i < n; ++i) {
      auto a = g.polynomial(), d = g.polynomial(3, 2);
      auto prod = a * d;
      auto q = sym::exact_divide(prod, d);
      if (!q || !(*q * d == prod)) ++bad;
      auto perturbed = prod + g.polynomial(2, 1);
      if (auto r2 = sym::exact_divide(perturbed, d)) {
        if (!(*r2 * d == perturbed)) ++bad;
      } else {
        ++rejected;
      }
    }
    return std::pair{pass_if(bad == 0 && rejected > 0), Json{{"samples", n}, {"violations", bad}, {"non_divisible", rejected}}};
  });
  return r.results;
}

using Suite = std::vector<CheckResult> (*)(const RunConfig&);

const std::vector<std::pair<std::string, Suite>>& suite_table() {
  static const std::vector<std::pair<std::string, Suite>> t = {
      {"kernel", kernel_suite},         {"symplectic", symplectic_suite},
      {"coxeter", coxeter_suite},       {"equivariance", equivariance_suite},
      {"charts", charts_suite},         {"divisors", divisors_suite},
      {"limit", limit_suite},           {"ode", ode_suite},
      {"wedge", wedge_suite},           {"singular", singular_suite},
      {"local-index", local_index_suite}, {"resolve", resolve_suite},
      {"numeric", numeric_suite},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& selectors() {
  static const std::vector<std::string> s = [] {
    std::vector<std::string> out{"all"};
    for (const auto& [n, _] : suite_table()) out.push_back(n);
    return out;
  }();
  return s;
}

bool valid_selector(std::string_view s) {
  return std::find(selectors().begin(), selectors().end(), s) != selectors().end();
}

std::vector<CheckResult> run_suite(std::string_view selector, const RunConfig& cfg) {
  if (!valid_selector(selector)) throw ConfigError("unknown selector '" + std::string(selector) + "'");
  cfg.validate();
  if (selector != "all") {
    for (const auto& [n, fn] : suite_table())
      if (n == selector) return fn(cfg);
  }
  std::vector<std::future<std::vector<CheckResult>>> jobs;
  for (const auto& [n, fn] : suite_table()) jobs.push_back(std::async(std::launch::async, fn, std::cref(cfg)));
  std::vector<CheckResult> out;
  for (auto& j : jobs) {
    auto part = j.get();
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace painweyl::report
