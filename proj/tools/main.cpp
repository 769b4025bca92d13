// infodesign: command-line front end.
// Exit codes: 0 ok, 2 config, 3 infeasible, 4 verification failed, 5 internal.
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "infodesign/geometry.hpp"
#include "infodesign/implications.hpp"
#include "infodesign/io.hpp"
#include "infodesign/manyvalues.hpp"
#include "infodesign/mechanisms.hpp"
#include "infodesign/oracle.hpp"
#include "infodesign/payoffs.hpp"
#include "infodesign/persuasion.hpp"
#include "infodesign/rational.hpp"
#include "infodesign/uniform.hpp"

using namespace infodesign;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kConfig = 2, kInfeasible = 3, kVerification = 4, kInternal = 5 };

struct RunConfig {
  double low = 1.0;
  double high = 3.0;
  std::string dist = "uniform";
  std::size_t grid = 2001;
  std::size_t directions = 720;
  std::string format = "csv";
  std::string out;
};

// Error raised by the front end itself, carrying its exit code.
struct CliFailure {
  int code;
  std::string message;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfeasibleConstraints:
    case ErrorCode::NoEfficientSignalFound:
    case ErrorCode::NotBayesPlausible:
    case ErrorCode::ZeroProbabilityRealization:
      return kInfeasible;
    case ErrorCode::NotIncentiveCompatible:
      return kVerification;
    default:
      return kConfig;
  }
}

void add_market(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--L", cfg.low, "low buyer value")->capture_default_str();
  cmd->add_option("--H", cfg.high, "high buyer value")->capture_default_str();
}

void add_solver(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--dist", cfg.dist, "type distribution literal")->capture_default_str();
  cmd->add_option("--grid", cfg.grid, "belief grid size")->capture_default_str();
  cmd->add_option("--directions", cfg.directions, "support directions")->capture_default_str();
}

void add_output(CLI::App* cmd, RunConfig& cfg, std::vector<std::string> formats) {
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember(std::move(formats)))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out, "output file (default stdout)");
}

// Writes to --out or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw CliFailure{kConfig, "cannot open output file " + path};
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json point_json(const WelfareOutcome& p) { return json::array({p.buyer_surplus, p.seller_profit}); }

std::vector<io::LabeledPoint> labeled(const std::string& which, const std::vector<WelfareOutcome>& pts) {
  std::vector<io::LabeledPoint> rows;
  for (const auto& p : pts) rows.push_back({which, p});
  return rows;
}

void append(std::vector<io::LabeledPoint>& rows, const std::vector<io::LabeledPoint>& more) {
  rows.insert(rows.end(), more.begin(), more.end());
}

void emit_rows(const RunConfig& cfg, const std::vector<io::LabeledPoint>& rows) {
  Sink sink(cfg.out);
  if (cfg.format == "json") {
    json j = json::object();
    for (const auto& r : rows) j[r.which].push_back(point_json(r.point));
    sink.stream() << j.dump(2) << '\n';
  } else {
    io::write_figure_csv(sink.stream(), rows);
  }
}

std::vector<io::LabeledPoint> baseline_rows(const Market& mkt, const TypeDistribution& dist) {
  const auto b = baselines(mkt, dist);
  return {{"pi_floor", {0.0, b.pi_floor}},
          {"w_bar", {0.0, b.w_bar}},
          {"rent_gap", {b.w_bar - b.pi_floor, b.pi_floor}}};
}

int cmd_surplus_set(const RunConfig& cfg, const std::string& certificates) {
  const Market mkt(cfg.low, cfg.high);
  const auto dist = io::parse_distribution(cfg.dist);
  const auto solved = implementable_set(mkt, dist, cfg.grid, cfg.directions);
  std::vector<io::LabeledPoint> rows = labeled("boundary", solved.set.boundary());
  append(rows, labeled("triangle", observable_triangle(mkt, dist).boundary()));
  rows.push_back({"no_info", indirect_outcome(dist.mean(), mkt, dist)});
  append(rows, baseline_rows(mkt, dist));
  emit_rows(cfg, rows);
  if (!certificates.empty()) {
    Sink sink(certificates);
    io::write_boundary_csv(sink.stream(), solved);
  }
  return kOk;
}

int cmd_figure(RunConfig cfg, const std::string& id) {
  static const std::map<std::string, std::pair<double, double>> markets{
      {"1", {1, 2}}, {"2a", {1, 3}}, {"2b", {2, 3}}, {"3", {1, 3}}};
  const auto it = markets.find(id);
  if (it == markets.end()) throw CliFailure{kConfig, "unknown figure id '" + id + "' (use 1, 2a, 2b, 3)"};
  cfg.low = it->second.first;
  cfg.high = it->second.second;
  const Market mkt(cfg.low, cfg.high);
  const auto dist = TypeDistribution::uniform();

  std::vector<io::LabeledPoint> rows = labeled("triangle", observable_triangle(mkt, dist).boundary());
  for (const auto& p : uniform::right_boundary_curve(mkt, 200)) rows.push_back({"right_boundary", p.outcome});
  for (const auto& p : uniform::left_boundary_curve(mkt, 200)) rows.push_back({"left_boundary", p.outcome});
  rows.push_back({"no_info", indirect_outcome(dist.mean(), mkt, dist)});
  rows.push_back({"full_info", outcome_of_signal(FiniteSignal::fully_informative(2), mkt, dist)});
  rows.push_back({"buyer_optimal", uniform::buyer_optimal(mkt).outcome});
  append(rows, baseline_rows(mkt, dist));
  if (id == "3") {
    const SolverSettings settings{cfg.grid, cfg.directions};
    for (Protocol p : {Protocol::CheapTalk, Protocol::VoluntaryDisclosure, Protocol::RequestConsentUninformed}) {
      append(rows, labeled(to_string(p), protocol_outcomes(p, mkt, dist, settings).points));
    }
    rows.push_back({"constrained_optimum", constrained_seller_optimal(mkt, dist, settings).outcome});
  }
  emit_rows(cfg, rows);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliFailure{kConfig, "cannot read mechanism file " + path};
  const DirectMechanism mech = io::read_mechanism_csv(in);
  const Market mkt(cfg.low, cfg.high);

  json report = json::array();
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    report.push_back({{"check", name}, {"pass", ok}, {"detail", detail}});
    return ok;
  };
  auto finish = [&](int code) {
    Sink sink(cfg.out);
    if (cfg.format == "json") {
      sink.stream() << report.dump(2) << '\n';
    } else {
      for (const auto& r : report) {
        sink.stream() << (r["pass"].get<bool>() ? "ok     " : "FAILED ") << r["check"].get<std::string>();
        if (!r["detail"].get<std::string>().empty()) sink.stream() << "  " << r["detail"].get<std::string>();
        sink.stream() << '\n';
      }
    }
    if (code != kOk) std::cerr << "verification failed: " << report.back()["check"].get<std::string>() << '\n';
    return code;
  };

  const auto s = check_structural(mech);
  std::string where;
  if (s.monotone_witness) {
    where = "types " + std::to_string(s.monotone_witness->first) + "," + std::to_string(s.monotone_witness->second);
  }
  if (!record("monotonicity", s.monotone, where)) return finish(kVerification);
  where.clear();
  if (s.relative_impact_witness) {
    const auto& w = *s.relative_impact_witness;
    where = "types " + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," + std::to_string(w[2]);
  }
  if (!record("relative_impact", s.relative_impact, where)) return finish(kVerification);

  const auto ic = check_ic(mech, mkt);
  if (!record("incentive_compatibility", ic.ok,
              ic.ok ? "" : "type " + std::to_string(ic.type_index) + " gains " +
                               io::format_number(ic.worst_violation) + " reporting " +
                               std::to_string(ic.report_index))) {
    return finish(kVerification);
  }
  const auto ob = check_obedience(mech, mkt);
  if (!record("obedience", ob.ok,
              ob.ok ? "" : "type " + std::to_string(ob.type_index) + " gains " + io::format_number(ob.worst_violation))) {
    return finish(kVerification);
  }
  bool mlr = false;
  try {
    mlr = build_public_signal(mech, mkt).satisfies_mlr();
  } catch (const Error& e) {
    record("public_signal", false, e.what());
    return finish(kVerification);
  }
  if (!record("public_signal", mlr, mlr ? "" : "likelihood ratio not monotone")) return finish(kVerification);

  const Eigen::VectorXd w =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(mech.size()), 1.0 / static_cast<double>(mech.size()));
  const auto rep = check_replication(mech, w, mkt, 1e-9);
  if (!record("replication", rep.ok,
              "signal gap " + io::format_number(rep.max_signal_gap) + ", outcome gap " +
                  io::format_number(rep.outcome_gap))) {
    return finish(kVerification);
  }
  return finish(kOk);
}

std::string str(const Rational& v) { return v.get_str(); }

int cmd_example_many_values(const RunConfig& cfg, const std::string& values_text, const std::string& tie_name) {
  const auto raw = io::parse_number_list(values_text);
  many::Vector<Rational> values(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) values(static_cast<Eigen::Index>(i)) = Rational(raw[i]);
  if (values.size() != 3) throw CliFailure{kConfig, "the example menu needs exactly three values"};
  const auto tie = tie_name == "high" ? many::PriceTie::Highest : many::PriceTie::Lowest;
  const auto ex = many::three_type_example<Rational>(values);
  const bool reference = raw == std::vector<double>{1, 3, 4} && tie == many::PriceTie::Lowest;

  Sink sink(cfg.out);
  std::ostream& os = sink.stream();
  os << "values:";
  for (Eigen::Index i = 0; i < values.size(); ++i) os << ' ' << str(values(i));
  os << "\nprice ties resolved " << (tie == many::PriceTie::Lowest ? "low" : "high") << "\n\n";

  const auto ic = many::menu_ic_check_many(ex.menu, ex.market, tie);
  os << "IC gains (row type, column signal):\n";
  for (Eigen::Index i = 0; i < ic.gains.rows(); ++i) {
    os << "  theta" << i + 1 << ':';
    for (Eigen::Index j = 0; j < ic.gains.cols(); ++j) os << ' ' << str(ic.gains(i, j));
    os << '\n';
  }
  os << "IC " << (ic.ok ? "holds" : "fails") << ", strict violations " << ic.strict_violations << '\n';

  const auto w = many::menu_welfare(ex.menu, ex.market, tie);
  os << "type profits:";
  for (const auto& p : w.type_profits) os << ' ' << str(p);
  os << "\nmenu outcome: U " << str(w.buyer_surplus) << ", Pi " << str(w.seller_profit) << '\n';
  const bool efficient = many::efficient_outcome_check(ex.menu, ex.market, tie);
  os << "efficient: " << (efficient ? "yes" : "no") << '\n';

  auto none = ex.menu;
  none.signals.assign(none.types.size(), FiniteSignalT<Rational>::uninformative(values.size()));
  const Rational u0 = many::menu_welfare(none, ex.market, tie).buyer_surplus;
  os << "no-data buyer surplus U0: " << str(u0) << '\n';

  const auto rent = many::min_rent_efficient_public(ex.market, ex.menu.types, 0);
  os << "min-rent efficient public signal (rows are values):\n";
  for (Eigen::Index r = 0; r < rent.signal.value_count(); ++r) {
    os << "  v=" << str(values(r)) << ':';
    for (Eigen::Index c = 0; c < rent.signal.realization_count(); ++c) os << ' ' << str(rent.signal(r, c));
    os << '\n';
  }
  os << "theta1 profit under it " << str(rent.profit) << " vs in the menu " << str(w.type_profits[0]) << '\n';

  if (!reference) {
    os << "\nvariant run: no comparison against reference values\n";
    return kOk;
  }
  std::vector<std::string> mismatches;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) mismatches.emplace_back(what);
  };
  const Rational half(1, 2);
  expect(ic.ok && ic.strict_violations == 0, "menu IC");
  expect(w.type_profits == std::vector<Rational>{Rational(3, 2), Rational(3, 2), Rational(2)}, "type profits");
  expect(u0 == Rational(1, 12), "U0");
  expect(efficient, "efficiency");
  expect(rent.profit == Rational(19, 12) && rent.profit > Rational(3, 2), "min-rent profit");
  expect(rent.signal(1, 0) == half && rent.signal(2, 0) == Rational(1, 3), "min-rent signal");
  os << '\n';
  for (const auto& m : mismatches) os << "MISMATCH " << m << '\n';
  os << (mismatches.empty() ? "all reference checks pass\n" : "reference checks failed\n");
  return mismatches.empty() ? kOk : kInternal;
}

int cmd_protocols(const RunConfig& cfg, const std::string& which) {
  const Market mkt(cfg.low, cfg.high);
  const auto dist = io::parse_distribution(cfg.dist);
  const SolverSettings settings{cfg.grid, cfg.directions};
  std::vector<Protocol> list;
  for (Protocol p : {Protocol::CheapTalk, Protocol::VoluntaryDisclosure, Protocol::RequestConsentInformed,
                     Protocol::RequestConsentUninformed}) {
    if (which == "all" || which == to_string(p)) list.push_back(p);
  }
  Sink sink(cfg.out);
  if (cfg.format == "json") {
    json j = json::array();
    for (Protocol p : list) j.push_back(json::parse(io::protocol_json(protocol_outcomes(p, mkt, dist, settings))));
    sink.stream() << j.dump(2) << '\n';
  } else {
    std::vector<io::LabeledPoint> rows;
    for (Protocol p : list) {
      const auto o = protocol_outcomes(p, mkt, dist, settings);
      for (const auto& w : o.warnings) std::cerr << "warning: " << to_string(p) << ": " << w << '\n';
      append(rows, labeled(to_string(p), o.points));
    }
    io::write_figure_csv(sink.stream(), rows);
  }
  return kOk;
}

int cmd_oracle(const RunConfig& cfg, const std::string& check, oracle::OracleConfig ocfg, double slack) {
  ocfg.validate();
  const Market mkt(cfg.low, cfg.high);
  const auto dist = io::parse_distribution(cfg.dist);
  oracle::OracleReport report{check, false, 0.0, ocfg};
  if (check == "public-cloud") {
    const auto solved = implementable_set(mkt, dist, cfg.grid, cfg.directions);
    double worst = -INFINITY;
    for (const auto& p : oracle::enumerate_public_outcomes(mkt, dist, ocfg)) {
      worst = std::max(worst, solved.set.signed_distance(p));
    }
    report.max_violation = std::max(0.0, worst);
    report.pass = worst <= 1e-6;
  } else if (check == "menus") {
    geometry::Polyline pts;
    for (const auto& p : oracle::enumerate_public_outcomes(mkt, dist, ocfg)) pts.push_back(p.vec());
    std::vector<WelfareOutcome> hull;
    for (const auto& p : geometry::convex_hull(pts)) hull.push_back(WelfareOutcome::from(p));
    const OutcomeSet set(std::move(hull), dist.mean());
    double worst = 0.0;
    for (const auto& p : oracle::enumerate_small_menus(mkt, dist, ocfg).outcomes) {
      worst = std::max(worst, set.signed_distance(p));
    }
    report.max_violation = worst;
    report.pass = worst <= slack;
  } else {
    if (ocfg.sample_count < 10000) throw CliFailure{kConfig, "Monte Carlo needs at least 10000 samples"};
    // Excess of |estimate − analytic| over three standard errors.
    double worst = 0.0;
    for (const auto& sig : {FiniteSignal::uninformative(2), FiniteSignal::fully_informative(2),
                            FiniteSignal::from_binary(BinarySignal(0, 0.5))}) {
      const auto e = oracle::simulate_game(sig, mkt, dist, ocfg);
      const auto truth = outcome_of_signal(sig, mkt, dist);
      worst = std::max({worst,
                        std::abs(e.mean.buyer_surplus - truth.buyer_surplus) - 3 * e.standard_error.buyer_surplus,
                        std::abs(e.mean.seller_profit - truth.seller_profit) - 3 * e.standard_error.seller_profit});
    }
    report.max_violation = worst;
    report.pass = worst <= 1e-15;
  }
  Sink sink(cfg.out);
  sink.stream() << oracle::to_json(report) << '\n';
  return report.pass ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data provision to a privately informed monopolist: solvers and checks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* surplus = app.add_subcommand("surplus-set", "implementable welfare outcomes");
  std::string certificates;
  add_market(surplus, cfg);
  add_solver(surplus, cfg);
  add_output(surplus, cfg, {"csv", "json"});
  surplus->add_option("--certificates", certificates, "also write per-vertex split certificates (CSV)");

  auto* figure = app.add_subcommand("figure", "figure data as which,U,Pi rows");
  std::string figure_id;
  figure->add_option("id", figure_id, "1, 2a, 2b or 3")->required();
  figure->add_option("--grid", cfg.grid, "belief grid size (figure 3 regions)")->capture_default_str();
  figure->add_option("--directions", cfg.directions, "support directions (figure 3)")->capture_default_str();
  add_output(figure, cfg, {"csv", "json"});

  auto* verify = app.add_subcommand("verify", "check a direct mechanism CSV (theta,alpha,beta)");
  std::string mechanism_path;
  verify->add_option("file", mechanism_path, "mechanism CSV")->required();
  add_market(verify, cfg);
  add_output(verify, cfg, {"text", "json"});

  auto* many_cmd = app.add_subcommand("example-many-values", "three-type, three-value menu report");
  std::string values_text = "1,3,4";
  std::string tie_name = "low";
  many_cmd->add_option("--values", values_text, "buyer values, comma separated")->capture_default_str();
  many_cmd->add_option("--tie-break", tie_name, "price chosen when indifferent")
      ->check(CLI::IsMember({"low", "high"}))
      ->capture_default_str();
  many_cmd->add_option("--out", cfg.out, "output file (default stdout)");

  auto* protocols = app.add_subcommand("protocols", "outcome sets of the consent protocols");
  std::string protocol_name = "all";
  add_market(protocols, cfg);
  add_solver(protocols, cfg);
  add_output(protocols, cfg, {"csv", "json"});
  protocols->add_option("--protocol", protocol_name, "one protocol or all")
      ->check(CLI::IsMember({"all", "cheap_talk", "voluntary_disclosure", "request_consent_informed",
                             "request_consent_uninformed"}))
      ->capture_default_str();

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force and Monte Carlo cross-checks");
  std::string check = "public-cloud";
  oracle::OracleConfig ocfg;
  double slack = 0.02;
  add_market(oracle_cmd, cfg);
  add_solver(oracle_cmd, cfg);
  oracle_cmd->add_option("--check", check, "public-cloud, menus or monte-carlo")
      ->check(CLI::IsMember({"public-cloud", "menus", "monte-carlo"}))
      ->capture_default_str();
  oracle_cmd->add_option("--seed", ocfg.rng_seed, "Monte Carlo seed")->capture_default_str();
  oracle_cmd->add_option("--grid-step", ocfg.grid_step, "enumeration grid step")->capture_default_str();
  oracle_cmd->add_option("--samples", ocfg.sample_count, "Monte Carlo draws")->capture_default_str();
  oracle_cmd->add_option("--slack", slack, "menu containment slack")->capture_default_str();
  oracle_cmd->add_option("--out", cfg.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (figure->parsed()) return cmd_figure(cfg, figure_id);
    if (many_cmd->parsed()) return cmd_example_many_values(cfg, values_text, tie_name);
    if (verify->parsed()) {
      if (cfg.format == "csv") cfg.format = "text";
      return cmd_verify(cfg, mechanism_path);
    }
    // Validate the market and distribution before any solver runs.
    const Market check_market(cfg.low, cfg.high);
    (void)check_market;
    (void)io::parse_distribution(cfg.dist);
    if (surplus->parsed()) return cmd_surplus_set(cfg, certificates);
    if (protocols->parsed()) return cmd_protocols(cfg, protocol_name);
    if (oracle_cmd->parsed()) return cmd_oracle(cfg, check, ocfg, slack);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
