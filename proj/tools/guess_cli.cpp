#include "guess/alice.hpp"
#include "guess/analysis.hpp"
#include "guess/descriptor.hpp"
#include "guess/format.hpp"
#include "guess/repro.hpp"
#include "guess/sim.hpp"
#include "guess/twopile.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using nlohmann::json;
using namespace guess;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 20240521;
  std::uint64_t trials = 1'000'000;
  unsigned workers = 1;
  std::string format = "json";
  std::string out;
};

struct Output {
  json doc = json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

json num(double x) {
  if (!std::isfinite(x)) return fmt::number(x);
  return json::parse(fmt::number(x));
}

void flatten(const json& j, const std::string& prefix, std::vector<std::vector<std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
  } else if (j.is_string()) {
    rows.push_back({prefix, j.get<std::string>()});
  } else {
    rows.push_back({prefix, j.dump()});
  }
}

void emit(const Output& o, const Globals& g) {
  std::ostringstream os;
  if (g.format == "csv") {
    if (o.header.empty()) {
      std::vector<std::vector<std::string>> rows;
      flatten(o.doc, "", rows);
      os << fmt::csv_row({"quantity", "value"}) << '\n';
      for (const auto& r : rows) os << fmt::csv_row(r) << '\n';
    } else {
      os << fmt::csv_row(o.header) << '\n';
      for (const auto& r : o.rows) os << fmt::csv_row(r) << '\n';
    }
  } else {
    json doc = o.doc;
    if (!o.header.empty()) {
      json rows = json::array();
      for (const auto& r : o.rows) {
        json row = json::object();
        for (std::size_t i = 0; i < o.header.size(); ++i) {
          const auto parsed = json::parse(r[i], nullptr, false);
          row[o.header[i]] = parsed.is_discarded() ? json(r[i]) : parsed;
        }
        rows.push_back(row);
      }
      doc["rows"] = rows;
    }
    os << doc.dump(2) << '\n';
  }
  if (g.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(g.out);
    if (!f) throw ConfigError("cannot write " + g.out);
    f << os.str();
  }
}

json read_descriptor(const std::string& text, const char* what) {
  if (text.empty()) throw ConfigError(std::string("missing --") + what + " descriptor");
  std::string body = text;
  if (text.front() == '@') {
    std::ifstream f(text.substr(1));
    if (!f) throw ConfigError("cannot read " + text.substr(1));
    std::stringstream ss;
    ss << f.rdbuf();
    body = ss.str();
  }
  const auto j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw ConfigError(std::string("--") + what + " is not valid JSON");
  return j;
}

struct Range {
  double lo;
  double hi;
  double step;
};

Range parse_range(const std::string& s) {
  Range r{};
  char c1 = 0;
  char c2 = 0;
  std::istringstream is(s);
  if (!(is >> r.lo >> c1 >> r.hi >> c2 >> r.step) || c1 != ':' || c2 != ':' || !(r.step > 0.0) || r.hi < r.lo) {
    throw ConfigError("range must look like lo:hi:step with step > 0, got " + s);
  }
  return r;
}

std::vector<double> range_points(const Range& r) {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((r.hi - r.lo) / r.step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(r.lo + static_cast<double>(i) * r.step);
  return out;
}

// -- commands -----------------------------------------------------------

Output cmd_eval(const std::string& alice_text, const std::string& bob_text) {
  const auto f = alice_from_json(read_descriptor(alice_text, "alice"));
  const auto b = bob_from_json(read_descriptor(bob_text, "bob"));
  Output o;
  o.doc["alice"] = f.describe();
  o.doc["bob"] = description(b);
  if (const auto* d = std::get_if<DiscreteBobStrategy>(&b)) {
    o.doc["win_probability"] = num(analysis::win_prob_vs_discrete(f, *d));
    o.doc["method"] = "exact";
    const auto br = analysis::best_response(*d);
    o.doc["best_response_value"] = to_string(br.value);
  } else {
    const auto& c = std::get<ContinuousBobStrategy>(b);
    const auto w = analysis::win_prob_vs_continuous(f, c);
    if (!w) throw ConfigError("this Bob strategy has no closed form; use simulate");
    o.doc["win_probability"] = num(*w);
    o.doc["method"] = "quadrature";
  }
  return o;
}

json estimate_json(const sim::MonteCarloEstimate& e) {
  return {{"successes", e.successes},
          {"trials", e.trials},
          {"estimate", num(e.point)},
          {"ci95_lo", num(e.ci95.lo)},
          {"ci95_hi", num(e.ci95.hi)},
          {"standard_error", num(e.standard_error())},
          {"seed", e.seed}};
}

Output cmd_simulate(const Globals& g, const std::string& alice_text, const std::string& bob_text,
                    std::uint64_t rounds) {
  const auto f = alice_from_json(read_descriptor(alice_text, "alice"));
  Output o;
  if (rounds > 0) {
    const auto trace = sim::repeated_game(sim::default_schedule(), "consecutive uniform m = round", f, rounds, g.seed);
    const double bound = 0.5 + sim::harmonic(rounds) / (2.0 * static_cast<double>(rounds));
    o.doc = {{"alice", f.describe()}, {"schedule", trace.schedule}, {"rounds", rounds},
             {"wins", trace.wins}, {"final_frequency", num(trace.running_frequency.back())},
             {"expected_bound", num(bound)}, {"seed", g.seed}};
    o.header = {"round", "running_frequency"};
    for (std::size_t r = 0; r < trace.running_frequency.size(); ++r) {
      o.rows.push_back({std::to_string(r + 1), fmt::number(trace.running_frequency[r])});
    }
    return o;
  }
  const auto b = bob_from_json(read_descriptor(bob_text, "bob"));
  const auto e = sim::estimate(b, f, g.trials, g.seed, g.workers);
  o.doc = estimate_json(e);
  o.doc["alice"] = f.describe();
  o.doc["bob"] = description(b);
  return o;
}

Output cmd_best_response(const Globals& g, const std::string& bob_text) {
  const auto b = bob_from_json(read_descriptor(bob_text, "bob"));
  Output o;
  o.doc["bob"] = description(b);
  if (const auto* d = std::get_if<DiscreteBobStrategy>(&b)) {
    const auto br = analysis::best_response(*d);
    o.doc["value"] = fmt::rational_json(br.value);
    o.doc["value_decimal"] = num(to_double(br.value));
    o.header = {"x", "mass", "pi", "accept"};
    for (const auto& [x, pt] : br.table) {
      o.rows.push_back({fmt::number(x), to_string(pt.mass), to_string(pt.pi), pt.accept ? "1" : "0"});
    }
  } else {
    const auto r = analysis::best_response_value(std::get<ContinuousBobStrategy>(b), g.seed, g.trials);
    o.doc["value"] = num(r.value);
    o.doc["error"] = num(r.error);
    o.doc["method"] = r.method;
    if (r.warning) o.doc["warning"] = *r.warning;
  }
  return o;
}

Output cmd_finite_game(const Globals& g, std::int64_t m, bool automatic) {
  const auto c = analysis::finite_game_oracle(
      m, automatic ? analysis::FiniteGameMode::automatic : analysis::FiniteGameMode::exhaustive, g.workers);
  Output o;
  o.doc = {{"m", c.m},
           {"value", to_string(c.value)},
           {"alice_guarantee", to_string(c.alice_guarantee)},
           {"bob_cap", to_string(c.bob_cap)},
           {"exhaustive", c.exhaustive},
           {"decision_sets_checked", c.decision_sets_checked}};
  return o;
}

Output cmd_two_pile(const Globals& g, int n, int k, double delta, double eps, const std::string& action) {
  const twopile::PileConfig cfg(n, k);
  const twopile::ScaleMixtureModel model(delta);
  Output o;
  o.doc["n"] = n;
  o.doc["k"] = k;
  o.doc["delta"] = num(delta);
  if (action == "eval") {
    o.doc["iid_value"] = num(twopile::iid_value(cfg));
    o.doc["iid_median"] = num(twopile::iid_median(cfg));
    o.doc["game_value"] = num(twopile::game_value(cfg));
    o.doc["best_response_value"] = num(twopile::best_response_value_quadrature(cfg, model));
    o.doc["pi_limit_at_zero"] = num(twopile::pi_limit_at_zero(cfg, model));
    o.doc["pi_plateau"] = num(twopile::pi_plateau(cfg, model));
    if (eps > 0.0) {
      const auto rep = twopile::epsilon_bound_check(n, eps, delta, twopile::default_epsilon_grid());
      o.doc["epsilon_check"] = {{"epsilon", num(eps)},
                                {"passed", rep.passed},
                                {"worst_deviation", num(rep.worst_deviation)},
                                {"worst_n", rep.worst_n},
                                {"worst_k", rep.worst_k},
                                {"worst_x", num(rep.worst_x)}};
    }
    o.header = {"x", "pi_nk"};
    for (int e = -12; e <= 6; ++e) {
      const double x = std::pow(10.0, e);
      o.rows.push_back({fmt::number(x), fmt::number(twopile::pi_nk(x, cfg, model))});
    }
  } else if (action == "simulate") {
    const auto br = sim::run_trials(
        g.trials, g.seed,
        [&](RngStream& rng) {
          const auto d = twopile::deal(cfg, model, rng);
          return twopile::best_response_decision(d, cfg, model) == d.alice_holds_max();
        },
        g.workers);
    const auto blind = sim::run_trials(
        g.trials, g.seed,
        [&](RngStream& rng) {
          const auto d = twopile::deal(cfg, model, rng);
          return twopile::blind_decision(cfg, rng) == d.alice_holds_max();
        },
        g.workers);
    o.doc["best_response"] = estimate_json(br);
    o.doc["blind"] = estimate_json(blind);
    o.doc["advantage"] = num(br.point - blind.point);
  } else if (action == "deals") {
    RngStream rng(g.seed, 0);
    o.header.clear();
    std::ostringstream csv;
    const auto header = twopile::deals_csv_header(cfg);
    std::istringstream hs(header);
    for (std::string col; std::getline(hs, col, ',');) o.header.push_back(col);
    for (std::uint64_t i = 0; i < g.trials; ++i) {
      const auto d = twopile::deal(cfg, model, rng);
      const auto row = twopile::deal_csv_row(d, twopile::best_response_decision(d, cfg, model));
      std::vector<std::string> fields;
      std::istringstream rs(row);
      for (std::string f; std::getline(rs, f, ',');) fields.push_back(f);
      o.rows.push_back(std::move(fields));
    }
  } else {
    throw ConfigError("two-pile action must be eval, simulate or deals");
  }
  return o;
}

Output cmd_sweep(const Globals& g, const std::string& target, const std::string& range_text, int n, int k,
                 double delta) {
  Output o;
  o.doc["target"] = target;
  if (target == "iid-two-pile") {
    const auto r = parse_range(range_text.empty() ? "0.05:0.95:0.01" : range_text);
    o.header = {"ratio_k_over_n", "win_probability"};
    double best_r = 0.0;
    double best_v = 2.0;
    for (double x : range_points(r)) {
      if (!(x > 0.0 && x < 1.0)) throw ConfigError("ratios must lie in (0, 1)");
      const double v = twopile::iid_value_at_ratio(x);
      if (v < best_v) {
        best_v = v;
        best_r = x;
      }
      o.rows.push_back({fmt::number(x), fmt::number(v)});
    }
    o.doc["minimum"] = {{"ratio", num(best_r)}, {"value", num(best_v)}};
  } else if (target == "pi") {
    const auto r = parse_range(range_text.empty() ? "-12:6:0.5" : range_text);
    const twopile::PileConfig cfg(n, k);
    const twopile::ScaleMixtureModel model(delta);
    o.header = {"log10_x", "pi_nk"};
    for (double e : range_points(r)) {
      o.rows.push_back({fmt::number(e), fmt::number(twopile::pi_nk_log(e * std::log(10.0), cfg, model))});
    }
  } else if (target == "finite-game") {
    const auto r = parse_range(range_text.empty() ? "1:10:1" : range_text);
    o.header = {"m", "value", "alice_guarantee", "bob_cap"};
    for (double m : range_points(r)) {
      const auto c = analysis::finite_game_oracle(static_cast<std::int64_t>(m), analysis::FiniteGameMode::automatic,
                                                  g.workers);
      o.rows.push_back({std::to_string(c.m), to_string(c.value), to_string(c.alice_guarantee), to_string(c.bob_cap)});
    }
  } else if (target == "scale-best-response") {
    const auto r = parse_range(range_text.empty() ? "1:20:1" : range_text);
    o.header = {"log_m", "best_response_value"};
    for (double lm : range_points(r)) {
      if (!(lm > 0.0)) throw ConfigError("log m must be positive");
      const auto v = analysis::best_response_value(bob::scale_uniform_twocards(std::exp(lm)));
      o.rows.push_back({fmt::number(lm), fmt::number(v.value)});
    }
  } else if (target == "location-best-response") {
    const auto r = parse_range(range_text.empty() ? "1:50:1" : range_text);
    o.header = {"m", "best_response_value"};
    for (double m : range_points(r)) {
      if (!(m > 0.0)) throw ConfigError("m must be positive");
      o.rows.push_back({fmt::number(m), fmt::number(analysis::best_response_value(bob::location_uniform(m)).value)});
    }
  } else {
    throw ConfigError("unknown sweep target " + target);
  }
  return o;
}

int cmd_repro(const Globals& g, int only) {
  repro::Options opts;
  opts.seed = g.seed;
  opts.workers = g.workers;
  Output o;
  o.header = {"id", "title", "passed", "seconds", "detail"};
  bool all = true;
  bool found = false;
  for (const auto& c : repro::criteria()) {
    if (only != 0 && c.id != only) continue;
    found = true;
    const auto r = repro::run_one(c, opts);
    std::cerr << repro::summary_line(r) << std::endl;
    all = all && r.passed;
    o.rows.push_back({std::to_string(r.id), r.title, r.passed ? "true" : "false", fmt::number(r.seconds), r.detail});
  }
  if (!found) throw ConfigError("no criterion with id " + std::to_string(only));
  o.doc["passed"] = all;
  o.doc["seed"] = g.seed;
  emit(o, g);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and simulated analysis of the two-number guessing game"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  g.workers = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--trials", g.trials, "Monte Carlo trials, or deals to dump")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", g.out, "write output to this path instead of stdout");

  std::string alice_text;
  std::string bob_text;
  auto* eval = app.add_subcommand("eval", "exact win probability of Alice against Bob");
  eval->add_option("--alice", alice_text, "Alice descriptor (JSON text or @file)")->required();
  eval->add_option("--bob", bob_text, "Bob descriptor (JSON text or @file)")->required();

  std::uint64_t rounds = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate, or a repeated-game trace");
  simulate->add_option("--alice", alice_text, "Alice descriptor")->required();
  simulate->add_option("--bob", bob_text, "Bob descriptor");
  simulate->add_option("--rounds", rounds, "play the nonstationary repeated game for this many rounds");

  auto* best = app.add_subcommand("best-response", "Bayes response and its value against Bob");
  best->add_option("--bob", bob_text, "Bob descriptor")->required();

  std::int64_t m = 4;
  bool automatic = false;
  auto* finite = app.add_subcommand("finite-game", "certified value of the game on {1, ..., m+1}");
  finite->add_option("--m", m, "range parameter")->check(CLI::PositiveNumber)->capture_default_str();
  finite->add_flag("--auto", automatic, "allow m > 20 without exhaustive enumeration");

  int n = 4;
  int k = 2;
  double delta = 0.01;
  double eps = 0.0;
  std::string action = "eval";
  auto* pile = app.add_subcommand("two-pile", "two-pile game: eval, simulate or deals");
  pile->add_option("--n", n, "total cards")->capture_default_str();
  pile->add_option("--k", k, "cards in Alice's pile")->capture_default_str();
  pile->add_option("--delta", delta, "scale-mixture parameter")->capture_default_str();
  pile->add_option("--epsilon", eps, "also run the epsilon check over n' <= n");
  pile->add_option("action", action, "eval | simulate | deals")->capture_default_str();

  std::string target;
  std::string range_text;
  auto* sweep = app.add_subcommand("sweep", "vary one parameter and emit a table");
  sweep->add_option("--target", target, "iid-two-pile | pi | finite-game | scale-best-response | location-best-response")
      ->required();
  sweep->add_option("--ratio,--range", range_text, "lo:hi:step");
  sweep->add_option("--n", n, "total cards (pi)");
  sweep->add_option("--k", k, "Alice's pile (pi)");
  sweep->add_option("--delta", delta, "scale-mixture parameter (pi)");

  int only = 0;
  auto* rep = app.add_subcommand("repro", "run every reproduction check");
  rep->add_option("--only", only, "run a single criterion by id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*rep) return cmd_repro(g, only);
    Output o;
    if (*eval) o = cmd_eval(alice_text, bob_text);
    if (*simulate) o = cmd_simulate(g, alice_text, bob_text, rounds);
    if (*best) o = cmd_best_response(g, bob_text);
    if (*finite) o = cmd_finite_game(g, m, automatic);
    if (*pile) o = cmd_two_pile(g, n, k, delta, eps, action);
    if (*sweep) o = cmd_sweep(g, target, range_text, n, k, delta);
    emit(o, g);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DescriptorError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ExhaustionLimit& e) {
    std::cerr << "error: " << e.what() << " (pass --auto)\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
