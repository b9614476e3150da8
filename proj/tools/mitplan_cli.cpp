// Command-line front end for the material-inventory transportation planner.
//
// Exit codes:
//   0  success
//   1  usage, parse, or validation error
//   2  scenario cannot cover the order (aggregate infeasibility)
//   3  `check` found at least one uncoverable material
//   4  `plan` result exceeds the fleet limit
//   5  `oracle`/`compare` instance too large to enumerate
//   6  `compare` found a gap between search and ground truth
//
// Every error path prints a single-line JSON diagnostic to stderr.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "mitplan/cost.hpp"
#include "mitplan/errors.hpp"
#include "mitplan/feasibility.hpp"
#include "mitplan/json_io.hpp"
#include "mitplan/model.hpp"
#include "mitplan/moea.hpp"
#include "mitplan/oracle.hpp"
#include "mitplan/parallel.hpp"
#include "mitplan/transport.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUncoverable = 3;
constexpr int kExitFleetExceeded = 4;
constexpr int kExitTooLarge = 5;
constexpr int kExitGap = 6;

constexpr double kMoneyEps = 1e-9;

struct OutputOpts {
  std::string path;          // empty = stdout
  std::string format = "json";
};

void emit_diagnostic(const std::string& kind, const std::string& message,
                     const json& extra = json::object()) {
  json line = extra;
  line["error"] = kind;
  line["message"] = message;
  std::cerr << line.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mitplan::Error("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const OutputOpts& opts, const std::string& bytes) {
  if (opts.path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(opts.path, std::ios::binary);
  if (!out) throw mitplan::Error("cannot write file: " + opts.path);
  out << bytes;
}

void emit_report(const OutputOpts& opts, const json& doc) {
  write_output(opts, doc.dump(2) + "\n");
}

mitplan::Allocation parse_allocation_list(const std::string& text) {
  mitplan::Allocation a;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      const long long value = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      a.quantities.push_back(value);
    } catch (const std::exception&) {
      throw mitplan::ValidationError("alloc", "not a comma-separated integer list: " + text);
    }
  }
  if (a.quantities.empty()) {
    throw mitplan::ValidationError("alloc", "allocation list is empty");
  }
  return a;
}

// Equal quotas rounded by largest remainder: every factory gets order/n,
// the first order%n factories one extra unit.
mitplan::Allocation baseline_allocation(const mitplan::Scenario& s) {
  const auto n = static_cast<std::int64_t>(s.factory_count());
  mitplan::Allocation a;
  a.quantities.assign(s.factory_count(), s.order / n);
  for (std::int64_t i = 0; i < s.order % n; ++i) a.quantities[i] += 1;
  return a;
}

unsigned worker_threads() {
  const char* raw = std::getenv("MITPLAN_THREADS");
  if (raw == nullptr || *raw == '\0') return mitplan::resolve_threads(0);
  char* end = nullptr;
  const unsigned long value = std::strtoul(raw, &end, 10);
  if (end == nullptr || *end != '\0' || value > 1024) {
    throw mitplan::ValidationError("MITPLAN_THREADS", "must be an integer in [0, 1024]");
  }
  return mitplan::resolve_threads(static_cast<unsigned>(value));
}

void require_json_format(const OutputOpts& opts, const std::string& command) {
  if (opts.format != "json") {
    throw mitplan::ValidationError("format", command + " only supports json output");
  }
}

int run_check(const mitplan::Scenario& s, const OutputOpts& opts) {
  require_json_format(opts, "check");
  const std::vector<bool> verdicts = mitplan::aggregate_feasible(s);
  json per_material = json::object();
  bool all_feasible = true;
  for (std::size_t k = 0; k < verdicts.size(); ++k) {
    per_material[s.materials[k].id] = static_cast<bool>(verdicts[k]);
    all_feasible = all_feasible && verdicts[k];
  }
  const mitplan::Allocation baseline = baseline_allocation(s);
  const mitplan::ShortageReport report = mitplan::check_inventory(s, baseline);
  json doc{{"command", "check"},
           {"aggregate_feasible", std::move(per_material)},
           {"baseline_allocation", baseline.quantities},
           {"baseline_report", mitplan::to_json(report, s)}};
  emit_report(opts, doc);
  return all_feasible ? kExitOk : kExitUncoverable;
}

int run_plan(const mitplan::Scenario& s, const std::string& alloc_text,
             const OutputOpts& opts) {
  require_json_format(opts, "plan");
  mitplan::Allocation a = parse_allocation_list(alloc_text);
  mitplan::validate_allocation(s, a);
  const mitplan::Evaluation ev = mitplan::evaluate(s, a);
  json doc{{"command", "plan"},
           {"allocation", a.quantities},
           {"plan", mitplan::to_json(ev.plan, s)},
           {"cost", mitplan::to_json(ev.cost)},
           {"transport_needed", ev.transport_needed},
           {"fleet_ok", ev.fleet_ok}};
  emit_report(opts, doc);
  if (!ev.fleet_ok) {
    emit_diagnostic("fleet_exceeded",
                    "plan needs " + std::to_string(ev.plan.total_trucks) +
                        " trucks but only " + std::to_string(s.fleet.max_trucks) +
                        " are available",
                    json{{"total_trucks", ev.plan.total_trucks},
                         {"max_trucks", s.fleet.max_trucks}});
    return kExitFleetExceeded;
  }
  return kExitOk;
}

int run_optimize(const mitplan::Scenario& s, const mitplan::MoeaParams& params,
                 const OutputOpts& opts) {
  const mitplan::ParetoResult result = mitplan::optimize(s, params, worker_threads());
  if (opts.format == "csv") {
    write_output(opts, mitplan::front_csv(result));
  } else {
    emit_report(opts, mitplan::to_json(result));
  }
  return kExitOk;
}

int run_oracle(const mitplan::Scenario& s, const OutputOpts& opts) {
  const mitplan::OracleResult result = mitplan::brute_force(s, worker_threads());
  if (opts.format == "csv") {
    write_output(opts, mitplan::front_csv(result));
  } else {
    emit_report(opts, mitplan::to_json(result));
  }
  return kExitOk;
}

int run_compare(const mitplan::Scenario& s, const mitplan::MoeaParams& params,
                const OutputOpts& opts) {
  require_json_format(opts, "compare");
  const unsigned threads = worker_threads();
  const mitplan::OracleResult truth = mitplan::brute_force(s, threads);
  const mitplan::ParetoResult searched = mitplan::optimize(s, params, threads);

  json gap = nullptr;
  bool gap_zero = false;
  if (truth.best_total && searched.best_scalarized) {
    const double value = searched.best_scalarized->total() - *truth.best_total;
    gap = value;
    gap_zero = std::abs(value) <= kMoneyEps;
  } else if (!truth.best_total && !searched.best_scalarized) {
    gap = 0.0;
    gap_zero = true;
  }

  // Fronts match when they cover the same (PC, TC) points.
  const auto objective_set = [](auto begin, auto end, auto pc, auto tc) {
    std::vector<std::pair<double, double>> set;
    for (auto it = begin; it != end; ++it) set.emplace_back(pc(*it), tc(*it));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
  };
  const auto moea_set = objective_set(
      searched.front.begin(), searched.front.end(),
      [](const mitplan::Individual& i) { return i.production; },
      [](const mitplan::Individual& i) { return i.transport; });
  const auto oracle_set = objective_set(
      truth.exact_front.begin(), truth.exact_front.end(),
      [](const mitplan::OracleEntry& e) { return e.production; },
      [](const mitplan::OracleEntry& e) { return e.transport; });
  bool front_match = moea_set.size() == oracle_set.size();
  for (std::size_t i = 0; front_match && i < moea_set.size(); ++i) {
    front_match = std::abs(moea_set[i].first - oracle_set[i].first) <= kMoneyEps &&
                  std::abs(moea_set[i].second - oracle_set[i].second) <= kMoneyEps;
  }

  json doc{{"command", "compare"},
           {"gap", gap},
           {"front_match", front_match},
           {"moea_best", searched.best_scalarized
                             ? json(searched.best_scalarized->total())
                             : json(nullptr)},
           {"oracle_best", truth.best_total ? json(*truth.best_total) : json(nullptr)},
           {"moea", mitplan::to_json(searched)},
           {"oracle", mitplan::to_json(truth)}};
  emit_report(opts, doc);
  if (!gap_zero) {
    emit_diagnostic("gap", "search missed the exhaustive optimum",
                    json{{"gap", gap}});
    return kExitGap;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mitplan - material-inventory transportation planner"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string alloc_text;
  OutputOpts output;
  mitplan::MoeaParams params;
  std::uint64_t seed = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    cmd->add_option("--out", output.path, "write the report to this file instead of stdout");
    cmd->add_option("--format", output.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  const auto add_moea = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed (default 0)");
    cmd->add_option("--pop", params.population_size, "population size (even, >= 4)");
    cmd->add_option("--gens", params.generations, "number of generations");
    cmd->add_option("--cx", params.crossover_prob, "crossover probability");
    cmd->add_option("--mut", [&params](const CLI::results_t& vals) {
      double value = 0.0;
      if (!CLI::detail::lexical_cast(vals.at(0), value)) return false;
      params.mutation_prob = value;
      return true;
    }, "per-gene mutation probability (default 1/n)");
  };

  CLI::App* check = app.add_subcommand("check", "aggregate feasibility and baseline shortage report");
  add_common(check);
  CLI::App* plan = app.add_subcommand("plan", "transport plan and costs for a given allocation");
  add_common(plan);
  plan->add_option("--alloc", alloc_text, "comma-separated per-factory quantities")->required();
  CLI::App* optimize = app.add_subcommand("optimize", "evolutionary trade-off search");
  add_common(optimize);
  add_moea(optimize);
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive ground truth for small instances");
  add_common(oracle);
  CLI::App* compare = app.add_subcommand("compare", "optimize vs oracle gap report");
  add_common(compare);
  add_moea(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_diagnostic("usage", e.what());
    return kExitUsage;
  }

  try {
    const mitplan::Scenario scenario = mitplan::load_scenario(read_file(scenario_path));
    params.seed = seed;
    if (check->parsed()) return run_check(scenario, output);
    if (plan->parsed()) return run_plan(scenario, alloc_text, output);
    if (optimize->parsed()) return run_optimize(scenario, params, output);
    if (oracle->parsed()) return run_oracle(scenario, output);
    if (compare->parsed()) return run_compare(scenario, params, output);
    emit_diagnostic("usage", "no command given");
    return kExitUsage;
  } catch (const mitplan::ParseError& e) {
    emit_diagnostic("parse", e.what());
    return kExitUsage;
  } catch (const mitplan::ValidationError& e) {
    emit_diagnostic("validation", e.what(), json{{"field", e.field()}});
    return kExitUsage;
  } catch (const mitplan::InfeasibleError& e) {
    emit_diagnostic("infeasible", e.what(), json{{"material", e.material()}});
    return kExitInfeasible;
  } catch (const mitplan::InstanceTooLargeError& e) {
    emit_diagnostic("instance_too_large", e.what());
    return kExitTooLarge;
  } catch (const std::exception& e) {
    emit_diagnostic("internal", e.what());
    return kExitUsage;
  }
}
