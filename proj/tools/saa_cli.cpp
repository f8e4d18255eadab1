// Command-line front end for the SAA chance-constraint toolkit.
//
// Subcommands: plan, bands, solve, bounds, validate. Every command emits one
// JSON document on stdout (or --output) and a one-line summary on stderr.
// All randomness flows from --seed (env fallback SAA_SEED).
//
// Exit codes: 0 success, 2 parameter error, 3 replication count too small
// for the requested confidence, 4 unknown model.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "saa/saa.hpp"

namespace {

struct ModelNotFoundError : std::runtime_error {
  explicit ModelNotFoundError(const std::string& name)
      : std::runtime_error("model not found: " + name) {}
};

saa::Problem make_model(const std::string& name, double beta) {
  if (name == "newsvendor") return saa::NewsvendorModel{beta}.problem();
  throw ModelNotFoundError(name);
}

void emit(const saa::json& doc, const std::string& output_path) {
  const std::string text = doc.dump(2) + "\n";
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + output_path);
  out << text;
}

std::vector<std::pair<double, double>> read_constraints_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constraints file: " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double beta, theta;
    if (ss >> beta >> theta) rows.emplace_back(beta, theta);
  }
  if (rows.empty())
    throw std::runtime_error("constraints file has no beta/theta rows");
  return rows;
}

struct CommonParams {
  double beta = 0.5;
  double theta = 0.0;
  double alpha = 0.9;
  int n_max = 1'000'000;
  std::uint64_t seed = 0;
  std::string model;
  std::string output;
};

int cmd_plan(const CommonParams& p, const std::string& constraints_file) {
  saa::json doc;
  if (constraints_file.empty()) {
    const auto plan = saa::plan_sample_size(p.beta, p.theta, p.alpha, p.n_max);
    doc = saa::to_json(plan);
    std::cerr << "plan: n_hat=" << plan.n_hat << " x=" << plan.success_threshold
              << " p_lb=" << plan.p_lb_at_plan << "\n";
  } else {
    const auto rows = read_constraints_file(constraints_file);
    const auto plan = saa::plan_multi_constraint(rows, p.alpha, p.n_max);
    doc = saa::to_json(plan);
    std::cerr << "plan: " << rows.size()
              << " constraints, overall n_hat=" << plan.overall_n_hat << "\n";
  }
  emit(doc, p.output);
  return 0;
}

int cmd_bands(const CommonParams& p, double scale) {
  const auto plan = saa::plan_sample_size(p.beta, p.theta, p.alpha, p.n_max);
  const auto report =
      scale > 0.0 ? saa::classification_bands(
                        plan, [scale](double v) { return scale * v; })
                  : saa::classification_bands(plan);
  emit(saa::to_json(report), p.output);
  std::cerr << "bands: reject<=" << report.reject_band_upper
            << " mid=" << report.midpoint
            << " accept>=" << report.accept_band_lower << "\n";
  return 0;
}

int cmd_solve(const CommonParams& p, const std::string& scenarios_in,
              const std::string& scenarios_out) {
  saa::Problem problem = make_model(p.model, p.beta);
  saa::json doc;
  doc["model"] = p.model;
  doc["beta"] = p.beta;
  doc["theta"] = p.theta;
  doc["alpha"] = p.alpha;

  std::optional<saa::SaaSolution> solution;
  if (!scenarios_in.empty()) {
    if (problem.constraints.size() != 1)
      throw std::domain_error(
          "--scenarios applies to single-constraint models only");
    std::ifstream in(scenarios_in);
    if (!in)
      throw std::runtime_error("cannot open scenario file: " + scenarios_in);
    const saa::ScenarioSet set = saa::read_scenarios(in);
    if (set.d != problem.xi.dimension)
      throw std::domain_error("scenario dimension does not match the model");
    doc["n"] = set.n;
    doc["seed"] = set.seed;
    solution = saa::solve_saa(problem, {&set, 1}, p.theta);
  } else {
    const auto plan = saa::plan_sample_size(p.beta, p.theta, p.alpha, p.n_max);
    doc["n"] = plan.n_hat;
    doc["seed"] = p.seed;
    // A solve is replication 1 of a bounds run with the same seed.
    const auto outcome =
        saa::run_single_replication(problem, plan, 1, p.seed);
    if (outcome.decision)
      solution = saa::SaaSolution{*outcome.decision, outcome.cost};
    if (!scenarios_out.empty()) {
      const auto rep_seed = saa::rng::substream(p.seed, 1);
      const auto set = saa::generate_scenarios(problem.xi, plan.n_hat,
                                               saa::rng::substream(rep_seed, 0));
      std::ofstream out(scenarios_out, std::ios::binary);
      if (!out)
        throw std::runtime_error("cannot open scenario file: " + scenarios_out);
      saa::write_scenarios(out, set);
    }
  }

  doc["feasible"] = solution.has_value();
  if (solution) {
    doc["decision"] = solution->decision;
    doc["cost"] = saa::json_cost(solution->cost);
    std::cerr << "solve: feasible, cost=" << solution->cost << "\n";
  } else {
    std::cerr << "solve: no SAA-feasible decision\n";
  }
  emit(doc, p.output);
  return 0;
}

int cmd_bounds(const CommonParams& p, int m, double delta, int jobs) {
  const saa::Problem problem = make_model(p.model, p.beta);
  const auto plan = saa::plan_sample_size(p.beta, p.theta, p.alpha, p.n_max);
  saa::ReplicationConfig config;
  config.jobs = jobs;
  const auto outcomes =
      saa::run_replications(problem, plan, m, p.seed, config);
  const auto report = saa::compute_bounds(outcomes, p.alpha, delta);
  emit(saa::to_json(report), p.output);
  std::cerr << "bounds: L=" << report.l_index << " U=" << report.u_index
            << " lower=" << report.lower_bound
            << " upper=" << report.upper_bound
            << " verdict=" << saa::to_string(report.verdict) << "\n";
  return 0;
}

int cmd_validate(const CommonParams& p, const std::vector<double>& decision,
                 int n_prime) {
  const saa::Problem problem = make_model(p.model, p.beta);
  const auto report =
      saa::validate(decision, problem, n_prime, p.alpha, p.seed);
  emit(saa::to_json(report), p.output);
  std::cerr << "validate: " << (report.pass ? "pass" : "fail") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sample average approximation toolkit for chance constraints"};
  app.require_subcommand(1);

  CommonParams params;
  std::string constraints_file, scenarios_in, scenarios_out;
  double scale = 0.0, delta = 0.8;
  int m = 200, jobs = 1, n_prime = 1000;
  std::vector<double> decision;

  const auto add_common = [&](CLI::App* cmd, bool needs_seed) {
    cmd->add_option("--alpha", params.alpha, "confidence probability");
    cmd->add_option("--n-max", params.n_max, "sample size planning cap");
    cmd->add_option("--output", params.output, "write JSON here instead of stdout");
    if (needs_seed)
      cmd->add_option("--seed", params.seed, "master random seed")
          ->envname("SAA_SEED");
  };

  auto* plan = app.add_subcommand("plan", "a-priori sample size");
  plan->add_option("--beta", params.beta, "satisfaction probability");
  plan->add_option("--theta", params.theta, "error tolerance threshold");
  plan->add_option("--constraints-file", constraints_file,
                   "beta/theta rows for a multi-constraint plan");
  add_common(plan, false);

  auto* bands = app.add_subcommand("bands", "misclassification bands");
  bands->add_option("--beta", params.beta, "satisfaction probability")
      ->required();
  bands->add_option("--theta", params.theta, "error tolerance threshold")
      ->required();
  bands->add_option("--scale", scale,
                    "also report thresholds scaled into decision units");
  add_common(bands, false);

  auto* solve = app.add_subcommand("solve", "one SAA solve");
  solve->add_option("--model", params.model, "model name")->required();
  solve->add_option("--beta", params.beta, "satisfaction probability");
  solve->add_option("--theta", params.theta, "error tolerance threshold")
      ->required();
  solve->add_option("--scenarios", scenarios_in,
                    "read the sample from a saa-scenarios file");
  solve->add_option("--write-scenarios", scenarios_out,
                    "persist the generated sample");
  add_common(solve, true);

  auto* bounds = app.add_subcommand("bounds", "replication bounds");
  bounds->add_option("--model", params.model, "model name")->required();
  bounds->add_option("--beta", params.beta, "satisfaction probability");
  bounds->add_option("--theta", params.theta, "error tolerance threshold")
      ->required();
  bounds->add_option("--m", m, "number of replications")->required();
  bounds->add_option("--delta", delta, "bound confidence level");
  bounds->add_option("--jobs", jobs, "worker threads (output-invariant)");
  add_common(bounds, true);

  auto* validate = app.add_subcommand("validate", "a-posteriori check");
  validate->add_option("--model", params.model, "model name")->required();
  validate->add_option("--beta", params.beta, "satisfaction probability");
  validate->add_option("--decision", decision, "decision vector")
      ->required()
      ->expected(-1);
  validate->add_option("--n", n_prime, "fresh validation sample size");
  add_common(validate, true);

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
    if (plan->parsed()) return cmd_plan(params, constraints_file);
    if (bands->parsed()) return cmd_bands(params, scale);
    if (solve->parsed()) return cmd_solve(params, scenarios_in, scenarios_out);
    if (bounds->parsed()) return cmd_bounds(params, m, delta, jobs);
    if (validate->parsed()) return cmd_validate(params, decision, n_prime);
  } catch (const saa::MTooSmallError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ModelNotFoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
