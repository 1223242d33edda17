#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "sched/adversary.hpp"
#include "sched/analysis.hpp"
#include "sched/generators.hpp"
#include "sched/json_io.hpp"
#include "sched/offline.hpp"
#include "sched/rng.hpp"
#include "sched/schedulers.hpp"
#include "verify.hpp"

namespace sched::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

AlgoKind parse_algo(const std::string& name) {
  if (name == "ae") return AlgoKind::ae;
  if (name == "pcp") return AlgoKind::pcp;
  if (name == "rand-pcp") return AlgoKind::rand_pcp;
  if (name == "pcp-parallel") return AlgoKind::pcp_parallel;
  if (name == "uniform-parallel") return AlgoKind::uniform_parallel;
  throw std::invalid_argument("unknown algorithm " + name);
}

void emit(const std::string& text, const std::string& path) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body += '\n';
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << body;
}

ordered_json report_json(const RatioReport& r) {
  return ordered_json{{"algo", r.algo},       {"alpha", r.alpha},
                      {"beta", r.beta},       {"m", r.m},
                      {"alg_cost", r.alg_cost}, {"opt_cost", r.opt_cost},
                      {"ratio", r.ratio},     {"bound", r.bound},
                      {"fingerprint", r.fingerprint}};
}

ordered_json game_json(const GameResult& g) {
  ordered_json transcript = ordered_json::array();
  for (const Commitment& c : g.transcript)
    transcript.push_back(ordered_json{{"job_id", c.job_id},
                                      {"machine", c.machine},
                                      {"start", c.start},
                                      {"tested", c.tested},
                                      {"revealed_p", c.revealed_p},
                                      {"end", c.end}});
  return ordered_json{{"m", g.m},
                      {"scheduler", g.scheduler},
                      {"j_prime", g.j_prime},
                      {"j_prime_tested", g.j_prime_tested},
                      {"alg_makespan", g.alg_makespan},
                      {"opt_makespan", g.opt_makespan},
                      {"ratio", g.ratio},
                      {"transcript", transcript}};
}

int do_run(const AlgoSpec& spec, const std::string& input,
           const std::string& output) {
  Instance inst = load_instance_file(input);
  emit(report_json(empirical_ratio(spec, inst)).dump(2), output);
  return 0;
}

int do_sweep(AlgoSpec spec, std::vector<double> alphas,
             std::vector<double> betas, int n, long trials, std::uint64_t seed,
             const std::string& output) {
  if (alphas.empty()) alphas = {spec.alpha};
  if (betas.empty()) betas = {spec.beta};
  if (spec.kind == AlgoKind::rand_pcp && n > 12)
    throw std::invalid_argument(
        "rand-pcp sweeps compute exact expectations; use --n <= 12");
  const double r_maxes[] = {1.5, 3.0, 6.0};
  std::ostringstream csv;
  csv << "algo,alpha,beta,m,n,seed,alg_cost,opt_cost,ratio,bound,min_slack\n";
  for (double alpha : alphas)
    for (double beta : betas) {
      spec.alpha = alpha;
      spec.beta = beta;
      AlgoParams params{alpha, beta};
      require_params(params);
      bool pair_algo =
          spec.kind == AlgoKind::ae || spec.kind == AlgoKind::pcp;
      double rand_bound = spec.kind == AlgoKind::rand_pcp
                              ? rand_worst_ratio(beta).ratio
                              : 0;
      RatioReport best{};
      best.ratio = -std::numeric_limits<double>::infinity();
      double min_slack = std::numeric_limits<double>::infinity();
      for (long i = 0; i < trials; ++i) {
        std::uint64_t tseed =
            splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(i + 1)));
        GenConfig gen;
        gen.n = 1 + int(splitmix64(tseed) % std::uint64_t(n));
        gen.r_max = r_maxes[i % 3];
        gen.seed = tseed;
        Instance inst = gen_random_instance(gen);
        if (spec.kind == AlgoKind::uniform_parallel)
          for (Job& j : inst.jobs) j.t = inst.jobs.front().t;
        if (spec.kind == AlgoKind::rand_pcp) {
          double ev = rand_expected_cost_exact(inst, beta);
          double opt = opt_cost_single(inst);
          RatioReport r{algo_name(spec.kind), alpha,      beta,
                        spec.m,               ev,         opt,
                        opt > 0 ? ev / opt : 1, rand_bound,
                        instance_fingerprint(inst)};
          if (r.ratio > best.ratio) best = r;
        } else {
          RatioReport r = empirical_ratio(spec, inst);
          if (r.ratio > best.ratio) best = r;
          if (pair_algo) {
            Schedule s = run_algo(spec, inst);
            PairAlgo pa =
                spec.kind == AlgoKind::ae ? PairAlgo::ae : PairAlgo::pcp;
            min_slack =
                std::min(min_slack, check_pair_bounds(s, pa, params).min_slack);
          }
        }
      }
      csv << algo_name(spec.kind) << ',' << format_double(alpha) << ','
          << format_double(beta) << ',' << spec.m << ',' << n << ',' << seed
          << ',' << format_double(best.alg_cost) << ','
          << format_double(best.opt_cost) << ',' << format_double(best.ratio)
          << ',' << format_double(best.bound) << ',';
      if (pair_algo && std::isfinite(min_slack)) csv << format_double(min_slack);
      csv << '\n';
    }
  emit(csv.str(), output);
  return 0;
}

int do_verify(const AlgoSpec& spec, int n, long trials, std::uint64_t seed,
              const std::string& output) {
  VerifyConfig cfg;
  cfg.spec = spec;
  cfg.n = n;
  cfg.trials = trials;
  cfg.seed = seed;
  VerifyOutcome o = verify_battery(cfg);
  ordered_json j{{"algo", algo_name(spec.kind)},
                 {"alpha", spec.alpha},
                 {"beta", spec.beta},
                 {"m", spec.m},
                 {"n", n},
                 {"trials_requested", trials},
                 {"trials_completed", o.trials},
                 {"seed", seed},
                 {"max_ratio", o.max_ratio},
                 {"bound", o.bound},
                 {"min_slack", o.min_slack},
                 {"violations", o.failed ? 1 : 0}};
  if (o.failed) {
    j["failure"] = o.failure;
    j["failed_trial"] = o.failed_trial;
    j["offending_instance"] = o.offending_instance.empty()
                                  ? ordered_json()
                                  : ordered_json::parse(o.offending_instance);
  }
  emit(j.dump(2), output);
  return o.failed ? 1 : 0;
}

int do_adversary(int m, const std::string& scheduler,
                 const std::string& output) {
  BaselineKind kind = scheduler == "never-test" ? BaselineKind::never_test
                                                : BaselineKind::test_all;
  auto s = make_baseline_scheduler(kind);
  emit(game_json(run_adversary_game(*s, m)).dump(2), output);
  return 0;
}

int do_search(const AlgoSpec& spec, int n, long budget, std::uint64_t seed,
              const std::string& output) {
  SearchResult sr = worst_case_search(spec, n, budget, seed);
  ordered_json j{
      {"instance", ordered_json::parse(serialize_instance(sr.instance))},
      {"report", report_json(sr.report)},
      {"evaluations", sr.evaluations}};
  emit(j.dump(2), output);
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"scheduling laboratory for jobs with optional testing"};
  app.require_subcommand(1);

  std::string alg = "pcp";
  double alpha = 1, beta = 1;
  int m = 1, n = 8;
  long trials = 1000, budget = 10000;
  std::uint64_t seed = 0;
  std::string input, output, scheduler = "test-all";
  std::vector<double> alphas, betas;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--alg", alg,
                  "one of ae, pcp, rand-pcp, pcp-parallel, uniform-parallel")
        ->check(CLI::IsMember({"ae", "pcp", "rand-pcp", "pcp-parallel",
                               "uniform-parallel"}));
    c->add_option("--alpha", alpha, "testing threshold parameter, >= 1");
    c->add_option("--beta", beta, "test weighting parameter, > 0");
    c->add_option("--m", m, "machine count for the parallel algorithms")
        ->check(CLI::PositiveNumber);
    c->add_option("--seed", seed, "64-bit seed (rand-pcp coin flips)");
    c->add_option("--output", output, "write the report to a file");
  };

  CLI::App* run_cmd =
      app.add_subcommand("run", "run one algorithm on one instance file");
  add_common(run_cmd);
  run_cmd->add_option("--input", input, "instance JSON file")->required();

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "grid over alpha and beta; one CSV row of empirical maxima per "
               "cell (uniform-parallel rows replay each instance with a "
               "common testing time)");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--alphas", alphas, "comma-separated alpha grid")
      ->delimiter(',');
  sweep_cmd->add_option("--betas", betas, "comma-separated beta grid")
      ->delimiter(',');
  sweep_cmd->add_option("--n", n, "max jobs per instance")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--trials", trials, "instances per grid cell")
      ->check(CLI::PositiveNumber);

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "check invariants on random instances; exit 1 on violation");
  add_common(verify_cmd);
  verify_cmd->add_option("--n", n, "max jobs per instance")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--trials", trials, "number of random instances")
      ->check(CLI::PositiveNumber);

  CLI::App* adversary_cmd = app.add_subcommand(
      "adversary", "play the makespan lower-bound game against a baseline");
  adversary_cmd->add_option("--m", m, "machine count, >= 2")->required();
  adversary_cmd
      ->add_option("--scheduler", scheduler, "test-all or never-test")
      ->check(CLI::IsMember({"test-all", "never-test"}));
  adversary_cmd->add_option("--output", output, "write the report to a file");

  CLI::App* search_cmd = app.add_subcommand(
      "search", "hill-climb for high-ratio instances; print the best found");
  add_common(search_cmd);
  search_cmd->add_option("--n", n, "jobs per candidate instance")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--budget", budget, "max algorithm evaluations")
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("sched");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    AlgoSpec spec;
    spec.kind = parse_algo(alg);
    spec.alpha = alpha;
    spec.beta = beta;
    spec.m = m;
    spec.seed = seed;
    if (run_cmd->parsed()) return do_run(spec, input, output);
    if (sweep_cmd->parsed())
      return do_sweep(spec, alphas, betas, n, trials, seed, output);
    if (verify_cmd->parsed()) return do_verify(spec, n, trials, seed, output);
    if (adversary_cmd->parsed()) return do_adversary(m, scheduler, output);
    if (search_cmd->parsed()) return do_search(spec, n, budget, seed, output);
    throw std::logic_error("no subcommand parsed");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace sched::cli
