#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hiring/constants.hpp"
#include "hiring/error.hpp"
#include "hiring/eval.hpp"
#include "hiring/harness.hpp"
#include "hiring/io.hpp"
#include "hiring/lp.hpp"
#include "hiring/oracles.hpp"
#include "hiring/policies.hpp"
#include "hiring/rounding.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hiring;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
};

void emit(const json& j, const Globals& g, const std::string& default_name) {
  if (g.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  fs::path path(g.out);
  if (fs::is_directory(path)) path /= default_name;
  std::ofstream(path) << j.dump(2) << '\n';
  std::cerr << "wrote " << path.string() << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return json::parse(in);
}

void require_model(const AnyInstance& inst, const std::string& model) {
  if (!model.empty() && model != model_name(inst)) {
    throw InvalidInput("instance is a \"" + model_name(inst) + "\" instance, not \"" + model + "\"");
  }
}

json solve_lp_json(const AnyInstance& inst, PivotRule rule) {
  SimplexOptions opts;
  opts.rule = rule;
  switch (inst.index()) {
    case 0: return to_json(solve_lp_ptk(std::get<0>(inst), {.simplex = opts}));
    case 1: return to_json(solve_lp_seq(std::get<1>(inst), opts));
    case 2: return to_json(solve_lp_par(std::get<2>(inst), opts));
    default: return to_json(solve_lp_sim(std::get<3>(inst)));
  }
}

struct PolicyArgs {
  std::string model;
  std::string algo = "alg";
  std::string instance;
  double s = -1.0;
  bool auto_s = false;
  double tau = 0.5;
  bool randomized = false;
  int samples = 32;
};

json policy_json(const PolicyArgs& a, const Globals& g) {
  const AnyInstance inst = load_instance(a.instance);
  require_model(inst, a.model);
  Rng rng(g.seed);
  json out;
  out["model"] = model_name(inst);
  out["algo"] = a.algo;
  const auto bad_algo = [&] {
    return InvalidInput("algorithm \"" + a.algo + "\" is not available for model " + model_name(inst));
  };
  if (const auto* ptk = std::get_if<ProbeTopKInstance>(&inst)) {
    if (a.algo != "alg") throw bad_algo();
    const auto policy = a.randomized ? alg_ptk(*ptk, rng) : alg_ptk_derandomized(*ptk);
    out["policy"] = to_json(policy);
    out["value"] = to_json(eval_committed_order_exact(*ptk, policy));
  } else if (const auto* seq = std::get_if<SeqInstance>(&inst)) {
    if (a.algo == "adaptive") {
      const AdaptiveSeqDp dp(*seq);
      out["order"] = dp.order();
      out["value"] = to_json(exact_result(dp.value()));
      return out;
    }
    CommittedOrderPolicy policy;
    if (a.algo == "alg") {
      policy = a.randomized ? alg_seq(*seq, rng) : alg_seq_derandomized(*seq);
    } else if (a.algo == "prime") {
      policy = alg_seq_prime(*seq);
    } else if (a.algo == "vo") {
      policy = value_ordered_seq(*seq);
    } else if (a.algo == "eo") {
      policy = ev_ordered_seq(*seq);
    } else {
      throw bad_algo();
    }
    out["policy"] = to_json(policy);
    out["value"] = to_json(exact_result(eval_seq_order_exact(*seq, policy.order)));
  } else if (const auto* par = std::get_if<ParInstance>(&inst)) {
    OfferLists lists;
    if (a.algo == "alg") {
      lists = a.randomized ? alg_par(*par, rng) : alg_par_derandomized(*par, a.samples, rng);
    } else if (a.algo == "prime") {
      lists = alg_par_prime(*par);
    } else {
      throw bad_algo();
    }
    out["policy"] = to_json(lists);
    out["value"] = to_json(eval_par_exact(*par, lists));
  } else {
    const auto& sim = std::get<SimInstance>(inst);
    if (a.algo == "alg") {
      OfferProbabilities offers;
      if (a.auto_s) {
        offers = alg_sim_auto(sim, a.tau);
      } else {
        if (a.s < 0.0) throw InvalidInput("alg for sim needs --s or --auto-s");
        offers = alg_sim(sim, a.s);
      }
      out["policy"] = to_json(offers);
      out["value"] = to_json(eval_sim_exact(sim, offers));
      return out;
    }
    SimChoice choice;
    if (a.algo == "vo") {
      choice = value_ordered_sim(sim);
    } else if (a.algo == "eo") {
      choice = ev_ordered_sim(sim);
    } else if (a.algo == "greedy") {
      choice = greedy_sim(sim);
    } else {
      throw bad_algo();
    }
    out["policy"] = {{"offers", choice.offers}};
    out["value"] = to_json(exact_result(choice.value));
  }
  return out;
}

json evaluate_json(const std::string& instance_path, const std::string& policy_path,
                   std::int64_t mc_reps, std::uint64_t seed) {
  const AnyInstance inst = load_instance(instance_path);
  json pj = read_json(policy_path);
  if (pj.contains("policy")) pj = pj["policy"];
  const bool mc = mc_reps > 0;
  if (const auto* ptk = std::get_if<ProbeTopKInstance>(&inst)) {
    const auto policy = committed_policy_from_json(pj);
    return to_json(mc ? simulate_ptk(*ptk, policy, mc_reps, seed)
                      : eval_committed_order_exact(*ptk, policy));
  }
  if (const auto* seq = std::get_if<SeqInstance>(&inst)) {
    const auto order = pj.at("order").get<std::vector<int>>();
    const auto embedded = seq_to_ptk(*seq);
    const auto policy = seq_order_policy(*seq, order);
    return to_json(mc ? simulate_ptk(embedded, policy, mc_reps, seed)
                      : exact_result(eval_seq_order_exact(*seq, order)));
  }
  if (const auto* par = std::get_if<ParInstance>(&inst)) {
    const auto lists = offer_lists_from_json(pj);
    return to_json(mc ? simulate_par(*par, lists, mc_reps, seed) : eval_par_exact(*par, lists));
  }
  const auto& sim = std::get<SimInstance>(inst);
  const OfferProbabilities offers =
      pj.contains("offers") ? offer_set(sim, pj["offers"].get<std::vector<int>>())
                            : offer_probabilities_from_json(pj);
  return to_json(mc ? simulate_sim(sim, offers, mc_reps, seed) : eval_sim_exact(sim, offers));
}

json oracle_json(const std::string& model, const std::string& path) {
  const AnyInstance inst = load_instance(path);
  require_model(inst, model);
  json out{{"model", model_name(inst)}};
  switch (inst.index()) {
    case 0: out["value"] = opt_ptk_bruteforce(std::get<0>(inst)); break;
    case 1: out["value"] = opt_seq_bruteforce(std::get<1>(inst)); break;
    case 2: {
      const auto opt = opt_par_nonadaptive_bruteforce(std::get<2>(inst));
      out["value"] = opt.value;
      out["lists"] = opt.lists.lists;
      break;
    }
    default: {
      const auto opt = opt_sim_bruteforce(std::get<3>(inst));
      out["value"] = opt.value;
      out["subset"] = opt.subset;
    }
  }
  return out;
}

json round_json(const std::string& path, std::uint64_t seed) {
  const json in = read_json(path);
  Rng rng(seed);
  if (in.contains("y")) {
    const auto y = in["y"].get<std::vector<double>>();
    json outcomes = json::array();
    for (const auto& o : dr_outcomes(y)) {
      outcomes.push_back({{"bits", std::vector<int>(o.bits.begin(), o.bits.end())},
                          {"probability", o.probability}});
    }
    const auto bits = simple_dr(y, rng);
    return {{"sample", std::vector<int>(bits.begin(), bits.end())}, {"outcomes", outcomes}};
  }
  const auto rows = in.at("weights").get<std::vector<std::vector<double>>>();
  Matrix<double> w(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != w.cols()) throw InvalidInput("weight rows must have equal length");
    for (std::size_t j = 0; j < w.cols(); ++j) w(i, j) = rows[i][j];
  }
  const auto out = gkps_round(w, rng);
  json m = json::array();
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    m.push_back(std::vector<int>(row.begin(), row.end()));
  }
  return {{"sample", m}};
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

void write_constants(const std::string& k_list, double step, const std::string& out_path) {
  const auto ks = parse_int_list(k_list);
  const auto rows = alpha_beta_table(ks, step);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw InvalidInput("cannot write " + out_path);
    os = &file;
  }
  *os << "k,tau,alpha,beta,s_alpha,s_beta,threshold\n";
  for (const auto& r : rows) {
    *os << r.k << ',' << format_number(r.tau) << ',' << format_number(r.alpha) << ','
        << format_number(r.beta) << ',' << format_number(r.s_alpha) << ','
        << format_number(r.s_beta) << ',' << format_number(r.threshold) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LP-based hiring policies: solve, build, evaluate and benchmark"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str();
  app.add_option("--out", g.out, "Output file or directory");

  std::string instance_path, model;

  auto* solve = app.add_subcommand("solve-lp", "Solve the LP relaxation of an instance");
  std::string rule = "dantzig";
  solve->add_option("--instance", instance_path, "Instance JSON")->required();
  solve->add_option("--rule", rule, "Pivot rule")->check(CLI::IsMember({"dantzig", "bland"}));

  auto* policy = app.add_subcommand("policy", "Build a policy and report its value");
  PolicyArgs pa;
  policy->add_option("--model", pa.model, "ptk, seq, par or sim");
  policy->add_option("--algo", pa.algo, "Algorithm")
      ->check(CLI::IsMember({"alg", "prime", "adaptive", "vo", "eo", "greedy"}));
  policy->add_option("--instance", pa.instance, "Instance JSON")->required();
  auto* s_opt = policy->add_option("--s", pa.s, "Truncation parameter for sim");
  auto* auto_opt = policy->add_flag("--auto-s", pa.auto_s, "Pick s from the guarantee for --tau");
  s_opt->excludes(auto_opt);
  policy->add_option("--tau", pa.tau, "Value lower bound for --auto-s");
  policy->add_flag("--randomized", pa.randomized, "Sample one rounding instead of derandomizing");
  policy->add_option("--samples", pa.samples, "Roundings tried by derandomized par");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a policy exactly or by simulation");
  std::string policy_path;
  bool exact_flag = false;
  std::int64_t mc_reps = 0;
  evaluate->add_option("--instance", instance_path, "Instance JSON")->required();
  evaluate->add_option("--policy", policy_path, "Policy JSON (as emitted by `policy`)")->required();
  auto* exact_opt = evaluate->add_flag("--exact", exact_flag, "Exact evaluation (default)");
  evaluate->add_option("--mc", mc_reps, "Monte-Carlo replications")->excludes(exact_opt);

  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum of a small instance");
  oracle->add_option("--model", model, "ptk, seq, par or sim");
  oracle->add_option("--instance", instance_path, "Instance JSON")->required();

  auto* round = app.add_subcommand("round", "Dependent rounding of {\"y\": ...} or {\"weights\": ...}");
  std::string round_path;
  round->add_option("--input", round_path, "Input JSON")->required();

  auto* constants = app.add_subcommand("constants", "Tabulate alpha and beta over a tau grid");
  std::string k_list = "1,5,10,20";
  double tau_step = 0.01;
  constants->add_option("--k-list", k_list, "Comma-separated k values")->capture_default_str();
  constants->add_option("--tau-grid", tau_step, "Tau step")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Experiments and audits");
  bench->require_subcommand(1);
  auto* figures = bench->add_subcommand("figures", "Offering experiments, CSV per k");
  std::string config_path;
  figures->add_option("--config", config_path, "Experiment config JSON");
  auto* audit = bench->add_subcommand("audit", "Guarantee audits over random families");
  AuditConfig ac;
  audit->add_option("--instances", ac.instances, "Instances per family")->capture_default_str();
  audit->add_option("--tau", ac.tau, "Value lower bound for the sim family")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      emit(solve_lp_json(load_instance(instance_path),
                         rule == "bland" ? PivotRule::bland : PivotRule::dantzig),
           g, "lp.json");
    } else if (*policy) {
      emit(policy_json(pa, g), g, "policy.json");
    } else if (*evaluate) {
      emit(evaluate_json(instance_path, policy_path, mc_reps, g.seed), g, "eval.json");
    } else if (*oracle) {
      emit(oracle_json(model, instance_path), g, "oracle.json");
    } else if (*round) {
      emit(round_json(round_path, g.seed), g, "round.json");
    } else if (*constants) {
      write_constants(k_list, tau_step, g.out);
    } else if (*figures) {
      ExperimentConfig config =
          config_path.empty() ? ExperimentConfig{} : ExperimentConfig::from_json(read_json(config_path));
      if (app.get_option("--seed")->count() > 0) config.seed = g.seed;
      if (app.get_option("--threads")->count() > 0) config.threads = g.threads;
      const fs::path dir = g.out.empty() ? fs::path("figures") : fs::path(g.out);
      for (const auto& path : emit_figures(run_offering_experiment(config), dir)) {
        std::cerr << "wrote " << path.string() << '\n';
      }
    } else if (*audit) {
      ac.seed = g.seed;
      ac.threads = g.threads;
      const auto report = run_guarantee_audit(ac);
      const fs::path dir = g.out.empty() ? fs::path("audit") : fs::path(g.out);
      fs::create_directories(dir);
      write_audit_csv(report, dir / "audit.csv");
      std::ofstream(dir / "summary.json") << to_json(report).dump(2) << '\n';
      std::cout << to_json(report).dump(2) << '\n';
      return report.passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
