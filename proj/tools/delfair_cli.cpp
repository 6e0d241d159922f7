// delfair command line: generate instances, solve them, check allocations
// and existence questions, and run experiment sweeps.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "delfair/efficiency.hpp"
#include "delfair/experiments.hpp"
#include "delfair/fairness.hpp"
#include "delfair/frontier.hpp"
#include "delfair/gen.hpp"
#include "delfair/oracle.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

std::string profile_csv(const delfair::CostProfile& profile) {
  std::string out;
  for (int i = 0; i < profile.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(profile[i]);
  }
  return out;
}

std::string allocation_one_line(const delfair::Allocation& allocation) {
  std::string out;
  for (int agent = 0; agent < allocation.agents(); ++agent) {
    if (agent > 0) out += "; ";
    out += "agent " + std::to_string(agent) + ":";
    for (delfair::VertexId v : allocation.bundle(agent)) {
      out += ' ' + std::to_string(v);
    }
  }
  return out;
}

std::string frontier_lines(const delfair::Frontier& frontier) {
  std::string out;
  for (const auto& entry : frontier.entries()) {
    out += profile_csv(entry.profile);
    out += '\t';
    out += allocation_one_line(entry.allocation);
    out += '\n';
  }
  return out;
}

int run_gen(int prufer_size, bool prufer_set, const std::vector<int>& spider,
            const std::string& fixture_name, int agents, bool agents_set,
            std::uint64_t seed, const std::string& out_path) {
  int selected = (prufer_set ? 1 : 0) + (spider.empty() ? 0 : 1) +
                 (fixture_name.empty() ? 0 : 1);
  if (selected != 1) {
    throw std::invalid_argument(
        "choose exactly one of --prufer, --spider, --fixture");
  }
  delfair::Instance instance{agents, delfair::RootedTree(1, 0, {})};
  if (prufer_set) {
    instance.tree = delfair::gen::random_tree_prufer(prufer_size, seed);
  } else if (!spider.empty()) {
    instance.tree = delfair::gen::spider_from_integers(spider);
  } else {
    instance = delfair::gen::fixture(fixture_name);
    if (agents_set) instance.agents = agents;
  }
  write_output(out_path, delfair::serialize_instance(instance));
  return 0;
}

int run_solve(const std::string& in_path, bool frontier_flag, bool leximin_flag,
              bool mms_flag, const std::string& mms_method, bool ef1_flag,
              const std::string& out_path) {
  int selected = (frontier_flag ? 1 : 0) + (leximin_flag ? 1 : 0) +
                 (mms_flag ? 1 : 0) + (ef1_flag ? 1 : 0);
  if (selected != 1) {
    throw std::invalid_argument(
        "choose exactly one of --frontier, --leximin, --mms, --ef1");
  }
  delfair::Instance instance = delfair::parse_instance(read_file(in_path));
  std::string out;
  if (frontier_flag) {
    out = frontier_lines(delfair::find_pareto_frontier(instance));
  } else if (leximin_flag) {
    delfair::Frontier frontier = delfair::find_pareto_frontier(instance);
    const delfair::FrontierEntry& best = delfair::leximin_select(frontier);
    out = profile_csv(best.profile) + '\t' +
          allocation_one_line(best.allocation) + '\n';
  } else if (mms_flag) {
    delfair::MmsMethod method = delfair::MmsMethod::Frontier;
    if (mms_method == "brute") {
      method = delfair::MmsMethod::BruteForce;
    } else if (mms_method != "frontier") {
      throw std::invalid_argument("--mms-method must be frontier or brute");
    }
    delfair::MmsResult result = delfair::mms_cost(instance, method);
    out = "mms=" + std::to_string(result.value) +
          " method=" + (method == delfair::MmsMethod::Frontier ? "frontier"
                                                               : "brute") +
          " witness=" + delfair::format_allocation_inline(result.witness) +
          '\n';
  } else {
    out = delfair::serialize_allocation(delfair::envy_graph_ef1(instance));
  }
  write_output(out_path, out);
  return 0;
}

int run_check(const std::string& in_path, const std::string& alloc_path,
              const std::string& exists_combo, bool oracle_flag) {
  delfair::Instance instance = delfair::parse_instance(read_file(in_path));
  std::ostringstream out;

  if (!exists_combo.empty()) {
    delfair::ExistenceVerdict verdict;
    delfair::oracle::FairnessCriterion fairness;
    delfair::oracle::EfficiencyCriterion efficiency;
    if (exists_combo == "ef1-po") {
      verdict = delfair::exists_ef1_po(delfair::find_pareto_frontier(instance));
      fairness = delfair::oracle::FairnessCriterion::Ef1;
      efficiency = delfair::oracle::EfficiencyCriterion::Po;
    } else if (exists_combo == "ef1-so") {
      verdict = delfair::exists_ef1_so(instance);
      fairness = delfair::oracle::FairnessCriterion::Ef1;
      efficiency = delfair::oracle::EfficiencyCriterion::So;
    } else if (exists_combo == "mms-so") {
      delfair::MmsResult mms = delfair::mms_cost(instance);
      verdict = delfair::exists_mms_so(instance, mms.value);
      fairness = delfair::oracle::FairnessCriterion::Mms;
      efficiency = delfair::oracle::EfficiencyCriterion::So;
    } else {
      throw std::invalid_argument("--exists must be ef1-po, ef1-so or mms-so");
    }
    out << delfair::serialize_verdict(verdict) << '\n';
    if (oracle_flag) {
      out << "oracle: "
          << delfair::serialize_verdict(
                 delfair::oracle::brute_exists(instance, fairness, efficiency))
          << '\n';
    }
    std::cout << out.str();
    return 0;
  }

  if (alloc_path.empty()) {
    throw std::invalid_argument("check needs either -a or --exists");
  }
  delfair::Allocation allocation =
      delfair::parse_allocation(read_file(alloc_path), instance.agents);
  allocation.validate(instance);
  std::vector<int> costs = delfair::bundle_costs(instance, allocation);
  delfair::CostProfile profile = delfair::cost_profile(instance, allocation);

  out << "complete=" << (allocation.is_complete(instance) ? "true" : "false")
      << '\n';
  std::string costs_text;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (i > 0) costs_text += ',';
    costs_text += std::to_string(costs[i]);
  }
  out << "costs=" << costs_text << '\n';
  out << "profile=" << profile_csv(profile) << '\n';
  out << "ef=" << (delfair::is_ef(instance, allocation) ? "true" : "false")
      << '\n';
  out << "ef1=" << (delfair::is_ef1(instance, allocation) ? "true" : "false")
      << '\n';
  if (allocation.is_complete(instance)) {
    out << "so=" << (delfair::is_so(instance, allocation) ? "true" : "false")
        << '\n';
    try {
      delfair::Frontier frontier = delfair::find_pareto_frontier(instance);
      out << "po="
          << (delfair::is_po(instance, allocation, frontier) ? "true" : "false")
          << '\n';
      delfair::MmsResult mms = delfair::mms_cost(instance);
      out << "mms=" << mms.value << '\n';
      out << "mms_fair="
          << (delfair::is_mms(instance, allocation, mms.value) ? "true"
                                                               : "false")
          << '\n';
    } catch (const delfair::ResourceLimitError&) {
      out << "po=skipped\nmms=skipped\nmms_fair=skipped\n";
    }
  }
  if (oracle_flag) {
    delfair::oracle::BruteMms oracle_mms = delfair::oracle::brute_mms(instance);
    out << "oracle_mms=" << oracle_mms.value << '\n';
    std::vector<delfair::CostProfile> undominated =
        delfair::oracle::brute_pareto_profiles(instance);
    bool po = false;
    for (const auto& p : undominated) {
      if (p == profile) {
        po = true;
        break;
      }
    }
    out << "oracle_po=" << (po ? "true" : "false") << '\n';
    try {
      delfair::Frontier frontier = delfair::find_pareto_frontier(instance);
      out << "oracle_frontier_match="
          << (frontier.profiles() == undominated ? "true" : "false") << '\n';
    } catch (const delfair::ResourceLimitError&) {
      out << "oracle_frontier_match=skipped\n";
    }
  }
  std::cout << out.str();
  return 0;
}

int run_exp(const std::string& kind_name, const std::vector<int>& sizes,
            const std::vector<int>& agents, int samples, std::uint64_t seed,
            const std::string& out_path) {
  auto kind = delfair::experiments::parse_kind(kind_name);
  if (!kind) {
    throw std::invalid_argument("unknown experiment '" + kind_name + "'");
  }
  delfair::experiments::ExperimentConfig config;
  config.kind = *kind;
  config.sizes = sizes;
  if (!agents.empty()) config.agent_counts = agents;
  config.samples = samples;
  config.seed = seed;

  std::ostringstream csv;
  delfair::experiments::RunReport report =
      delfair::experiments::run_experiment(config, csv, &std::cerr);
  write_output(out_path, csv.str());
  return report.errors > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fair division of delivery orders on rooted trees"};
  app.require_subcommand(1);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  int prufer_size = 0;
  std::vector<int> spider;
  std::string fixture_name;
  int agents = 2;
  std::uint64_t seed = 42;
  std::string gen_out;
  auto* prufer_opt =
      gen_cmd->add_option("--prufer", prufer_size,
                          "uniform random tree with this many vertices");
  gen_cmd->add_option("--spider", spider,
                      "spider with these leg lengths (comma separated)")
      ->delimiter(',');
  gen_cmd->add_option("--fixture", fixture_name, "named fixture (caterpillar, twinpath)");
  auto* agents_opt = gen_cmd->add_option("--agents", agents, "agent count");
  gen_cmd->add_option("--seed", seed, "random seed");
  gen_cmd->add_option("-o,--out", gen_out, "output file (default stdout)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance");
  std::string solve_in;
  bool frontier_flag = false, leximin_flag = false, mms_flag = false,
       ef1_flag = false;
  std::string mms_method = "frontier";
  std::string solve_out;
  solve_cmd->add_option("-i,--instance", solve_in, "instance file")->required();
  solve_cmd->add_flag("--frontier", frontier_flag,
                      "print the full Pareto frontier");
  solve_cmd->add_flag("--leximin", leximin_flag, "print the leximin entry");
  solve_cmd->add_flag("--mms", mms_flag, "print the MMS value and witness");
  solve_cmd->add_option("--mms-method", mms_method, "frontier or brute");
  solve_cmd->add_flag("--ef1", ef1_flag, "print an EF1 allocation");
  solve_cmd->add_option("-o,--out", solve_out, "output file (default stdout)");

  // check
  auto* check_cmd = app.add_subcommand("check", "check allocations/existence");
  std::string check_in, check_alloc, exists_combo;
  bool oracle_flag = false;
  check_cmd->add_option("-i,--instance", check_in, "instance file")->required();
  check_cmd->add_option("-a,--allocation", check_alloc, "allocation file");
  check_cmd->add_option("--exists", exists_combo,
                        "existence question: ef1-po, ef1-so or mms-so");
  check_cmd->add_flag("--oracle", oracle_flag,
                      "cross-check with the brute-force oracle");

  // exp
  auto* exp_cmd = app.add_subcommand("exp", "run an experiment sweep");
  std::string kind_name;
  std::vector<int> sizes;
  std::vector<int> exp_agents;
  int samples = 200;
  std::uint64_t exp_seed = 42;
  std::string exp_out;
  exp_cmd->add_option("kind", kind_name,
                      "existence-ef1-po, existence-ef1-so, existence-mms-so, "
                      "price-of-mms, frontier-dist or runtime")
      ->required();
  exp_cmd->add_option("--sizes", sizes, "instance sizes (comma separated)")
      ->delimiter(',');
  exp_cmd->add_option("--agents", exp_agents, "agent counts (comma separated)")
      ->delimiter(',');
  exp_cmd->add_option("--samples", samples, "samples per cell");
  exp_cmd->add_option("--seed", exp_seed, "base seed");
  exp_cmd->add_option("--out", exp_out, "CSV output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      return run_gen(prufer_size, prufer_opt->count() > 0, spider, fixture_name,
                     agents, agents_opt->count() > 0, seed, gen_out);
    }
    if (solve_cmd->parsed()) {
      return run_solve(solve_in, frontier_flag, leximin_flag, mms_flag,
                       mms_method, ef1_flag, solve_out);
    }
    if (check_cmd->parsed()) {
      return run_check(check_in, check_alloc, exists_combo, oracle_flag);
    }
    if (exp_cmd->parsed()) {
      return run_exp(kind_name, sizes, exp_agents, samples, exp_seed, exp_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
