// Experiment sweeps over random instances: existence probabilities,
// price-of-MMS ratios, frontier shape distributions, and runtime scaling.
// Runners produce structured cells; a CSV driver serializes them with a
// fixed schema so identical configurations yield byte-identical output
// (runtime timings excepted).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "delfair/core.hpp"
#include "delfair/frontier.hpp"

namespace delfair::experiments {

enum class ExperimentKind {
  ExistenceEf1Po,
  ExistenceEf1So,
  ExistenceMmsSo,
  PriceOfMms,
  FrontierDist,
  Runtime,
};
std::string to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::ExistenceEf1Po;
  std::vector<int> sizes;  // empty selects the desk-scale default grid
  std::vector<int> agent_counts = {2};
  int samples = 200;
  std::uint64_t seed = 42;
  SolverLimits limits{};
};

// Desk-scale default size grids, smaller for agent counts where the solver
// cost grows quickly.
std::vector<int> default_sizes(ExperimentKind kind, int agents);

struct RunReport {
  int cells = 0;
  int skipped_cells = 0;
  int skipped_samples = 0;
  int errors = 0;
  std::vector<std::string> warnings;
};

// One (size, agents) cell of an existence sweep. probability is empty when
// the cell was skipped (resource guard tripped); skip_reason says why.
struct ExistenceCell {
  int size = 0;
  int agents = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> probability;
  std::string skip_reason;
};

// Ratios of the cheapest MMS-attaining total to the social optimum, one per
// sample (empty = skipped sample), plus type-7 quantile summaries.
struct PriceCell {
  int size = 0;
  int agents = 0;
  std::vector<std::optional<double>> ratios;
  bool has_summary = false;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

// Frontier stats per sample, plus the mean minimum total per gap value
// (averaged over the samples whose frontier realizes that gap).
struct FrontierDistCell {
  int size = 0;
  int agents = 0;
  std::vector<std::optional<std::vector<FrontierStat>>> per_sample;
  std::vector<std::pair<int, double>> mean_total_by_gap;
};

struct RuntimeCell {
  int size = 0;
  int agents = 0;
  int samples = 0;
  std::optional<double> mean_seconds;
  std::string skip_reason;
};

std::vector<ExistenceCell> run_existence_cells(const ExperimentConfig& config,
                                               RunReport& report);
std::vector<PriceCell> run_price_cells(const ExperimentConfig& config,
                                       RunReport& report);
std::vector<FrontierDistCell> run_frontier_dist_cells(
    const ExperimentConfig& config, RunReport& report);
std::vector<RuntimeCell> run_runtime_cells(const ExperimentConfig& config,
                                           RunReport& report);

// Runs the configured experiment and writes its CSV. Cell skips become
// warnings; unexpected failures are counted in report.errors and the run
// continues with the remaining cells.
RunReport run_experiment(const ExperimentConfig& config, std::ostream& csv,
                         std::ostream* warnings = nullptr);

}  // namespace delfair::experiments
