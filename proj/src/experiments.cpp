#include "delfair/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "delfair/efficiency.hpp"
#include "delfair/gen.hpp"

namespace delfair::experiments {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::ExistenceEf1Po:
      return "existence-ef1-po";
    case ExperimentKind::ExistenceEf1So:
      return "existence-ef1-so";
    case ExperimentKind::ExistenceMmsSo:
      return "existence-mms-so";
    case ExperimentKind::PriceOfMms:
      return "price-of-mms";
    case ExperimentKind::FrontierDist:
      return "frontier-dist";
    case ExperimentKind::Runtime:
      return "runtime";
  }
  throw std::logic_error("unhandled experiment kind");
}

std::optional<ExperimentKind> parse_kind(std::string_view name) {
  for (ExperimentKind kind :
       {ExperimentKind::ExistenceEf1Po, ExperimentKind::ExistenceEf1So,
        ExperimentKind::ExistenceMmsSo, ExperimentKind::PriceOfMms,
        ExperimentKind::FrontierDist, ExperimentKind::Runtime}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::vector<int> default_sizes(ExperimentKind kind, int agents) {
  std::vector<int> sizes;
  switch (kind) {
    case ExperimentKind::ExistenceEf1Po:
    case ExperimentKind::ExistenceEf1So:
    case ExperimentKind::ExistenceMmsSo: {
      int cap = agents <= 4 ? 100 : 40;
      for (int s = 10; s <= cap; s += 10) sizes.push_back(s);
      break;
    }
    case ExperimentKind::PriceOfMms:
      if (agents <= 2) {
        for (int s = 100; s <= 400; s += 100) sizes.push_back(s);
      } else {
        for (int s = 50; s <= 150; s += 50) sizes.push_back(s);
      }
      break;
    case ExperimentKind::FrontierDist:
      sizes.push_back(100);
      break;
    case ExperimentKind::Runtime:
      for (int s = 10; s <= 100; s += 10) sizes.push_back(s);
      break;
  }
  return sizes;
}

namespace {

void validate_config(const ExperimentConfig& config) {
  if (config.samples < 1) {
    throw std::invalid_argument("samples must be positive");
  }
  if (config.agent_counts.empty()) {
    throw std::invalid_argument("agent counts must not be empty");
  }
  for (int n : config.agent_counts) {
    if (n < 1) throw std::invalid_argument("agent count must be positive");
  }
  for (int s : config.sizes) {
    if (s < 2) throw std::invalid_argument("instance size must be at least 2");
  }
}

std::vector<int> cell_sizes(const ExperimentConfig& config, int agents) {
  return config.sizes.empty() ? default_sizes(config.kind, agents)
                              : config.sizes;
}

Instance sample_instance(const ExperimentConfig& config, int size, int agents,
                         int index) {
  return Instance{agents, gen::random_tree_prufer(
                              size, gen::sample_seed(config.seed, size, index))};
}

int frontier_mms(const Frontier& frontier) {
  int best = std::numeric_limits<int>::max();
  for (const auto& entry : frontier.entries()) {
    best = std::min(best, entry.profile.max());
  }
  return best;
}

// Type-7 quantile of a sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
  double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted[lo];
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

void warn(RunReport& report, std::string message) {
  report.warnings.push_back(std::move(message));
}

}  // namespace

std::vector<ExistenceCell> run_existence_cells(const ExperimentConfig& config,
                                               RunReport& report) {
  validate_config(config);
  std::vector<ExistenceCell> cells;
  for (int agents : config.agent_counts) {
    for (int size : cell_sizes(config, agents)) {
      ExistenceCell cell{size, agents, config.samples, config.seed, {}, {}};
      ++report.cells;
      try {
        int hits = 0;
        for (int k = 0; k < config.samples; ++k) {
          Instance instance = sample_instance(config, size, agents, k);
          bool exists = false;
          switch (config.kind) {
            case ExperimentKind::ExistenceEf1Po:
              exists = exists_ef1_po(
                           find_pareto_frontier(instance, config.limits))
                           .exists;
              break;
            case ExperimentKind::ExistenceEf1So:
              exists = exists_ef1_so(instance, config.limits).exists;
              break;
            case ExperimentKind::ExistenceMmsSo: {
              Frontier frontier = find_pareto_frontier(instance, config.limits);
              exists = exists_mms_so(instance, frontier_mms(frontier),
                                     config.limits)
                           .exists;
              break;
            }
            default:
              throw std::invalid_argument("not an existence experiment");
          }
          if (exists) ++hits;
        }
        cell.probability = static_cast<double>(hits) / config.samples;
      } catch (const ResourceLimitError& e) {
        cell.skip_reason = e.what();
        ++report.skipped_cells;
        warn(report, to_string(config.kind) + " cell size=" +
                         std::to_string(size) + " agents=" +
                         std::to_string(agents) + " skipped: " + e.what());
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::vector<PriceCell> run_price_cells(const ExperimentConfig& config,
                                       RunReport& report) {
  validate_config(config);
  std::vector<PriceCell> cells;
  for (int agents : config.agent_counts) {
    for (int size : cell_sizes(config, agents)) {
      PriceCell cell;
      cell.size = size;
      cell.agents = agents;
      ++report.cells;
      for (int k = 0; k < config.samples; ++k) {
        try {
          Instance instance = sample_instance(config, size, agents, k);
          Frontier frontier = find_pareto_frontier(instance, config.limits);
          int mms = frontier_mms(frontier);
          int best_total = std::numeric_limits<int>::max();
          for (const auto& entry : frontier.entries()) {
            if (entry.profile.max() == mms) {
              best_total = std::min(best_total, entry.profile.total());
            }
          }
          cell.ratios.emplace_back(static_cast<double>(best_total) /
                                   instance.tree.edge_count());
        } catch (const ResourceLimitError& e) {
          cell.ratios.emplace_back(std::nullopt);
          ++report.skipped_samples;
          warn(report, "price-of-mms size=" + std::to_string(size) +
                           " agents=" + std::to_string(agents) + " sample " +
                           std::to_string(k) + " skipped: " + e.what());
        }
      }
      std::vector<double> valid;
      for (const auto& r : cell.ratios) {
        if (r) valid.push_back(*r);
      }
      if (!valid.empty()) {
        std::sort(valid.begin(), valid.end());
        cell.has_summary = true;
        cell.median = quantile(valid, 0.5);
        cell.q1 = quantile(valid, 0.25);
        cell.q3 = quantile(valid, 0.75);
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::vector<FrontierDistCell> run_frontier_dist_cells(
    const ExperimentConfig& config, RunReport& report) {
  validate_config(config);
  std::vector<FrontierDistCell> cells;
  for (int agents : config.agent_counts) {
    for (int size : cell_sizes(config, agents)) {
      FrontierDistCell cell;
      cell.size = size;
      cell.agents = agents;
      ++report.cells;
      std::map<int, std::pair<double, int>> totals;  // gap -> (sum, count)
      for (int k = 0; k < config.samples; ++k) {
        try {
          Instance instance = sample_instance(config, size, agents, k);
          Frontier frontier = find_pareto_frontier(instance, config.limits);
          std::vector<FrontierStat> stats = frontier_stats(frontier);
          for (const auto& stat : stats) {
            auto& [sum, count] = totals[stat.gap];
            sum += stat.total;
            ++count;
          }
          cell.per_sample.emplace_back(std::move(stats));
        } catch (const ResourceLimitError& e) {
          cell.per_sample.emplace_back(std::nullopt);
          ++report.skipped_samples;
          warn(report, "frontier-dist size=" + std::to_string(size) +
                           " agents=" + std::to_string(agents) + " sample " +
                           std::to_string(k) + " skipped: " + e.what());
        }
      }
      for (const auto& [gap, agg] : totals) {
        cell.mean_total_by_gap.emplace_back(gap, agg.first / agg.second);
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::vector<RuntimeCell> run_runtime_cells(const ExperimentConfig& config,
                                           RunReport& report) {
  validate_config(config);
  std::vector<RuntimeCell> cells;
  for (int agents : config.agent_counts) {
    for (int size : cell_sizes(config, agents)) {
      RuntimeCell cell{size, agents, config.samples, {}, {}};
      ++report.cells;
      try {
        double total_seconds = 0.0;
        for (int k = 0; k < config.samples; ++k) {
          Instance instance = sample_instance(config, size, agents, k);
          auto start = std::chrono::steady_clock::now();
          Frontier frontier = find_pareto_frontier(instance, config.limits);
          auto stop = std::chrono::steady_clock::now();
          if (frontier.size() < 1) throw std::logic_error("empty frontier");
          total_seconds +=
              std::chrono::duration<double>(stop - start).count();
        }
        cell.mean_seconds = total_seconds / config.samples;
      } catch (const ResourceLimitError& e) {
        cell.skip_reason = e.what();
        ++report.skipped_cells;
        warn(report, "runtime cell size=" + std::to_string(size) + " agents=" +
                         std::to_string(agents) + " skipped: " + e.what());
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

namespace {

void write_header(const ExperimentConfig& config, std::ostream& csv) {
  csv << "# delfair " << to_string(config.kind) << '\n';
  csv << "# generator=pruefer(mt19937_64) hub=vertex0\n";
}

std::string fixed6(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << value;
  return out.str();
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config, std::ostream& csv,
                         std::ostream* warnings) {
  RunReport report;
  try {
    switch (config.kind) {
      case ExperimentKind::ExistenceEf1Po:
      case ExperimentKind::ExistenceEf1So:
      case ExperimentKind::ExistenceMmsSo: {
        auto cells = run_existence_cells(config, report);
        write_header(config, csv);
        csv << "experiment,size,agents,samples,seed,probability\n";
        for (const auto& cell : cells) {
          csv << to_string(config.kind) << ',' << cell.size << ','
              << cell.agents << ',' << cell.samples << ',' << cell.seed << ',';
          if (cell.probability) {
            csv << fixed6(*cell.probability);
          } else {
            csv << "skipped";
          }
          csv << '\n';
        }
        break;
      }
      case ExperimentKind::PriceOfMms: {
        auto cells = run_price_cells(config, report);
        write_header(config, csv);
        csv << "size,agents,sample_index,ratio\n";
        for (const auto& cell : cells) {
          for (std::size_t k = 0; k < cell.ratios.size(); ++k) {
            csv << cell.size << ',' << cell.agents << ',' << k << ',';
            if (cell.ratios[k]) {
              csv << fixed6(*cell.ratios[k]);
            } else {
              csv << "skipped";
            }
            csv << '\n';
          }
          const std::pair<const char*, double> summaries[] = {
              {"median", cell.median}, {"q1", cell.q1}, {"q3", cell.q3}};
          for (const auto& [name, value] : summaries) {
            csv << cell.size << ',' << cell.agents << ',' << name << ',';
            if (cell.has_summary) {
              csv << fixed6(value);
            } else {
              csv << "skipped";
            }
            csv << '\n';
          }
        }
        break;
      }
      case ExperimentKind::FrontierDist: {
        auto cells = run_frontier_dist_cells(config, report);
        write_header(config, csv);
        csv << "size,agents,sample_index,gap,total_cost\n";
        for (const auto& cell : cells) {
          for (std::size_t k = 0; k < cell.per_sample.size(); ++k) {
            if (!cell.per_sample[k]) {
              csv << cell.size << ',' << cell.agents << ',' << k
                  << ",skipped,skipped\n";
              continue;
            }
            for (const auto& stat : *cell.per_sample[k]) {
              csv << cell.size << ',' << cell.agents << ',' << k << ','
                  << stat.gap << ',' << stat.total << '\n';
            }
          }
          for (const auto& [gap, mean] : cell.mean_total_by_gap) {
            csv << cell.size << ',' << cell.agents << ",mean," << gap << ','
                << fixed6(mean) << '\n';
          }
        }
        break;
      }
      case ExperimentKind::Runtime: {
        auto cells = run_runtime_cells(config, report);
        write_header(config, csv);
        csv << "size,agents,samples,mean_seconds\n";
        for (const auto& cell : cells) {
          csv << cell.size << ',' << cell.agents << ',' << cell.samples << ',';
          if (cell.mean_seconds) {
            csv << fixed6(*cell.mean_seconds);
          } else {
            csv << "skipped";
          }
          csv << '\n';
        }
        break;
      }
    }
  } catch (const std::exception& e) {
    ++report.errors;
    warn(report, std::string("experiment failed: ") + e.what());
  }
  if (warnings != nullptr) {
    for (const auto& message : report.warnings) {
      *warnings << "warning: " << message << '\n';
    }
  }
  return report;
}

}  // namespace delfair::experiments
