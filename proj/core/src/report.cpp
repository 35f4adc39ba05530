#include "codeq/report.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

#include "codeq/wilcoxon.hpp"

namespace codeq {
namespace {

CellStats describe(const std::vector<double>& v) {
  CellStats s;
  s.n = v.size();
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return s;
}

std::string_view metric_label(Metric m) { return m == Metric::train ? "train" : "test"; }

}  // namespace

Summary summarize(std::span<const RunResult> results, double alpha, std::string dataset,
                  bool synthetic) {
  std::vector<Algorithm> order;
  for (const auto& r : results) {
    if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) order.push_back(r.algorithm);
  }
  if (order.empty()) throw Error(Errc::insufficient_runs, "no results to summarize");

  std::vector<std::vector<double>> train(order.size());
  std::vector<std::vector<double>> test(order.size());
  for (const auto& r : results) {
    const auto k = static_cast<std::size_t>(
        std::distance(order.begin(), std::find(order.begin(), order.end(), r.algorithm)));
    train[k].push_back(r.train_mse);
    test[k].push_back(r.test_mse);
  }

  Summary summary;
  summary.dataset = std::move(dataset);
  summary.synthetic = synthetic;
  summary.alpha = alpha;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (train[k].size() < 2) {
      throw Error(Errc::insufficient_runs,
                  std::string(to_string(order[k])) + " has fewer than two runs");
    }
    summary.rows.push_back({order[k], describe(train[k]), describe(test[k])});
  }

  for (Metric metric : {Metric::train, Metric::test}) {
    const auto& samples = metric == Metric::train ? train : test;
    if (order.size() < 2) break;
    std::size_t best = 0;
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (summary.rows[k].at(metric).mean < summary.rows[best].at(metric).mean) best = k;
    }
    bool separated = true;
    for (std::size_t k = 0; k < order.size() && separated; ++k) {
      if (k == best) continue;
      separated = wilcoxon_rank_sum(samples[best], samples[k], alpha).significant;
    }
    CellStats& cell = metric == Metric::train ? summary.rows[best].train : summary.rows[best].test;
    cell.best = separated;
  }
  return summary;
}

std::string format_cell(double mean, double stddev) {
  return fmt::format("{:.2f}({:.2f})", mean, stddev);
}

std::string render_report(const Summary& summary, ReportFormat format) {
  if (summary.rows.empty()) throw Error(Errc::invalid_argument, "empty summary");

  std::string out;
  auto it = std::back_inserter(out);
  if (format == ReportFormat::csv) {
    fmt::format_to(it, "dataset,synthetic,algorithm,metric,n,mean,std,best\n");
    for (Metric metric : {Metric::train, Metric::test}) {
      for (const auto& row : summary.rows) {
        const CellStats& c = row.at(metric);
        fmt::format_to(it, "{},{},{},{},{},{},{},{}\n", summary.dataset, summary.synthetic,
                       to_string(row.algorithm), metric_label(metric), c.n, c.mean, c.stddev,
                       c.best);
      }
    }
    return out;
  }

  fmt::format_to(it, "# MSE summary: {}\n\n| Data |", summary.dataset);
  for (const auto& row : summary.rows) fmt::format_to(it, " {} |", to_string(row.algorithm));
  fmt::format_to(it, "\n|---|");
  for (std::size_t k = 0; k < summary.rows.size(); ++k) fmt::format_to(it, "---|");
  fmt::format_to(it, "\n");
  for (Metric metric : {Metric::train, Metric::test}) {
    fmt::format_to(it, "| {} |", metric == Metric::train ? "Training" : "Testing");
    for (const auto& row : summary.rows) {
      const CellStats& c = row.at(metric);
      const std::string cell = format_cell(c.mean, c.stddev);
      if (c.best) {
        fmt::format_to(it, " **{}** |", cell);
      } else {
        fmt::format_to(it, " {} |", cell);
      }
    }
    fmt::format_to(it, "\n");
  }
  fmt::format_to(it,
                 "\nCells are mean(std) of the MSE over {} runs. Bold marks the lowest mean when a "
                 "two-sided Wilcoxon rank-sum test gives p < {} against every other algorithm.\n",
                 summary.rows.front().train.n, summary.alpha);
  fmt::format_to(it, "\nsynthetic={}\n", summary.synthetic);
  return out;
}

std::string results_csv(std::span<const RunResult> results) {
  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it, "algorithm,run,seed,train_mse,test_mse,initial_best,evaluations,best_vector\n");
  for (const auto& r : results) {
    fmt::format_to(it, "{},{},{},{},{},{},{},", to_string(r.algorithm), r.run, r.seed, r.train_mse,
                   r.test_mse, r.initial_best, r.evaluations);
    for (Eigen::Index d = 0; d < r.best_vector.size(); ++d) {
      if (d > 0) out.push_back(' ');
      fmt::format_to(it, "{}", r.best_vector[d]);
    }
    fmt::format_to(it, "\n");
  }
  return out;
}

std::string timings_csv(std::span<const RunResult> results) {
  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it, "algorithm,run,wall_time_s\n");
  for (const auto& r : results) {
    fmt::format_to(it, "{},{},{}\n", to_string(r.algorithm), r.run, r.wall_time);
  }
  return out;
}

}  // namespace codeq
