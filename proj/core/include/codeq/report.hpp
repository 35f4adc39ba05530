#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "codeq/experiment.hpp"

namespace codeq {

enum class Metric { train, test };

struct CellStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  std::size_t n = 0;
  bool best = false;
};

struct AlgorithmSummary {
  Algorithm algorithm = Algorithm::codeq;
  CellStats train;
  CellStats test;

  const CellStats& at(Metric m) const noexcept { return m == Metric::train ? train : test; }
};

struct Summary {
  std::string dataset;
  bool synthetic = false;
  double alpha = 0.05;
  std::vector<AlgorithmSummary> rows;  // first-appearance order of algorithms
};

/// Mean/std per (algorithm, metric). The lowest-mean algorithm on a metric
/// is flagged best only when a Wilcoxon rank-sum test separates it from
/// every other algorithm at p < alpha. Throws insufficient_runs when any
/// algorithm has fewer than two runs.
Summary summarize(std::span<const RunResult> results, double alpha,
                  std::string dataset = {}, bool synthetic = false);

enum class ReportFormat { markdown, csv };

/// "mean(std)" rounded to two decimals.
std::string format_cell(double mean, double stddev);

/// Throws invalid_argument on an empty summary.
std::string render_report(const Summary& summary, ReportFormat format);

/// One line per run at full (round-trip) precision. Wall time is excluded
/// so identical inputs give identical bytes.
std::string results_csv(std::span<const RunResult> results);

std::string timings_csv(std::span<const RunResult> results);

}  // namespace codeq
