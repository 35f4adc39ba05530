// bench: runs the optimizer comparison protocol and the rank-sum utility.
//
//   bench run --dataset iris --algorithms codeq,pso,sde --runs 30 --out results/
//   bench wilcoxon --a a.csv --b b.csv --alpha 0.05

#include <charconv>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "codeq/error.hpp"
#include "codeq/experiment.hpp"
#include "codeq/report.hpp"
#include "codeq/wilcoxon.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<double> read_numbers(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw codeq::Error(codeq::Errc::io_error, "cannot open " + path.string());
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      const auto first = field.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto last = field.find_last_not_of(" \t\r");
      const std::string_view token(field.data() + first, last - first + 1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        // A non-numeric first line is treated as a header.
        if (line_no == 1 && values.empty()) break;
        throw codeq::Error(codeq::Errc::parse_error, path.string() + ": line " +
                                                         std::to_string(line_no) + ": '" +
                                                         std::string(token) + "'");
      }
      values.push_back(v);
    }
  }
  return values;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw codeq::Error(codeq::Errc::io_error, "cannot write " + path.string());
}

struct RunArgs {
  codeq::ExperimentConfig cfg;
  std::vector<std::string> algorithms{"codeq", "pso", "sde"};
  fs::path out_dir = "bench-out";
  std::string format = "md";
};

int do_run(RunArgs& args) {
  codeq::ExperimentConfig& cfg = args.cfg;
  cfg.algorithms.clear();
  for (const auto& name : args.algorithms) cfg.algorithms.push_back(codeq::parse_algorithm(name));

  const codeq::Problem problem = codeq::prepare_problem(cfg);
  const auto results = codeq::run_experiment(cfg, problem);
  const auto summary = codeq::summarize(results, cfg.alpha, problem.name, problem.synthetic);
  const auto format = args.format == "csv" ? codeq::ReportFormat::csv : codeq::ReportFormat::markdown;
  const std::string report = codeq::render_report(summary, format);

  fs::create_directories(args.out_dir);
  write_file(args.out_dir / "results.csv", codeq::results_csv(results));
  write_file(args.out_dir / "timings.csv", codeq::timings_csv(results));
  write_file(args.out_dir / (format == codeq::ReportFormat::csv ? "summary.csv" : "summary.md"), report);
  std::cout << report;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CODEQ / PSO / SDE neural-network training benchmark"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file; keys under [run] mirror the run flags (flags override it)");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the multi-seed comparison and write reports");
  run_cmd->add_option("--dataset", run.cfg.dataset, "iris | house | oil-proxy | <csv path>")
      ->capture_default_str();
  run_cmd->add_option("--algorithms", run.algorithms, "Comma-separated subset of codeq,pso,sde")
      ->delimiter(',')
      ->check(CLI::IsMember({"codeq", "pso", "sde"}))
      ->capture_default_str();
  run_cmd->add_option("--runs", run.cfg.runs, "Independent seeded runs")->capture_default_str();
  run_cmd->add_option("--budget", run.cfg.budget, "Objective evaluations per run")->capture_default_str();
  run_cmd->add_option("--pop", run.cfg.pop_size, "Population size")->capture_default_str();
  run_cmd->add_option("--hidden", run.cfg.hidden, "Hidden-layer neurons")->capture_default_str();
  run_cmd->add_option("--lb", run.cfg.lb, "Lower search bound")->capture_default_str();
  run_cmd->add_option("--ub", run.cfg.ub, "Upper search bound")->capture_default_str();
  run_cmd->add_option("--alpha", run.cfg.alpha, "Significance level")->capture_default_str();
  run_cmd->add_option("--seed", run.cfg.master_seed, "Master seed")->capture_default_str();
  run_cmd->add_option("--out", run.out_dir, "Output directory")->capture_default_str();
  run_cmd->add_option("--format", run.format, "Summary format")
      ->check(CLI::IsMember({"md", "csv"}))
      ->capture_default_str();
  run_cmd->add_option("--threads", run.cfg.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  run_cmd->add_option("--data-dir", run.cfg.data_dir, "Directory with the bundled CSV files");
  run_cmd->add_option("--targets", run.cfg.csv_targets, "CSV: 0-based target columns (default: last)")
      ->delimiter(',');
  run_cmd->add_flag("!--no-header", run.cfg.csv_header, "CSV: file has no header row");
  run_cmd->add_flag("--classification", run.cfg.csv_classification,
                    "CSV: single integer label column, one-hot encoded");
  run_cmd->add_option("--train-rows", run.cfg.train_rows, "CSV: training rows (default 85%)");

  std::string a_path;
  std::string b_path;
  double alpha = 0.05;
  auto* wil_cmd = app.add_subcommand("wilcoxon", "Two-sided Wilcoxon rank-sum test on two samples");
  wil_cmd->add_option("--a", a_path, "CSV file with the first sample")->required();
  wil_cmd->add_option("--b", b_path, "CSV file with the second sample")->required();
  wil_cmd->add_option("--alpha", alpha, "Significance level")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run_cmd) return do_run(run);

    const auto a = read_numbers(a_path);
    const auto b = read_numbers(b_path);
    const auto r = codeq::wilcoxon_rank_sum(a, b, alpha);
    fmt::print("statistic={}\np_value={}\nmethod={}\nsignificant={}\n", r.statistic, r.p_value,
               r.exact ? "exact" : "normal", r.significant);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "bench: error: " << e.what() << '\n';
    return 2;
  }
}
