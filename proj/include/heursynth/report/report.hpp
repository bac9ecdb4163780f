#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "heursynth/report/artifact.hpp"

namespace heursynth {

/// One row per execution. The incumbent follows the final-selection rule
/// (valid first, then f, then earliest), so its f can drop when the first
/// valid record appears; best_valid_f and best_any_f are monotone.
struct ConvergenceRow {
  int execution = 0;
  std::string record_id;
  int branch_id = 0;
  int depth = 0;
  bool branch_start = false;
  int v = 0;
  double f = 0.0;
  std::string incumbent_id;
  int incumbent_v = 0;
  double incumbent_f = 0.0;
  std::optional<double> best_valid_f;
  double best_any_f = 0.0;
};

/// `records` in creation order.
std::vector<ConvergenceRow> convergence_rows(const std::vector<Record>& records);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Tercile bin (0 easiest, 2 hardest) per value: rank r (1-based, ascending
/// hardness, ties by input order) lands in bin 0 if r <= ceil(n/3), bin 1 if
/// r <= ceil(2n/3), else bin 2.
std::vector<int> tercile_bins(const std::vector<double>& hardness);

/// Per-role rows plus a total row; costs are sums over ledger entries.
std::string cost_csv(const std::vector<LedgerEntry>& ledger);

/// Shortest round-trip decimal form.
std::string format_number(double x);

/// Writes test_scores.csv, convergence.csv, cost.csv, summary.json and, for
/// domains with a difficulty proxy, difficulty.csv and difficulty_bins.csv.
/// Returns the names of the files written.
std::vector<std::string> write_report(const LoadedRun& run, const std::filesystem::path& out_dir);

}  // namespace heursynth
