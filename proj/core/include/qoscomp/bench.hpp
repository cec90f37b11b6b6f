#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qoscomp {

struct BenchOptions {
  int attributes = 4;
  int repetitions = 20;
  std::uint64_t seed = 42;
  bool include_classification = false;
  double threshold = 0.25;
};

/// Timing of one grid point. Ranking time covers graph construction, primary
/// selection and the first alternative; the last two are also broken out.
struct BenchResult {
  int tasks = 0;
  int candidates = 0;
  int repetitions = 0;
  double mean_ranking_ms = 0.0;
  double mean_primary_ms = 0.0;
  double mean_alternative_ms = 0.0;
  std::optional<double> mean_classification_ms;
  std::vector<double> run_ms;  // ranking time of each repetition
  std::map<std::string, std::string> assignment;  // primary composite
};

/// Generates the synthetic instance for (tasks, candidates), classifies it
/// once (or per run with include_classification) and times the ranking phase.
BenchResult run_bench_point(int tasks, int candidates, const BenchOptions& options);

/// Every (tasks, candidates) pair, tasks-major, run one after another.
std::vector<BenchResult> run_bench_grid(const std::vector<int>& task_sizes,
                                        const std::vector<int>& candidate_sizes,
                                        const BenchOptions& options);

std::string bench_csv(const std::vector<BenchResult>& results);

/// Spearman rank correlation; ties get their average rank. Returns 0 when
/// either side is constant. Throws InvalidConfig on length mismatch or fewer
/// than two points.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// "10:50:10" (start:stop:step, inclusive) or "10,20,30". Throws InvalidConfig.
std::vector<int> parse_grid(std::string_view text);

}  // namespace qoscomp
