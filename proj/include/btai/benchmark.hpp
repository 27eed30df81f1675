#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "btai/agent.hpp"
#include "btai/deep_reward.hpp"

namespace CLI {
class App;
}

namespace btai::bench {

struct BenchmarkSpec {
  deep_reward::Config env;
  int planning_iterations = 25;
  int max_cycles = 20;
  int trials = 100;
  double exploration_constant = 2.0;
  double preference_strength = 0.9;
  bool invert_preferences = false;
  std::optional<std::string> trace_path;

  /// Throws ConfigError naming the first offending key. Returns task warnings.
  std::vector<std::string> validate() const;
  PlannerConfig planner() const { return {exploration_constant, planning_iterations}; }
};

struct BenchmarkReport {
  BenchmarkSpec spec;
  double p_goal = 0.0;
  double p_bad = 0.0;
  double p_timeout = 0.0;
  double total_runtime = 0.0;             // seconds, all trials
  double mean_cycle_planning_time = 0.0;  // seconds
  bool parallel = false;                  // timings not comparable when set
  std::vector<TrialResult> trials;
};

/// Builds the model once and runs `spec.trials` trials. With jobs > 1 the trials
/// are spread over worker threads and the report is flagged as parallel.
BenchmarkReport run_benchmark(const BenchmarkSpec& spec, int jobs = 1);

enum class ReportFormat { csv, markdown };

ReportFormat parse_format(std::string_view name);
std::string emit_report(const BenchmarkReport& report, ReportFormat format);

/// Applies `key = value` lines onto `spec`. Blank lines and '#' comments are skipped.
void apply_config_text(BenchmarkSpec& spec, std::string_view text);
BenchmarkSpec load_config_file(const std::string& path, BenchmarkSpec base = {});

/// Raw command-line values; unset optionals leave the file/default value alone.
struct CommandLine {
  std::optional<std::string> config_path;
  std::optional<int> n_good;
  std::optional<int> m_bad;
  std::optional<std::string> lengths;
  std::optional<int> planning_iterations;
  std::optional<int> max_cycles;
  std::optional<int> trials;
  std::optional<double> exploration_constant;
  std::optional<double> preference_strength;
  std::optional<std::string> trace_path;
  bool invert_preferences = false;
  std::string format = "csv";
  int jobs = 1;
};

void add_options(CLI::App& app, CommandLine& cli);

/// Defaults, then the config file, then flags. Validates the result.
BenchmarkSpec resolve(const CommandLine& cli);

/// Parses "5,8" (or "5;8") into lengths.
std::vector<int> parse_lengths(std::string_view text, const std::string& key = "lengths", int line = 0);

}  // namespace btai::bench
