#include "btai/benchmark.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace btai::bench {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, const std::string& key, int line) {
  text = trim(text);
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError(key, "cannot parse '" + std::string(text) + "' as a number", line);
  }
  return value;
}

std::string fixed(double value, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << value;
  return out.str();
}

std::string join_lengths(const std::vector<int>& lengths, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(lengths[i]);
  }
  return out;
}

void write_trace(const std::string& path, const PlanningTree& tree) {
  std::ofstream out(path);
  if (!out) throw ConfigError("trace_path", "cannot open '" + path + "' for writing");
  out << to_dot(tree);
}

}  // namespace

std::vector<std::string> BenchmarkSpec::validate() const {
  auto warnings = env.validate();
  if (planning_iterations < 1) throw ConfigError("planning_iterations", "must be at least 1");
  if (max_cycles < 1) throw ConfigError("max_cycles", "must be at least 1");
  if (trials < 1) throw ConfigError("trials", "must be at least 1");
  if (!(exploration_constant >= 0.0) || !std::isfinite(exploration_constant)) {
    throw ConfigError("exploration_constant", "must be a finite nonnegative number");
  }
  if (!(preference_strength > 0.5 && preference_strength < 1.0)) {
    throw ConfigError("preference_strength", "must lie strictly between 0.5 and 1");
  }
  return warnings;
}

BenchmarkReport run_benchmark(const BenchmarkSpec& spec, int jobs) {
  spec.validate();
  const AgentModel model =
      deep_reward::build_model(spec.env, spec.preference_strength, spec.planner(),
                               spec.invert_preferences ? deep_reward::Preference::unpleasant
                                                       : deep_reward::Preference::pleasant);

  BenchmarkReport report;
  report.spec = spec;
  report.trials.resize(static_cast<std::size_t>(spec.trials));
  report.parallel = jobs > 1;

  auto run_one = [&](int index) {
    deep_reward::Environment env(spec.env);
    PlanObserver observer;
    if (index == 0 && spec.trace_path) {
      observer = [&](int cycle, const PlanningTree& tree) {
        if (cycle == 0) write_trace(*spec.trace_path, tree);
      };
    }
    report.trials[static_cast<std::size_t>(index)] = run_trial(model, env, spec.max_cycles, observer);
  };

  const auto start = std::chrono::steady_clock::now();
  if (jobs <= 1) {
    for (int i = 0; i < spec.trials; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (int i = next++; i < spec.trials; i = next++) run_one(i);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  report.total_runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  int goals = 0;
  int bads = 0;
  int cycles = 0;
  double planning = 0.0;
  for (const auto& t : report.trials) {
    goals += t.outcome == Outcome::goal;
    bads += t.outcome == Outcome::bad;
    cycles += t.cycles;
    planning += t.total_planning_seconds;
  }
  const int timeouts = spec.trials - goals - bads;
  report.p_goal = static_cast<double>(goals) / spec.trials;
  report.p_bad = static_cast<double>(bads) / spec.trials;
  report.p_timeout = static_cast<double>(timeouts) / spec.trials;
  report.mean_cycle_planning_time = cycles > 0 ? planning / cycles : 0.0;
  return report;
}

ReportFormat parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "markdown") return ReportFormat::markdown;
  throw ConfigError("format", "expected 'csv' or 'markdown', got '" + std::string(name) + "'");
}

std::string emit_report(const BenchmarkReport& report, ReportFormat format) {
  const auto& spec = report.spec;
  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "n,m,lengths,planning_iters,p_goal,p_bad,p_timeout,runtime_seconds\n";
    out << spec.env.n_good << ',' << spec.env.m_bad << ',' << join_lengths(spec.env.lengths, ";") << ','
        << spec.planning_iterations << ',' << fixed(report.p_goal, 3) << ',' << fixed(report.p_bad, 3) << ','
        << fixed(report.p_timeout, 3) << ',' << fixed(report.total_runtime, 3) << '\n';
    return out.str();
  }
  out << "| n | m | L_1, ..., L_n | # planning iterations | P(goal) | P(bad) | P(timeout) | Running time |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  out << "| " << spec.env.n_good << " | " << spec.env.m_bad << " | " << join_lengths(spec.env.lengths, ", ")
      << " | " << spec.planning_iterations << " | " << fixed(report.p_goal, 3) << " | " << fixed(report.p_bad, 3)
      << " | " << fixed(report.p_timeout, 3) << " | " << fixed(report.total_runtime, 3) << " sec |\n";
  if (report.parallel) out << "\nTrials ran in parallel; running times are not comparable to sequential runs.\n";
  return out.str();
}

std::vector<int> parse_lengths(std::string_view text, const std::string& key, int line) {
  std::vector<int> lengths;
  std::string_view rest = trim(text);
  if (rest.empty()) throw ConfigError(key, "expected a comma-separated list of lengths", line);
  while (true) {
    const auto sep = rest.find_first_of(",;");
    lengths.push_back(parse_number<int>(rest.substr(0, sep), key, line));
    if (sep == std::string_view::npos) break;
    rest = rest.substr(sep + 1);
  }
  return lengths;
}

void apply_config_text(BenchmarkSpec& spec, std::string_view text) {
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(line), "expected 'key = value'", line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "n_good") {
      spec.env.n_good = parse_number<int>(value, key, line_no);
    } else if (key == "m_bad") {
      spec.env.m_bad = parse_number<int>(value, key, line_no);
    } else if (key == "lengths") {
      spec.env.lengths = parse_lengths(value, key, line_no);
    } else if (key == "planning_iterations") {
      spec.planning_iterations = parse_number<int>(value, key, line_no);
    } else if (key == "max_cycles") {
      spec.max_cycles = parse_number<int>(value, key, line_no);
    } else if (key == "trials") {
      spec.trials = parse_number<int>(value, key, line_no);
    } else if (key == "exploration_constant") {
      spec.exploration_constant = parse_number<double>(value, key, line_no);
    } else if (key == "preference_strength") {
      spec.preference_strength = parse_number<double>(value, key, line_no);
    } else if (key == "trace_path") {
      if (value.empty()) throw ConfigError(key, "path must not be empty", line_no);
      spec.trace_path = std::string(value);
    } else {
      throw ConfigError(key, "unknown key", line_no);
    }
  }
}

BenchmarkSpec load_config_file(const std::string& path, BenchmarkSpec base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(base, text.str());
  return base;
}

void add_options(CLI::App& app, CommandLine& cli) {
  app.add_option("--config", cli.config_path, "key = value configuration file");
  app.add_option("--n-good", cli.n_good, "number of good paths");
  app.add_option("--m-bad", cli.m_bad, "number of bad paths");
  app.add_option("--lengths", cli.lengths, "comma-separated good path lengths");
  app.add_option("--planning-iters", cli.planning_iterations, "planning iterations per cycle");
  app.add_option("--cycles", cli.max_cycles, "maximum action-perception cycles per trial");
  app.add_option("--trials", cli.trials, "number of trials");
  app.add_option("--exploration", cli.exploration_constant, "UCT exploration constant");
  app.add_option("--preference", cli.preference_strength, "preference for the pleasant observation");
  app.add_flag("--invert-preferences", cli.invert_preferences, "prefer the unpleasant observation instead");
  app.add_option("--format", cli.format, "report format")->check(CLI::IsMember({"csv", "markdown"}));
  app.add_option("--trace", cli.trace_path, "write the first planning tree as DOT");
  app.add_option("--jobs", cli.jobs, "worker threads (timings are not comparable when > 1)")
      ->check(CLI::PositiveNumber);
}

BenchmarkSpec resolve(const CommandLine& cli) {
  BenchmarkSpec spec;
  if (cli.config_path) spec = load_config_file(*cli.config_path, spec);
  if (cli.n_good) spec.env.n_good = *cli.n_good;
  if (cli.m_bad) spec.env.m_bad = *cli.m_bad;
  if (cli.lengths) spec.env.lengths = parse_lengths(*cli.lengths);
  if (cli.planning_iterations) spec.planning_iterations = *cli.planning_iterations;
  if (cli.max_cycles) spec.max_cycles = *cli.max_cycles;
  if (cli.trials) spec.trials = *cli.trials;
  if (cli.exploration_constant) spec.exploration_constant = *cli.exploration_constant;
  if (cli.preference_strength) spec.preference_strength = *cli.preference_strength;
  if (cli.trace_path) spec.trace_path = *cli.trace_path;
  if (cli.invert_preferences) spec.invert_preferences = true;
  spec.validate();
  return spec;
}

}  // namespace btai::bench
