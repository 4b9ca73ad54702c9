#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "pursuitlab/errors.h"
#include "pursuitlab/scenario.h"

using namespace pursuitlab;

namespace {

void print_usage(std::ostream& os) {
  os << "usage: pursuitlab <command> [flags]\n"
        "\n"
        "commands:\n"
        "  run <scenario.json>     execute one scenario (any mode)\n"
        "  battery <dir>           run every scenario in a directory\n"
        "  list [dir]              catalogue scenarios (default dir: scenarios)\n"
        "  solve <scenario.json>   run a solve-mode scenario\n"
        "  sweep <scenario.json>   run a sweep-mode scenario\n"
        "\n"
        "flags:\n"
        "  --out <dir>    artifact directory (default $PURSUITLAB_OUT, then .)\n"
        "  --dt <sec>     override the reactor step\n"
        "  --tol <dist>   override the capture tolerance\n"
        "  --seed <u64>   override the scenario seed\n"
        "  --jobs <n>     parallel battery workers (default 1)\n"
        "  --tag <tag>    list only scenarios carrying the tag\n"
        "\n"
        "exit codes: 0 success, 2 strategy fault (or failed battery), 3 bad\n"
        "input or configuration.\n";
}

double parse_double(const std::string& s, const std::string& flag) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    throw UsageError(flag + ": '" + s + "' is not a number");
  return v;
}

long parse_count(const std::string& s, const std::string& flag) {
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || v <= 0)
    throw UsageError(flag + ": '" + s + "' is not a positive integer");
  return v;
}

std::uint64_t parse_seed(const std::string& s, const std::string& flag) {
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE)
    throw UsageError(flag + ": '" + s + "' is not an unsigned integer");
  return v;
}

struct CliArgs {
  std::string command;
  std::string target;
  RunOptions options;
  int jobs = 1;
  std::string tag;
};

CliArgs parse_args(int argc, char** argv) {
  CliArgs args;
  std::vector<std::string> words(argv + 1, argv + argc);
  std::size_t i = 0;
  auto value = [&](const std::string& flag) -> std::string {
    if (i + 1 >= words.size()) throw UsageError(flag + ": missing value");
    return words[++i];
  };
  for (; i < words.size(); ++i) {
    const std::string& w = words[i];
    if (w == "--out") {
      args.options.out_dir = value(w);
    } else if (w == "--dt") {
      args.options.dt = parse_double(value(w), w);
    } else if (w == "--tol") {
      args.options.tol = parse_double(value(w), w);
    } else if (w == "--seed") {
      args.options.seed = parse_seed(value(w), w);
    } else if (w == "--jobs") {
      args.jobs = static_cast<int>(parse_count(value(w), w));
    } else if (w == "--tag") {
      args.tag = value(w);
    } else if (w == "--help" || w == "-h") {
      args.command = "help";
      break;
    } else if (!w.empty() && w[0] == '-') {
      throw UsageError("unknown flag '" + w + "'");
    } else if (args.command.empty()) {
      args.command = w;
    } else if (args.target.empty()) {
      args.target = w;
    } else {
      throw UsageError("unexpected argument '" + w + "'");
    }
  }
  if (args.options.out_dir.empty()) {
    if (const char* env = std::getenv("PURSUITLAB_OUT")) args.options.out_dir = env;
  }
  return args;
}

std::vector<std::filesystem::path> scenario_files(const std::string& dir) {
  if (!std::filesystem::is_directory(dir))
    throw UsageError(dir + ": not a directory of scenarios");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_run(const CliArgs& args, const char* required_mode) {
  if (args.target.empty())
    throw UsageError(args.command + ": give a scenario file");
  Scenario scenario = load_scenario(args.target);
  if (required_mode && scenario.mode != required_mode)
    throw UsageError(args.target + ": mode is '" + scenario.mode + "'; the " + args.command +
                     " command runs '" + required_mode + "' scenarios");
  RunOutcome outcome = run_scenario(scenario, args.options);
  std::cout << scenario.name << ": " << outcome.summary << "\n";
  for (const std::string& artifact : outcome.artifacts)
    std::cout << "wrote " << artifact << "\n";
  return outcome.exit_code;
}

int cmd_battery(const CliArgs& args) {
  if (args.target.empty()) throw UsageError("battery: give a scenario directory");
  std::vector<std::filesystem::path> files = scenario_files(args.target);
  std::vector<BatteryRow> rows(files.size());

  auto work = [&](std::size_t idx) {
    BatteryRow row;
    row.name = files[idx].filename().string();
    try {
      Scenario scenario = load_scenario(files[idx].string());
      row.name = scenario.name;
      RunOutcome outcome = run_scenario(scenario, args.options);
      row.passed = outcome.exit_code == 0;
      row.detail = outcome.summary;
    } catch (const Error& e) {
      row.passed = false;
      row.detail = std::string("error: ") + e.what();
    }
    rows[idx] = std::move(row);
  };

  if (args.jobs <= 1 || files.size() <= 1) {
    for (std::size_t idx = 0; idx < files.size(); ++idx) work(idx);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t idx; (idx = next.fetch_add(1)) < files.size();) work(idx);
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(args.jobs, static_cast<int>(files.size()));
    for (int j = 0; j < n; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::size_t passed = 0;
  for (const BatteryRow& row : rows) {
    std::cout << (row.passed ? "PASS" : "FAIL") << "  " << row.name << ": " << row.detail
              << "\n";
    if (row.passed) ++passed;
  }
  std::cout << passed << "/" << rows.size() << " scenarios passed\n";
  return passed == rows.size() ? 0 : 2;
}

int cmd_list(const CliArgs& args) {
  std::string dir = args.target.empty() ? "scenarios" : args.target;
  int invalid = 0;
  for (const std::filesystem::path& file : scenario_files(dir)) {
    try {
      Scenario scenario = load_scenario(file.string());
      if (!args.tag.empty() &&
          std::find(scenario.tags.begin(), scenario.tags.end(), args.tag) ==
              scenario.tags.end())
        continue;
      std::cout << scenario.name << "  [";
      for (std::size_t i = 0; i < scenario.tags.size(); ++i)
        std::cout << (i ? ", " : "") << scenario.tags[i];
      std::cout << "]  " << scenario.description << "\n";
    } catch (const Error& e) {
      std::cerr << "INVALID  " << file.string() << ": " << e.what() << "\n";
      ++invalid;
    }
  }
  return invalid == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    CliArgs args = parse_args(argc, argv);
    if (args.command.empty()) {
      print_usage(std::cerr);
      return 3;
    }
    if (args.command == "help") {
      print_usage(std::cout);
      return 0;
    }
    if (args.command == "run") return cmd_run(args, nullptr);
    if (args.command == "solve") return cmd_run(args, "solve");
    if (args.command == "sweep") return cmd_run(args, "sweep");
    if (args.command == "battery") return cmd_battery(args);
    if (args.command == "list") return cmd_list(args);
    throw UsageError("unknown command '" + args.command + "'");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
