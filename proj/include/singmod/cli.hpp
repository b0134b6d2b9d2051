#pragma once

#include <map>
#include <string>
#include <vector>

namespace singmod::cli {

enum class OutputFormat { table, json, tsv };

struct RunConfig {
  std::string command;
  // Option name without leading dashes -> raw value ("true" for flags).
  std::map<std::string, std::string> parameters;
  OutputFormat output_format = OutputFormat::table;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 computation failed, 2 bad command or parameter, 3 bad input file
  std::string out;
  std::string err;
};

struct OptionSpec {
  std::string name;
  std::string help;
  bool flag = false;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<OptionSpec> options;
};

const std::vector<CommandSpec>& commands();

// Validates every parameter, then runs exactly one subcommand.
RunResult run(const RunConfig& config);

// Parses argv into a RunConfig and runs it, writing to stdout/stderr.
int main_entry(int argc, char** argv);

}  // namespace singmod::cli
