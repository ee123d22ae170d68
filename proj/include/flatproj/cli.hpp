#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace flatproj::cli {

enum class OutputFormat { CSV, JSON };

/// One invocation: a command, its key-value parameters, where to write and how.
/// An empty output_path writes to stdout.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::string output_path;
  OutputFormat format = OutputFormat::CSV;
};

struct ParamSpec {
  std::string key;
  std::string default_value;
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
};

/// Commands and their recognised keys, with defaults.
const std::vector<CommandSpec>& command_specs();

/// Parses flat `key = value` text; '#' and ';' start comments, [sections]
/// are ignored. Dashes in keys are normalised to underscores.
std::map<std::string, std::string> parse_config_text(std::string_view text);

/// Reads and parses a config file. Throws DomainError on I/O failure.
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Result table: named columns of numbers plus scalar summary entries.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> summary;
};

/// Parameters after defaults are merged in; throws DomainError on unknown
/// commands or keys.
std::map<std::string, std::string> resolve_params(const RunConfig& config);

/// Validates and computes the table for a config without writing anything.
Table compute(const RunConfig& config);

std::string render_csv(const std::string& command, const std::map<std::string, std::string>& params,
                       const Table& table);
std::string render_json(const std::string& command, const std::map<std::string, std::string>& params,
                        const Table& table);

/// Runs the command and writes its table. Returns 0 on success, 2 on invalid
/// input, 3 on numerical failure. Diagnostics go to `diag`; when the output
/// path is empty the table goes to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

}  // namespace flatproj::cli
