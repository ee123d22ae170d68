#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "flatproj/cli.hpp"
#include "flatproj/errors.hpp"

namespace fc = flatproj::cli;

int main(int argc, char** argv) {
  CLI::App app{"flatproj: flattened projectors, dispersion and interface tables"};
  app.set_help_all_flag("--help-all", "Show help for every command");

  std::string config_path;
  std::string output_path;
  std::string format = "csv";
  app.add_option("--config", config_path, "Flat key = value config file; flags override it");
  app.add_option("-o,--output", output_path, "Output file (stdout when omitted)");
  app.add_option("--format", format, "csv or json")->transform(CLI::IsMember({"csv", "json"}, CLI::ignore_case));
  app.require_subcommand(0, 1);

  std::map<std::string, std::map<std::string, std::string>> flag_values;
  for (const auto& spec : fc::command_specs()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->fallthrough();
    auto& values = flag_values[spec.name];
    for (const auto& param : spec.params) {
      std::string flag = param.key;
      for (char& c : flag) {
        if (c == '_') c = '-';
      }
      std::string help = param.help;
      if (!param.default_value.empty()) help += " [" + param.default_value + "]";
      sub->add_option_function<std::string>(
             "--" + flag, [&values, key = param.key](const std::string& v) { values[key] = v; }, help)
          ->allow_extra_args(false);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  fc::RunConfig config;
  try {
    if (!config_path.empty()) config.params = fc::load_config_file(config_path);
  } catch (const flatproj::DomainError& e) {
    std::cerr << "flatproj: invalid input: " << e.what() << "\n";
    return 2;
  }

  // Keys that belong to the run rather than the command.
  auto take = [&](const char* key) {
    std::string v;
    if (auto it = config.params.find(key); it != config.params.end()) {
      v = it->second;
      config.params.erase(it);
    }
    return v;
  };
  config.command = take("command");
  const std::string file_output = take("output");
  const std::string file_format = take("format");

  const auto chosen = app.get_subcommands();
  if (!chosen.empty()) config.command = chosen.front()->get_name();
  if (config.command.empty()) {
    std::cerr << "flatproj: invalid input: no command given\n" << app.help();
    return 2;
  }
  for (const auto& [k, v] : flag_values[config.command]) config.params[k] = v;

  config.output_path = app.count("--output") ? output_path : file_output;
  std::string fmt = app.count("--format") ? format : (file_format.empty() ? "csv" : file_format);
  for (char& c : fmt) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (fmt != "csv" && fmt != "json") {
    std::cerr << "flatproj: invalid input: format must be csv or json\n";
    return 2;
  }
  config.format = fmt == "json" ? fc::OutputFormat::JSON : fc::OutputFormat::CSV;

  return fc::run(config, std::cout, std::cerr);
}
