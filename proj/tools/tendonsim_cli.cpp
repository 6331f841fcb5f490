// Command-line front end. Talks to the library only through the C API.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tendonsim/tendonsim.h"

namespace fs = std::filesystem;

namespace {

// Paths given on the command line fall back to $TENDONSIM_CONFIG_DIR.
std::string locate(const std::string& path) {
  if (fs::exists(path) || fs::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv("TENDONSIM_CONFIG_DIR"); dir && *dir) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

int report(ts_status status) {
  std::cerr << "error (" << ts_status_name(status) << "): " << ts_last_error() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tendon-driven compliant actuator and joint simulator"};
  app.require_subcommand(1);

  bool strict = false;
  app.add_flag("--strict", strict, "Reject unknown config keys");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a config file");
  validate->add_option("config", validate_path, "Config file")->required();

  std::string spec_path;
  std::string out;
  std::string format = "default";
  std::optional<std::uint64_t> seed;
  CLI::App* run = app.add_subcommand("run", "Run an experiment spec");
  run->add_option("spec", spec_path, "Experiment spec file")->required();
  run->add_option("--out", out, "Output file (CSV or JSON)");
  run->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"default", "csv", "json"}));
  run->add_option("--seed", seed, "RNG seed override");
  run->add_flag("--strict", strict, "Reject unknown config keys");
  validate->add_flag("--strict", strict, "Reject unknown config keys");

  CLI::App* list = app.add_subcommand("list-experiments", "List available experiments");

  std::string csv_path;
  CLI::App* check_csv =
      app.add_subcommand("check-csv", "Check an output CSV for unit-suffixed headers");
  check_csv->add_option("csv", csv_path, "CSV file")->required();

  CLI11_PARSE(app, argc, argv);

  if (*validate) {
    const char* type = nullptr;
    const ts_status st = ts_validate_config(locate(validate_path).c_str(), strict, &type);
    if (st != TS_OK) return report(st);
    std::cout << "ok: " << type << " config " << validate_path << '\n';
    return 0;
  }

  if (*run) {
    ts_run_options options{};
    options.output = out.empty() ? nullptr : out.c_str();
    options.format = format == "csv"    ? TS_FORMAT_CSV
                     : format == "json" ? TS_FORMAT_JSON
                                        : TS_FORMAT_DEFAULT;
    options.has_seed = seed.has_value();
    options.seed = seed.value_or(0);
    options.strict = strict;
    char* summary = nullptr;
    const ts_status st = ts_run_experiment(locate(spec_path).c_str(), &options, &summary);
    if (st != TS_OK) return report(st);
    std::cout << summary;
    ts_string_free(summary);
    return 0;
  }

  if (*list) {
    char* text = nullptr;
    const ts_status st = ts_list_experiments(&text);
    if (st != TS_OK) return report(st);
    std::cout << text;
    ts_string_free(text);
    return 0;
  }

  if (*check_csv) {
    char* problems = nullptr;
    const ts_status st = ts_check_csv_schema(csv_path.c_str(), &problems);
    if (st != TS_OK) return report(st);
    const std::string text = problems;
    ts_string_free(problems);
    if (!text.empty()) {
      std::cerr << text;
      return 1;
    }
    std::cout << "ok: " << csv_path << '\n';
    return 0;
  }
  return 0;
}
