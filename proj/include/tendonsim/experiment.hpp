#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tendonsim/csv.hpp"
#include "tendonsim/experiment_spec.hpp"

namespace tendonsim {

struct RunOptions {
  std::optional<std::filesystem::path> output;  // overrides the spec's output
  std::optional<OutputFormat> format;
  std::optional<std::uint64_t> seed;
  bool strict = false;
};

struct ExperimentResult {
  Table table;
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;  // written outputs, data file first
};

/// Evaluates the experiment over its sweep grid (row order = grid order)
/// without touching the filesystem beyond reading configs.
ExperimentResult evaluate_experiment(const ExperimentSpec& spec, bool strict = false);

/// evaluate_experiment plus output files. CSV output writes the table and a
/// sibling `<stem>.summary.json`; JSON output writes one document holding
/// columns, rows and summary.
ExperimentResult run_experiment(ExperimentSpec spec, const RunOptions& options = {});

/// Serialises a summary with sorted keys and fixed indentation so identical
/// runs give identical bytes.
std::string dump_summary(const nlohmann::json& summary);

}  // namespace tendonsim
