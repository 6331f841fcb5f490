#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tendonsim {

enum class ExperimentKind {
  ForceDisplacement,
  StiffnessVsPretension,
  MaxAcceleration,
  TorqueSurface,
  MaxTorqueVsPretension,
  StiffnessRange,
  Workspace,
  Lift,
};

enum class OutputFormat { Csv, Json };

const char* to_string(ExperimentKind kind);
std::optional<ExperimentKind> experiment_from_string(std::string_view name);
const std::vector<ExperimentKind>& all_experiments();
/// One-line description of what the experiment sweeps and emits.
const char* describe(ExperimentKind kind);

/// Uniform grid start, start + step, ... up to stop (inclusive within 1e-9
/// of a step).
struct SweepGrid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::ForceDisplacement;
  std::filesystem::path config;  // resolved model config
  std::map<std::string, SweepGrid> sweeps;
  std::filesystem::path output;  // empty: caller decides
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 42;
  std::size_t samples = 100000;
  std::optional<double> delta;   // overrides the joint config's delta
  std::size_t output_every = 1;  // lift traces: keep every n-th sample
};

}  // namespace tendonsim
