#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tendonsim/dynamics.hpp"
#include "tendonsim/elastic.hpp"
#include "tendonsim/experiment_spec.hpp"
#include "tendonsim/joint.hpp"
#include "tendonsim/kinematics.hpp"

namespace tendonsim {

/// Environment variable naming the directory searched for config files that
/// are not found relative to the referencing file.
inline constexpr const char* kConfigDirEnv = "TENDONSIM_CONFIG_DIR";

/// Flat `key = value` file. `#` starts a comment; blank lines are ignored;
/// keys are unique.
class KeyValueFile {
 public:
  static KeyValueFile read(const std::filesystem::path& path);
  static KeyValueFile parse(const std::string& text, std::filesystem::path path = "<memory>");

  const std::filesystem::path& path() const noexcept { return path_; }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  int line_of(const std::string& key) const;

  std::string require_string(const std::string& key) const;
  std::optional<std::string> get_string(const std::string& key) const;
  double require_number(const std::string& key) const;
  double get_number(const std::string& key, double fallback) const;
  std::vector<double> require_numbers(const std::string& key, std::size_t count) const;
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

  /// Keys never read through the accessors above.
  std::vector<std::string> unused_keys() const;
  /// ParseError for the first unused key when strict.
  void check_unused(bool strict) const;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry* find(const std::string& key) const;

  std::filesystem::path path_;
  std::map<std::string, Entry> entries_;
  mutable std::map<std::string, bool> used_;
};

struct JointConfig {
  AntagonisticJoint joint;
  double delta = 0.087;  // rad, passive deflection for stiffness reporting
};

using ConfigObject =
    std::variant<ActuatorModel, JointConfig, KinematicChain, LiftScenario, ExperimentSpec>;

/// Finds a referenced config: absolute paths as-is, relative paths first
/// against base_dir, then against $TENDONSIM_CONFIG_DIR.
std::filesystem::path resolve_config_path(const std::filesystem::path& reference,
                                          const std::filesystem::path& base_dir);

/// Two-column CSV (displacement_mm, force_N) with a mandatory header row.
std::vector<CurvePoint> read_curve_csv(const std::filesystem::path& path);

ActuatorModel load_actuator(const std::filesystem::path& path, bool strict = false);
JointConfig load_joint(const std::filesystem::path& path, bool strict = false);
KinematicChain load_chain(const std::filesystem::path& path, bool strict = false);
LiftScenario load_lift(const std::filesystem::path& path, bool strict = false);
ExperimentSpec load_experiment(const std::filesystem::path& path, bool strict = false);

/// Dispatches on the file's `type` key. All model invariants are checked;
/// failures surface as ParseError naming the offending field.
ConfigObject parse_config(const std::filesystem::path& path, bool strict = false);

const char* config_type_name(const ConfigObject& object);

}  // namespace tendonsim
