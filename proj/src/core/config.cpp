#include "tendonsim/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tendonsim/error.hpp"

namespace fs = std::filesystem;

namespace tendonsim {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_double(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Accepts a plain number or [-]pi[/n].
std::optional<double> parse_angle(std::string_view token) {
  double sign = 1.0;
  if (!token.empty() && (token.front() == '-' || token.front() == '+')) {
    if (token.front() == '-') sign = -1.0;
    token.remove_prefix(1);
  }
  if (token.rfind("pi", 0) == 0) {
    token.remove_prefix(2);
    if (token.empty()) return sign * std::numbers::pi;
    if (token.front() != '/') return std::nullopt;
    token.remove_prefix(1);
    auto divisor = parse_double(token);
    if (!divisor || *divisor == 0.0) return std::nullopt;
    return sign * std::numbers::pi / *divisor;
  }
  auto v = parse_double(token);
  if (!v) return std::nullopt;
  return sign * *v;
}

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Runs a model constructor, mapping invariant violations to a ParseError on
// the line of the field the message names.
template <typename Fn>
auto build(const KeyValueFile& file, Fn&& fn, const std::string& key_prefix = {}) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    const std::string what = e.what();
    const std::string field = what.substr(0, what.find_first_of(" ="));
    int line = file.line_of(key_prefix + field);
    if (line == 0) line = file.line_of(field);
    if (line == 0) line = file.line_of("element." + field);
    throw ParseError(file.path().string(), line, what);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(file.path().string(), 0, e.what());
  }
}

void expect_type(const KeyValueFile& file, const std::string& expected) {
  const std::string type = file.require_string("type");
  if (type != expected) file.fail("type", "expected type '" + expected + "', got '" + type + "'");
}

fs::path referenced(const KeyValueFile& file, const std::string& key, const std::string& value) {
  try {
    return resolve_config_path(value, file.path().parent_path());
  } catch (const Error& e) {
    file.fail(key, e.what());
  }
}

ActuatorModel actuator_from(const KeyValueFile& file, bool strict) {
  expect_type(file, "actuator");
  const std::string kind = file.require_string("element.kind");
  const double k_t = file.require_number("k_t");
  const double rated_force = file.require_number("rated_force");
  const double rated_speed = file.require_number("rated_speed");
  const std::string label = file.get_string("label").value_or(file.path().stem().string());

  std::optional<ElasticElementSpec> element;
  if (kind == "torsion_spring") {
    const double radius = file.require_number("element.pulley_radius");
    double k_e = 0.0;
    if (file.has("element.k_e") == file.has("element.k_ts")) {
      file.fail("element.k_e", "torsion_spring needs exactly one of element.k_e or element.k_ts");
    }
    if (file.has("element.k_e")) {
      k_e = file.require_number("element.k_e");
    } else {
      k_e = file.require_number("element.k_ts") * 2.0 * std::numbers::pi * radius * radius;
    }
    const double mu_p = file.get_number("element.mu_p", 0.0);
    const double d_max = file.require_number("element.d_max");
    const double f_tm = file.require_number("element.f_tm");
    element = build(file, [&] {
      return ElasticElementSpec::torsion_spring(k_e, radius, mu_p, d_max, f_tm);
    }, "element.");
  } else if (kind == "compression_spring") {
    const double k_cs = file.require_number("element.k_cs");
    const double d_max = file.require_number("element.d_max");
    const double f_tm = file.require_number("element.f_tm");
    element = build(file, [&] {
      return ElasticElementSpec::compression_spring(k_cs, d_max, f_tm);
    }, "element.");
  } else if (kind == "tabulated") {
    const fs::path table_path =
        referenced(file, "element.table", file.require_string("element.table"));
    std::vector<CurvePoint> table;
    try {
      table = read_curve_csv(table_path);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      file.fail("element.table", e.what());
    }
    const double d_max = file.get_number("element.d_max", 0.0);
    element = build(file, [&] {
      return ElasticElementSpec::tabulated(std::move(table), d_max);
    }, "element.");
  } else {
    file.fail("element.kind", "unknown element kind '" + kind +
                                  "' (torsion_spring, compression_spring, tabulated)");
  }
  file.check_unused(strict);
  return build(file, [&] {
    return ActuatorModel(std::move(*element), k_t, rated_force, rated_speed, label);
  });
}

}  // namespace

// --- KeyValueFile ------------------------------------------------------------

KeyValueFile KeyValueFile::read(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

KeyValueFile KeyValueFile::parse(const std::string& text, fs::path path) {
  KeyValueFile file;
  file.path_ = std::move(path);
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(file.path_.string(), line_no, "expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ParseError(file.path_.string(), line_no, "empty key");
    if (value.empty()) throw ParseError(file.path_.string(), line_no, "empty value for " + key);
    if (file.entries_.count(key)) {
      throw ParseError(file.path_.string(), line_no,
                       "duplicate key " + key + " (first on line " +
                           std::to_string(file.entries_[key].line) + ")");
    }
    file.entries_[key] = Entry{value, line_no};
  }
  return file;
}

const KeyValueFile::Entry* KeyValueFile::find(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  used_[key] = true;
  return &it->second;
}

int KeyValueFile::line_of(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

void KeyValueFile::fail(const std::string& key, const std::string& message) const {
  throw ParseError(path_.string(), line_of(key), key + ": " + message);
}

std::string KeyValueFile::require_string(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) fail(key, "missing required field");
  return e->value;
}

std::optional<std::string> KeyValueFile::get_string(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  return e->value;
}

double KeyValueFile::require_number(const std::string& key) const {
  const std::string value = require_string(key);
  auto v = parse_double(value);
  if (!v) fail(key, "not a number: '" + value + "'");
  return *v;
}

double KeyValueFile::get_number(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  return require_number(key);
}

std::vector<double> KeyValueFile::require_numbers(const std::string& key,
                                                  std::size_t count) const {
  const std::vector<std::string> tokens = split_ws(require_string(key));
  if (tokens.size() != count) {
    fail(key, "expected " + std::to_string(count) + " numbers, got " +
                  std::to_string(tokens.size()));
  }
  std::vector<double> out;
  for (const std::string& t : tokens) {
    auto v = parse_double(t);
    if (!v) fail(key, "not a number: '" + t + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<std::string> KeyValueFile::keys_with_prefix(const std::string& prefix) const {
  std::vector<std::string> keys;
  for (const auto& [key, entry] : entries_) {
    if (key.rfind(prefix, 0) == 0) keys.push_back(key);
  }
  return keys;
}

std::vector<std::string> KeyValueFile::unused_keys() const {
  std::vector<std::string> keys;
  for (const auto& [key, entry] : entries_) {
    if (!used_.count(key)) keys.push_back(key);
  }
  return keys;
}

void KeyValueFile::check_unused(bool strict) const {
  if (!strict) return;
  const auto unused = unused_keys();
  if (!unused.empty()) fail(unused.front(), "unknown key");
}

// --- loaders -----------------------------------------------------------------

fs::path resolve_config_path(const fs::path& reference, const fs::path& base_dir) {
  if (reference.is_absolute()) {
    if (fs::exists(reference)) return reference;
    throw Error(ErrorCode::Io, "config file not found: " + reference.string());
  }
  const fs::path local = base_dir.empty() ? reference : base_dir / reference;
  if (fs::exists(local)) return local;
  if (const char* dir = std::getenv(kConfigDirEnv); dir && *dir) {
    const fs::path fallback = fs::path(dir) / reference;
    if (fs::exists(fallback)) return fallback;
  }
  throw Error(ErrorCode::Io, "config file not found: " + reference.string() + " (searched " +
                                 local.string() + " and $" + kConfigDirEnv + ")");
}

std::vector<CurvePoint> read_curve_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open curve file");
  std::vector<CurvePoint> points;
  std::string raw;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError(path.string(), line_no, "expected 'displacement_mm,force_N'");
    }
    auto d = parse_double(trim(std::string_view(line).substr(0, comma)));
    auto f = parse_double(trim(std::string_view(line).substr(comma + 1)));
    if (!d || !f) throw ParseError(path.string(), line_no, "non-numeric curve row");
    points.push_back({*d, *f});
  }
  if (!header) throw ParseError(path.string(), 0, "curve file needs a header row");
  return points;
}

ActuatorModel load_actuator(const fs::path& path, bool strict) {
  return actuator_from(KeyValueFile::read(path), strict);
}

JointConfig load_joint(const fs::path& path, bool strict) {
  const KeyValueFile file = KeyValueFile::read(path);
  expect_type(file, "joint");
  const std::string first = file.require_string("actuator_1");
  const std::string second = file.get_string("actuator_2").value_or(first);
  ActuatorModel a1 = load_actuator(referenced(file, "actuator_1", first), strict);
  ActuatorModel a2 = load_actuator(referenced(file, "actuator_2", second), strict);
  const double moment_arm = file.require_number("moment_arm");
  const double mu_s = file.get_number("mu_s", 0.0);
  const double inertia = file.require_number("inertia");
  const double delta = file.get_number("delta", 0.087);
  if (!(delta > 0.0)) file.fail("delta", "must be > 0");
  file.check_unused(strict);
  return build(file, [&] {
    return JointConfig{AntagonisticJoint(std::move(a1), std::move(a2), moment_arm, mu_s, inertia),
                       delta};
  });
}

KinematicChain load_chain(const fs::path& path, bool strict) {
  const KeyValueFile file = KeyValueFile::read(path);
  expect_type(file, "chain");
  const KinematicChain defaults = KinematicChain::arm();

  LinkLengths links;
  links.humerus = file.get_number("link.b", links.humerus);
  links.forearm = file.get_number("link.c", links.forearm);
  links.hand = file.get_number("link.d", links.hand);

  std::vector<DHRow> rows = defaults.rows();
  for (std::size_t i = 0; i < kArmJoints; ++i) {
    const std::string key = "row." + std::to_string(i + 1);
    if (!file.has(key)) continue;
    const auto tokens = split_ws(file.require_string(key));
    if (tokens.size() != 6) file.fail(key, "expected 'a d alpha theta_offset sign variable'");
    DHRow row;
    auto a = parse_angle(tokens[0]);
    if (!a) file.fail(key, "bad a '" + tokens[0] + "'");
    row.a = *a;
    if (tokens[1] == "b") {
      row.d_symbol = LinkSymbol::Humerus;
    } else if (tokens[1] == "c") {
      row.d_symbol = LinkSymbol::Forearm;
    } else if (tokens[1] == "d") {
      row.d_symbol = LinkSymbol::Hand;
    } else if (auto d = parse_double(tokens[1])) {
      row.d = *d;
    } else {
      file.fail(key, "bad d '" + tokens[1] + "' (number or b, c, d)");
    }
    auto alpha = parse_angle(tokens[2]);
    auto offset = parse_angle(tokens[3]);
    auto sign = parse_double(tokens[4]);
    if (!alpha || !offset || !sign) file.fail(key, "bad alpha, theta_offset or sign");
    row.alpha = *alpha;
    row.theta_offset = *offset;
    row.joint_sign = static_cast<int>(*sign);
    if (row.joint_sign != *sign) file.fail(key, "sign must be +1 or -1");
    row.variable = tokens[5];
    rows[i] = row;
  }
  // A chain redefining rows must list them all.
  const auto row_keys = file.keys_with_prefix("row.");
  if (!row_keys.empty() && row_keys.size() != kArmJoints) {
    file.fail(row_keys.front(), "chain needs exactly 7 rows (row.1 .. row.7)");
  }

  std::vector<JointRange> rom = defaults.rom();
  for (std::size_t i = 0; i < kArmJoints; ++i) {
    const std::string key = "rom." + rows[i].variable;
    if (!file.has(key)) continue;
    const auto deg = file.require_numbers(key, 2);
    rom[i] = {deg[0] * kDegToRad, deg[1] * kDegToRad};
  }
  file.check_unused(strict);
  return build(file, [&] { return KinematicChain(std::move(rows), links, std::move(rom)); });
}

LiftScenario load_lift(const fs::path& path, bool strict) {
  const KeyValueFile file = KeyValueFile::read(path);
  expect_type(file, "lift");
  LiftScenario s;
  s.payload_mass = file.get_number("payload_mass", s.payload_mass);
  s.limb_mass = file.get_number("limb_mass", s.limb_mass);
  s.limb_com_distance = file.get_number("limb_com_distance", s.limb_com_distance);
  s.payload_distance = file.get_number("payload_distance", s.payload_distance);
  s.extra_inertia = file.get_number("extra_inertia", s.extra_inertia);
  s.joint_moment_arm = file.require_number("joint_moment_arm");
  s.gravity = file.get_number("gravity", s.gravity);
  s.theta_start = file.require_number("theta_start_deg") * kDegToRad;
  s.theta_target = file.require_number("theta_target_deg") * kDegToRad;
  s.command_speed = file.get_number("command_speed", 0.0);
  s.ramp_time = file.get_number("ramp_time", s.ramp_time);
  s.dt = file.get_number("dt", s.dt);
  s.t_max = file.get_number("t_max", s.t_max);
  const auto refs = split_list(file.require_string("actuators"));
  if (refs.empty() || refs.size() > 2) file.fail("actuators", "list 1 or 2 actuator configs");
  for (const std::string& ref : refs) {
    s.actuators.push_back(load_actuator(referenced(file, "actuators", ref), strict));
  }
  file.check_unused(strict);
  build(file, [&] {
    s.validate();
    return 0;
  });
  return s;
}

ExperimentSpec load_experiment(const fs::path& path, bool strict) {
  const KeyValueFile file = KeyValueFile::read(path);
  expect_type(file, "experiment");
  ExperimentSpec spec;
  const std::string name = file.require_string("experiment");
  auto kind = experiment_from_string(name);
  if (!kind) file.fail("experiment", "unknown experiment '" + name + "'");
  spec.kind = *kind;
  spec.config = referenced(file, "config", file.require_string("config"));

  for (const std::string& key : file.keys_with_prefix("sweep.")) {
    const auto v = file.require_numbers(key, 3);
    SweepGrid grid{v[0], v[1], v[2]};
    if (!(grid.step > 0.0) || !(grid.stop >= grid.start)) {
      file.fail(key, "sweep needs step > 0 and stop >= start");
    }
    spec.sweeps[key.substr(6)] = grid;
  }
  if (auto out = file.get_string("output")) spec.output = *out;
  if (auto fmt = file.get_string("format")) {
    if (*fmt == "csv") {
      spec.format = OutputFormat::Csv;
    } else if (*fmt == "json") {
      spec.format = OutputFormat::Json;
    } else {
      file.fail("format", "expected csv or json");
    }
  }
  const double seed = file.get_number("seed", 42.0);
  if (seed < 0.0 || seed != static_cast<double>(static_cast<std::uint64_t>(seed))) {
    file.fail("seed", "must be a non-negative integer");
  }
  spec.seed = static_cast<std::uint64_t>(seed);
  const double samples = file.get_number("samples", 100000.0);
  if (!(samples >= 1.0)) file.fail("samples", "must be >= 1");
  spec.samples = static_cast<std::size_t>(samples);
  if (file.has("delta")) {
    spec.delta = file.require_number("delta");
    if (!(*spec.delta > 0.0)) file.fail("delta", "must be > 0");
  }
  const double every = file.get_number("output_every", 1.0);
  if (!(every >= 1.0)) file.fail("output_every", "must be >= 1");
  spec.output_every = static_cast<std::size_t>(every);
  file.check_unused(strict);
  return spec;
}

ConfigObject parse_config(const fs::path& path, bool strict) {
  const KeyValueFile file = KeyValueFile::read(path);
  const std::string type = file.require_string("type");
  if (type == "actuator") return actuator_from(file, strict);
  if (type == "joint") return load_joint(path, strict);
  if (type == "chain") return load_chain(path, strict);
  if (type == "lift") return load_lift(path, strict);
  if (type == "experiment") {
    ExperimentSpec spec = load_experiment(path, strict);
    // The referenced model config has to validate too.
    parse_config(spec.config, strict);
    return spec;
  }
  file.fail("type", "unknown config type '" + type + "'");
}

const char* config_type_name(const ConfigObject& object) {
  switch (object.index()) {
    case 0: return "actuator";
    case 1: return "joint";
    case 2: return "chain";
    case 3: return "lift";
    case 4: return "experiment";
  }
  return "unknown";
}

}  // namespace tendonsim
