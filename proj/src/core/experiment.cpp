#include "tendonsim/experiment.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "tendonsim/config.hpp"
#include "tendonsim/dynamics.hpp"
#include "tendonsim/error.hpp"
#include "tendonsim/joint.hpp"
#include "tendonsim/kinematics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace tendonsim {

namespace {

struct ExperimentInfo {
  ExperimentKind kind;
  const char* name;
  const char* description;
};

constexpr ExperimentInfo kExperiments[] = {
    {ExperimentKind::ForceDisplacement, "force_displacement",
     "actuator config; sweep.d -> tendon force f_d(d)"},
    {ExperimentKind::StiffnessVsPretension, "stiffness_vs_pretension",
     "joint config; sweep.d_s -> stage, F_e and K_s at delta"},
    {ExperimentKind::MaxAcceleration, "max_acceleration",
     "joint config; sweep.d_s in [0, d_m] -> maximum allowable joint acceleration"},
    {ExperimentKind::TorqueSurface, "torque_surface",
     "joint config; sweep.d_s x sweep.d_t -> joint torque"},
    {ExperimentKind::MaxTorqueVsPretension, "max_torque_vs_pretension",
     "joint config; sweep.d_s in [0, d_m] -> maximum controllable torque"},
    {ExperimentKind::StiffnessRange, "stiffness_range",
     "joint config; optional sweep.delta -> K_smin, K_smax, span of the controllable stage"},
    {ExperimentKind::Workspace, "workspace",
     "chain config; samples, seed -> Monte Carlo hand positions and reach statistics"},
    {ExperimentKind::Lift, "lift", "lift config -> single-joint lift trace and power summary"},
};

const ExperimentInfo& info(ExperimentKind kind) {
  for (const ExperimentInfo& e : kExperiments) {
    if (e.kind == kind) return e;
  }
  return kExperiments[0];
}

std::vector<double> grid(const ExperimentSpec& spec, const std::string& name) {
  auto it = spec.sweeps.find(name);
  if (it == spec.sweeps.end()) {
    throw UsageError(std::string("experiment ") + to_string(spec.kind) + " needs sweep." + name);
  }
  return it->second.points();
}

// Re-throws a model error with the sweep coordinate prepended.
template <typename Fn>
auto at(const std::string& coordinate, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), "at " + coordinate + ": " + e.what());
  }
}

std::string coord(const char* name, double value) {
  return std::string(name) + "=" + format_number(value);
}

json stage_boundaries(const AntagonisticJoint& joint, double delta) {
  const double arc = delta * joint.moment_arm();
  const double d_m = joint.limit_displacement();
  return json::array({
      {{"from", "S1_OpposingSlack"}, {"to", "S2_Controllable"}, {"d_s_mm", arc}},
      {{"from", "S2_Controllable"}, {"to", "S3_DrivingAtLimit"}, {"d_s_mm", d_m - arc}},
      {{"from", "S3_DrivingAtLimit"}, {"to", "S4_PretensionPastLimit"}, {"d_s_mm", d_m}},
      {{"from", "S4_PretensionPastLimit"}, {"to", "S5_TendonOnly"}, {"d_s_mm", d_m + arc}},
  });
}

json joint_summary(const JointConfig& cfg) {
  const AntagonisticJoint& j = cfg.joint;
  return {
      {"actuator", j.actuator_1().label()},
      {"moment_arm_mm", j.moment_arm()},
      {"mu_s", j.mu_s()},
      {"inertia_kg_m2", j.inertia()},
      {"limit_displacement_mm", j.limit_displacement()},
      {"limit_force_N", j.actuator_1().limit_force()},
  };
}

ExperimentResult force_displacement(const ExperimentSpec& spec, bool strict) {
  const ActuatorModel actuator = load_actuator(spec.config, strict);
  ExperimentResult r;
  r.table.operation = "ActuatorModel::force_from_displacement(d), effective_stiffness(d)";
  r.table.columns = {"d_mm", "force_N", "stiffness_N_per_mm"};
  double f_max = 0.0;
  for (double d : grid(spec, "d")) {
    at(coord("d", d), [&] {
      const double f = actuator.force_from_displacement(d);
      f_max = std::max(f_max, f);
      r.table.rows.push_back({d, f, actuator.effective_stiffness(d)});
      return 0;
    });
  }
  r.summary = {
      {"actuator", actuator.label()},
      {"element_kind", to_string(actuator.element().kind())},
      {"breakpoint", {{"d_mm", actuator.limit_displacement()},
                      {"force_N", actuator.limit_force()}}},
      {"tendon_stiffness_N_per_mm", actuator.k_t()},
      {"max_force_N", f_max},
  };
  if (actuator.element().kind() != ElementKind::Tabulated) {
    r.summary["working_stiffness_N_per_mm"] = actuator.effective_stiffness();
    r.summary["element_equivalent_stiffness_N_per_mm"] =
        actuator.element().tendon_equivalent_stiffness();
  }
  return r;
}

ExperimentResult stiffness_vs_pretension(const ExperimentSpec& spec, bool strict) {
  const JointConfig cfg = load_joint(spec.config, strict);
  const AntagonisticJoint& joint = cfg.joint;
  const double delta = spec.delta.value_or(cfg.delta);
  ExperimentResult r;
  r.table.operation = "AntagonisticJoint::classify_stage, external_force, stiffness (delta=" +
                      format_number(delta) + " rad)";
  r.table.columns = {"d_s_mm", "stage_idx", "F_e_N", "K_s_Nmm_per_rad"};
  double k_lo = INFINITY, k_hi = -INFINITY;
  for (double d_s : grid(spec, "d_s")) {
    at(coord("d_s", d_s), [&] {
      const double k = joint.stiffness(delta, d_s);
      k_lo = std::min(k_lo, k);
      k_hi = std::max(k_hi, k);
      r.table.rows.push_back({d_s, static_cast<double>(joint.classify_stage(d_s, delta)),
                              joint.external_force(delta, d_s), k});
      return 0;
    });
  }
  r.summary = joint_summary(cfg);
  r.summary["delta_rad"] = delta;
  r.summary["stage_boundaries"] = stage_boundaries(joint, delta);
  r.summary["K_s_min_Nmm_per_rad"] = k_lo;
  r.summary["K_s_max_Nmm_per_rad"] = k_hi;
  return r;
}

ExperimentResult max_acceleration(const ExperimentSpec& spec, bool strict) {
  const JointConfig cfg = load_joint(spec.config, strict);
  const AntagonisticJoint& joint = cfg.joint;
  ExperimentResult r;
  r.table.operation = "AntagonisticJoint::max_allowable_acceleration(d_s)";
  r.table.columns = {"d_s_mm", "theta_ddot_max_rad_per_s2"};
  double peak = 0.0;
  for (double d_s : grid(spec, "d_s")) {
    at(coord("d_s", d_s), [&] {
      const double a = joint.max_allowable_acceleration(d_s);
      peak = std::max(peak, a);
      r.table.rows.push_back({d_s, a});
      return 0;
    });
  }
  r.summary = joint_summary(cfg);
  // The stretched side reaches d_m when d_s + d_s = d_m.
  r.summary["slope_change_d_s_mm"] = joint.limit_displacement() / 2.0;
  r.summary["max_theta_ddot_rad_per_s2"] = peak;
  return r;
}

ExperimentResult torque_surface(const ExperimentSpec& spec, bool strict) {
  const JointConfig cfg = load_joint(spec.config, strict);
  const AntagonisticJoint& joint = cfg.joint;
  ExperimentResult r;
  r.table.operation = "AntagonisticJoint::torque(d_s, d_t)";
  r.table.columns = {"d_s_mm", "d_t_mm", "tau_Nmm"};
  const auto d_t_grid = grid(spec, "d_t");
  double peak = 0.0;
  for (double d_s : grid(spec, "d_s")) {
    for (double d_t : d_t_grid) {
      at(coord("d_s", d_s) + ", " + coord("d_t", d_t), [&] {
        const double tau = joint.torque(d_s, d_t);
        peak = std::max(peak, tau);
        r.table.rows.push_back({d_s, d_t, tau});
        return 0;
      });
    }
  }
  r.summary = joint_summary(cfg);
  r.summary["max_tau_Nmm"] = peak;
  return r;
}

ExperimentResult max_torque_vs_pretension(const ExperimentSpec& spec, bool strict) {
  const JointConfig cfg = load_joint(spec.config, strict);
  const AntagonisticJoint& joint = cfg.joint;
  ExperimentResult r;
  r.table.operation = "AntagonisticJoint::max_controllable_torque(d_s)";
  r.table.columns = {"d_s_mm", "tau_max_Nmm"};
  for (double d_s : grid(spec, "d_s")) {
    at(coord("d_s", d_s), [&] {
      r.table.rows.push_back({d_s, joint.max_controllable_torque(d_s)});
      return 0;
    });
  }
  r.summary = joint_summary(cfg);
  r.summary["absolute_max_torque_Nmm"] = joint.absolute_max_torque();
  return r;
}

ExperimentResult stiffness_range(const ExperimentSpec& spec, bool strict) {
  const JointConfig cfg = load_joint(spec.config, strict);
  const AntagonisticJoint& joint = cfg.joint;
  const double delta = spec.delta.value_or(cfg.delta);
  std::vector<double> deltas = {delta};
  if (spec.sweeps.count("delta")) deltas = grid(spec, "delta");

  ExperimentResult r;
  r.table.operation = "AntagonisticJoint::controllable_stiffness_range(delta)";
  r.table.columns = {"delta_rad", "K_smin_Nm_per_rad", "K_smax_Nm_per_rad", "dK_s_Nm_per_rad"};
  for (double d : deltas) {
    at(coord("delta", d), [&] {
      const StiffnessRange range = joint.controllable_stiffness_range(d);
      r.table.rows.push_back({d, range.k_min * 1e-3, range.k_max * 1e-3, range.span * 1e-3});
      return 0;
    });
  }
  const StiffnessRange range = at(coord("delta", delta), [&] {
    return joint.controllable_stiffness_range(delta);
  });
  r.summary = joint_summary(cfg);
  r.summary["delta_rad"] = delta;
  r.summary["K_smin_Nm_per_rad"] = range.k_min * 1e-3;
  r.summary["K_smax_Nm_per_rad"] = range.k_max * 1e-3;
  r.summary["dK_s_Nm_per_rad"] = range.span * 1e-3;
  r.summary["controllable_d_s_mm"] = {delta * joint.moment_arm(),
                                      joint.limit_displacement() - delta * joint.moment_arm()};
  return r;
}

json vec(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

ExperimentResult workspace(const ExperimentSpec& spec, bool strict) {
  const KinematicChain chain = load_chain(spec.config, strict);
  const WorkspaceCloud cloud = sample_workspace(chain, spec.samples, spec.seed);
  ExperimentResult r;
  r.table.operation = "sample_workspace(chain, n=" + std::to_string(spec.samples) +
                      ", seed=" + std::to_string(spec.seed) + ")";
  r.table.columns = {"x_m", "y_m", "z_m"};
  r.table.rows.reserve(cloud.points.size());
  for (const Eigen::Vector3d& p : cloud.points) r.table.rows.push_back({p.x(), p.y(), p.z()});
  const double full = chain.links().total();
  r.summary = {
      {"n_samples", cloud.n_samples},
      {"seed", cloud.seed},
      {"max_reach_m", cloud.stats.max_reach},
      {"full_extension_m", full},
      {"reach_ratio", cloud.stats.max_reach / full},
      {"bbox_min_m", vec(cloud.stats.bbox_min)},
      {"bbox_max_m", vec(cloud.stats.bbox_max)},
      {"centroid_m", vec(cloud.stats.centroid)},
  };
  return r;
}

ExperimentResult lift(const ExperimentSpec& spec, bool strict) {
  const LiftScenario scenario = load_lift(spec.config, strict);
  const LiftResult result = simulate_lift(scenario);
  ExperimentResult r;
  r.table.operation = "simulate_lift(scenario)";
  r.table.columns = {"t_s", "theta_rad", "omega_rad_per_s", "tau_Nm", "tau_gravity_Nm", "power_W"};
  const auto& samples = result.trace.samples;
  for (std::size_t i = 0; i < samples.size(); i += spec.output_every) {
    const TraceSample& s = samples[i];
    r.table.rows.push_back({s.t, s.theta, s.omega, s.torque, s.gravity_torque, s.power});
  }
  const LiftTrace& t = result.trace;
  r.summary = {
      {"status", result.status == LiftStatus::Reached ? "reached" : "timeout"},
      {"peak_power_W", t.peak_power},
      {"peak_torque_Nm", t.peak_torque},
      {"peak_tendon_force_N", t.peak_tendon_force},
      {"time_to_target_s", t.time_to_target},
      {"work_J", t.work},
      {"saturated_joint_speed_rad_per_s", scenario.saturated_joint_speed()},
      {"power_bound_W", scenario.max_total_force() * scenario.effective_command_speed() * 1e-3},
      {"steps", samples.size()},
  };
  return r;
}

fs::path default_output(const ExperimentSpec& spec, OutputFormat format) {
  return fs::path(to_string(spec.kind)) += (format == OutputFormat::Csv ? ".csv" : ".json");
}

}  // namespace

const char* to_string(ExperimentKind kind) { return info(kind).name; }

const char* describe(ExperimentKind kind) { return info(kind).description; }

std::optional<ExperimentKind> experiment_from_string(std::string_view name) {
  for (const ExperimentInfo& e : kExperiments) {
    if (name == e.name) return e.kind;
  }
  return std::nullopt;
}

const std::vector<ExperimentKind>& all_experiments() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> out;
    for (const ExperimentInfo& e : kExperiments) out.push_back(e.kind);
    return out;
  }();
  return kinds;
}

std::vector<double> SweepGrid::points() const {
  if (!(step > 0.0) || !(stop >= start)) throw UsageError("sweep needs step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

ExperimentResult evaluate_experiment(const ExperimentSpec& spec, bool strict) {
  using Runner = std::function<ExperimentResult(const ExperimentSpec&, bool)>;
  Runner runner;
  switch (spec.kind) {
    case ExperimentKind::ForceDisplacement: runner = force_displacement; break;
    case ExperimentKind::StiffnessVsPretension: runner = stiffness_vs_pretension; break;
    case ExperimentKind::MaxAcceleration: runner = max_acceleration; break;
    case ExperimentKind::TorqueSurface: runner = torque_surface; break;
    case ExperimentKind::MaxTorqueVsPretension: runner = max_torque_vs_pretension; break;
    case ExperimentKind::StiffnessRange: runner = stiffness_range; break;
    case ExperimentKind::Workspace: runner = workspace; break;
    case ExperimentKind::Lift: runner = lift; break;
  }
  ExperimentResult r = runner(spec, strict);
  r.summary["experiment"] = to_string(spec.kind);
  r.summary["operation"] = r.table.operation;
  r.summary["rows"] = r.table.rows.size();
  r.summary["config"] = spec.config.filename().string();
  return r;
}

std::string dump_summary(const json& summary) { return summary.dump(2) + "\n"; }

ExperimentResult run_experiment(ExperimentSpec spec, const RunOptions& options) {
  if (options.seed) spec.seed = *options.seed;
  const OutputFormat format = options.format.value_or(spec.format);
  fs::path out = options.output.value_or(spec.output);
  if (out.empty()) out = default_output(spec, format);

  ExperimentResult r = evaluate_experiment(spec, options.strict);

  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  auto open = [](const fs::path& p) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + p.string());
    return f;
  };
  if (format == OutputFormat::Csv) {
    {
      std::ofstream f = open(out);
      write_csv(f, r.table);
    }
    fs::path summary_path = out;
    summary_path.replace_extension(".summary.json");
    std::ofstream f = open(summary_path);
    f << dump_summary(r.summary);
    r.files = {out, summary_path};
  } else {
    json doc = {{"operation", r.table.operation},
                {"columns", r.table.columns},
                {"rows", r.table.rows},
                {"summary", r.summary}};
    std::ofstream f = open(out);
    f << dump_summary(doc);
    r.files = {out};
  }
  return r;
}

}  // namespace tendonsim
