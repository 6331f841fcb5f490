#include "tendonsim/tendonsim.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "tendonsim/config.hpp"
#include "tendonsim/error.hpp"
#include "tendonsim/experiment.hpp"

struct ts_actuator {
  tendonsim::ActuatorModel model;
};

struct ts_joint {
  tendonsim::AntagonisticJoint model;
  double delta;
};

struct ts_chain {
  tendonsim::KinematicChain model;
};

namespace {

thread_local std::string g_last_error;

ts_status status_of(tendonsim::ErrorCode code) {
  using tendonsim::ErrorCode;
  switch (code) {
    case ErrorCode::Domain: return TS_ERR_DOMAIN;
    case ErrorCode::Usage: return TS_ERR_USAGE;
    case ErrorCode::OutOfModel: return TS_ERR_OUT_OF_MODEL;
    case ErrorCode::RomViolation: return TS_ERR_ROM;
    case ErrorCode::Parse: return TS_ERR_PARSE;
    case ErrorCode::Io: return TS_ERR_IO;
    case ErrorCode::InvalidArgument: return TS_ERR_INVALID_ARGUMENT;
    case ErrorCode::IntegrationFault: return TS_ERR_INTEGRATION;
  }
  return TS_ERR_INTERNAL;
}

ts_status fail(ts_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions to status codes. Nothing escapes.
template <typename Fn>
ts_status guard(Fn&& fn) noexcept {
  try {
    fn();
    return TS_OK;
  } catch (const tendonsim::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TS_ERR_INTERNAL, "unknown error");
  }
}

bool any_null() { return false; }
template <typename T, typename... Rest>
bool any_null(const T* p, const Rest*... rest) {
  return p == nullptr || any_null(rest...);
}

#define TS_REQUIRE(...) \
  if (any_null(__VA_ARGS__)) return fail(TS_ERR_NULL_POINTER, "null pointer argument")

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Handle, typename Make>
ts_status make_handle(Handle** out, Make&& make) {
  TS_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new Handle(make()); });
}

}  // namespace

extern "C" {

const char* ts_version(void) { return "0.1.0"; }

const char* ts_status_name(ts_status status) {
  switch (status) {
    case TS_OK: return "ok";
    case TS_ERR_DOMAIN: return "domain error";
    case TS_ERR_USAGE: return "usage error";
    case TS_ERR_OUT_OF_MODEL: return "out of model";
    case TS_ERR_ROM: return "range of motion violation";
    case TS_ERR_PARSE: return "parse error";
    case TS_ERR_IO: return "i/o error";
    case TS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TS_ERR_INTEGRATION: return "integration fault";
    case TS_ERR_NULL_POINTER: return "null pointer";
    case TS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ts_last_error(void) { return g_last_error.c_str(); }

void ts_string_free(char* s) { std::free(s); }

// --- actuators ---------------------------------------------------------------

ts_status ts_actuator_load(const char* path, int strict, ts_actuator** out) {
  TS_REQUIRE(path);
  return make_handle(out, [&] {
    return ts_actuator{tendonsim::load_actuator(path, strict != 0)};
  });
}

ts_status ts_actuator_new_torsion(double k_e, double pulley_radius_mm, double mu_p,
                                  double d_max_mm, double limit_force_n, double k_t,
                                  double rated_force_n, double rated_speed_mm_s,
                                  ts_actuator** out) {
  return make_handle(out, [&] {
    return ts_actuator{tendonsim::ActuatorModel(
        tendonsim::ElasticElementSpec::torsion_spring(k_e, pulley_radius_mm, mu_p, d_max_mm,
                                                      limit_force_n),
        k_t, rated_force_n, rated_speed_mm_s)};
  });
}

ts_status ts_actuator_new_compression(double k_cs, double d_max_mm, double limit_force_n,
                                      double k_t, double rated_force_n, double rated_speed_mm_s,
                                      ts_actuator** out) {
  return make_handle(out, [&] {
    return ts_actuator{tendonsim::ActuatorModel(
        tendonsim::ElasticElementSpec::compression_spring(k_cs, d_max_mm, limit_force_n), k_t,
        rated_force_n, rated_speed_mm_s)};
  });
}

ts_status ts_actuator_new_tabulated(const double* displacement_mm, const double* force_n,
                                    size_t n, double k_t, double rated_force_n,
                                    double rated_speed_mm_s, ts_actuator** out) {
  TS_REQUIRE(displacement_mm, force_n);
  return make_handle(out, [&] {
    std::vector<tendonsim::CurvePoint> table(n);
    for (size_t i = 0; i < n; ++i) table[i] = {displacement_mm[i], force_n[i]};
    return ts_actuator{tendonsim::ActuatorModel(
        tendonsim::ElasticElementSpec::tabulated(std::move(table)), k_t, rated_force_n,
        rated_speed_mm_s)};
  });
}

void ts_actuator_free(ts_actuator* actuator) { delete actuator; }

ts_status ts_actuator_displacement_from_force(const ts_actuator* a, double force_n,
                                              double* out_mm) {
  TS_REQUIRE(a, out_mm);
  return guard([&] { *out_mm = a->model.displacement_from_force(force_n); });
}

ts_status ts_actuator_force_from_displacement(const ts_actuator* a, double d_mm, double* out_n) {
  TS_REQUIRE(a, out_n);
  return guard([&] { *out_n = a->model.force_from_displacement(d_mm); });
}

ts_status ts_actuator_effective_stiffness(const ts_actuator* a, double* out) {
  TS_REQUIRE(a, out);
  return guard([&] { *out = a->model.effective_stiffness(); });
}

ts_status ts_actuator_effective_stiffness_at(const ts_actuator* a, double d_mm, double* out) {
  TS_REQUIRE(a, out);
  return guard([&] { *out = a->model.effective_stiffness(d_mm); });
}

ts_status ts_actuator_limit(const ts_actuator* a, double* out_d_mm, double* out_force_n) {
  TS_REQUIRE(a, out_d_mm, out_force_n);
  *out_d_mm = a->model.limit_displacement();
  *out_force_n = a->model.limit_force();
  return TS_OK;
}

// --- joint -------------------------------------------------------------------

ts_status ts_joint_load(const char* path, int strict, ts_joint** out) {
  TS_REQUIRE(path);
  return make_handle(out, [&] {
    tendonsim::JointConfig cfg = tendonsim::load_joint(path, strict != 0);
    return ts_joint{std::move(cfg.joint), cfg.delta};
  });
}

ts_status ts_joint_new(const ts_actuator* a1, const ts_actuator* a2, double moment_arm_mm,
                       double mu_s, double inertia_kg_m2, ts_joint** out) {
  TS_REQUIRE(a1, a2);
  return make_handle(out, [&] {
    return ts_joint{
        tendonsim::AntagonisticJoint(a1->model, a2->model, moment_arm_mm, mu_s, inertia_kg_m2),
        0.087};
  });
}

void ts_joint_free(ts_joint* joint) { delete joint; }

ts_status ts_joint_delta(const ts_joint* j, double* out_rad) {
  TS_REQUIRE(j, out_rad);
  *out_rad = j->delta;
  return TS_OK;
}

ts_status ts_joint_pretension_force(const ts_joint* j, double d_s, double* out_n) {
  TS_REQUIRE(j, out_n);
  return guard([&] { *out_n = j->model.pretension_force(d_s); });
}

ts_status ts_joint_classify_stage(const ts_joint* j, double d_s, double delta, ts_stage* out) {
  TS_REQUIRE(j, out);
  return guard([&] { *out = static_cast<ts_stage>(j->model.classify_stage(d_s, delta)); });
}

ts_status ts_joint_external_force(const ts_joint* j, double delta, double d_s, double* out_n) {
  TS_REQUIRE(j, out_n);
  return guard([&] { *out_n = j->model.external_force(delta, d_s); });
}

ts_status ts_joint_stiffness(const ts_joint* j, double delta, double d_s, double* out) {
  TS_REQUIRE(j, out);
  return guard([&] { *out = j->model.stiffness(delta, d_s); });
}

ts_status ts_joint_stiffness_range(const ts_joint* j, double delta, double* out_k_min,
                                   double* out_k_max, double* out_span) {
  TS_REQUIRE(j, out_k_min, out_k_max, out_span);
  return guard([&] {
    const tendonsim::StiffnessRange r = j->model.controllable_stiffness_range(delta);
    *out_k_min = r.k_min;
    *out_k_max = r.k_max;
    *out_span = r.span;
  });
}

ts_status ts_joint_max_acceleration(const ts_joint* j, double d_s, double* out) {
  TS_REQUIRE(j, out);
  return guard([&] { *out = j->model.max_allowable_acceleration(d_s); });
}

ts_status ts_joint_torque(const ts_joint* j, double d_s, double d_t, double* out) {
  TS_REQUIRE(j, out);
  return guard([&] { *out = j->model.torque(d_s, d_t); });
}

ts_status ts_joint_max_controllable_torque(const ts_joint* j, double d_s, double* out) {
  TS_REQUIRE(j, out);
  return guard([&] { *out = j->model.max_controllable_torque(d_s); });
}

ts_status ts_joint_absolute_max_torque(const ts_joint* j, double* out) {
  TS_REQUIRE(j, out);
  *out = j->model.absolute_max_torque();
  return TS_OK;
}

// --- kinematics --------------------------------------------------------------

ts_status ts_chain_load(const char* path, int strict, ts_chain** out) {
  TS_REQUIRE(path);
  return make_handle(out, [&] { return ts_chain{tendonsim::load_chain(path, strict != 0)}; });
}

ts_status ts_chain_new_default(ts_chain** out) {
  return make_handle(out, [] { return ts_chain{tendonsim::KinematicChain::arm()}; });
}

void ts_chain_free(ts_chain* chain) { delete chain; }

ts_status ts_chain_full_extension(const ts_chain* c, double* out_m) {
  TS_REQUIRE(c, out_m);
  *out_m = c->model.links().total();
  return TS_OK;
}

ts_status ts_chain_forward_kinematics(const ts_chain* c, const double q[7], int strict,
                                      double pose_out[16]) {
  TS_REQUIRE(c, q, pose_out);
  return guard([&] {
    tendonsim::JointVector joints{};
    std::copy(q, q + tendonsim::kArmJoints, joints.begin());
    const tendonsim::Pose pose = tendonsim::forward_kinematics(
        c->model, joints, strict ? tendonsim::RomMode::Strict : tendonsim::RomMode::Clamp);
    for (int r = 0; r < 4; ++r) {
      for (int k = 0; k < 4; ++k) pose_out[r * 4 + k] = pose.transform(r, k);
    }
  });
}

ts_status ts_chain_sample_workspace(const ts_chain* c, size_t n, uint64_t seed, double* xyz_out,
                                    ts_workspace_stats* stats_out) {
  TS_REQUIRE(c, stats_out);
  return guard([&] {
    const tendonsim::WorkspaceCloud cloud = tendonsim::sample_workspace(c->model, n, seed);
    if (xyz_out) {
      for (size_t i = 0; i < cloud.points.size(); ++i) {
        for (int k = 0; k < 3; ++k) xyz_out[3 * i + k] = cloud.points[i][k];
      }
    }
    stats_out->max_reach_m = cloud.stats.max_reach;
    for (int k = 0; k < 3; ++k) {
      stats_out->bbox_min_m[k] = cloud.stats.bbox_min[k];
      stats_out->bbox_max_m[k] = cloud.stats.bbox_max[k];
      stats_out->centroid_m[k] = cloud.stats.centroid[k];
    }
  });
}

// --- configs and experiments -------------------------------------------------

ts_status ts_validate_config(const char* path, int strict, const char** type_out) {
  TS_REQUIRE(path);
  return guard([&] {
    const tendonsim::ConfigObject object = tendonsim::parse_config(path, strict != 0);
    if (type_out) *type_out = tendonsim::config_type_name(object);
  });
}

ts_status ts_list_experiments(char** out) {
  TS_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    std::ostringstream os;
    for (tendonsim::ExperimentKind kind : tendonsim::all_experiments()) {
      os << tendonsim::to_string(kind) << '\t' << tendonsim::describe(kind) << '\n';
    }
    *out = dup_string(os.str());
  });
}

ts_status ts_run_experiment(const char* spec_path, const ts_run_options* options,
                            char** summary_json_out) {
  TS_REQUIRE(spec_path);
  if (summary_json_out) *summary_json_out = nullptr;
  return guard([&] {
    tendonsim::RunOptions run;
    if (options) {
      if (options->output) run.output = std::filesystem::path(options->output);
      if (options->format == TS_FORMAT_CSV) run.format = tendonsim::OutputFormat::Csv;
      if (options->format == TS_FORMAT_JSON) run.format = tendonsim::OutputFormat::Json;
      if (options->has_seed) run.seed = options->seed;
      run.strict = options->strict != 0;
    }
    tendonsim::ExperimentSpec spec = tendonsim::load_experiment(spec_path, run.strict);
    const tendonsim::ExperimentResult result = tendonsim::run_experiment(std::move(spec), run);
    if (summary_json_out) *summary_json_out = dup_string(tendonsim::dump_summary(result.summary));
  });
}

ts_status ts_lift_simulate(const char* path, int strict, char** summary_json_out) {
  TS_REQUIRE(path, summary_json_out);
  *summary_json_out = nullptr;
  return guard([&] {
    tendonsim::ExperimentSpec spec;
    spec.kind = tendonsim::ExperimentKind::Lift;
    spec.config = path;
    const tendonsim::ExperimentResult result = tendonsim::evaluate_experiment(spec, strict != 0);
    *summary_json_out = dup_string(tendonsim::dump_summary(result.summary));
  });
}

ts_status ts_check_csv_schema(const char* path, char** problems_out) {
  TS_REQUIRE(path, problems_out);
  *problems_out = nullptr;
  return guard([&] {
    std::string joined;
    for (const std::string& p : tendonsim::check_csv_schema(path)) joined += p + "\n";
    *problems_out = dup_string(joined);
  });
}

}  // extern "C"
