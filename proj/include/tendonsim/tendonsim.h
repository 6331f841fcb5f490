/*
 * tendonsim C API.
 *
 * Opaque handles over the C++ models. Every call returns a ts_status; on
 * failure ts_last_error() describes the problem for the calling thread until
 * the next failing call on that thread. Handles are immutable once loaded and
 * may be shared across threads.
 *
 * Units: mm, N, N.mm, N.mm/rad for actuators and joints; rad/s^2 for
 * accelerations; m for kinematics.
 */
#ifndef TENDONSIM_H
#define TENDONSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TENDONSIM_BUILDING_LIBRARY)
#    define TS_API __declspec(dllexport)
#  else
#    define TS_API __declspec(dllimport)
#  endif
#else
#  define TS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
  TS_OK = 0,
  TS_ERR_DOMAIN = 1,
  TS_ERR_USAGE = 2,
  TS_ERR_OUT_OF_MODEL = 3,
  TS_ERR_ROM = 4,
  TS_ERR_PARSE = 5,
  TS_ERR_IO = 6,
  TS_ERR_INVALID_ARGUMENT = 7,
  TS_ERR_INTEGRATION = 8,
  TS_ERR_NULL_POINTER = 9,
  TS_ERR_INTERNAL = 10
} ts_status;

typedef enum ts_stage {
  TS_STAGE_OPPOSING_SLACK = 1,
  TS_STAGE_CONTROLLABLE = 2,
  TS_STAGE_DRIVING_AT_LIMIT = 3,
  TS_STAGE_PRETENSION_PAST_LIMIT = 4,
  TS_STAGE_TENDON_ONLY = 5
} ts_stage;

typedef enum ts_format { TS_FORMAT_DEFAULT = 0, TS_FORMAT_CSV = 1, TS_FORMAT_JSON = 2 } ts_format;

typedef struct ts_actuator ts_actuator;
typedef struct ts_joint ts_joint;
typedef struct ts_chain ts_chain;

TS_API const char* ts_version(void);
TS_API const char* ts_status_name(ts_status status);
/* Message of the last failure on this thread; "" when none. */
TS_API const char* ts_last_error(void);
/* Frees strings returned through char** out-parameters. */
TS_API void ts_string_free(char* s);

/* --- actuators ---------------------------------------------------------- */

TS_API ts_status ts_actuator_load(const char* path, int strict, ts_actuator** out);
TS_API ts_status ts_actuator_new_torsion(double k_e_nmm_per_rad, double pulley_radius_mm,
                                         double mu_p, double d_max_mm, double limit_force_n,
                                         double k_t, double rated_force_n,
                                         double rated_speed_mm_s, ts_actuator** out);
TS_API ts_status ts_actuator_new_compression(double k_cs, double d_max_mm, double limit_force_n,
                                             double k_t, double rated_force_n,
                                             double rated_speed_mm_s, ts_actuator** out);
/* Element curve as n (displacement_mm, force_N) pairs starting at (0, 0). */
TS_API ts_status ts_actuator_new_tabulated(const double* displacement_mm, const double* force_n,
                                           size_t n, double k_t, double rated_force_n,
                                           double rated_speed_mm_s, ts_actuator** out);
TS_API void ts_actuator_free(ts_actuator* actuator);

TS_API ts_status ts_actuator_displacement_from_force(const ts_actuator* a, double force_n,
                                                     double* out_mm);
TS_API ts_status ts_actuator_force_from_displacement(const ts_actuator* a, double d_mm,
                                                     double* out_n);
TS_API ts_status ts_actuator_effective_stiffness(const ts_actuator* a, double* out_n_per_mm);
TS_API ts_status ts_actuator_effective_stiffness_at(const ts_actuator* a, double d_mm,
                                                    double* out_n_per_mm);
TS_API ts_status ts_actuator_limit(const ts_actuator* a, double* out_d_mm, double* out_force_n);

/* --- antagonistic joint ------------------------------------------------- */

TS_API ts_status ts_joint_load(const char* path, int strict, ts_joint** out);
/* Copies both actuators; the caller keeps ownership of a1 and a2. */
TS_API ts_status ts_joint_new(const ts_actuator* a1, const ts_actuator* a2, double moment_arm_mm,
                              double mu_s, double inertia_kg_m2, ts_joint** out);
TS_API void ts_joint_free(ts_joint* joint);

/* delta from the joint config (0.087 rad when built with ts_joint_new). */
TS_API ts_status ts_joint_delta(const ts_joint* j, double* out_rad);
TS_API ts_status ts_joint_pretension_force(const ts_joint* j, double d_s, double* out_n);
TS_API ts_status ts_joint_classify_stage(const ts_joint* j, double d_s, double delta,
                                         ts_stage* out);
TS_API ts_status ts_joint_external_force(const ts_joint* j, double delta, double d_s,
                                         double* out_n);
TS_API ts_status ts_joint_stiffness(const ts_joint* j, double delta, double d_s,
                                    double* out_nmm_per_rad);
TS_API ts_status ts_joint_stiffness_range(const ts_joint* j, double delta, double* out_k_min,
                                          double* out_k_max, double* out_span);
TS_API ts_status ts_joint_max_acceleration(const ts_joint* j, double d_s,
                                           double* out_rad_per_s2);
TS_API ts_status ts_joint_torque(const ts_joint* j, double d_s, double d_t, double* out_nmm);
TS_API ts_status ts_joint_max_controllable_torque(const ts_joint* j, double d_s,
                                                  double* out_nmm);
TS_API ts_status ts_joint_absolute_max_torque(const ts_joint* j, double* out_nmm);

/* --- kinematics --------------------------------------------------------- */

typedef struct ts_workspace_stats {
  double max_reach_m;
  double bbox_min_m[3];
  double bbox_max_m[3];
  double centroid_m[3];
} ts_workspace_stats;

TS_API ts_status ts_chain_load(const char* path, int strict, ts_chain** out);
/* The seven-joint arm with default geometry and range of motion. */
TS_API ts_status ts_chain_new_default(ts_chain** out);
TS_API void ts_chain_free(ts_chain* chain);
TS_API ts_status ts_chain_full_extension(const ts_chain* c, double* out_m);
/* q: 7 joint values (rad). pose_out: row-major 4x4 transform. */
TS_API ts_status ts_chain_forward_kinematics(const ts_chain* c, const double q[7], int strict,
                                             double pose_out[16]);
/* xyz_out may be NULL; otherwise it receives 3*n doubles. */
TS_API ts_status ts_chain_sample_workspace(const ts_chain* c, size_t n, uint64_t seed,
                                           double* xyz_out, ts_workspace_stats* stats_out);

/* --- configs and experiments -------------------------------------------- */

/* Parses and validates any config; type_out receives "actuator", "joint",
 * "chain", "lift" or "experiment" (static storage). */
TS_API ts_status ts_validate_config(const char* path, int strict, const char** type_out);

/* Newline-separated "name<TAB>description" lines. */
TS_API ts_status ts_list_experiments(char** out);

typedef struct ts_run_options {
  const char* output; /* NULL: spec value or <experiment>.<ext> */
  ts_format format;
  int has_seed;
  uint64_t seed;
  int strict;
} ts_run_options;

/* Runs an experiment spec file; summary_json_out (may be NULL) receives the
 * JSON summary, to be released with ts_string_free. */
TS_API ts_status ts_run_experiment(const char* spec_path, const ts_run_options* options,
                                   char** summary_json_out);

/* Simulates a lift config; summary as for ts_run_experiment. */
TS_API ts_status ts_lift_simulate(const char* path, int strict, char** summary_json_out);

/* Empty string when the CSV passes the unit-header schema check, otherwise
 * newline-separated problems. */
TS_API ts_status ts_check_csv_schema(const char* path, char** problems_out);

#ifdef __cplusplus
}
#endif

#endif /* TENDONSIM_H */
