#pragma once

#include <vector>

#include "tendonsim/elastic.hpp"

namespace tendonsim {

// SI units in this module: kg, m, s, rad, N.m, W. Actuator ratings keep their
// native N and mm/s and are converted at the interface.

/// A forearm-plus-payload pendulum about the elbow, lifted by one or two
/// tendon actuators acting at a constant moment arm. theta is the forearm
/// elevation above horizontal.
struct LiftScenario {
  double payload_mass = 2.0;          // kg
  double limb_mass = 1.0;             // kg
  double limb_com_distance = 0.15;    // m
  double payload_distance = 0.30;     // m
  double extra_inertia = 0.0;         // kg.m^2 on top of the two point masses
  double joint_moment_arm = 0.0367;   // m
  std::vector<ActuatorModel> actuators;
  double gravity = 9.81;              // m/s^2
  double theta_start = -0.5;          // rad
  double theta_target = 1.0;          // rad
  double command_speed = 0.0;         // mm/s tendon speed; 0 selects the rated speed
  double ramp_time = 0.0;             // s to ramp the command from zero
  double dt = 1e-4;                   // s
  double t_max = 5.0;                 // s

  /// Throws InvalidArgument naming the offending field.
  void validate() const;

  double inertia() const;                   // kg.m^2 about the joint
  double gravity_torque(double theta) const;  // N.m resisting elevation
  double potential_energy(double theta) const;  // J, zero at horizontal
  /// Joint speed at which the slowest actuator reaches its rated tendon speed.
  double saturated_joint_speed() const;     // rad/s
  double max_total_force() const;           // N
  /// Command magnitude in mm/s after defaulting to the rated speed.
  double effective_command_speed() const;
};

struct LiftState {
  double theta = 0.0;  // rad
  double omega = 0.0;  // rad/s
};

struct StepOutcome {
  LiftState next;
  double tendon_force = 0.0;    // N summed over actuators
  double applied_torque = 0.0;  // N.m
  double gravity_torque = 0.0;  // N.m
};

/// One explicit-Euler step. The actuators track the commanded tendon speed
/// (m/s at the tendon, signed) with force in [0, sum of rated forces]; joint
/// speed is capped at the rated tendon speed over the moment arm.
StepOutcome step_dynamics(const LiftScenario& scenario, const LiftState& state,
                          double commanded_tendon_speed_mm_s);

struct TraceSample {
  double t = 0.0;
  double theta = 0.0;
  double omega = 0.0;
  double torque = 0.0;          // applied by the actuators, N.m
  double gravity_torque = 0.0;  // N.m
  double power = 0.0;           // torque * omega, W
};

struct LiftTrace {
  std::vector<TraceSample> samples;
  double peak_power = 0.0;   // W
  double peak_torque = 0.0;  // N.m
  double peak_tendon_force = 0.0;  // N summed
  double time_to_target = 0.0;     // s; t_max on timeout
  double work = 0.0;               // J, sum of power * dt
};

enum class LiftStatus { Reached, Timeout };

struct LiftResult {
  LiftStatus status = LiftStatus::Reached;
  LiftTrace trace;  // partial on timeout
};

LiftResult simulate_lift(const LiftScenario& scenario);

inline double mechanical_power(double torque_nm, double omega_rad_s) {
  return torque_nm * omega_rad_s;
}

}  // namespace tendonsim
