#pragma once

#include "tendonsim/elastic.hpp"

namespace tendonsim {

/// Regime of a passive joint deflection delta at pre-tension d_s.
enum class Stage {
  OpposingSlack = 1,     // 0 <= d_s <= delta R: the opposing tendon goes slack
  Controllable,          // both elements inside their working range
  DrivingAtLimit,        // the stretched side reaches its travel limit
  PretensionPastLimit,   // pre-tension already past the limit
  TendonOnly,            // only tendons deform on either side
};

const char* to_string(Stage stage);

struct JointState {
  double d_s = 0.0;    // pre-tension tendon displacement (mm)
  double theta = 0.0;  // joint angle (rad)
  double d_t = 0.0;    // torque displacement (mm)
};

struct StiffnessRange {
  double k_min = 0.0;  // N.mm/rad
  double k_max = 0.0;
  double span = 0.0;
};

/// Two identical compliant actuators pulling a tendon joint in opposite
/// directions.
///
/// Forces in N, displacements and the moment arm in mm, torques in N.mm,
/// stiffness in N.mm/rad. Only max_allowable_acceleration() leaves this unit
/// regime (rad/s^2, inertia in kg.m^2).
class AntagonisticJoint {
 public:
  AntagonisticJoint(ActuatorModel actuator_1, ActuatorModel actuator_2, double moment_arm_mm,
                    double mu_s, double inertia_kg_m2);

  const ActuatorModel& actuator_1() const noexcept { return actuator_1_; }
  const ActuatorModel& actuator_2() const noexcept { return actuator_2_; }
  double moment_arm() const noexcept { return moment_arm_; }
  double mu_s() const noexcept { return mu_s_; }
  double inertia() const noexcept { return inertia_; }

  /// Limit displacement d_m shared by both actuators.
  double limit_displacement() const noexcept { return actuator_1_.limit_displacement(); }

  double pretension_force(double d_s) const;

  /// Ties go to the lower-numbered stage.
  Stage classify_stage(double d_s, double delta) const;

  /// Virtual external force holding a passive deflection delta:
  /// f_d(d_s + delta R) - f_d(d_s - delta R) + mu_s f_d(d_s).
  double external_force(double delta, double d_s) const;

  /// K_s = F_e R / delta.
  double stiffness(double delta, double d_s) const;

  /// Stiffness at both ends of the controllable stage (delta R, d_m - delta R].
  /// OutOfModelError when that stage is empty for this delta.
  StiffnessRange controllable_stiffness_range(double delta) const;

  /// Largest angular acceleration (rad/s^2) before the opposing tendon
  /// slackens, for 0 <= d_s <= d_m.
  double max_allowable_acceleration(double d_s) const;

  /// Tension difference f_d(d_1) - f_d(d_2), no friction and no clamping.
  double tension_difference(double d_1, double d_2) const;

  /// Output torque with actuator 2 held and actuator 1 advanced by d_t.
  /// Clamped at 0: static friction alone cannot drive the joint.
  double torque(double d_s, double d_t) const;

  /// torque(d_s, d_m - d_s), for 0 <= d_s <= d_m.
  double max_controllable_torque(double d_s) const;

  /// R F_tm.
  double absolute_max_torque() const noexcept;

 private:
  ActuatorModel actuator_1_;
  ActuatorModel actuator_2_;
  double moment_arm_;
  double mu_s_;
  double inertia_;
};

}  // namespace tendonsim
