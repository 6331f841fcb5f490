#include "tendonsim/joint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tendonsim/error.hpp"

namespace tendonsim {

namespace {

void require_pretension(double d_s) {
  if (!std::isfinite(d_s) || d_s < 0.0) {
    std::ostringstream os;
    os << "pre-tension displacement must be finite and >= 0 (got " << d_s << ")";
    throw DomainError(os.str());
  }
}

void require_deflection(double delta) {
  if (!std::isfinite(delta) || delta <= 0.0) {
    std::ostringstream os;
    os << "passive deflection delta must be finite and > 0 (got " << delta << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

const char* to_string(Stage stage) {
  switch (stage) {
    case Stage::OpposingSlack: return "S1_OpposingSlack";
    case Stage::Controllable: return "S2_Controllable";
    case Stage::DrivingAtLimit: return "S3_DrivingAtLimit";
    case Stage::PretensionPastLimit: return "S4_PretensionPastLimit";
    case Stage::TendonOnly: return "S5_TendonOnly";
  }
  return "unknown";
}

AntagonisticJoint::AntagonisticJoint(ActuatorModel actuator_1, ActuatorModel actuator_2,
                                     double moment_arm_mm, double mu_s, double inertia_kg_m2)
    : actuator_1_(std::move(actuator_1)),
      actuator_2_(std::move(actuator_2)),
      moment_arm_(moment_arm_mm),
      mu_s_(mu_s),
      inertia_(inertia_kg_m2) {
  if (!std::isfinite(moment_arm_) || moment_arm_ <= 0.0) {
    throw InvalidArgument("moment arm R must be finite and > 0");
  }
  if (!std::isfinite(mu_s_) || mu_s_ < 0.0 || mu_s_ >= 1.0) {
    throw InvalidArgument("mu_s must satisfy 0 <= mu_s < 1");
  }
  if (!std::isfinite(inertia_) || inertia_ <= 0.0) {
    throw InvalidArgument("joint inertia must be finite and > 0");
  }
  if (!actuator_1_.same_parameters(actuator_2_)) {
    throw InvalidArgument("antagonistic pair requires identical actuator parameters");
  }
}

double AntagonisticJoint::pretension_force(double d_s) const {
  require_pretension(d_s);
  return actuator_1_.force_from_displacement(d_s);
}

Stage AntagonisticJoint::classify_stage(double d_s, double delta) const {
  const double arc = delta * moment_arm_;
  const double d_m = limit_displacement();
  if (d_s <= arc) return Stage::OpposingSlack;
  if (d_s <= d_m - arc) return Stage::Controllable;
  if (d_s <= d_m) return Stage::DrivingAtLimit;
  if (d_s <= d_m + arc) return Stage::PretensionPastLimit;
  return Stage::TendonOnly;
}

double AntagonisticJoint::external_force(double delta, double d_s) const {
  require_deflection(delta);
  require_pretension(d_s);
  const double arc = delta * moment_arm_;
  return tension_difference(d_s + arc, d_s - arc) +
         mu_s_ * actuator_1_.force_from_displacement(d_s);
}

double AntagonisticJoint::stiffness(double delta, double d_s) const {
  return external_force(delta, d_s) * moment_arm_ / delta;
}

StiffnessRange AntagonisticJoint::controllable_stiffness_range(double delta) const {
  require_deflection(delta);
  const double arc = delta * moment_arm_;
  const double upper = limit_displacement() - arc;
  if (!(arc < upper)) {
    std::ostringstream os;
    os << "controllable stage is empty: delta*R=" << arc << " mm leaves no room below d_m="
       << limit_displacement() << " mm";
    throw OutOfModelError(os.str());
  }
  // Stage 2 is open at delta R; F_e is continuous there so the endpoint value
  // is the infimum.
  StiffnessRange range;
  range.k_min = stiffness(delta, arc);
  range.k_max = stiffness(delta, upper);
  range.span = range.k_max - range.k_min;
  return range;
}

double AntagonisticJoint::max_allowable_acceleration(double d_s) const {
  require_pretension(d_s);
  if (d_s > limit_displacement()) {
    std::ostringstream os;
    os << "d_s=" << d_s << " mm exceeds d_m=" << limit_displacement()
       << " mm; the acceleration limit only covers the elastic working range";
    throw OutOfModelError(os.str());
  }
  if (d_s == 0.0) return 0.0;
  const double slack_deflection = d_s / moment_arm_;
  const double torque_nm = external_force(slack_deflection, d_s) * moment_arm_ * 1e-3;
  return torque_nm / inertia_;
}

double AntagonisticJoint::tension_difference(double d_1, double d_2) const {
  return actuator_1_.force_from_displacement(d_1) - actuator_2_.force_from_displacement(d_2);
}

double AntagonisticJoint::torque(double d_s, double d_t) const {
  require_pretension(d_s);
  if (!std::isfinite(d_t) || d_t < 0.0) {
    throw DomainError("torque displacement must be finite and >= 0");
  }
  const double net = tension_difference(d_s + d_t, d_s - d_t) -
                     mu_s_ * actuator_1_.force_from_displacement(d_s);
  return std::max(0.0, net) * moment_arm_;
}

double AntagonisticJoint::max_controllable_torque(double d_s) const {
  require_pretension(d_s);
  const double d_m = limit_displacement();
  if (d_s > d_m) {
    std::ostringstream os;
    os << "d_s=" << d_s << " mm exceeds d_m=" << d_m << " mm; no torque-controllable travel";
    throw OutOfModelError(os.str());
  }
  return torque(d_s, d_m - d_s);
}

double AntagonisticJoint::absolute_max_torque() const noexcept {
  return moment_arm_ * actuator_1_.limit_force();
}

}  // namespace tendonsim
