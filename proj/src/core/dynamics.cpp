#include "tendonsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tendonsim/error.hpp"

namespace tendonsim {

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw InvalidArgument(std::string(field) + " must be " + rule);
}

double min_rated_speed(const LiftScenario& s) {
  double v = s.actuators.front().rated_speed();
  for (const ActuatorModel& a : s.actuators) v = std::min(v, a.rated_speed());
  return v;
}

}  // namespace

void LiftScenario::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(payload_mass) && payload_mass >= 0.0, "payload_mass", ">= 0");
  require(finite(limb_mass) && limb_mass >= 0.0, "limb_mass", ">= 0");
  require(finite(limb_com_distance) && limb_com_distance > 0.0, "limb_com_distance", "> 0");
  require(finite(payload_distance) && payload_distance > 0.0, "payload_distance", "> 0");
  require(finite(extra_inertia) && extra_inertia >= 0.0, "extra_inertia", ">= 0");
  require(finite(joint_moment_arm) && joint_moment_arm > 0.0, "joint_moment_arm", "> 0");
  require(!actuators.empty() && actuators.size() <= 2, "actuators", "a list of 1 or 2 actuators");
  require(finite(gravity) && gravity >= 0.0, "gravity", ">= 0");
  require(finite(theta_start) && finite(theta_target) && theta_start != theta_target,
          "theta_target", "finite and different from theta_start");
  require(finite(dt) && dt > 0.0, "dt", "> 0");
  require(finite(t_max) && t_max > 0.0, "t_max", "> 0");
  require(finite(ramp_time) && ramp_time >= 0.0, "ramp_time", ">= 0");
  require(finite(command_speed) && command_speed >= 0.0 &&
              command_speed <= min_rated_speed(*this),
          "command_speed", "within [0, rated_speed]");
  require(inertia() > 0.0, "extra_inertia", "large enough for a positive joint inertia");
}

double LiftScenario::inertia() const {
  return payload_mass * payload_distance * payload_distance +
         limb_mass * limb_com_distance * limb_com_distance + extra_inertia;
}

double LiftScenario::gravity_torque(double theta) const {
  return gravity * (payload_mass * payload_distance + limb_mass * limb_com_distance) *
         std::cos(theta);
}

double LiftScenario::potential_energy(double theta) const {
  return gravity * (payload_mass * payload_distance + limb_mass * limb_com_distance) *
         std::sin(theta);
}

double LiftScenario::saturated_joint_speed() const {
  return min_rated_speed(*this) * 1e-3 / joint_moment_arm;
}

double LiftScenario::max_total_force() const {
  double total = 0.0;
  for (const ActuatorModel& a : actuators) total += a.rated_force();
  return total;
}

double LiftScenario::effective_command_speed() const {
  return command_speed > 0.0 ? command_speed : min_rated_speed(*this);
}

StepOutcome step_dynamics(const LiftScenario& scenario, const LiftState& state,
                          double commanded_tendon_speed_mm_s) {
  if (!std::isfinite(state.theta) || !std::isfinite(state.omega)) {
    throw IntegrationFault("non-finite lift state");
  }
  const double v_limit = min_rated_speed(scenario);
  if (!std::isfinite(commanded_tendon_speed_mm_s) ||
      std::abs(commanded_tendon_speed_mm_s) > v_limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "commanded tendon speed " << commanded_tendon_speed_mm_s
       << " mm/s exceeds the rated " << v_limit << " mm/s";
    throw DomainError(os.str());
  }

  const double inertia = scenario.inertia();
  const double arm = scenario.joint_moment_arm;
  const double dt = scenario.dt;
  const double omega_cmd = commanded_tendon_speed_mm_s * 1e-3 / arm;

  StepOutcome out;
  out.gravity_torque = scenario.gravity_torque(state.theta);
  // Force that would reach the commanded speed in one step, limited to what
  // pulling tendons can deliver.
  const double needed_torque = inertia * (omega_cmd - state.omega) / dt + out.gravity_torque;
  out.tendon_force = std::clamp(needed_torque / arm, 0.0, scenario.max_total_force());
  out.applied_torque = out.tendon_force * arm;

  const double accel = (out.applied_torque - out.gravity_torque) / inertia;
  const double omega_cap = scenario.saturated_joint_speed();
  out.next.omega = std::clamp(state.omega + accel * dt, -omega_cap, omega_cap);
  out.next.theta = state.theta + state.omega * dt;
  if (!std::isfinite(out.next.theta) || !std::isfinite(out.next.omega)) {
    throw IntegrationFault("lift integration produced a non-finite state");
  }
  return out;
}

LiftResult simulate_lift(const LiftScenario& scenario) {
  scenario.validate();
  const double direction = scenario.theta_target > scenario.theta_start ? 1.0 : -1.0;
  const double v_cmd = scenario.effective_command_speed();
  const auto max_steps = static_cast<std::size_t>(std::ceil(scenario.t_max / scenario.dt));

  LiftResult result;
  LiftTrace& trace = result.trace;
  trace.samples.reserve(std::min<std::size_t>(max_steps, 1u << 20));
  LiftState state{scenario.theta_start, 0.0};

  for (std::size_t n = 0; n < max_steps; ++n) {
    const double t = static_cast<double>(n) * scenario.dt;
    const double ramp = scenario.ramp_time > 0.0 ? std::min(1.0, t / scenario.ramp_time) : 1.0;
    const StepOutcome step = step_dynamics(scenario, state, direction * v_cmd * ramp);

    TraceSample sample;
    sample.t = t;
    sample.theta = state.theta;
    sample.omega = state.omega;
    sample.torque = step.applied_torque;
    sample.gravity_torque = step.gravity_torque;
    sample.power = mechanical_power(step.applied_torque, state.omega);
    trace.samples.push_back(sample);

    trace.peak_power = std::max(trace.peak_power, sample.power);
    trace.peak_torque = std::max(trace.peak_torque, sample.torque);
    trace.peak_tendon_force = std::max(trace.peak_tendon_force, step.tendon_force);
    trace.work += sample.power * scenario.dt;

    state = step.next;
    if ((state.theta - scenario.theta_target) * direction >= 0.0) {
      trace.time_to_target = static_cast<double>(n + 1) * scenario.dt;
      result.status = LiftStatus::Reached;
      return result;
    }
  }
  trace.time_to_target = scenario.t_max;
  result.status = LiftStatus::Timeout;
  return result;
}

}  // namespace tendonsim
