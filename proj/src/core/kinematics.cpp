#include "tendonsim/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "tendonsim/error.hpp"

namespace tendonsim {

namespace {

constexpr double kPi = std::numbers::pi;

double deg(double degrees) { return degrees * kPi / 180.0; }

bool is_allowed_twist(double alpha) {
  constexpr double tol = 1e-12;
  return std::abs(alpha) < tol || std::abs(alpha - kPi / 2) < tol ||
         std::abs(alpha + kPi / 2) < tol;
}

double resolve(LinkSymbol symbol, const LinkLengths& links, double fallback) {
  switch (symbol) {
    case LinkSymbol::Humerus: return links.humerus;
    case LinkSymbol::Forearm: return links.forearm;
    case LinkSymbol::Hand: return links.hand;
    case LinkSymbol::None: break;
  }
  return fallback;
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform,
// unlike std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

KinematicChain::KinematicChain(std::vector<DHRow> rows, LinkLengths links,
                               std::vector<JointRange> rom)
    : rows_(std::move(rows)), links_(links), rom_(std::move(rom)) {
  if (rows_.size() != kArmJoints) {
    std::ostringstream os;
    os << "kinematic chain needs exactly " << kArmJoints << " D-H rows (got " << rows_.size()
       << ")";
    throw InvalidArgument(os.str());
  }
  if (rom_.size() != kArmJoints) throw InvalidArgument("one ROM interval per joint is required");
  for (double len : {links_.humerus, links_.forearm, links_.hand}) {
    if (!std::isfinite(len) || len < 0.0) throw InvalidArgument("link lengths must be >= 0");
  }
  for (std::size_t i = 0; i < kArmJoints; ++i) {
    DHRow& row = rows_[i];
    if (!is_allowed_twist(row.alpha)) {
      throw InvalidArgument("row " + std::to_string(i + 1) + ": twist must be 0 or +-pi/2");
    }
    if (row.joint_sign != 1 && row.joint_sign != -1) {
      throw InvalidArgument("row " + std::to_string(i + 1) + ": joint_sign must be +1 or -1");
    }
    row.d = resolve(row.d_symbol, links_, row.d);
    const JointRange& r = rom_[i];
    if (!std::isfinite(r.lower) || !std::isfinite(r.upper) || r.lower > r.upper) {
      throw InvalidArgument("ROM of " + row.variable + " is empty");
    }
  }
}

KinematicChain KinematicChain::arm(LinkLengths links) {
  std::vector<DHRow> rows = {
      {0, 0, kPi / 2, 0.0, +1, "theta31", LinkSymbol::None},
      {0, 0, -kPi / 2, kPi / 2, -1, "theta32", LinkSymbol::None},
      {0, 0, kPi / 2, kPi / 2, +1, "theta33", LinkSymbol::Humerus},
      {0, 0, -kPi / 2, 0.0, +1, "theta21", LinkSymbol::None},
      {0, 0, -kPi / 2, kPi, +1, "theta22", LinkSymbol::Forearm},
      {0, 0, -kPi / 2, -kPi / 2, -1, "theta11", LinkSymbol::None},
      {0, 0, kPi / 2, 0.0, +1, "theta12", LinkSymbol::Hand},
  };
  // Glenohumeral extension uses the -40 deg measured on the skeleton.
  // Wrist ranges are not measured on the prototype; theta11 = 90 deg is the
  // straight wrist under this D-H table, so its range is centred there.
  std::vector<JointRange> rom = {
      {deg(-40), deg(65)},  {deg(-32), deg(104)}, {deg(-90), deg(40)}, {deg(0), deg(138)},
      {deg(-60), deg(65)},  {deg(20), deg(170)},  {deg(-20), deg(30)},
  };
  return KinematicChain(std::move(rows), links, std::move(rom));
}

JointVector KinematicChain::extended_pose() { return {0.0, 0.0, 0.0, 0.0, 0.0, kPi / 2, 0.0}; }

Eigen::Matrix4d dh_transform(const DHRow& row, double joint_value) {
  const double theta = row.theta_offset + row.joint_sign * joint_value;
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ca = std::cos(row.alpha), sa = std::sin(row.alpha);
  Eigen::Matrix4d t;
  t << ct, -st * ca, st * sa, row.a * ct,
       st, ct * ca, -ct * sa, row.a * st,
       0.0, sa, ca, row.d,
       0.0, 0.0, 0.0, 1.0;
  return t;
}

Pose forward_kinematics(const KinematicChain& chain, const JointVector& q, RomMode mode) {
  Pose pose;
  for (std::size_t i = 0; i < kArmJoints; ++i) {
    const DHRow& row = chain.rows()[i];
    const JointRange& range = chain.rom()[i];
    double value = q[i];
    if (!std::isfinite(value)) throw DomainError(row.variable + " is not finite");
    if (!range.contains(value)) {
      if (mode == RomMode::Strict) {
        std::ostringstream os;
        os << row.variable << "=" << value * 180.0 / kPi << " deg is outside its range of motion ["
           << range.lower * 180.0 / kPi << ", " << range.upper * 180.0 / kPi << "] deg";
        throw RomViolation(row.variable, os.str());
      }
      value = std::clamp(value, range.lower, range.upper);
    }
    pose.transform = pose.transform * dh_transform(row, value);
  }
  return pose;
}

WorkspaceCloud sample_workspace(const KinematicChain& chain, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("workspace sampling needs n >= 1");
  WorkspaceCloud cloud;
  cloud.seed = seed;
  cloud.n_samples = n;
  cloud.points.reserve(n);
  cloud.joint_samples.reserve(n);

  std::mt19937_64 rng(seed);
  JointVector q{};
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  WorkspaceStats& stats = cloud.stats;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < kArmJoints; ++i) {
      const JointRange& r = chain.rom()[i];
      q[i] = std::min(r.upper, r.lower + unit_uniform(rng) * (r.upper - r.lower));
    }
    const Eigen::Vector3d p = forward_kinematics(chain, q).position();
    cloud.points.push_back(p);
    cloud.joint_samples.push_back(q);
    if (s == 0) {
      stats.bbox_min = p;
      stats.bbox_max = p;
    } else {
      stats.bbox_min = stats.bbox_min.cwiseMin(p);
      stats.bbox_max = stats.bbox_max.cwiseMax(p);
    }
    stats.max_reach = std::max(stats.max_reach, p.norm());
    sum += p;
  }
  stats.centroid = sum / static_cast<double>(n);
  return cloud;
}

}  // namespace tendonsim
