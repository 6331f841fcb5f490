#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tendonsim {

inline constexpr std::size_t kArmJoints = 7;

/// Joint variables in row order: theta31, theta32, theta33 (glenohumeral),
/// theta21 (elbow), theta22 (forearm), theta11, theta12 (wrist). Radians.
using JointVector = std::array<double, kArmJoints>;

/// Link-length symbol a D-H offset may refer to.
enum class LinkSymbol { None, Humerus, Forearm, Hand };

/// One row of a standard (distal) Denavit-Hartenberg table. The row's angle
/// is theta = theta_offset + joint_sign * q for its joint variable q.
struct DHRow {
  double a = 0.0;      // m
  double d = 0.0;      // m; resolved from d_symbol when one is set
  double alpha = 0.0;  // rad
  double theta_offset = 0.0;
  int joint_sign = 1;
  std::string variable;
  LinkSymbol d_symbol = LinkSymbol::None;
};

struct LinkLengths {
  double humerus = 0.30;  // b
  double forearm = 0.25;  // c
  double hand = 0.08;     // d

  double total() const noexcept { return humerus + forearm + hand; }
};

struct JointRange {
  double lower = 0.0;  // rad
  double upper = 0.0;

  bool contains(double q) const noexcept { return q >= lower && q <= upper; }
};

enum class RomMode { Strict, Clamp };

struct Pose {
  Eigen::Matrix4d transform = Eigen::Matrix4d::Identity();

  Eigen::Vector3d position() const { return transform.block<3, 1>(0, 3); }
  Eigen::Matrix3d rotation() const { return transform.block<3, 3>(0, 0); }
};

class KinematicChain {
 public:
  KinematicChain(std::vector<DHRow> rows, LinkLengths links, std::vector<JointRange> rom);

  /// The seven-joint arm with default link lengths and range of motion.
  static KinematicChain arm(LinkLengths links = {});

  const std::vector<DHRow>& rows() const noexcept { return rows_; }
  const LinkLengths& links() const noexcept { return links_; }
  const std::vector<JointRange>& rom() const noexcept { return rom_; }

  /// Joint values of the straight-arm pose (all links collinear).
  static JointVector extended_pose();

 private:
  std::vector<DHRow> rows_;
  LinkLengths links_;
  std::vector<JointRange> rom_;
};

/// Standard D-H link transform Rot_z(theta) Trans_z(d) Trans_x(a) Rot_x(alpha).
Eigen::Matrix4d dh_transform(const DHRow& row, double joint_value);

Pose forward_kinematics(const KinematicChain& chain, const JointVector& q,
                        RomMode mode = RomMode::Strict);

struct WorkspaceStats {
  double max_reach = 0.0;  // m, distance from the shoulder origin
  Eigen::Vector3d bbox_min = Eigen::Vector3d::Zero();
  Eigen::Vector3d bbox_max = Eigen::Vector3d::Zero();
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
};

struct WorkspaceCloud {
  std::vector<Eigen::Vector3d> points;
  std::vector<JointVector> joint_samples;  // the joint tuple behind each point
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  WorkspaceStats stats;
};

/// Monte Carlo hand workspace: every joint variable drawn uniformly over its
/// range of motion. Deterministic in (chain, n, seed).
WorkspaceCloud sample_workspace(const KinematicChain& chain, std::size_t n, std::uint64_t seed);

}  // namespace tendonsim
