#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tendonsim/error.hpp"
#include "tendonsim/kinematics.hpp"

using namespace tendonsim;
using doctest::Approx;

namespace {

double max_diff(const Eigen::Matrix4d& m, const oracle::Mat4& o) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(m(i, j) - o[i][j]));
  return worst;
}

JointVector random_in_rom(const KinematicChain& chain, std::mt19937_64& rng) {
  JointVector q{};
  for (std::size_t i = 0; i < kArmJoints; ++i) {
    std::uniform_real_distribution<double> u(chain.rom()[i].lower, chain.rom()[i].upper);
    q[i] = u(rng);
  }
  return q;
}

}  // namespace

TEST_CASE("single D-H transform") {
  const DHRow row{0.0, 0.0, oracle::kPi / 2, 0.0, 1, "q"};
  const Eigen::Matrix4d t = dh_transform(row, 0.0);
  Eigen::Matrix4d expected;
  expected << 1, 0, 0, 0,
              0, 0, -1, 0,
              0, 1, 0, 0,
              0, 0, 0, 1;
  CHECK((t - expected).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((t.block<3, 3>(0, 0) * Eigen::Vector3d::UnitY() - Eigen::Vector3d::UnitZ()).norm() <= 1e-15);

  const DHRow general{0.12, -0.04, -oracle::kPi / 2, 0.3, -1, "q"};
  CHECK(max_diff(dh_transform(general, 0.7), oracle::dh(0.12, -0.04, -oracle::kPi / 2, 0.3 - 0.7)) <=
        1e-15);
}

TEST_CASE("chain product at zero joint values matches the hand-built table") {
  const KinematicChain arm = KinematicChain::arm();
  Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
  for (const DHRow& row : arm.rows()) t = t * dh_transform(row, 0.0);
  CHECK(max_diff(t, oracle::arm_pose({0, 0, 0, 0, 0, 0, 0})) <= 1e-12);
}

TEST_CASE("forward kinematics matches the oracle over the range of motion") {
  const KinematicChain arm = KinematicChain::arm();
  std::mt19937_64 rng(3);
  for (int n = 0; n < 2000; ++n) {
    const JointVector q = random_in_rom(arm, rng);
    std::array<double, 7> qa;
    std::copy(q.begin(), q.end(), qa.begin());
    REQUIRE(max_diff(forward_kinematics(arm, q).transform, oracle::arm_pose(qa)) <= 1e-12);
  }
}

TEST_CASE("full extension reaches b + c + d") {
  const KinematicChain arm = KinematicChain::arm();
  const Pose p = forward_kinematics(arm, KinematicChain::extended_pose());
  CHECK(std::abs(p.position().norm() - 0.63) <= 1e-9);

  const KinematicChain other = KinematicChain::arm({0.2, 0.4, 0.1});
  CHECK(std::abs(forward_kinematics(other, KinematicChain::extended_pose()).position().norm() -
                 0.7) <= 1e-9);
}

TEST_CASE("elbow at a right angle") {
  const KinematicChain arm = KinematicChain::arm();
  JointVector q = KinematicChain::extended_pose();
  q[3] = oracle::kPi / 2;
  std::array<double, 7> qa;
  std::copy(q.begin(), q.end(), qa.begin());
  const Pose p = forward_kinematics(arm, q);
  CHECK(max_diff(p.transform, oracle::arm_pose(qa)) <= 1e-12);
  CHECK(p.position().norm() == Approx(std::hypot(0.30, 0.33)).epsilon(1e-12));
}

TEST_CASE("rotation blocks stay orthonormal") {
  const KinematicChain arm = KinematicChain::arm();
  std::mt19937_64 rng(11);
  for (int n = 0; n < 10000; ++n) {
    const Pose p = forward_kinematics(arm, random_in_rom(arm, rng));
    const Eigen::Matrix3d r = p.rotation();
    REQUIRE((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    REQUIRE(std::abs(r.determinant() - 1.0) <= 1e-12);
    REQUIRE(p.transform.row(3) == Eigen::RowVector4d(0, 0, 0, 1));
  }
}

TEST_CASE("product is independent of association order") {
  const KinematicChain arm = KinematicChain::arm();
  std::mt19937_64 rng(5);
  for (int n = 0; n < 1000; ++n) {
    const JointVector q = random_in_rom(arm, rng);
    Eigen::Matrix4d left = Eigen::Matrix4d::Identity(), right = Eigen::Matrix4d::Identity();
    for (std::size_t i = 0; i < kArmJoints; ++i) left = left * dh_transform(arm.rows()[i], q[i]);
    for (std::size_t i = kArmJoints; i-- > 0;) right = dh_transform(arm.rows()[i], q[i]) * right;
    REQUIRE((left - right).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("range of motion enforcement") {
  const KinematicChain arm = KinematicChain::arm();
  JointVector q = KinematicChain::extended_pose();
  q[3] = oracle::deg(150.0);
  try {
    forward_kinematics(arm, q);
    FAIL("expected a range-of-motion error");
  } catch (const RomViolation& e) {
    CHECK(e.joint() == "theta21");
    CHECK(std::string(e.what()).find("theta21") != std::string::npos);
  }
  JointVector clamped = q;
  clamped[3] = oracle::deg(138.0);
  CHECK((forward_kinematics(arm, q, RomMode::Clamp).transform -
         forward_kinematics(arm, clamped).transform).cwiseAbs().maxCoeff() == 0.0);
  CHECK(arm.rom()[3].upper == Approx(oracle::deg(138.0)));
  CHECK(arm.rom()[0].lower == Approx(oracle::deg(-40.0)));
}

TEST_CASE("chain invariants") {
  auto rows = KinematicChain::arm().rows();
  const auto rom = KinematicChain::arm().rom();
  CHECK_THROWS_AS(KinematicChain(std::vector<DHRow>(rows.begin(), rows.end() - 1), {}, rom),
                  InvalidArgument);
  auto bad = rows;
  bad[2].alpha = 0.3;
  CHECK_THROWS_AS(KinematicChain(bad, {}, rom), InvalidArgument);
  bad = rows;
  bad[2].joint_sign = 2;
  CHECK_THROWS_AS(KinematicChain(bad, {}, rom), InvalidArgument);
  auto bad_rom = rom;
  bad_rom[1] = {0.5, 0.1};
  CHECK_THROWS_AS(KinematicChain(rows, {}, bad_rom), InvalidArgument);
}

TEST_CASE("workspace sampling") {
  const KinematicChain arm = KinematicChain::arm();
  const WorkspaceCloud a = sample_workspace(arm, 1, 42), b = sample_workspace(arm, 1, 42);
  CHECK(a.points.size() == 1);
  CHECK(a.points[0] == b.points[0]);
  CHECK_THROWS_AS(sample_workspace(arm, 0, 1), DomainError);

  const WorkspaceCloud c = sample_workspace(arm, 20000, 9);
  const WorkspaceCloud d = sample_workspace(arm, 20000, 9);
  CHECK(c.points == d.points);
  CHECK(c.stats.max_reach == d.stats.max_reach);
  CHECK(c.stats.centroid == d.stats.centroid);
  CHECK(c.points.size() == c.n_samples);
  CHECK(c.stats.max_reach <= arm.links().total() + 1e-9);
  for (const JointVector& q : c.joint_samples) {
    for (std::size_t i = 0; i < kArmJoints; ++i) REQUIRE(arm.rom()[i].contains(q[i]));
  }
  for (const Eigen::Vector3d& p : c.points) {
    REQUIRE((p.array() >= c.stats.bbox_min.array()).all());
    REQUIRE((p.array() <= c.stats.bbox_max.array()).all());
  }
  CHECK(sample_workspace(arm, 100, 1).points != sample_workspace(arm, 100, 2).points);
}

TEST_CASE("single-point range of motion collapses the cloud") {
  const KinematicChain arm = KinematicChain::arm();
  std::vector<JointRange> rom;
  const JointVector q = KinematicChain::extended_pose();
  for (double v : q) rom.push_back({v, v});
  const KinematicChain pinned(arm.rows(), arm.links(), rom);
  const WorkspaceCloud c = sample_workspace(pinned, 500, 4);
  for (const Eigen::Vector3d& p : c.points) REQUIRE(p == c.points.front());
  CHECK(c.stats.max_reach == Approx(0.63).epsilon(1e-12));
}
