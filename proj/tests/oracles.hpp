#pragma once

// Independent reference computations for the tests. Nothing here calls the
// inverse maps or matrix code under test.

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// Bisection on a monotone non-decreasing map.
template <typename Fn>
double invert_monotone(Fn forward, double target, double lo, double hi, int iterations = 200) {
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (forward(mid) < target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Series stiffness of an element k and a tendon k_t with friction loss mu.
inline double series_stiffness(double k, double k_t, double mu) {
  return k * k_t / (k_t * (1.0 - mu) + k);
}

// Stage closed forms with linear elements, tendon-equivalent stiffness k_et.
inline double stage1_force(double k_et, double arc, double d_s, double mu_s) {
  return k_et * arc + (1.0 + mu_s) * k_et * d_s;
}
inline double stage2_force(double k_et, double arc, double d_s, double mu_s) {
  return 2.0 * k_et * arc + mu_s * k_et * d_s;
}
inline double stage5_force(double k_t, double arc, double f_tj, double mu_s) {
  return 2.0 * arc * k_t + mu_s * f_tj;
}

using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat4 identity() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat4 rot_z(double t) {
  Mat4 m = identity();
  m[0][0] = std::cos(t); m[0][1] = -std::sin(t);
  m[1][0] = std::sin(t); m[1][1] = std::cos(t);
  return m;
}

inline Mat4 rot_x(double t) {
  Mat4 m = identity();
  m[1][1] = std::cos(t); m[1][2] = -std::sin(t);
  m[2][1] = std::sin(t); m[2][2] = std::cos(t);
  return m;
}

inline Mat4 trans(double x, double y, double z) {
  Mat4 m = identity();
  m[0][3] = x; m[1][3] = y; m[2][3] = z;
  return m;
}

// Distal D-H link built from elementary motions.
inline Mat4 dh(double a, double d, double alpha, double theta) {
  return multiply(multiply(multiply(rot_z(theta), trans(0, 0, d)), trans(a, 0, 0)), rot_x(alpha));
}

// The arm table written out by hand (b, c, d link lengths in m).
inline Mat4 arm_pose(const std::array<double, 7>& q, double b = 0.30, double c = 0.25,
                     double d = 0.08) {
  const double h = kPi / 2.0;
  const std::array<Mat4, 7> links = {
      dh(0, 0, h, q[0]),
      dh(0, 0, -h, h - q[1]),
      dh(0, b, h, h + q[2]),
      dh(0, 0, -h, q[3]),
      dh(0, c, -h, kPi + q[4]),
      dh(0, 0, -h, -h - q[5]),
      dh(0, d, h, q[6]),
  };
  Mat4 t = identity();
  for (const Mat4& l : links) t = multiply(t, l);
  return t;
}

inline double deg(double x) { return x * kPi / 180.0; }

// Writes text to a fresh file under the system temp directory.
inline std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "tendonsim_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
  return path;
}

}  // namespace oracle
