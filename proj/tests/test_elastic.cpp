#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tendonsim/elastic.hpp"
#include "tendonsim/error.hpp"

using namespace tendonsim;
using doctest::Approx;

namespace {

// Torsion spring given through its tendon-side stiffness k_ts.
ActuatorModel ica() {
  const double r = 5.0;
  const double k_e = 3.236 * 2.0 * oracle::kPi * r * r;
  return ActuatorModel(ElasticElementSpec::torsion_spring(k_e, r, 0.1, 34.8, 112.4), 30.0, 125.0,
                       220.0, "ica");
}

ActuatorModel eca() {
  return ActuatorModel(ElasticElementSpec::compression_spring(10.44, 28.5, 252.9), 60.0, 250.0,
                       110.0, "eca");
}

ActuatorModel tabulated() {
  std::vector<CurvePoint> table;
  for (int i = 0; i <= 22; ++i) table.push_back({double(i), 250.0 * (i / 22.0) * (i / 22.0)});
  return ActuatorModel(ElasticElementSpec::tabulated(table), 60.0, 250.0, 110.0, "misa");
}

// Random actuator with a self-consistent limit point.
ActuatorModel random_actuator(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double k_t = 5.0 + 200.0 * u(rng);
  const double f_tm = 20.0 + 400.0 * u(rng);
  switch (rng() % 3) {
    case 0: {
      const double r = 2.0 + 10.0 * u(rng);
      const double mu = 0.5 * u(rng);
      const double k_ts = 0.5 + 20.0 * u(rng);
      const double k_e = k_ts * 2.0 * oracle::kPi * r * r;
      const double d_max = (1.0 - mu) * f_tm / k_ts + f_tm / k_t;
      return ActuatorModel(ElasticElementSpec::torsion_spring(k_e, r, mu, d_max, f_tm), k_t, f_tm,
                           100.0);
    }
    case 1: {
      const double k_cs = 0.5 + 40.0 * u(rng);
      const double d_max = f_tm / k_cs + f_tm / k_t;
      return ActuatorModel(ElasticElementSpec::compression_spring(k_cs, d_max, f_tm), k_t, f_tm,
                           100.0);
    }
    default: {
      std::vector<CurvePoint> table = {{0.0, 0.0}};
      const int n = 2 + static_cast<int>(rng() % 12);
      for (int i = 0; i < n; ++i) {
        table.push_back({table.back().displacement_mm + 0.2 + 5.0 * u(rng),
                         table.back().force_n + 1.0 + 60.0 * u(rng)});
      }
      return ActuatorModel(ElasticElementSpec::tabulated(table), k_t, 100.0, 100.0);
    }
  }
}

}  // namespace

TEST_CASE("displacement from force, torsion spring") {
  const ActuatorModel a = ica();
  CHECK(a.displacement_from_force(0.0) == 0.0);
  CHECK(a.displacement_from_force(50.0) == Approx((50.0 - 5.0) / 3.236 + 50.0 / 30.0).epsilon(1e-12));
  CHECK(a.displacement_from_force(50.0) == Approx(15.57).epsilon(5e-4));
}

TEST_CASE("displacement from force, compression spring past the limit") {
  const ActuatorModel a = eca();
  // Element law at the limit plus tendon stretch beyond it.
  const double d_m = 252.9 / 10.44 + 252.9 / 60.0;
  CHECK(a.limit_displacement() == Approx(d_m).epsilon(1e-12));
  CHECK(a.displacement_from_force(300.0) == Approx(d_m + 47.1 / 60.0).epsilon(1e-12));
  // The tabulated limit of 28.5 mm gives 29.285 mm; the computed limit sits 0.2% lower.
  CHECK(a.displacement_from_force(300.0) == Approx(29.285).epsilon(5e-3));
}

TEST_CASE("force from displacement examples") {
  const ActuatorModel e = eca();
  const double d100 = e.displacement_from_force(100.0);
  CHECK(d100 == Approx(11.246).epsilon(1e-4));
  CHECK(e.force_from_displacement(d100) == Approx(100.0).epsilon(1e-8));
  CHECK(e.force_from_displacement(11.246) == Approx(100.0).epsilon(1e-4));
  CHECK(e.force_from_displacement(-3.0) == 0.0);
  CHECK(ica().force_from_displacement(-3.0) == 0.0);
  CHECK(tabulated().force_from_displacement(-3.0) == 0.0);
  CHECK(ica().force_from_displacement(34.8) == Approx(112.4).epsilon(0.02));
}

TEST_CASE("effective stiffness") {
  CHECK(ica().effective_stiffness() == Approx(3.211).epsilon(1e-3));
  CHECK(ica().effective_stiffness() ==
        Approx(oracle::series_stiffness(3.236, 30.0, 0.1)).epsilon(1e-12));
  CHECK(eca().effective_stiffness() == Approx(8.893).epsilon(1e-3));
  const ActuatorModel rigid(ElasticElementSpec::compression_spring(10.44, 252.9 / 10.44, 252.9), 1e9,
                            250.0, 110.0);
  CHECK(rigid.effective_stiffness() == Approx(10.44).epsilon(1e-6));
  CHECK(ica().effective_stiffness(40.0) == 30.0);
  CHECK_THROWS_AS(tabulated().effective_stiffness(), UsageError);
  // Segment slope of the first table segment with the tendon in series.
  const double k_seg = 250.0 / (22.0 * 22.0);
  CHECK(tabulated().effective_stiffness(0.5) ==
        Approx(oracle::series_stiffness(k_seg, 60.0, 0.0)).epsilon(1e-9));
}

TEST_CASE("torsion spring equivalent stiffness") {
  for (double r : {1.0, 5.0, 12.5}) {
    const double k_e = 800.0;
    const auto el = ElasticElementSpec::torsion_spring(k_e, r, 0.2, 1.0, 50.0);
    CHECK(el.tendon_equivalent_stiffness() * 2.0 * oracle::kPi * r * r ==
          Approx(k_e).epsilon(1e-9));
  }
  CHECK_THROWS_AS(tabulated().element().tendon_equivalent_stiffness(), UsageError);
}

TEST_CASE("limit point continuity") {
  for (const ActuatorModel& a : {ica(), eca(), tabulated()}) {
    const double d_m = a.limit_displacement();
    CHECK(std::abs(a.force_from_displacement(std::nextafter(d_m, 0.0)) - a.limit_force()) <= 1e-6);
    CHECK(std::abs(a.force_from_displacement(d_m) - a.limit_force()) <= 1e-9);
  }
}

TEST_CASE("round trip and bisection oracle over random actuators") {
  std::mt19937_64 rng(20260501);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const ActuatorModel a = random_actuator(rng);
    const double f_tm = a.limit_force();
    for (int j = 0; j < 8; ++j) {
      const double f = 2.0 * f_tm * u(rng);
      const double d = a.displacement_from_force(f);
      const double back = a.force_from_displacement(d);
      REQUIRE(std::abs(back - f) <= 1e-6 * std::max(f, 1.0));
      const double brute = oracle::invert_monotone(
          [&](double x) { return a.displacement_from_force(x); }, d, 0.0, 4.0 * f_tm + 1.0);
      REQUIRE(std::abs(a.force_from_displacement(d) - brute) <= 1e-6);
    }
  }
}

TEST_CASE("monotonicity") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const ActuatorModel a = random_actuator(rng);
    const double hi = 1.5 * a.limit_displacement();
    double prev = a.force_from_displacement(-1.0);
    for (int k = 0; k <= 400; ++k) {
      const double d = -1.0 + (hi + 1.0) * k / 400.0;
      const double f = a.force_from_displacement(d);
      if (d > 0.0) REQUIRE(f > prev); else REQUIRE(f >= prev);
      prev = f;
    }
  }
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(ElasticElementSpec::torsion_spring(500.0, 5.0, 1.2, 30.0, 100.0), InvalidArgument);
  CHECK_THROWS_AS(ElasticElementSpec::torsion_spring(500.0, 5.0, -0.1, 30.0, 100.0), InvalidArgument);
  CHECK_THROWS_AS(ElasticElementSpec::torsion_spring(500.0, 5.0, 0.1, 0.0, 100.0), InvalidArgument);
  CHECK_THROWS_AS(ElasticElementSpec::compression_spring(0.0, 10.0, 100.0), InvalidArgument);
  CHECK_THROWS_AS(ElasticElementSpec::compression_spring(10.0, 10.0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(ElasticElementSpec::tabulated({{0, 0}, {1, 2}, {1, 3}}), InvalidArgument);
  CHECK_THROWS_AS(ElasticElementSpec::tabulated({{0.5, 0}, {1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(ElasticElementSpec::tabulated({{0, 0}, {1, 2}, {2, 1}}), InvalidArgument);
  // 20 mm declared where the law gives about 28.4 mm.
  CHECK_THROWS_AS(ActuatorModel(ElasticElementSpec::compression_spring(10.44, 20.0, 252.9), 60.0,
                                250.0, 110.0),
                  InvalidArgument);
  const auto el = ElasticElementSpec::compression_spring(10.44, 28.5, 252.9);
  CHECK_THROWS_AS(ActuatorModel(el, 0.0, 250.0, 110.0), InvalidArgument);
  CHECK_THROWS_AS(ActuatorModel(el, 60.0, 0.0, 110.0), InvalidArgument);
  CHECK_THROWS_AS(ActuatorModel(el, 60.0, 250.0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(eca().displacement_from_force(-1.0), DomainError);
  CHECK_THROWS_AS(eca().displacement_from_force(NAN), DomainError);
  CHECK_THROWS_AS(eca().force_from_displacement(INFINITY), DomainError);
}

TEST_CASE("same parameters ignores the label") {
  CHECK(eca().same_parameters(ActuatorModel(
      ElasticElementSpec::compression_spring(10.44, 28.5, 252.9), 60.0, 250.0, 110.0, "other")));
  CHECK_FALSE(eca().same_parameters(ica()));
}
