#pragma once

#include <span>
#include <string>
#include <vector>

namespace tendonsim {

// Units throughout the elastic and joint models: millimetres, newtons.

enum class ElementKind { TorsionSpringInternal, CompressionSpringExternal, Tabulated };

const char* to_string(ElementKind kind);

struct CurvePoint {
  double displacement_mm = 0.0;
  double force_n = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Raw law of the spring stage of one actuator, before the tendon is put in
/// series with it.
///
/// TorsionSpringInternal: a torsion spring of stiffness k_e (N.mm/rad) behind
/// an output pulley of radius r; the tendon sees k_ts = k_e / (2 pi r^2) and
/// loses mu_p * F_t to the routing pulleys.
/// CompressionSpringExternal: a compression spring of stiffness k_cs (N/mm)
/// with no friction.
/// Tabulated: measured (displacement, force) pairs of the element alone,
/// starting at (0, 0) and strictly increasing in both columns.
class ElasticElementSpec {
 public:
  static ElasticElementSpec torsion_spring(double k_e_nmm_per_rad, double pulley_radius_mm,
                                           double mu_p, double d_max_mm, double limit_force_n);
  static ElasticElementSpec compression_spring(double k_cs_n_per_mm, double d_max_mm,
                                               double limit_force_n);
  /// d_max_mm <= 0 means "derive it from the table"; the limit force is the
  /// last table force.
  static ElasticElementSpec tabulated(std::vector<CurvePoint> table, double d_max_mm = 0.0);

  ElementKind kind() const noexcept { return kind_; }
  double k_e() const noexcept { return k_e_; }
  double pulley_radius() const noexcept { return pulley_radius_; }
  double mu_p() const noexcept { return mu_p_; }
  /// Declared travel limit as tendon displacement (0 when not declared).
  double d_max() const noexcept { return d_max_; }
  double limit_force() const noexcept { return limit_force_; }
  std::span<const CurvePoint> table() const noexcept { return table_; }

  /// k_ts for the torsion kind, k_cs for the compression kind. Throws
  /// UsageError for Tabulated.
  double tendon_equivalent_stiffness() const;

  /// Deflection of the element alone under tendon tension F (0 <= F <= F_tm).
  double element_deflection(double force_n) const;

  friend bool operator==(const ElasticElementSpec&, const ElasticElementSpec&) = default;

 private:
  ElasticElementSpec() = default;

  ElementKind kind_ = ElementKind::CompressionSpringExternal;
  double k_e_ = 0.0;
  double pulley_radius_ = 0.0;
  double mu_p_ = 0.0;
  double d_max_ = 0.0;
  double limit_force_ = 0.0;
  std::vector<CurvePoint> table_;
};

/// Elastic element plus series tendon: the invertible map F_t = f_d(d).
///
/// Below the limit force the tendon displacement is element deflection plus
/// tendon stretch; past it only the tendon stretches (slope k_t). Negative
/// displacement is a slack tendon and carries no force.
class ActuatorModel {
 public:
  /// Relative tolerance between a declared d_max and the displacement the
  /// element law gives at the limit force.
  static constexpr double kLimitConsistencyTolerance = 0.02;

  ActuatorModel(ElasticElementSpec element, double k_t_n_per_mm, double rated_force_n,
                double rated_speed_mm_per_s, std::string label = {});

  const ElasticElementSpec& element() const noexcept { return element_; }
  double k_t() const noexcept { return k_t_; }
  double rated_force() const noexcept { return rated_force_; }
  double rated_speed() const noexcept { return rated_speed_; }
  const std::string& label() const noexcept { return label_; }

  double limit_force() const noexcept { return element_.limit_force(); }
  /// Tendon displacement at the limit force, tendon stretch included (d_m).
  double limit_displacement() const noexcept { return limit_displacement_; }

  double displacement_from_force(double force_n) const;
  double force_from_displacement(double displacement_mm) const;

  /// Series stiffness of the working stage, k_et. UsageError for Tabulated.
  double effective_stiffness() const;
  /// Local slope of f_d at d (segment slope for Tabulated, k_t past d_m).
  double effective_stiffness(double displacement_mm) const;

  /// Same physical parameters; the label is ignored.
  bool same_parameters(const ActuatorModel& other) const;

 private:
  ElasticElementSpec element_;
  double k_t_;
  double rated_force_;
  double rated_speed_;
  std::string label_;
  double limit_displacement_ = 0.0;
  // Tabulated only: breakpoints of f_d with the tendon in series.
  std::vector<CurvePoint> series_curve_;
};

}  // namespace tendonsim
