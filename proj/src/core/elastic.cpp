#include "tendonsim/elastic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tendonsim/error.hpp"

namespace tendonsim {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    std::ostringstream os;
    os << name << " must be finite and > 0 (got " << value << ")";
    throw InvalidArgument(os.str());
  }
}

// Linear interpolation of y over x on a strictly increasing polyline; the
// caller guarantees front().x <= x <= back().x.
template <typename XOf, typename YOf>
double interpolate(std::span<const CurvePoint> curve, double x, XOf x_of, YOf y_of) {
  auto upper = std::upper_bound(curve.begin(), curve.end(), x,
                                [&](double value, const CurvePoint& p) { return value < x_of(p); });
  if (upper == curve.begin()) return y_of(curve.front());
  if (upper == curve.end()) return y_of(curve.back());
  const CurvePoint& lo = *(upper - 1);
  const CurvePoint& hi = *upper;
  const double t = (x - x_of(lo)) / (x_of(hi) - x_of(lo));
  return y_of(lo) + t * (y_of(hi) - y_of(lo));
}

constexpr auto by_displacement = [](const CurvePoint& p) { return p.displacement_mm; };
constexpr auto by_force = [](const CurvePoint& p) { return p.force_n; };

}  // namespace

const char* to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::TorsionSpringInternal: return "torsion_spring_internal";
    case ElementKind::CompressionSpringExternal: return "compression_spring_external";
    case ElementKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

ElasticElementSpec ElasticElementSpec::torsion_spring(double k_e_nmm_per_rad,
                                                      double pulley_radius_mm, double mu_p,
                                                      double d_max_mm, double limit_force_n) {
  require_positive(k_e_nmm_per_rad, "k_e");
  require_positive(pulley_radius_mm, "pulley_radius");
  require_positive(d_max_mm, "d_max");
  require_positive(limit_force_n, "f_tm");
  if (!std::isfinite(mu_p) || mu_p < 0.0 || mu_p >= 1.0) {
    std::ostringstream os;
    os << "mu_p must satisfy 0 <= mu_p < 1 (got " << mu_p << ")";
    throw InvalidArgument(os.str());
  }
  ElasticElementSpec spec;
  spec.kind_ = ElementKind::TorsionSpringInternal;
  spec.k_e_ = k_e_nmm_per_rad;
  spec.pulley_radius_ = pulley_radius_mm;
  spec.mu_p_ = mu_p;
  spec.d_max_ = d_max_mm;
  spec.limit_force_ = limit_force_n;
  return spec;
}

ElasticElementSpec ElasticElementSpec::compression_spring(double k_cs_n_per_mm, double d_max_mm,
                                                          double limit_force_n) {
  require_positive(k_cs_n_per_mm, "k_cs");
  require_positive(d_max_mm, "d_max");
  require_positive(limit_force_n, "f_tm");
  ElasticElementSpec spec;
  spec.kind_ = ElementKind::CompressionSpringExternal;
  spec.k_e_ = k_cs_n_per_mm;
  spec.d_max_ = d_max_mm;
  spec.limit_force_ = limit_force_n;
  return spec;
}

ElasticElementSpec ElasticElementSpec::tabulated(std::vector<CurvePoint> table, double d_max_mm) {
  if (table.size() < 2) throw InvalidArgument("tabulated curve needs at least two points");
  if (table.front().displacement_mm != 0.0 || table.front().force_n != 0.0) {
    throw InvalidArgument("tabulated curve must start at (0, 0)");
  }
  for (std::size_t i = 1; i < table.size(); ++i) {
    const CurvePoint& prev = table[i - 1];
    const CurvePoint& cur = table[i];
    if (!std::isfinite(cur.displacement_mm) || !std::isfinite(cur.force_n) ||
        cur.displacement_mm <= prev.displacement_mm || cur.force_n <= prev.force_n) {
      std::ostringstream os;
      os << "tabulated curve must be strictly increasing in both columns (row " << i << ")";
      throw InvalidArgument(os.str());
    }
  }
  if (!std::isfinite(d_max_mm) || d_max_mm < 0.0) {
    throw InvalidArgument("d_max must be finite and >= 0");
  }
  ElasticElementSpec spec;
  spec.kind_ = ElementKind::Tabulated;
  spec.d_max_ = d_max_mm;
  spec.limit_force_ = table.back().force_n;
  spec.table_ = std::move(table);
  return spec;
}

double ElasticElementSpec::tendon_equivalent_stiffness() const {
  switch (kind_) {
    case ElementKind::TorsionSpringInternal:
      return k_e_ / (2.0 * std::numbers::pi * pulley_radius_ * pulley_radius_);
    case ElementKind::CompressionSpringExternal:
      return k_e_;
    case ElementKind::Tabulated:
      break;
  }
  throw UsageError("tabulated element has no single equivalent stiffness");
}

double ElasticElementSpec::element_deflection(double force_n) const {
  switch (kind_) {
    case ElementKind::TorsionSpringInternal:
      // The routing-pulley friction F_f = mu_p F_t unloads the spring.
      return (force_n - mu_p_ * force_n) / tendon_equivalent_stiffness();
    case ElementKind::CompressionSpringExternal:
      return force_n / k_e_;
    case ElementKind::Tabulated:
      return interpolate(table_, force_n, by_force, by_displacement);
  }
  return 0.0;
}

ActuatorModel::ActuatorModel(ElasticElementSpec element, double k_t_n_per_mm,
                             double rated_force_n, double rated_speed_mm_per_s, std::string label)
    : element_(std::move(element)),
      k_t_(k_t_n_per_mm),
      rated_force_(rated_force_n),
      rated_speed_(rated_speed_mm_per_s),
      label_(std::move(label)) {
  require_positive(k_t_, "k_t");
  require_positive(rated_force_, "rated_force");
  require_positive(rated_speed_, "rated_speed");

  const double f_tm = element_.limit_force();
  limit_displacement_ = element_.element_deflection(f_tm) + f_tm / k_t_;

  if (element_.d_max() > 0.0) {
    const double rel = std::abs(limit_displacement_ - element_.d_max()) / element_.d_max();
    if (rel > kLimitConsistencyTolerance) {
      std::ostringstream os;
      os << "d_max=" << element_.d_max() << " mm is inconsistent with f_tm=" << f_tm
         << " N: the element law gives " << limit_displacement_ << " mm ("
         << rel * 100.0 << "% off, limit 2%)";
      throw InvalidArgument(os.str());
    }
  }

  if (element_.kind() == ElementKind::Tabulated) {
    series_curve_.reserve(element_.table().size());
    for (const CurvePoint& p : element_.table()) {
      series_curve_.push_back({p.displacement_mm + p.force_n / k_t_, p.force_n});
    }
  }
}

double ActuatorModel::displacement_from_force(double force_n) const {
  if (!std::isfinite(force_n) || force_n < 0.0) {
    std::ostringstream os;
    os << "tendon force must be finite and >= 0 (got " << force_n << ")";
    throw DomainError(os.str());
  }
  const double f_tm = limit_force();
  if (force_n <= f_tm) return element_.element_deflection(force_n) + force_n / k_t_;
  return limit_displacement_ + (force_n - f_tm) / k_t_;
}

double ActuatorModel::force_from_displacement(double displacement_mm) const {
  if (!std::isfinite(displacement_mm)) throw DomainError("tendon displacement must be finite");
  if (displacement_mm <= 0.0) return 0.0;
  if (displacement_mm >= limit_displacement_) {
    return limit_force() + (displacement_mm - limit_displacement_) * k_t_;
  }
  if (element_.kind() == ElementKind::Tabulated) {
    return interpolate(series_curve_, displacement_mm, by_displacement, by_force);
  }
  return displacement_mm * effective_stiffness();
}

double ActuatorModel::effective_stiffness() const {
  if (element_.kind() == ElementKind::Tabulated) {
    throw UsageError("effective_stiffness of a tabulated actuator needs a displacement");
  }
  const double k_el = element_.tendon_equivalent_stiffness();
  return k_el * k_t_ / (k_t_ * (1.0 - element_.mu_p()) + k_el);
}

double ActuatorModel::effective_stiffness(double displacement_mm) const {
  if (!std::isfinite(displacement_mm)) throw DomainError("tendon displacement must be finite");
  if (displacement_mm < 0.0) return 0.0;
  if (displacement_mm >= limit_displacement_) return k_t_;
  if (element_.kind() != ElementKind::Tabulated) return effective_stiffness();

  auto upper = std::upper_bound(
      series_curve_.begin(), series_curve_.end(), displacement_mm,
      [](double value, const CurvePoint& p) { return value < p.displacement_mm; });
  const CurvePoint& lo = *(upper - 1);
  const CurvePoint& hi = *upper;
  return (hi.force_n - lo.force_n) / (hi.displacement_mm - lo.displacement_mm);
}

bool ActuatorModel::same_parameters(const ActuatorModel& other) const {
  return element_ == other.element_ && k_t_ == other.k_t_ &&
         rated_force_ == other.rated_force_ && rated_speed_ == other.rated_speed_;
}

}  // namespace tendonsim
