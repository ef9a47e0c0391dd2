#include "fracspec/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracspec/error.hpp"

namespace fracspec {

std::string_view to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::interval:
      return "interval";
    case DomainKind::rectangle:
      return "rectangle";
    case DomainKind::disk:
      return "disk";
    case DomainKind::slit_square:
      return "slit_square";
  }
  return "unknown";
}

DomainKind domain_kind_from_string(std::string_view name) {
  if (name == "interval") return DomainKind::interval;
  if (name == "rectangle") return DomainKind::rectangle;
  if (name == "disk") return DomainKind::disk;
  if (name == "slit_square") return DomainKind::slit_square;
  throw ConfigError("unknown domain kind '" + std::string(name) + "'");
}

Domain::Domain(DomainKind kind, double p0, double p1) : kind_(kind), params_{p0, p1} {}

Domain Domain::interval(double length) {
  if (!(length > 0.0)) throw ConfigError("interval length must be positive");
  return Domain(DomainKind::interval, length, 0.0);
}

Domain Domain::rectangle(double width, double height) {
  if (!(width > 0.0) || !(height > 0.0)) throw ConfigError("rectangle sides must be positive");
  return Domain(DomainKind::rectangle, width, height);
}

Domain Domain::disk(double radius) {
  if (!(radius > 0.0)) throw ConfigError("disk radius must be positive");
  return Domain(DomainKind::disk, radius, 0.0);
}

Domain Domain::slit_square(double side, double slit_half_length) {
  if (!(side > 0.0)) throw ConfigError("slit_square side must be positive");
  if (!(slit_half_length > 0.0) || !(slit_half_length < side / 2.0)) {
    throw ConfigError("slit half-length must lie in (0, side/2)");
  }
  return Domain(DomainKind::slit_square, side, slit_half_length);
}

double Domain::volume() const {
  switch (kind_) {
    case DomainKind::interval:
      return params_[0];
    case DomainKind::rectangle:
      return params_[0] * params_[1];
    case DomainKind::disk:
      return std::numbers::pi * params_[0] * params_[0];
    case DomainKind::slit_square:
      return params_[0] * params_[0];
  }
  return 0.0;
}

double Domain::boundary_measure() const {
  switch (kind_) {
    case DomainKind::interval:
      return 2.0;
    case DomainKind::rectangle:
      return 2.0 * (params_[0] + params_[1]);
    case DomainKind::disk:
      return 2.0 * std::numbers::pi * params_[0];
    case DomainKind::slit_square:
      return 4.0 * params_[0] + 4.0 * params_[1];
  }
  return 0.0;
}

double Domain::circumradius() const {
  switch (kind_) {
    case DomainKind::interval:
      return params_[0] / 2.0;
    case DomainKind::rectangle:
      return 0.5 * std::hypot(params_[0], params_[1]);
    case DomainKind::disk:
      return params_[0];
    case DomainKind::slit_square:
      return params_[0] / std::numbers::sqrt2;
  }
  return 0.0;
}

double Domain::inradius() const {
  switch (kind_) {
    case DomainKind::interval:
      return params_[0] / 2.0;
    case DomainKind::rectangle:
      return 0.5 * std::min(params_[0], params_[1]);
    case DomainKind::disk:
      return params_[0];
    case DomainKind::slit_square: {
      // Largest of the inscribed circles above/below the slit, centred on the y-axis.
      const double half = params_[0] / 2.0;
      return half / 2.0;
    }
  }
  return 0.0;
}

bool Domain::contains(const Point& x) const {
  switch (kind_) {
    case DomainKind::interval:
      return std::abs(x[0]) < params_[0] / 2.0;
    case DomainKind::rectangle:
      return std::abs(x[0]) < params_[0] / 2.0 && std::abs(x[1]) < params_[1] / 2.0;
    case DomainKind::disk:
      return x[0] * x[0] + x[1] * x[1] < params_[0] * params_[0];
    case DomainKind::slit_square: {
      const double half = params_[0] / 2.0;
      if (!(std::abs(x[0]) < half && std::abs(x[1]) < half)) return false;
      const bool on_slit = x[1] == 0.0 && std::abs(x[0]) <= params_[1];
      return !on_slit;
    }
  }
  return false;
}

double Domain::distance_to_boundary(const Point& x) const {
  switch (kind_) {
    case DomainKind::interval:
      return params_[0] / 2.0 - std::abs(x[0]);
    case DomainKind::rectangle:
      return std::min(params_[0] / 2.0 - std::abs(x[0]), params_[1] / 2.0 - std::abs(x[1]));
    case DomainKind::disk:
      return params_[0] - std::hypot(x[0], x[1]);
    case DomainKind::slit_square: {
      const double half = params_[0] / 2.0;
      const double to_square = std::min(half - std::abs(x[0]), half - std::abs(x[1]));
      const double dx = std::max(std::abs(x[0]) - params_[1], 0.0);
      const double to_slit = std::hypot(dx, x[1]);
      return std::min(to_square, to_slit);
    }
  }
  return 0.0;
}

}  // namespace fracspec
