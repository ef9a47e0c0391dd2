#pragma once

#include <array>
#include <string>
#include <string_view>

namespace fracspec {

using Point = std::array<double, 2>;

enum class DomainKind { interval, rectangle, disk, slit_square };

std::string_view to_string(DomainKind kind);
DomainKind domain_kind_from_string(std::string_view name);

/// Bounded region centered at the origin.
///
/// interval    (-L/2, L/2)
/// rectangle   (-a/2, a/2) x (-b/2, b/2)
/// disk        |x| < R
/// slit_square (-s/2, s/2)^2 minus the segment [-l, l] x {0}
class Domain {
 public:
  static Domain interval(double length);
  static Domain rectangle(double width, double height);
  static Domain disk(double radius);
  static Domain slit_square(double side, double slit_half_length);

  DomainKind kind() const { return kind_; }
  int dimension() const { return kind_ == DomainKind::interval ? 1 : 2; }

  /// Lebesgue measure of the domain.
  double volume() const;
  /// (d-1)-measure of the boundary; 2 for an interval, both slit faces counted.
  double boundary_measure() const;
  double circumradius() const;
  double inradius() const;

  /// Strict membership; points on the boundary (or the slit) are outside.
  bool contains(const Point& x) const;
  /// Euclidean distance to the boundary, for points inside the domain.
  double distance_to_boundary(const Point& x) const;

  /// Shape parameters (L), (a, b), (R) or (s, l); unused slots are zero.
  double param(int i) const { return params_[static_cast<std::size_t>(i)]; }

 private:
  Domain(DomainKind kind, double p0, double p1);

  DomainKind kind_;
  std::array<double, 2> params_;
};

}  // namespace fracspec
