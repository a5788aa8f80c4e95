#pragma once

#include <array>
#include <cstddef>

#include "catforms/family.hpp"

namespace catforms {

/// Latitude/longitude chart of S^2: Psi(u, v) = (cos u cos v, cos u sin v, sin u).
struct SphereChartPoint {
  double u = 0.0;
  double v = 0.0;
};

/// Upper half-plane model, metric (dx^2 + dy^2) / y^2.
struct HalfPlanePoint {
  double x = 0.0;
  double y = 1.0;
};

/// Chart coordinates shared by all families. For half-plane families
/// (u, v) = (x, y); for the sphere (u, v) = (latitude, longitude).
struct ChartPoint {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

/// Phase point of the arc-length flow: chart position plus heading.
/// The chart velocity is (cos theta, sin theta), so u'^2 + v'^2 = 1.
/// theta is never reduced modulo 2 pi.
struct CurveState {
  double u = 0.0;
  double v = 0.0;
  double theta = 0.0;

  ChartPoint point() const { return {u, v}; }
  double du() const;  ///< cos theta
  double dv() const;  ///< sin theta
};

enum class Ambient { ChartTangent, R3, R4 };

/// Small tagged Cartesian vector: chart tangent (2), R^3 (3) or R^4 (4).
class AmbientVec {
public:
  AmbientVec() = default;
  static AmbientVec chart(double a, double b);
  static AmbientVec r3(double x, double y, double z);
  static AmbientVec r4(double a, double b, double c, double d);

  Ambient tag() const { return tag_; }
  std::size_t size() const;
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }

  /// Euclidean dot product; throws InputError on mismatched tags.
  double dot(const AmbientVec& o) const;
  double norm() const;
  AmbientVec scaled(double s) const;

private:
  Ambient tag_ = Ambient::ChartTangent;
  std::array<double, 4> c_{};
};

AmbientVec cross(const AmbientVec& a, const AmbientVec& b);  // R^3 only

AmbientVec sphere_embed(SphereChartPoint p);
/// Push-forward of the chart velocity (du, dv) at (u, v) into R^3.
AmbientVec sphere_pushforward(SphereChartPoint p, double du, double dv);

/// Distance to the family's reference line: y, u, sin u, log((x + r) / y),
/// x / y or log y. Throws DomainError when the point is on or beyond the
/// reference line or outside the chart (y <= 0, |u| > pi/2).
double distance_to_reference(Family family, ChartPoint p);

/// Chart gradient (d/du, d/dv) of distance_to_reference.
std::array<double, 2> distance_gradient(Family family, ChartPoint p);

/// Ambient direction field whose integral curves realize the distance:
/// d_y (euclidean), X (sphere, in R^3), d_z (sphere-extrinsic, in R^3),
/// Y, W, V (half-plane families, chart components).
/// Throws DomainError at the poles for X and off-chart for the half-plane.
AmbientVec field_at(Family family, ChartPoint p, const Guards& guards = {});

/// Unit normal of the curve through `state`. Half-plane and plane: +90 degree
/// chart rotation of the tangent scaled to unit metric length. Sphere:
/// (gamma x gamma') / |gamma'| in R^3.
AmbientVec unit_normal(Space space, const CurveState& state);

/// (a . b) / y^2 for chart tangents at p.
double hyp_inner(HalfPlanePoint p, const AmbientVec& a, const AmbientVec& b);

/// Inner product in the metric of `space` at chart point p. Sphere vectors
/// are R^3 vectors, so this is the Euclidean dot product there.
double metric_inner(Space space, ChartPoint p, const AmbientVec& a, const AmbientVec& b);

} // namespace catforms
