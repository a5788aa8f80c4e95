#include "catforms/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "catforms/errors.hpp"

namespace catforms {

namespace {

void require_half_plane(ChartPoint p) {
  if (!(p.v > 0.0)) throw DomainError("half-plane point requires y > 0");
}

void require_sphere_chart(ChartPoint p) {
  if (std::abs(p.u) > std::numbers::pi / 2) throw DomainError("latitude outside [-pi/2, pi/2]");
}

} // namespace

double CurveState::du() const { return std::cos(theta); }
double CurveState::dv() const { return std::sin(theta); }

AmbientVec AmbientVec::chart(double a, double b) {
  AmbientVec r;
  r.tag_ = Ambient::ChartTangent;
  r.c_ = {a, b, 0.0, 0.0};
  return r;
}

AmbientVec AmbientVec::r3(double x, double y, double z) {
  AmbientVec r;
  r.tag_ = Ambient::R3;
  r.c_ = {x, y, z, 0.0};
  return r;
}

AmbientVec AmbientVec::r4(double a, double b, double c, double d) {
  AmbientVec r;
  r.tag_ = Ambient::R4;
  r.c_ = {a, b, c, d};
  return r;
}

std::size_t AmbientVec::size() const {
  switch (tag_) {
  case Ambient::ChartTangent: return 2;
  case Ambient::R3: return 3;
  case Ambient::R4: return 4;
  }
  return 0;
}

double AmbientVec::dot(const AmbientVec& o) const {
  if (tag_ != o.tag_) throw InputError("dot product of vectors from different spaces");
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += c_[i] * o.c_[i];
  return s;
}

double AmbientVec::norm() const { return std::sqrt(dot(*this)); }

AmbientVec AmbientVec::scaled(double s) const {
  AmbientVec r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

AmbientVec cross(const AmbientVec& a, const AmbientVec& b) {
  if (a.tag() != Ambient::R3 || b.tag() != Ambient::R3)
    throw InputError("cross product is defined for R^3 vectors only");
  return AmbientVec::r3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                        a[0] * b[1] - a[1] * b[0]);
}

AmbientVec sphere_embed(SphereChartPoint p) {
  const double cu = std::cos(p.u);
  return AmbientVec::r3(cu * std::cos(p.v), cu * std::sin(p.v), std::sin(p.u));
}

AmbientVec sphere_pushforward(SphereChartPoint p, double du, double dv) {
  const double su = std::sin(p.u), cu = std::cos(p.u);
  const double sv = std::sin(p.v), cv = std::cos(p.v);
  // Psi_u * du + Psi_v * dv
  return AmbientVec::r3(-su * cv * du - cu * sv * dv, -su * sv * du + cu * cv * dv, cu * du);
}

double distance_to_reference(Family family, ChartPoint p) {
  double d = 0.0;
  switch (family) {
  case Family::Euclidean:
    d = p.v;
    break;
  case Family::Sphere:
    require_sphere_chart(p);
    d = p.u;
    break;
  case Family::SphereExtrinsic:
    require_sphere_chart(p);
    d = std::sin(p.u);
    break;
  case Family::HypGeodesic: {
    require_half_plane(p);
    const double r = std::hypot(p.u, p.v);
    d = std::log((p.u + r) / p.v);
    break;
  }
  case Family::HypHorodist:
    require_half_plane(p);
    d = p.u / p.v;
    break;
  case Family::Horocycle:
    require_half_plane(p);
    d = std::log(p.v);
    break;
  }
  if (!(d > 0.0))
    throw DomainError("point on or beyond the reference line of family " +
                      std::string(to_string(family)));
  return d;
}

std::array<double, 2> distance_gradient(Family family, ChartPoint p) {
  switch (family) {
  case Family::Euclidean: return {0.0, 1.0};
  case Family::Sphere: return {1.0, 0.0};
  case Family::SphereExtrinsic: return {std::cos(p.u), 0.0};
  case Family::HypGeodesic: {
    require_half_plane(p);
    const double r = std::hypot(p.u, p.v);
    return {1.0 / r, -p.u / (r * p.v)};
  }
  case Family::HypHorodist:
    require_half_plane(p);
    return {1.0 / p.v, -p.u / (p.v * p.v)};
  case Family::Horocycle:
    require_half_plane(p);
    return {0.0, 1.0 / p.v};
  }
  return {0.0, 0.0};
}

AmbientVec field_at(Family family, ChartPoint p, const Guards& guards) {
  switch (family) {
  case Family::Euclidean: return AmbientVec::chart(0.0, 1.0);
  case Family::Sphere: {
    require_sphere_chart(p);
    if (std::numbers::pi / 2 - std::abs(p.u) < guards.eps_pole)
      throw DomainError("meridian field X is undefined at the poles");
    const double su = std::sin(p.u);
    return AmbientVec::r3(-su * std::cos(p.v), -su * std::sin(p.v), std::cos(p.u));
  }
  case Family::SphereExtrinsic: return AmbientVec::r3(0.0, 0.0, 1.0);
  case Family::HypGeodesic: {
    require_half_plane(p);
    const double r = std::hypot(p.u, p.v);
    return AmbientVec::chart(p.v * p.v / r, -p.u * p.v / r);
  }
  case Family::HypHorodist:
    require_half_plane(p);
    return AmbientVec::chart(p.v, -p.u);
  case Family::Horocycle:
    require_half_plane(p);
    return AmbientVec::chart(0.0, p.v);
  }
  return {};
}

AmbientVec unit_normal(Space space, const CurveState& s) {
  const double du = s.du(), dv = s.dv();
  switch (space) {
  case Space::EuclideanPlane: return AmbientVec::chart(-dv, du);
  case Space::HalfPlane: {
    require_half_plane(s.point());
    return AmbientVec::chart(-dv * s.v, du * s.v);
  }
  case Space::Sphere: {
    const SphereChartPoint p{s.u, s.v};
    const AmbientVec tangent = sphere_pushforward(p, du, dv);
    const double speed = tangent.norm();
    if (!(speed > 0.0)) throw DegenerateError("zero speed on the sphere");
    return cross(sphere_embed(p), tangent).scaled(1.0 / speed);
  }
  }
  return {};
}

double hyp_inner(HalfPlanePoint p, const AmbientVec& a, const AmbientVec& b) {
  if (a.tag() != Ambient::ChartTangent || b.tag() != Ambient::ChartTangent)
    throw InputError("hyp_inner expects chart tangent vectors");
  return a.dot(b) / (p.y * p.y);
}

double metric_inner(Space space, ChartPoint p, const AmbientVec& a, const AmbientVec& b) {
  if (space == Space::HalfPlane) return hyp_inner({p.u, p.v}, a, b);
  return a.dot(b);
}

} // namespace catforms
