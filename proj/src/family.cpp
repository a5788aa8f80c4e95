#include "catforms/family.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "catforms/errors.hpp"

namespace catforms {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 6> kNames{{
    {Family::Euclidean, "euclidean"},
    {Family::Sphere, "sphere"},
    {Family::SphereExtrinsic, "sphere-extrinsic"},
    {Family::HypGeodesic, "hyp-geodesic"},
    {Family::HypHorodist, "hyp-horodist"},
    {Family::Horocycle, "horocycle"},
}};

} // namespace

void FamilySpec::validate() const {
  if (!std::isfinite(alpha)) throw InputError("alpha must be finite");
  if (paper_c) {
    if (kind != Family::Sphere)
      throw InputError("paper-mode constant c is only valid for the sphere family");
    if (!(*paper_c > 0.0) || !std::isfinite(*paper_c))
      throw InputError("paper-mode constant c must be positive");
    if (alpha != 1.0)
      throw InputError("paper-mode constant c requires alpha = 1");
  }
}

Space space_of(Family f) {
  switch (f) {
  case Family::Euclidean: return Space::EuclideanPlane;
  case Family::Sphere:
  case Family::SphereExtrinsic: return Space::Sphere;
  case Family::HypGeodesic:
  case Family::HypHorodist:
  case Family::Horocycle: return Space::HalfPlane;
  }
  return Space::EuclideanPlane;
}

bool is_spherical(Family f) { return space_of(f) == Space::Sphere; }
bool is_hyperbolic(Family f) { return space_of(f) == Space::HalfPlane; }

std::string_view to_string(Family f) {
  for (const auto& [k, name] : kNames)
    if (k == f) return name;
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw InputError("unknown family '" + std::string(name) + "'");
}

} // namespace catforms
