#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace catforms {

/// The six weighted-length problems. Each fixes a space form, a reference
/// line and the distance used as weight.
enum class Family {
  Euclidean,        ///< plane, weight y
  Sphere,           ///< S^2_+, weight = latitude u (distance to the equator)
  SphereExtrinsic,  ///< S^2_+, weight = sin u (height over the plane z = 0)
  HypGeodesic,      ///< half-plane x > 0, hyperbolic distance to x = 0
  HypHorodist,      ///< half-plane x > 0, horocycle distance x / y
  Horocycle,        ///< half-plane y > 1, distance log y to the horocycle y = 1
};

enum class Space { EuclideanPlane, Sphere, HalfPlane };

struct FamilySpec {
  Family kind = Family::Euclidean;
  double alpha = 1.0;
  /// Constant of the plotting ODE for spherical catenaries; only with Sphere.
  std::optional<double> paper_c;

  /// Throws InputError when paper_c is combined with another family, when it
  /// is not positive, or when alpha is not finite.
  void validate() const;
};

/// Admissibility margins shared by the laws and the integrator.
struct Guards {
  double eps_d = 1e-6;     ///< minimum distance to the reference line
  double eps_pole = 1e-6;  ///< minimum gap between u and pi/2 on the sphere
};

Space space_of(Family f);
bool is_spherical(Family f);
bool is_hyperbolic(Family f);

std::string_view to_string(Family f);
/// Parses the CLI spelling ("hyp-geodesic", ...). Throws InputError.
Family parse_family(std::string_view name);

} // namespace catforms
