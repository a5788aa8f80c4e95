#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "catforms/geometry.hpp"
#include "catforms/surfaces.hpp"

namespace catforms {

/// Triangle mesh with 0-based face indices. Meshes built from a patch are
/// structured grids: vertex (i, j) sits at index i * cols + j, where i runs
/// over the generating samples and j over the angular samples 0..angular
/// (the column j = angular repeats the seam s = 0).
struct Mesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::size_t, 3>> faces;
  std::size_t rows = 0;  ///< 0 when the layout is unknown (e.g. after read_obj)
  std::size_t cols = 0;
};

struct MeshConfig {
  /// Projection pole for S^3 patches. The default is never reached by
  /// revolutions of S^2_+ curves because their first coordinate exceeds -1.
  std::array<double, 4> pole{-1.0, 0.0, 0.0, 0.0};
  double pole_tol = 1e-9;
};

/// Stereographic projection of a point of S^3 from `pole` onto the
/// hyperplane orthogonal to it, in an orthonormal basis of that hyperplane
/// (for the default pole: (x2, x3, x4) / (1 + x1)). Throws ProjectionError
/// within pole_tol of the pole and InputError for a non-unit pole.
std::array<double, 3> stereographic(const AmbientVec& p, const MeshConfig& cfg = {});

/// Samples the patch on ts x {2 pi j / angular} and splits every grid quad
/// into two triangles, counterclockwise in the (t, s) parameter plane.
/// S^3 points are projected stereographically; H^3 points are exported as
/// they are. Throws InputError with fewer than two generating samples.
Mesh build_mesh(const RevolutionPatch& patch, const MeshConfig& cfg = {});

/// ASCII OBJ with `v x y z` and `f i j k` records (1-based). Throws IoError.
void write_obj(const Mesh& mesh, const std::string& path);

/// Reads `v` and `f` records back. Throws IoError when the file cannot be
/// opened and FormatError on any other record or a bad index.
Mesh read_obj(const std::string& path);

/// build_mesh followed by write_obj; returns the mesh written.
Mesh export_mesh(const RevolutionPatch& patch, const std::string& path,
                 const MeshConfig& cfg = {});

/// Mean curvature in H^3 at the interior grid vertices of a structured mesh
/// of upper half-space points, from central differences in the grid
/// indices, with the orientation of build_mesh. Row-major over
/// (rows - 2) x (cols - 2). Throws InputError when the vertex count does not
/// match rows * cols or either side is shorter than 3.
std::vector<double> h3_grid_mean_curvature(const Mesh& mesh, std::size_t rows, std::size_t cols);

} // namespace catforms
