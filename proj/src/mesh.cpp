#include "catforms/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "catforms/errors.hpp"

namespace catforms {

namespace {

using Vec4 = std::array<double, 4>;

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Orthonormal basis of the hyperplane orthogonal to the unit vector q.
std::array<Vec4, 3> complement_basis(const Vec4& q) {
  std::array<Vec4, 3> basis{};
  std::size_t found = 0;
  for (int e = 0; e < 4 && found < 3; ++e) {
    Vec4 w{};
    w[e] = 1.0;
    const double wq = dot(w, q);
    for (int i = 0; i < 4; ++i) w[i] -= wq * q[i];
    for (std::size_t b = 0; b < found; ++b) {
      const double wb = dot(w, basis[b]);
      for (int i = 0; i < 4; ++i) w[i] -= wb * basis[b][i];
    }
    const double n = std::sqrt(dot(w, w));
    if (n < 0.5) continue;
    for (int i = 0; i < 4; ++i) w[i] /= n;
    basis[found++] = w;
  }
  return basis;
}

} // namespace

std::array<double, 3> stereographic(const AmbientVec& p, const MeshConfig& cfg) {
  if (p.tag() != Ambient::R4) throw InputError("stereographic projection needs a point of R^4");
  const Vec4& q = cfg.pole;
  if (!(std::abs(std::sqrt(dot(q, q)) - 1.0) <= 1e-12))
    throw InputError("projection pole must be a unit vector");
  const Vec4 x{p[0], p[1], p[2], p[3]};
  Vec4 diff{};
  for (int i = 0; i < 4; ++i) diff[i] = x[i] - q[i];
  if (!(std::sqrt(dot(diff, diff)) > cfg.pole_tol))
    throw ProjectionError("point is too close to the projection pole");
  const double xq = dot(x, q);
  const std::array<Vec4, 3> basis = complement_basis(q);
  std::array<double, 3> out{};
  for (int b = 0; b < 3; ++b) out[b] = dot(x, basis[b]) / (1.0 - xq);
  return out;
}

Mesh build_mesh(const RevolutionPatch& patch, const MeshConfig& cfg) {
  if (patch.ts.size() < 2) throw InputError("mesh needs at least two generating samples");
  if (patch.angular < 1) throw InputError("mesh needs at least one angular interval");
  Mesh m;
  m.rows = patch.ts.size();
  m.cols = patch.angular + 1;
  m.vertices.reserve(m.rows * m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      // the last column repeats s = 0 exactly
      const double s = j == patch.angular ? 0.0
                                          : 2.0 * std::numbers::pi * static_cast<double>(j) /
                                                static_cast<double>(patch.angular);
      const AmbientVec p = patch.point(patch.ts[i], s);
      if (patch.space == RevolutionSpace::S3)
        m.vertices.push_back(stereographic(p, cfg));
      else
        m.vertices.push_back({p[0], p[1], p[2]});
    }
  }
  m.faces.reserve(2 * (m.rows - 1) * patch.angular);
  for (std::size_t i = 0; i + 1 < m.rows; ++i) {
    for (std::size_t j = 0; j + 1 < m.cols; ++j) {
      const std::size_t a = i * m.cols + j, b = (i + 1) * m.cols + j;
      const std::size_t c = (i + 1) * m.cols + j + 1, d = i * m.cols + j + 1;
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, d});
    }
  }
  return m;
}

void write_obj(const Mesh& mesh, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  bool ok = true;
  for (const auto& v : mesh.vertices)
    ok = ok && std::fprintf(f, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]) > 0;
  for (const auto& t : mesh.faces)
    ok = ok && std::fprintf(f, "f %zu %zu %zu\n", t[0] + 1, t[1] + 1, t[2] + 1) > 0;
  ok = (std::fclose(f) == 0) && ok;
  if (!ok) throw IoError("failed writing '" + path + "'");
}

Mesh read_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  Mesh m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (tag == "v") {
      std::array<double, 3> v{};
      if (!(ls >> v[0] >> v[1] >> v[2])) throw FormatError(where + ": bad vertex record");
      m.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<long long, 3> idx{};
      if (!(ls >> idx[0] >> idx[1] >> idx[2])) throw FormatError(where + ": bad face record");
      std::array<std::size_t, 3> face{};
      for (int k = 0; k < 3; ++k) {
        if (idx[k] < 1) throw FormatError(where + ": face index must be positive");
        face[k] = static_cast<std::size_t>(idx[k] - 1);
      }
      m.faces.push_back(face);
    } else {
      throw FormatError(where + ": unsupported record '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) throw FormatError(where + ": trailing data");
  }
  for (const auto& f : m.faces)
    for (std::size_t k : f)
      if (k >= m.vertices.size()) throw FormatError(path + ": face index out of range");
  return m;
}

Mesh export_mesh(const RevolutionPatch& patch, const std::string& path, const MeshConfig& cfg) {
  Mesh m = build_mesh(patch, cfg);
  write_obj(m, path);
  return m;
}

std::vector<double> h3_grid_mean_curvature(const Mesh& mesh, std::size_t rows, std::size_t cols) {
  if (rows < 3 || cols < 3) throw InputError("grid needs at least 3 x 3 vertices");
  if (mesh.vertices.size() != rows * cols)
    throw InputError("vertex count does not match the grid layout");
  auto at = [&](std::size_t i, std::size_t j) {
    const auto& v = mesh.vertices[i * cols + j];
    return AmbientVec::r3(v[0], v[1], v[2]);
  };
  auto combo = [](std::initializer_list<std::pair<double, AmbientVec>> terms) {
    double x = 0.0, y = 0.0, z = 0.0;
    for (const auto& [w, a] : terms) {
      x += w * a[0];
      y += w * a[1];
      z += w * a[2];
    }
    return AmbientVec::r3(x, y, z);
  };
  std::vector<double> out;
  out.reserve((rows - 2) * (cols - 2));
  for (std::size_t i = 1; i + 1 < rows; ++i) {
    for (std::size_t j = 1; j + 1 < cols; ++j) {
      const AmbientVec p = at(i, j);
      const AmbientVec tp = at(i + 1, j), tm = at(i - 1, j);
      const AmbientVec sp = at(i, j + 1), sm = at(i, j - 1);
      const AmbientVec dt = combo({{0.5, tp}, {-0.5, tm}});
      const AmbientVec ds = combo({{0.5, sp}, {-0.5, sm}});
      const AmbientVec dtt = combo({{1.0, tp}, {-2.0, p}, {1.0, tm}});
      const AmbientVec dss = combo({{1.0, sp}, {-2.0, p}, {1.0, sm}});
      const AmbientVec dts = combo({{0.25, at(i + 1, j + 1)},
                                    {-0.25, at(i + 1, j - 1)},
                                    {-0.25, at(i - 1, j + 1)},
                                    {0.25, at(i - 1, j - 1)}});
      out.push_back(surface_sample(RevolutionSpace::H3, p, dt, ds, dtt, dts, dss).mean_curvature);
    }
  }
  return out;
}

} // namespace catforms
