#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <utility>

#include "catforms/errors.hpp"
#include "catforms/mesh.hpp"
#include "catforms/surfaces.hpp"
#include "support/support.hpp"

using namespace catforms;
using catforms::testing::kPi;
using catforms::testing::TempDir;

namespace {

RevolutionPatch dome(std::size_t rows, std::size_t angular) {
  RevolutionPatch p;
  p.space = RevolutionSpace::H3;
  p.generator = [](double t) { return ChartPoint{std::cos(t), std::sin(t)}; };
  for (std::size_t i = 0; i < rows; ++i) p.ts.push_back(0.2 + 1.1 * i / (rows - 1));
  p.angular = angular;
  return p;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::array<double, 3> sub(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

} // namespace

TEST(Stereographic, DefaultPole) {
  const auto x = stereographic(AmbientVec::r4(0, 1, 0, 0));
  EXPECT_NEAR(x[0], 1.0, 1e-15);
  EXPECT_NEAR(x[1], 0.0, 1e-15);
  EXPECT_NEAR(x[2], 0.0, 1e-15);
  const auto o = stereographic(AmbientVec::r4(1, 0, 0, 0));
  EXPECT_NEAR(std::hypot(o[0], o[1], o[2]), 0.0, 1e-15);
}

TEST(Stereographic, ErrorsNearThePoleAndForBadInput) {
  EXPECT_THROW(stereographic(AmbientVec::r4(-1, 0, 0, 0)), ProjectionError);
  MeshConfig bad;
  bad.pole = {0.5, 0, 0, 0};
  EXPECT_THROW(stereographic(AmbientVec::r4(1, 0, 0, 0), bad), InputError);
  EXPECT_THROW(stereographic(AmbientVec::r3(1, 0, 0)), InputError);
}

TEST(Stereographic, GeneralPoleMapsTheAntipodeToTheOrigin) {
  MeshConfig cfg;
  const double r = 1.0 / std::sqrt(2.0);
  cfg.pole = {0, r, 0, r};
  const auto x = stereographic(AmbientVec::r4(0, -r, 0, -r), cfg);
  EXPECT_NEAR(std::hypot(x[0], x[1], x[2]), 0.0, 1e-15);
  // points on the equatorial sphere orthogonal to the pole stay at radius 1
  const auto e = stereographic(AmbientVec::r4(1, 0, 0, 0), cfg);
  EXPECT_NEAR(std::hypot(e[0], e[1], e[2]), 1.0, 1e-15);
}

TEST(BuildMesh, CliffordTorusLayout) {
  const Mesh m = build_mesh(latitude_patch(kPi / 4, 64, 64));
  EXPECT_EQ(m.rows, 65u);
  EXPECT_EQ(m.cols, 65u);
  EXPECT_EQ(m.vertices.size(), 65u * 65u);
  EXPECT_EQ(m.faces.size(), 8192u);
  for (std::size_t i = 0; i < m.rows; ++i)
    EXPECT_EQ(m.vertices[i * m.cols], m.vertices[i * m.cols + 64]);
}

TEST(BuildMesh, FacesAreConsistentlyOriented) {
  const Mesh m = build_mesh(dome(9, 12));
  // every directed edge appears at most once
  std::map<std::pair<std::size_t, std::size_t>, int> edges;
  for (const auto& f : m.faces)
    for (int k = 0; k < 3; ++k) ++edges[{f[k], f[(k + 1) % 3]}];
  for (const auto& [e, n] : edges) EXPECT_EQ(n, 1);
}

TEST(BuildMesh, FaceNormalsFollowTheParametrization) {
  const RevolutionPatch p = dome(9, 12);
  const Mesh m = build_mesh(p);
  for (std::size_t i = 0; i + 1 < m.rows; ++i) {
    for (std::size_t j = 0; j + 1 < m.cols; ++j) {
      const auto& f = m.faces[2 * (i * (m.cols - 1) + j)];
      const auto e1 = sub(m.vertices[f[1]], m.vertices[f[0]]);
      const auto e2 = sub(m.vertices[f[2]], m.vertices[f[0]]);
      const std::array<double, 3> n{e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                                    e1[0] * e2[1] - e1[1] * e2[0]};
      const double t = 0.5 * (p.ts[i] + p.ts[i + 1]);
      const double s = 2 * kPi * (j + 0.5) / 12;
      const AmbientVec N = numeric_fundamental_forms(p, t, s).normal;
      EXPECT_GT(n[0] * N[0] + n[1] * N[1] + n[2] * N[2], 0.0) << i << " " << j;
    }
  }
}

TEST(BuildMesh, RejectsSingleSampleAndPoleOnThePatch) {
  RevolutionPatch p = latitude_patch(kPi / 4, 4, 4);
  p.ts = {0.0};
  EXPECT_THROW(build_mesh(p), InputError);

  const RevolutionPatch q = latitude_patch(kPi / 4, 4, 4);
  const AmbientVec on = q.point(q.ts[1], 0.0);
  MeshConfig cfg;
  cfg.pole = {on[0], on[1], on[2], on[3]};
  EXPECT_THROW(build_mesh(q, cfg), ProjectionError);
}

TEST(Obj, HemisphereRoundTripStaysMinimal) {
  TempDir dir;
  const std::string path = dir.file("dome.obj");
  const Mesh written = export_mesh(dome(41, 64), path);
  const Mesh read = read_obj(path);
  ASSERT_EQ(read.vertices.size(), written.vertices.size());
  ASSERT_EQ(read.faces.size(), written.faces.size());
  for (std::size_t k = 0; k < read.vertices.size(); ++k) EXPECT_EQ(read.vertices[k], written.vertices[k]);
  for (std::size_t k = 0; k < read.faces.size(); ++k) EXPECT_EQ(read.faces[k], written.faces[k]);
  EXPECT_EQ(read.rows, 0u);
  const std::vector<double> H = h3_grid_mean_curvature(read, written.rows, written.cols);
  EXPECT_EQ(H.size(), (written.rows - 2) * (written.cols - 2));
  for (double h : H) EXPECT_LT(std::abs(h), 1e-2);
}

TEST(Obj, CylinderGridMeanCurvatureIsOne) {
  RevolutionPatch p;
  p.space = RevolutionSpace::H3;
  p.generator = [](double t) { return ChartPoint{1.0, t}; };
  for (int i = 0; i <= 40; ++i) p.ts.push_back(1.5 + i / 40.0);
  p.angular = 128;
  const Mesh m = build_mesh(p);
  const std::vector<double> H = h3_grid_mean_curvature(m, m.rows, m.cols);
  for (std::size_t i = 0; i + 2 < m.rows; ++i) {
    const double v = p.ts[i + 1];
    for (std::size_t j = 0; j + 2 < m.cols; ++j)
      EXPECT_NEAR(H[i * (m.cols - 2) + j], v / 2.0, 1e-3);
  }
}

TEST(Obj, GridCurvatureRejectsBadLayouts) {
  const Mesh m = build_mesh(dome(5, 8));
  EXPECT_THROW(h3_grid_mean_curvature(m, 4, m.cols), InputError);
  EXPECT_THROW(h3_grid_mean_curvature(m, 2, 2), InputError);
}

TEST(Obj, FileFormatUsesOneBasedFaces) {
  TempDir dir;
  Mesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0.1}};
  m.faces = {{0, 1, 2}};
  write_obj(m, dir.file("t.obj"));
  std::ifstream in(dir.file("t.obj"));
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(text.find("v 0 1 0.10000000000000001\n"), std::string::npos);
  EXPECT_NE(text.find("f 1 2 3\n"), std::string::npos);
}

TEST(Obj, ReadErrors) {
  TempDir dir;
  EXPECT_THROW(read_obj(dir.file("missing.obj")), IoError);
  const std::pair<const char*, const char*> bad[] = {
      {"vt.obj", "v 0 0 0\nvt 0 1\n"},
      {"range.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n"},
      {"zero.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n"},
      {"short.obj", "v 1 2\n"},
      {"trailing.obj", "v 1 2 3 4\n"},
  };
  for (const auto& [name, text] : bad) {
    write_file(dir.file(name), text);
    EXPECT_THROW(read_obj(dir.file(name)), FormatError) << name;
  }
  Mesh m;
  EXPECT_THROW(write_obj(m, dir.file("no/such/dir/x.obj")), IoError);
}
