#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <unistd.h>

#include "catforms/family.hpp"
#include "catforms/geometry.hpp"

namespace catforms::testing {

inline constexpr double kPi = std::numbers::pi;

inline constexpr std::array<Family, 6> kAllFamilies{
    Family::Euclidean,   Family::Sphere,      Family::SphereExtrinsic,
    Family::HypGeodesic, Family::HypHorodist, Family::Horocycle};

/// Seeded generator for property tests.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  template <class T, std::size_t N>
  T pick(const std::array<T, N>& xs) {
    return xs[index(N)];
  }

  /// Chart point well inside the family's admissible region.
  ChartPoint point(Family f) {
    switch (f) {
    case Family::Euclidean: return {uniform(-3.0, 3.0), uniform(0.1, 3.0)};
    case Family::Sphere:
    case Family::SphereExtrinsic: return {uniform(0.05, 1.5), uniform(-kPi, kPi)};
    case Family::HypGeodesic:
    case Family::HypHorodist: return {uniform(0.05, 3.0), uniform(0.05, 3.0)};
    case Family::Horocycle: return {uniform(-3.0, 3.0), uniform(1.05, 5.0)};
    }
    return {};
  }

  /// Admissible state with an unwrapped heading.
  CurveState state(Family f) {
    const ChartPoint p = point(f);
    return {p.u, p.v, uniform(-7.0, 7.0)};
  }

  double alpha() { return pick(std::array<double, 4>{-1.0, 0.5, 1.0, 2.0}); }

private:
  std::mt19937_64 rng_;
};

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("catforms-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

/// Chart distance between two points.
inline double chart_distance(ChartPoint a, ChartPoint b) { return std::hypot(a.u - b.u, a.v - b.v); }

} // namespace catforms::testing
