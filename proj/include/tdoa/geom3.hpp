#pragma once

#include <array>
#include <cstddef>

namespace tdoa {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(const Vec3& a);
double distance(const Vec3& a, const Vec3& b);
bool is_finite(const Vec3& a);

// 3x3 matrix, row-major.
struct Mat3 {
  std::array<double, 9> m{};

  static constexpr Mat3 identity() { return diag(1.0, 1.0, 1.0); }
  static constexpr Mat3 diag(double a, double b, double c) {
    return Mat3{{a, 0.0, 0.0, 0.0, b, 0.0, 0.0, 0.0, c}};
  }
  static constexpr Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    return Mat3{{r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z}};
  }

  constexpr double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }
  constexpr double& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }

  constexpr Vec3 row(std::size_t r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }
  void set_row(std::size_t r, const Vec3& v) {
    m[3 * r] = v.x;
    m[3 * r + 1] = v.y;
    m[3 * r + 2] = v.z;
  }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {dot(a.row(0), v), dot(a.row(1), v), dot(a.row(2), v)};
}
Mat3 operator*(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& a);
bool is_finite(const Mat3& a);

// Relative pivot threshold below which solve3 declares the system singular.
inline constexpr double kRankEpsilon = 1e-12;

// Pivot magnitudes seen during elimination, each divided by the largest
// entry of its original row. min/max close to 1 means a well-scaled system;
// min near kRankEpsilon means near rank deficiency.
struct PivotInfo {
  double min_relative_pivot = 0.0;
  double max_relative_pivot = 0.0;

  double ratio() const {
    return max_relative_pivot > 0.0 ? min_relative_pivot / max_relative_pivot : 0.0;
  }
};

struct LinearSolution {
  Vec3 solution;
  PivotInfo pivots;
};

// Gaussian elimination with scaled partial pivoting. Throws
// Error(SingularMatrix) when a pivot falls below kRankEpsilon times the
// largest magnitude in its original row (or the row is identically zero).
LinearSolution solve3_pivoted(const Mat3& a, const Vec3& b);

inline Vec3 solve3(const Mat3& a, const Vec3& b) { return solve3_pivoted(a, b).solution; }

}  // namespace tdoa
