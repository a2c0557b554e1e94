#include "tdoa/geom3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "tdoa/error.hpp"

namespace tdoa {

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

bool is_finite(const Mat3& a) {
  return std::all_of(a.m.begin(), a.m.end(), [](double v) { return std::isfinite(v); });
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 out;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
    }
  }
  return out;
}

Mat3 transpose(const Mat3& a) {
  Mat3 out;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) out(c, r) = a(r, c);
  }
  return out;
}

LinearSolution solve3_pivoted(const Mat3& a, const Vec3& b) {
  if (!is_finite(a) || !is_finite(b)) {
    throw Error(ErrorCode::InvalidInput, "solve3: non-finite matrix or right-hand side");
  }

  std::array<std::array<double, 4>, 3> aug{};
  std::array<double, 3> scale{};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      aug[r][c] = a(r, c);
      scale[r] = std::max(scale[r], std::abs(a(r, c)));
    }
    aug[r][3] = b[r];
    if (scale[r] == 0.0) {
      throw Error(ErrorCode::SingularMatrix, "solve3: matrix has an all-zero row");
    }
  }

  PivotInfo info{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t best = col;
    double best_rel = -1.0;
    for (std::size_t r = col; r < 3; ++r) {
      const double rel = std::abs(aug[r][col]) / scale[r];
      if (rel > best_rel) {
        best_rel = rel;
        best = r;
      }
    }
    if (!(best_rel >= kRankEpsilon)) {
      throw Error(ErrorCode::SingularMatrix, "solve3: pivot below relative rank threshold");
    }
    std::swap(aug[col], aug[best]);
    std::swap(scale[col], scale[best]);
    info.min_relative_pivot = std::min(info.min_relative_pivot, best_rel);
    info.max_relative_pivot = std::max(info.max_relative_pivot, best_rel);

    for (std::size_t r = col + 1; r < 3; ++r) {
      const double f = aug[r][col] / aug[col][col];
      aug[r][col] = 0.0;
      for (std::size_t c = col + 1; c < 4; ++c) aug[r][c] -= f * aug[col][c];
    }
  }

  Vec3 s;
  for (std::size_t i = 3; i-- > 0;) {
    double acc = aug[i][3];
    for (std::size_t c = i + 1; c < 3; ++c) acc -= aug[i][c] * s[c];
    s[i] = acc / aug[i][i];
  }
  return {s, info};
}

}  // namespace tdoa
