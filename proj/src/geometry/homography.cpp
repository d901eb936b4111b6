// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/geometry/homography.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "rlforge/core/error.hpp"
#include "rlforge/geometry/footprint.hpp"

namespace rlforge::geometry {
namespace {

Eigen::Matrix3d normalize_scale(const Eigen::Matrix3d& m) {
  const double corner = m(2, 2);
  if (std::abs(corner) > 1e-12 * m.norm()) return m / corner;
  return m / m.norm();
}

// Similarity taking the points to centroid 0 and mean distance sqrt(2).
Eigen::Matrix3d conditioning(const std::vector<Eigen::Vector2d>& pts) {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  double dist = 0.0;
  for (const auto& p : pts) dist += (p - mean).norm();
  dist /= static_cast<double>(pts.size());
  if (!(dist > 0)) throw GeometryError("homography: all points coincide");
  const double s = std::sqrt(2.0) / dist;
  Eigen::Matrix3d t;
  t << s, 0, -s * mean.x(),
       0, s, -s * mean.y(),
       0, 0, 1;
  return t;
}

Eigen::Vector2d transform(const Eigen::Matrix3d& t, const Eigen::Vector2d& p) {
  const Eigen::Vector3d q = t * p.homogeneous();
  return q.hnormalized();
}

}  // namespace

Homography::Homography(const Eigen::Matrix3d& m) {
  if (!m.allFinite()) throw GeometryError("homography has non-finite entries");
  const Eigen::Matrix3d n = normalize_scale(m);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(n);
  const auto sv = svd.singularValues();
  if (!(sv(2) > 1e-12 * sv(0))) throw GeometryError("homography is singular");
  m_ = n;
}

Homography Homography::translation(double tx, double ty) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 2) = tx;
  m(1, 2) = ty;
  return Homography(m);
}

std::optional<Eigen::Vector2d> Homography::apply(const Eigen::Vector2d& p) const {
  const Eigen::Vector3d q = m_ * p.homogeneous();
  if (!(q.z() > 0) && !(q.z() < 0)) return std::nullopt;
  return Eigen::Vector2d(q.x() / q.z(), q.y() / q.z());
}

Homography Homography::inverse() const { return Homography(m_.inverse()); }

Homography Homography::compose(const Homography& first) const { return Homography(m_ * first.m_); }

Homography homography_from_correspondences(const std::vector<Correspondence>& pairs) {
  const std::size_t n = pairs.size();
  if (n < 4) throw GeometryError(fmt::format("homography needs at least 4 correspondences, got {}", n));
  std::vector<Eigen::Vector2d> src, dst;
  for (const auto& [s, d] : pairs) {
    if (!s.allFinite() || !d.allFinite()) throw GeometryError("homography: non-finite correspondence");
    src.push_back(s);
    dst.push_back(d);
  }
  const Eigen::Matrix3d ts = conditioning(src);
  const Eigen::Matrix3d td = conditioning(dst);
  std::vector<Eigen::Vector2d> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = transform(ts, src[i]);
    b[i] = transform(td, dst[i]);
  }
  if (n == 4) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        for (int k = j + 1; k < 4; ++k) {
          const Eigen::Vector2d u = a[j] - a[i], v = a[k] - a[i];
          if (std::abs(u.x() * v.y() - u.y() * v.x()) < 1e-10) {
            throw GeometryError(fmt::format("homography: source points {}, {}, {} are collinear", i, j, k));
          }
        }
      }
    }
  }

  Eigen::MatrixXd system(2 * n, 9);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a[i].x(), y = a[i].y(), u = b[i].x(), v = b[i].y();
    system.row(2 * i) << -x, -y, -1, 0, 0, 0, u * x, u * y, u;
    system.row(2 * i + 1) << 0, 0, 0, -x, -y, -1, v * x, v * y, v;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  if (!(sv(7) > 1e-12 * sv(0))) throw GeometryError("homography: correspondences are rank deficient");
  const Eigen::VectorXd h = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
  return Homography(td.inverse() * hn * ts);
}

Homography camera_homography(const RigPose& pose, const CameraModel& model) {
  const GroundQuad quad = ray_cast_footprint(pose, model);
  const auto corners = image_corners(model);
  return homography_from_correspondences({{corners[0], quad.top_left},
                                          {corners[1], quad.top_right},
                                          {corners[2], quad.bottom_left},
                                          {corners[3], quad.bottom_right}});
}

}  // namespace rlforge::geometry
