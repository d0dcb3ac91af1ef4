#include "sifthom/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace sifthom {

Homography Homography::from_vec(const Vec9& h) {
  Homography out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out.m(r, c) = h(3 * r + c);
  return out;
}

Vec9 Homography::vec() const {
  Vec9 h;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) h(3 * r + c) = m(r, c);
  return h;
}

Homography canonicalize(const Homography& h) {
  const double norm = h.m.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw SingularHomography("cannot canonicalize a zero homography");
  Homography out;
  out.m = h.m / norm;
  double sign_entry = out.m(2, 2);
  if (sign_entry == 0.0) {
    const Vec9 v = out.vec();
    for (int i = 0; i < 9; ++i) {
      if (v(i) != 0.0) {
        sign_entry = v(i);
        break;
      }
    }
  }
  if (sign_entry < 0.0) out.m = -out.m;
  return out;
}

Point2 apply_homography(const Homography& h, const Point2& p) {
  const Eigen::Vector3d q = h.m * Eigen::Vector3d(p.u, p.v, 1.0);
  if (std::abs(q(2)) <= kDepthTolerance * h.m.norm())
    throw DegenerateDepth("point maps to infinity");
  return {q(0) / q(2), q(1) / q(2)};
}

double symmetric_transfer_error(const Homography& h,
                                const PointCorrespondence& c) {
  const double norm = h.m.norm();
  const double det = h.m.determinant();
  if (std::abs(det) <= 1e-12 * norm * norm * norm)
    throw SingularHomography("homography is not invertible");
  Homography hinv;
  hinv.m = h.m.inverse();
  const Point2 fwd = apply_homography(h, c.p1);
  const Point2 bwd = apply_homography(hinv, c.p2);
  const double e_fwd = std::hypot(fwd.u - c.p2.u, fwd.v - c.p2.v);
  const double e_bwd = std::hypot(bwd.u - c.p1.u, bwd.v - c.p1.v);
  return 0.5 * (e_fwd + e_bwd);
}

double homography_distance(const Homography& a, const Homography& b) {
  const Eigen::Matrix3d ca = canonicalize(a).m;
  const Eigen::Matrix3d cb = canonicalize(b).m;
  return std::min((ca - cb).norm(), (ca + cb).norm());
}

Eigen::Matrix3d NormalizationTransform::matrix() const {
  Eigen::Matrix3d m;
  m << t, 0.0, tx, 0.0, t, ty, 0.0, 0.0, 1.0;
  return m;
}

NormalizationTransform hartley_normalize(std::span<const Point2> points,
                                         std::vector<Point2>* normalized) {
  if (points.size() < 2)
    throw DegenerateCloud("need at least two points to normalize");
  double cu = 0.0, cv = 0.0;
  for (const Point2& p : points) {
    cu += p.u;
    cv += p.v;
  }
  cu /= static_cast<double>(points.size());
  cv /= static_cast<double>(points.size());
  double mean_dist = 0.0;
  for (const Point2& p : points)
    mean_dist += std::hypot(p.u - cu, p.v - cv);
  mean_dist /= static_cast<double>(points.size());
  if (!(mean_dist > 0.0))
    throw DegenerateCloud("point cloud has no spread");
  NormalizationTransform out;
  out.t = std::sqrt(2.0) / mean_dist;
  out.tx = -out.t * cu;
  out.ty = -out.t * cv;
  if (normalized) {
    normalized->clear();
    normalized->reserve(points.size());
    for (const Point2& p : points) normalized->push_back(out.apply(p));
  }
  return out;
}

Homography denormalize_homography(const Homography& hn,
                                  const NormalizationTransform& t1,
                                  const NormalizationTransform& t2) {
  Homography out;
  out.m = t2.matrix().inverse() * hn.m * t1.matrix();
  return canonicalize(out);
}

}  // namespace sifthom
