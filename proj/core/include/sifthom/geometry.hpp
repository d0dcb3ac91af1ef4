#ifndef SIFTHOM_GEOMETRY_HPP_
#define SIFTHOM_GEOMETRY_HPP_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "sifthom/errors.hpp"

namespace sifthom {

using Vec9 = Eigen::Matrix<double, 9, 1>;

struct Point2 {
  double u = 0.0;
  double v = 0.0;
};

// A point observed in two images.
struct PointCorrespondence {
  Point2 p1;
  Point2 p2;
};

// Plane-induced projective mapping between two images. Entries are referred
// to in row-major order h1..h9, i.e. h1 = m(0,0), h2 = m(0,1), ..., h9 = m(2,2).
struct Homography {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();

  static Homography from_vec(const Vec9& h);

  // Row-major flattening [h1..h9].
  Vec9 vec() const;
};

// Projective depths smaller than this fraction of the Frobenius norm count as
// a point on the plane at infinity.
inline constexpr double kDepthTolerance = 1e-12;

// Scale fixed to unit Frobenius norm, sign fixed to nonnegative h9; when h9 is
// zero the first nonzero entry in row-major order is made positive.
// Throws SingularHomography on the zero matrix.
Homography canonicalize(const Homography& h);

// Maps p through h and dehomogenizes. Throws DegenerateDepth when the
// projective depth falls below kDepthTolerance * ||h||_F.
Point2 apply_homography(const Homography& h, const Point2& p);

// Mean of forward and backward transfer distances,
// (||h(p1) - p2|| + ||h^-1(p2) - p1||) / 2. Throws SingularHomography when h
// is not invertible; DegenerateDepth propagates from either direction.
double symmetric_transfer_error(const Homography& h,
                                const PointCorrespondence& c);

// Frobenius distance between canonical forms, minimized over the residual
// sign ambiguity.
double homography_distance(const Homography& a, const Homography& b);

// Similarity p -> (t * u + tx, t * v + ty) used to condition linear systems.
struct NormalizationTransform {
  double t = 1.0;
  double tx = 0.0;
  double ty = 0.0;

  Point2 apply(const Point2& p) const { return {t * p.u + tx, t * p.v + ty}; }

  Eigen::Matrix3d matrix() const;
};

// Transform placing the centroid at the origin and scaling the mean distance
// from it to sqrt(2). Fills `normalized` with the transformed points when
// given. Throws DegenerateCloud when the cloud has no spread (fewer than two
// distinct points).
NormalizationTransform hartley_normalize(std::span<const Point2> points,
                                         std::vector<Point2>* normalized = nullptr);

// Undoes per-image normalization: returns canonicalize(T2^-1 * hn * T1).
Homography denormalize_homography(const Homography& hn,
                                  const NormalizationTransform& t1,
                                  const NormalizationTransform& t2);

}  // namespace sifthom

#endif  // SIFTHOM_GEOMETRY_HPP_
