#ifndef SIFTHOM_AFFINE_HPP_
#define SIFTHOM_AFFINE_HPP_

#include <Eigen/Core>

#include "sifthom/geometry.hpp"

namespace sifthom {

// First-order (affine) approximation of an image-to-image mapping around a
// point correspondence. Entries of `a` are referred to as
// a1 = a(0,0), a2 = a(0,1), a3 = a(1,0), a4 = a(1,1).
struct AffineCorrespondence {
  Point2 p1;
  Point2 p2;
  Eigen::Matrix2d a = Eigen::Matrix2d::Identity();
};

// Orientation- and scale-covariant feature pair: point positions plus the
// feature orientations (radians, unrestricted) and positive scales.
struct SiftCorrespondence {
  Point2 p1;
  Point2 p2;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double q1 = 1.0;
  double q2 = 1.0;
};

// Local feature shape, the Jacobian of the image-from-canonical-patch map
// factored as rotation(alpha) * [[qu, w], [0, qv]] with qu, qv > 0.
struct LocalFrame {
  double alpha = 0.0;
  double qu = 1.0;
  double qv = 1.0;
  double w = 0.0;
};

// First-order expansion of h around p1: with s = u1*h7 + v1*h8 + h9,
//   a1 = (h1 - h7*u2) / s,  a2 = (h2 - h8*u2) / s,
//   a3 = (h4 - h7*v2) / s,  a4 = (h5 - h8*v2) / s,
// where (u2, v2) = h(p1). Throws DegenerateDepth on vanishing s.
AffineCorrespondence affine_from_homography(const Homography& h,
                                            const Point2& p1);

// Two linear constraints tying h to a point correspondence,
//   u1*h1 + v1*h2 + h3 - u1*u2*h7 - v1*u2*h8 - u2*h9 = 0
// and the same for the second image row. Coefficient rows on [h1..h9].
Eigen::Matrix<double, 2, 9> dlt_rows(const PointCorrespondence& c);

// Four linear constraints tying h to an affine correspondence, obtained by
// differentiating the projective transfer. Coefficient rows on [h1..h9].
Eigen::Matrix<double, 4, 9> affine_rows(const AffineCorrespondence& ac);

// Assembles rotation(alpha) * [[qu, w], [0, qv]]. Throws
// std::invalid_argument when qu or qv is not positive.
Eigen::Matrix2d jacobian_from_frame(const LocalFrame& f);

// Inverse of jacobian_from_frame: recovers the unique factorization with
// qu, qv > 0 and alpha in (-pi, pi]. Throws NonPositiveScale when det(j) <= 0.
LocalFrame frame_from_jacobian(const Eigen::Matrix2d& j);

// Feature scale, det(j) = qu * qv. Throws NonPositiveScale when not positive.
double scale_of_jacobian(const Eigen::Matrix2d& j);

// Relative frame change j2 * j1^-1. Throws SingularJacobian when j1 is
// singular within tolerance.
Eigen::Matrix2d affine_from_jacobians(const Eigen::Matrix2d& j1,
                                      const Eigen::Matrix2d& j2);

// Propagates the first frame through an affine map: the frame of a * j1.
// Throws SingularAffinity when det(a * j1) is not positive.
LocalFrame complete_second_frame(const LocalFrame& f1,
                                 const Eigen::Matrix2d& a);

// Residual of the scale consistency constraint
//   q1^2 * a2 * a3 - q1^2 * a1 * a4 + q1 * q2,
// zero exactly when det(a) = q2 / q1.
double residual_det_constraint(const Eigen::Matrix2d& a, double q1, double q2);

// Residual of the orientation consistency constraint
//   c1*s2*q1*a1 + s1*s2*q1*a2 - c1*c2*q1*a3 - c2*s1*q1*a4
// with ci = cos(alpha_i), si = sin(alpha_i); zero when a maps the first
// feature direction onto the second.
double residual_rotation_constraint(const Eigen::Matrix2d& a, double alpha1,
                                    double alpha2, double q1);

// Rewrites an affine correspondence in per-image normalized coordinates:
// points are transformed and the matrix becomes (t2.t / t1.t) * a.
AffineCorrespondence scale_affine_for_normalization(
    const AffineCorrespondence& ac, const NormalizationTransform& t1,
    const NormalizationTransform& t2);

}  // namespace sifthom

#endif  // SIFTHOM_AFFINE_HPP_
