#include "sifthom/affine.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace sifthom {

AffineCorrespondence affine_from_homography(const Homography& h,
                                            const Point2& p1) {
  const Eigen::Matrix3d& m = h.m;
  const double s = p1.u * m(2, 0) + p1.v * m(2, 1) + m(2, 2);
  if (std::abs(s) <= kDepthTolerance * m.norm())
    throw DegenerateDepth("affine expansion at a point at infinity");
  AffineCorrespondence ac;
  ac.p1 = p1;
  ac.p2 = apply_homography(h, p1);
  ac.a(0, 0) = (m(0, 0) - m(2, 0) * ac.p2.u) / s;
  ac.a(0, 1) = (m(0, 1) - m(2, 1) * ac.p2.u) / s;
  ac.a(1, 0) = (m(1, 0) - m(2, 0) * ac.p2.v) / s;
  ac.a(1, 1) = (m(1, 1) - m(2, 1) * ac.p2.v) / s;
  return ac;
}

Eigen::Matrix<double, 2, 9> dlt_rows(const PointCorrespondence& c) {
  const double u1 = c.p1.u, v1 = c.p1.v, u2 = c.p2.u, v2 = c.p2.v;
  Eigen::Matrix<double, 2, 9> rows;
  rows << u1, v1, 1.0, 0.0, 0.0, 0.0, -u1 * u2, -v1 * u2, -u2,
          0.0, 0.0, 0.0, u1, v1, 1.0, -u1 * v2, -v1 * v2, -v2;
  return rows;
}

Eigen::Matrix<double, 4, 9> affine_rows(const AffineCorrespondence& ac) {
  const double u1 = ac.p1.u, v1 = ac.p1.v, u2 = ac.p2.u, v2 = ac.p2.v;
  const double a1 = ac.a(0, 0), a2 = ac.a(0, 1);
  const double a3 = ac.a(1, 0), a4 = ac.a(1, 1);
  Eigen::Matrix<double, 4, 9> rows;
  rows << 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, -(u2 + a1 * u1), -a1 * v1, -a1,
          0.0, 1.0, 0.0, 0.0, 0.0, 0.0, -a2 * u1, -(u2 + a2 * v1), -a2,
          0.0, 0.0, 0.0, 1.0, 0.0, 0.0, -(v2 + a3 * u1), -a3 * v1, -a3,
          0.0, 0.0, 0.0, 0.0, 1.0, 0.0, -a4 * u1, -(v2 + a4 * v1), -a4;
  return rows;
}

Eigen::Matrix2d jacobian_from_frame(const LocalFrame& f) {
  if (!(f.qu > 0.0) || !(f.qv > 0.0))
    throw std::invalid_argument("frame scales must be positive");
  const double c = std::cos(f.alpha), s = std::sin(f.alpha);
  Eigen::Matrix2d j;
  j << c * f.qu, c * f.w - s * f.qv,
       s * f.qu, s * f.w + c * f.qv;
  return j;
}

LocalFrame frame_from_jacobian(const Eigen::Matrix2d& j) {
  const double det = j.determinant();
  if (!(det > 0.0))
    throw NonPositiveScale("frame Jacobian must preserve orientation");
  LocalFrame f;
  f.qu = std::hypot(j(0, 0), j(1, 0));
  f.alpha = std::atan2(j(1, 0), j(0, 0));
  const double c = j(0, 0) / f.qu, s = j(1, 0) / f.qu;
  f.w = c * j(0, 1) + s * j(1, 1);
  f.qv = det / f.qu;
  return f;
}

double scale_of_jacobian(const Eigen::Matrix2d& j) {
  const double det = j.determinant();
  if (!(det > 0.0))
    throw NonPositiveScale("feature scale must be positive");
  return det;
}

Eigen::Matrix2d affine_from_jacobians(const Eigen::Matrix2d& j1,
                                      const Eigen::Matrix2d& j2) {
  const double det = j1.determinant();
  if (std::abs(det) <= 1e-14 * j1.squaredNorm())
    throw SingularJacobian("first frame Jacobian is singular");
  Eigen::Matrix2d inv;
  inv << j1(1, 1), -j1(0, 1), -j1(1, 0), j1(0, 0);
  return j2 * inv / det;
}

LocalFrame complete_second_frame(const LocalFrame& f1,
                                 const Eigen::Matrix2d& a) {
  const Eigen::Matrix2d j2 = a * jacobian_from_frame(f1);
  if (!(j2.determinant() > 0.0))
    throw SingularAffinity("affinity flips or collapses the frame");
  return frame_from_jacobian(j2);
}

double residual_det_constraint(const Eigen::Matrix2d& a, double q1,
                               double q2) {
  const double a1 = a(0, 0), a2 = a(0, 1), a3 = a(1, 0), a4 = a(1, 1);
  return q1 * q1 * a2 * a3 - q1 * q1 * a1 * a4 + q1 * q2;
}

double residual_rotation_constraint(const Eigen::Matrix2d& a, double alpha1,
                                    double alpha2, double q1) {
  const double c1 = std::cos(alpha1), s1 = std::sin(alpha1);
  const double c2 = std::cos(alpha2), s2 = std::sin(alpha2);
  const double a1 = a(0, 0), a2 = a(0, 1), a3 = a(1, 0), a4 = a(1, 1);
  return c1 * s2 * q1 * a1 + s1 * s2 * q1 * a2 - c1 * c2 * q1 * a3 -
         c2 * s1 * q1 * a4;
}

AffineCorrespondence scale_affine_for_normalization(
    const AffineCorrespondence& ac, const NormalizationTransform& t1,
    const NormalizationTransform& t2) {
  AffineCorrespondence out;
  out.p1 = t1.apply(ac.p1);
  out.p2 = t2.apply(ac.p2);
  out.a = (t2.t / t1.t) * ac.a;
  return out;
}

}  // namespace sifthom
