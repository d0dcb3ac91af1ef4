#ifndef SIFTHOM_SOLVERS_HPP_
#define SIFTHOM_SOLVERS_HPP_

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sifthom/affine.hpp"
#include "sifthom/geometry.hpp"

namespace sifthom {

// Singular value ratio below which a linear system counts as rank deficient.
inline constexpr double kRankTolerance = 1e-10;

// A root is accepted as real when |imag| <= kImagTolerance * (1 + |real|).
inline constexpr double kImagTolerance = 1e-6;

// Orthonormal basis of a three dimensional null space; candidate homographies
// are h = x * h1 + y * h2 + h3 in row-major vectorization.
struct HomographyBasis {
  Vec9 h1;
  Vec9 h2;
  Vec9 h3;
};

// c20*x^2 + c11*x*y + c02*y^2 + c10*x + c01*y + c00.
struct BivariateQuadratic {
  double c20 = 0.0;
  double c11 = 0.0;
  double c02 = 0.0;
  double c10 = 0.0;
  double c01 = 0.0;
  double c00 = 0.0;

  double eval(double x, double y) const {
    return c20 * x * x + c11 * x * y + c02 * y * y + c10 * x + c01 * y + c00;
  }
  double dx(double x, double y) const { return 2.0 * c20 * x + c11 * y + c10; }
  double dy(double x, double y) const { return 2.0 * c02 * y + c11 * x + c01; }
};

// Zero to four canonical homographies.
using SolutionSet = std::vector<Homography>;

// Linear constraint a correspondence of oriented features puts on h,
// independent of the feature scales. Coefficients on [h1..h9]:
//   h1: -s2*c1          h2: -s1*s2
//   h4:  c1*c2          h5:  s1*c2
//   h7:  u2*s2*c1 - v2*c1*c2
//   h8:  u2*s1*s2 - v2*s1*c2
// with ci = cos(alpha_i), si = sin(alpha_i); the remaining entries are zero.
Vec9 sift_linear_row(const SiftCorrespondence& c);

// Symmetric coefficient matrix of the quadratic scale constraint, so that
// the residual is vec(h)^T * C * vec(h). `t` compensates per-image
// normalization: pass t2/t1 for points rewritten with scales t1 and t2, and
// 1 for raw coordinates.
Eigen::Matrix<double, 9, 9> quadratic_constraint_matrix(
    const SiftCorrespondence& c, double t);

// Residual of the quadratic scale consistency constraint at h.
double sift_quadratic_residual(const Homography& h,
                               const SiftCorrespondence& c, double t = 1.0);

// Stacks the two point rows of each correspondence and both orientation
// rows into the 6x9 coefficient matrix whose null space contains h.
Eigen::Matrix<double, 6, 9> build_2sift_system(const SiftCorrespondence& c1,
                                               const SiftCorrespondence& c2);

// Three right singular vectors spanning the null space of a 6x9 system.
// Throws RankDeficient when the row rank drops below six.
HomographyBasis nullspace3(const Eigen::Matrix<double, 6, 9>& m);

// Substitutes h = x*h1 + y*h2 + h3 into the scale constraint of each
// correspondence, giving one bivariate quadratic per correspondence.
std::pair<BivariateQuadratic, BivariateQuadratic> quadratics_from_basis(
    const HomographyBasis& basis, const SiftCorrespondence& c1,
    const SiftCorrespondence& c2, double t);

// Common real roots of two bivariate quadratics. Eliminates y through the
// resultant, reads the degree-four polynomial's roots off a companion
// matrix, recovers y per root and polishes with a few Newton steps. Throws
// DegenerateSystem when the system is not zero dimensional.
std::vector<Eigen::Vector2d> solve_two_quadratics(const BivariateQuadratic& f,
                                                  const BivariateQuadratic& g);

struct SiftSolverOptions {
  // Hartley-normalize the points internally (recommended). When off the
  // points are neither centered nor statistically rescaled; they are only
  // brought into range by an exact power-of-two factor, which introduces no
  // rounding of its own.
  bool normalize = true;
};

// Minimal solver for two orientation- and scale-covariant correspondences.
// Returns all real candidates, up to four, each canonical; scoring among
// them is the caller's job. Throws RankDeficient on degenerate input,
// DegenerateSystem when the root finding degenerates and EmptySolution when
// every root is complex.
SolutionSet solve_2sift(const SiftCorrespondence& c1,
                        const SiftCorrespondence& c2,
                        const SiftSolverOptions& options = {});

// Normalized direct linear transform over four point correspondences.
// Throws DegenerateConfiguration when any three points are collinear in
// either image.
Homography solve_4pt(std::span<const PointCorrespondence> cs);

// Minimal solver for three oriented correspondences: six point rows plus
// three orientation rows, scales ignored. Throws RankDeficient when the
// 9x9 system has rank below eight.
Homography solve_3ori(std::span<const SiftCorrespondence> cs);

// Least-squares normalized direct linear transform over four or more
// correspondences. Throws InsufficientData below four and RankDeficient on
// degenerate clouds.
Homography fit_homography_dlt(std::span<const PointCorrespondence> cs);

}  // namespace sifthom

#endif  // SIFTHOM_SOLVERS_HPP_
