#include "sifthom/solvers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace sifthom {

Vec9 sift_linear_row(const SiftCorrespondence& c) {
  const double c1 = std::cos(c.alpha1), s1 = std::sin(c.alpha1);
  const double c2 = std::cos(c.alpha2), s2 = std::sin(c.alpha2);
  const double u2 = c.p2.u, v2 = c.p2.v;
  Vec9 row = Vec9::Zero();
  row(0) = -s2 * c1;
  row(1) = -s1 * s2;
  row(3) = c1 * c2;
  row(4) = s1 * c2;
  row(6) = u2 * s2 * c1 - v2 * c1 * c2;
  row(7) = u2 * s1 * s2 - v2 * s1 * c2;
  return row;
}

Eigen::Matrix<double, 9, 9> quadratic_constraint_matrix(
    const SiftCorrespondence& c, double t) {
  const double u1 = c.p1.u, v1 = c.p1.v, u2 = c.p2.u, v2 = c.p2.v;
  const double q1 = c.q1;
  const double q2t2 = c.q2 * t * t;
  Eigen::Matrix<double, 9, 9> q = Eigen::Matrix<double, 9, 9>::Zero();
  auto sym = [&q](int i, int j, double value) {
    q(i, j) += value;
    q(j, i) += value;
  };
  // Terms quadratic in the third homography row pick up the normalization
  // factor; the remaining ones are linear in the feature scale of image one.
  q(6, 6) += u1 * u1 * q2t2;
  sym(6, 7, u1 * v1 * q2t2);
  q(7, 7) += v1 * v1 * q2t2;
  sym(6, 8, u1 * q2t2);
  sym(7, 8, v1 * q2t2);
  q(8, 8) += q2t2;
  sym(4, 6, 0.5 * u2 * q1);
  sym(3, 7, -0.5 * u2 * q1);
  sym(1, 6, -0.5 * v2 * q1);
  sym(0, 7, 0.5 * v2 * q1);
  sym(1, 3, 0.5 * q1);
  sym(0, 4, -0.5 * q1);
  return q;
}

double sift_quadratic_residual(const Homography& h,
                               const SiftCorrespondence& c, double t) {
  const Vec9 v = h.vec();
  return v.dot(quadratic_constraint_matrix(c, t) * v);
}

Eigen::Matrix<double, 6, 9> build_2sift_system(const SiftCorrespondence& c1,
                                               const SiftCorrespondence& c2) {
  Eigen::Matrix<double, 6, 9> m;
  m.block<2, 9>(0, 0) = dlt_rows({c1.p1, c1.p2});
  m.block<2, 9>(2, 0) = dlt_rows({c2.p1, c2.p2});
  m.row(4) = sift_linear_row(c1).transpose();
  m.row(5) = sift_linear_row(c2).transpose();
  return m;
}

HomographyBasis nullspace3(const Eigen::Matrix<double, 6, 9>& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m),
                                              Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!(sv(5) > kRankTolerance * sv(0)))
    throw RankDeficient("constraint matrix has rank below six");
  HomographyBasis basis;
  basis.h1 = svd.matrixV().col(6);
  basis.h2 = svd.matrixV().col(7);
  basis.h3 = svd.matrixV().col(8);
  return basis;
}

std::pair<BivariateQuadratic, BivariateQuadratic> quadratics_from_basis(
    const HomographyBasis& basis, const SiftCorrespondence& c1,
    const SiftCorrespondence& c2, double t) {
  auto build = [&basis, t](const SiftCorrespondence& c) {
    const Eigen::Matrix<double, 9, 9> q = quadratic_constraint_matrix(c, t);
    BivariateQuadratic out;
    out.c20 = basis.h1.dot(q * basis.h1);
    out.c11 = 2.0 * basis.h1.dot(q * basis.h2);
    out.c02 = basis.h2.dot(q * basis.h2);
    out.c10 = 2.0 * basis.h1.dot(q * basis.h3);
    out.c01 = 2.0 * basis.h2.dot(q * basis.h3);
    out.c00 = basis.h3.dot(q * basis.h3);
    return out;
  };
  return {build(c1), build(c2)};
}

namespace {

// A bivariate quadratic viewed as a quadratic in y whose coefficients are
// polynomials in x (constant, linear and quadratic respectively).
struct YView {
  double a2;
  std::array<double, 2> a1;
  std::array<double, 3> a0;
};

YView y_view(const BivariateQuadratic& q) {
  return {q.c02, {q.c01, q.c11}, {q.c00, q.c10, q.c20}};
}

double max_abs_coeff(const BivariateQuadratic& q) {
  return std::max({std::abs(q.c20), std::abs(q.c11), std::abs(q.c02),
                   std::abs(q.c10), std::abs(q.c01), std::abs(q.c00)});
}

double eval_poly(std::span<const double> c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

// Real roots of a low degree polynomial, ascending coefficients, via the
// companion matrix of the trimmed monic polynomial.
void real_poly_roots(std::span<const double> c, std::vector<double>* roots) {
  double maxc = 0.0;
  for (double v : c) maxc = std::max(maxc, std::abs(v));
  int deg = static_cast<int>(c.size()) - 1;
  while (deg > 0 && std::abs(c[deg]) <= 1e-12 * maxc) --deg;
  if (deg == 0) return;
  if (deg == 1) {
    roots->push_back(-c[0] / c[1]);
    return;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  const Eigen::EigenSolver<Eigen::MatrixXd> eig(comp, false);
  for (int i = 0; i < deg; ++i) {
    const std::complex<double> z = eig.eigenvalues()(i);
    if (std::abs(z.imag()) <= kImagTolerance * (1.0 + std::abs(z.real())))
      roots->push_back(z.real());
  }
}

}  // namespace

std::vector<Eigen::Vector2d> solve_two_quadratics(const BivariateQuadratic& f_in,
                                                  const BivariateQuadratic& g_in) {
  const double sf = max_abs_coeff(f_in), sg = max_abs_coeff(g_in);
  if (sf == 0.0 || sg == 0.0)
    throw DegenerateSystem("a polynomial is identically zero");
  auto scale = [](const BivariateQuadratic& q, double s) {
    return BivariateQuadratic{q.c20 / s, q.c11 / s, q.c02 / s,
                              q.c10 / s, q.c01 / s, q.c00 / s};
  };
  const BivariateQuadratic f = scale(f_in, sf);
  const BivariateQuadratic g = scale(g_in, sg);

  auto is_constant = [](const BivariateQuadratic& q) {
    return q.c20 == 0.0 && q.c11 == 0.0 && q.c02 == 0.0 && q.c10 == 0.0 &&
           q.c01 == 0.0;
  };
  // A nonzero constant never vanishes, so there is no common root.
  if (is_constant(f) || is_constant(g)) return {};

  const YView fa = y_view(f), ga = y_view(g);

  // Eliminate y. For two genuine quadratics in y the resultant is
  //   (a2*b0 - a0*b2)^2 - (a2*b1 - a1*b2)*(a1*b0 - a0*b1),
  // a degree four polynomial in x; when both drop to linear in y the
  // cross-multiplied difference a1*b0 - a0*b1 takes its place.
  std::array<double, 5> res{};
  std::array<double, 4> r{};
  r[0] = fa.a1[0] * ga.a0[0] - fa.a0[0] * ga.a1[0];
  r[1] = fa.a1[0] * ga.a0[1] + fa.a1[1] * ga.a0[0] - fa.a0[0] * ga.a1[1] -
         fa.a0[1] * ga.a1[0];
  r[2] = fa.a1[0] * ga.a0[2] + fa.a1[1] * ga.a0[1] - fa.a0[1] * ga.a1[1] -
         fa.a0[2] * ga.a1[0];
  r[3] = fa.a1[1] * ga.a0[2] - fa.a0[2] * ga.a1[1];
  // Magnitude the coefficients would have without cancellation; the
  // vanishing test below must be relative to it, or ill-scaled but regular
  // systems get misread as degenerate.
  const double a0f = std::max({std::abs(fa.a0[0]), std::abs(fa.a0[1]),
                               std::abs(fa.a0[2])});
  const double a1f = std::max(std::abs(fa.a1[0]), std::abs(fa.a1[1]));
  const double a0g = std::max({std::abs(ga.a0[0]), std::abs(ga.a0[1]),
                               std::abs(ga.a0[2])});
  const double a1g = std::max(std::abs(ga.a1[0]), std::abs(ga.a1[1]));
  const double r_form = a1f * a0g + a0f * a1g;
  double res_form = 0.0;
  if (std::abs(fa.a2) <= 1e-14 && std::abs(ga.a2) <= 1e-14) {
    for (int i = 0; i < 4; ++i) res[i] = r[i];
    res_form = r_form;
  } else {
    std::array<double, 3> p{};
    for (int i = 0; i < 3; ++i) p[i] = fa.a2 * ga.a0[i] - fa.a0[i] * ga.a2;
    std::array<double, 2> q{};
    for (int i = 0; i < 2; ++i) q[i] = fa.a2 * ga.a1[i] - fa.a1[i] * ga.a2;
    res[0] = p[0] * p[0] - q[0] * r[0];
    res[1] = 2.0 * p[0] * p[1] - q[0] * r[1] - q[1] * r[0];
    res[2] = p[1] * p[1] + 2.0 * p[0] * p[2] - q[0] * r[2] - q[1] * r[1];
    res[3] = 2.0 * p[1] * p[2] - q[0] * r[3] - q[1] * r[2];
    res[4] = p[2] * p[2] - q[1] * r[3];
    const double p_form = std::abs(fa.a2) * a0g + a0f * std::abs(ga.a2);
    const double q_form = std::abs(fa.a2) * a1g + a1f * std::abs(ga.a2);
    res_form = p_form * p_form + q_form * r_form;
  }
  double max_res = 0.0;
  for (double v : res) max_res = std::max(max_res, std::abs(v));
  if (max_res <= 1e-12 * res_form || res_form == 0.0)
    throw DegenerateSystem("resultant vanishes identically");

  std::vector<double> xs;
  real_poly_roots(res, &xs);

  auto polish = [&f, &g](double* x, double* y) {
    for (int it = 0; it < 8; ++it) {
      const double rf = f.eval(*x, *y), rg = g.eval(*x, *y);
      if (std::abs(rf) < 1e-14 && std::abs(rg) < 1e-14) break;
      const double fx = f.dx(*x, *y), fy = f.dy(*x, *y);
      const double gx = g.dx(*x, *y), gy = g.dy(*x, *y);
      const double det = fx * gy - fy * gx;
      if (std::abs(det) < 1e-300) break;
      *x -= (rf * gy - rg * fy) / det;
      *y -= (rg * fx - rf * gx) / det;
    }
  };

  std::vector<Eigen::Vector2d> out;
  constexpr double kResidualTol = 1e-7;
  constexpr double kClusterTol = 1e-8;
  for (const double x0 : xs) {
    const double a2 = fa.a2;
    const double a1 = eval_poly(fa.a1, x0);
    const double a0 = eval_poly(fa.a0, x0);
    const double b2 = ga.a2;
    const double b1 = eval_poly(ga.a1, x0);
    const double b0 = eval_poly(ga.a0, x0);

    std::vector<double> ys;
    const double den = a1 * b2 - a2 * b1;
    if (std::abs(den) > 1e-12) ys.push_back((a2 * b0 - a0 * b2) / den);
    auto quad_roots = [&ys](double c2, double c1, double c0) {
      if (std::abs(c2) > 1e-14) {
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc >= -1e-10 * (c1 * c1 + std::abs(4.0 * c2 * c0))) {
          const double sq = std::sqrt(std::max(0.0, disc));
          const double t = -0.5 * (c1 + std::copysign(sq, c1));
          ys.push_back(t / c2);
          ys.push_back(t != 0.0 ? c0 / t : 0.0);
        }
      } else if (std::abs(c1) > 1e-14) {
        ys.push_back(-c0 / c1);
      }
    };
    quad_roots(a2, a1, a0);
    quad_roots(b2, b1, b0);

    for (const double y0 : ys) {
      double x = x0, y = y0;
      polish(&x, &y);
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (std::max(std::abs(f.eval(x, y)), std::abs(g.eval(x, y))) >
          kResidualTol)
        continue;
      bool duplicate = false;
      for (const Eigen::Vector2d& known : out) {
        if (std::abs(known.x() - x) <= kClusterTol * (1.0 + std::abs(x)) &&
            std::abs(known.y() - y) <= kClusterTol * (1.0 + std::abs(y))) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) out.emplace_back(x, y);
    }
  }

  if (out.size() > 4) {
    // Keep the four candidates with the smallest residuals.
    std::sort(out.begin(), out.end(),
              [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                const double ra = std::max(std::abs(f.eval(a.x(), a.y())),
                                           std::abs(g.eval(a.x(), a.y())));
                const double rb = std::max(std::abs(f.eval(b.x(), b.y())),
                                           std::abs(g.eval(b.x(), b.y())));
                return ra < rb;
              });
    out.resize(4);
  }
  std::sort(out.begin(), out.end(),
            [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
              return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
            });
  return out;
}

namespace {

// Pure rescaling by a power of two that brings the larger coordinate
// magnitude into [0.5, 1). The multiplication is exact, so this conditions
// pixel-scale input without rounding it.
NormalizationTransform binary_conditioner(const Point2& a, const Point2& b) {
  const double m = std::max({std::abs(a.u), std::abs(a.v), std::abs(b.u),
                             std::abs(b.v), 0.5});
  int exponent = 0;
  std::frexp(m, &exponent);
  return {std::ldexp(1.0, -exponent), 0.0, 0.0};
}

}  // namespace

SolutionSet solve_2sift(const SiftCorrespondence& c1,
                        const SiftCorrespondence& c2,
                        const SiftSolverOptions& options) {
  if (!(c1.q1 > 0.0) || !(c1.q2 > 0.0) || !(c2.q1 > 0.0) || !(c2.q2 > 0.0))
    throw NonPositiveScale("feature scales must be positive");

  NormalizationTransform t1, t2;
  SiftCorrespondence n1 = c1, n2 = c2;
  if (options.normalize) {
    const std::array<Point2, 2> pts1{c1.p1, c2.p1};
    const std::array<Point2, 2> pts2{c1.p2, c2.p2};
    try {
      t1 = hartley_normalize(pts1);
      t2 = hartley_normalize(pts2);
    } catch (const DegenerateCloud&) {
      throw RankDeficient("coincident points in the sample");
    }
  } else {
    t1 = binary_conditioner(c1.p1, c2.p1);
    t2 = binary_conditioner(c1.p2, c2.p2);
  }
  n1.p1 = t1.apply(c1.p1);
  n1.p2 = t2.apply(c1.p2);
  n2.p1 = t1.apply(c2.p1);
  n2.p2 = t2.apply(c2.p2);
  const double t = t2.t / t1.t;

  const HomographyBasis basis = nullspace3(build_2sift_system(n1, n2));
  const auto [f, g] = quadratics_from_basis(basis, n1, n2, t);

  SolutionSet out;
  for (const Eigen::Vector2d& root : solve_two_quadratics(f, g)) {
    const Vec9 h = root.x() * basis.h1 + root.y() * basis.h2 + basis.h3;
    try {
      out.push_back(denormalize_homography(Homography::from_vec(h), t1, t2));
    } catch (const SingularHomography&) {
      // h cancelled to zero; not a usable candidate
    }
  }
  if (out.empty()) throw EmptySolution("all candidate roots are complex");
  return out;
}

namespace {

bool any_triple_collinear(std::span<const Point2> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const double abu = pts[j].u - pts[i].u, abv = pts[j].v - pts[i].v;
        const double acu = pts[k].u - pts[i].u, acv = pts[k].v - pts[i].v;
        const double cross = abu * acv - abv * acu;
        const double len = std::hypot(abu, abv) * std::hypot(acu, acv);
        if (len == 0.0 || std::abs(cross) <= 1e-9 * len) return true;
      }
    }
  }
  return false;
}

}  // namespace

Homography solve_4pt(std::span<const PointCorrespondence> cs) {
  if (cs.size() != 4)
    throw std::invalid_argument("solver needs exactly four correspondences");
  std::array<Point2, 4> p1, p2;
  for (int i = 0; i < 4; ++i) {
    p1[i] = cs[i].p1;
    p2[i] = cs[i].p2;
  }
  if (any_triple_collinear(p1) || any_triple_collinear(p2))
    throw DegenerateConfiguration("three of the four points are collinear");
  return fit_homography_dlt(cs);
}

Homography solve_3ori(std::span<const SiftCorrespondence> cs) {
  if (cs.size() != 3)
    throw std::invalid_argument("solver needs exactly three correspondences");
  std::array<Point2, 3> p1, p2;
  for (int i = 0; i < 3; ++i) {
    p1[i] = cs[i].p1;
    p2[i] = cs[i].p2;
  }
  NormalizationTransform t1, t2;
  try {
    t1 = hartley_normalize(p1);
    t2 = hartley_normalize(p2);
  } catch (const DegenerateCloud&) {
    throw RankDeficient("coincident points in the sample");
  }
  Eigen::Matrix<double, 9, 9> m;
  for (int i = 0; i < 3; ++i) {
    SiftCorrespondence n = cs[i];
    n.p1 = t1.apply(n.p1);
    n.p2 = t2.apply(n.p2);
    m.block<2, 9>(2 * i, 0) = dlt_rows({n.p1, n.p2});
    m.row(6 + i) = sift_linear_row(n).transpose();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m),
                                              Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!(sv(7) > kRankTolerance * sv(0)))
    throw RankDeficient("orientation system has rank below eight");
  const Vec9 h = svd.matrixV().col(8);
  return denormalize_homography(Homography::from_vec(h), t1, t2);
}

Homography fit_homography_dlt(std::span<const PointCorrespondence> cs) {
  if (cs.size() < 4)
    throw InsufficientData("need at least four correspondences");
  std::vector<Point2> p1, p2, n1, n2;
  p1.reserve(cs.size());
  p2.reserve(cs.size());
  for (const PointCorrespondence& c : cs) {
    p1.push_back(c.p1);
    p2.push_back(c.p2);
  }
  NormalizationTransform t1, t2;
  try {
    t1 = hartley_normalize(p1, &n1);
    t2 = hartley_normalize(p2, &n2);
  } catch (const DegenerateCloud&) {
    throw RankDeficient("point cloud has no spread");
  }
  Eigen::MatrixXd m(2 * cs.size(), 9);
  for (std::size_t i = 0; i < cs.size(); ++i)
    m.block<2, 9>(2 * i, 0) = dlt_rows({n1[i], n2[i]});
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!(sv(7) > kRankTolerance * sv(0)))
    throw RankDeficient("correspondences do not determine a homography");
  const Vec9 h = svd.matrixV().col(8);
  return denormalize_homography(Homography::from_vec(h), t1, t2);
}

}  // namespace sifthom
