#ifndef SIFTHOM_RANSAC_HPP_
#define SIFTHOM_RANSAC_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sifthom/solvers.hpp"

namespace sifthom {

// Returned when the expected iteration count overflows, e.g. the inlier
// ratio is so small that 1 - ratio^m rounds to one.
inline constexpr long long kIterationSentinel =
    std::numeric_limits<long long>::max();

enum class IterationRounding {
  kCeil,     // adaptive termination (safe side)
  kNearest,  // matches commonly tabulated expected-iteration counts
  kFloor
};

// Expected number of random minimal samples until an all-inlier one is
// drawn with the requested confidence,
//   log(1 - confidence) / log(1 - inlier_ratio^sample_size),
// never below one. Throws std::invalid_argument outside
// inlier_ratio in (0, 1], sample_size >= 1, confidence in (0, 1).
long long required_iterations(
    double inlier_ratio, int sample_size, double confidence,
    IterationRounding rounding = IterationRounding::kCeil);

struct RansacConfig {
  double threshold = 2.0;       // inlier-outlier threshold, pixels
  double confidence = 0.95;
  long long max_iterations = 100000;
  std::uint64_t seed = 0;
  bool refit = false;           // least-squares fit over the final inliers
};

// Minimal-solver role consumed by the robust estimator. solve() returns all
// real model candidates for a sample of sample_size correspondences.
struct MinimalSolver {
  std::string name;
  int sample_size = 0;
  std::function<SolutionSet(std::span<const SiftCorrespondence>)> solve;
};

MinimalSolver make_2sift_solver();
MinimalSolver make_4pt_solver();
MinimalSolver make_3ori_solver();

// Lookup by the names "2sift", "4pt" and "3ori", case-insensitive.
// Throws std::invalid_argument for anything else.
MinimalSolver solver_by_name(std::string_view name);

// Mask of correspondences whose symmetric transfer error is within the
// threshold. A point mapping to infinity counts as an outlier; a singular
// homography throws SingularHomography.
std::vector<bool> classify_inliers(const Homography& h,
                                   std::span<const SiftCorrespondence> cs,
                                   double threshold);

struct RansacResult {
  Homography h;
  std::vector<bool> inlier_mask;
  int inliers = 0;
  long long iterations = 0;  // samples drawn, degenerate ones included
};

// Adaptive RANSAC: draws minimal samples, scores every candidate the solver
// returns and shrinks the iteration bound from the best inlier ratio found
// so far. Solver failures on a sample are swallowed and the sample is
// skipped. Throws InsufficientData when fewer correspondences than the
// sample size are given and NoModelFound when no model ever gathers more
// than sample_size inliers.
RansacResult ransac(std::span<const SiftCorrespondence> cs,
                    const MinimalSolver& solver, const RansacConfig& config);

struct SolverComparison {
  std::string solver;
  double mean_inlier_error = 0.0;  // pixels, over the final inlier set
  int inliers = 0;
  long long iterations = 0;
  double time_ms = 0.0;
};

// Runs ransac once per solver on identical data and seed and reports the
// per-solver statistics. A solver that finds no model keeps its row, with
// zero inliers, infinite error and the configured iteration cap.
std::vector<SolverComparison> compare_solvers(
    std::span<const SiftCorrespondence> cs,
    std::span<const MinimalSolver> solvers, const RansacConfig& config);

}  // namespace sifthom

#endif  // SIFTHOM_RANSAC_HPP_
