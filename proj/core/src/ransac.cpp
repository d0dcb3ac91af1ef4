#include "sifthom/ransac.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace sifthom {

long long required_iterations(double inlier_ratio, int sample_size,
                              double confidence,
                              IterationRounding rounding) {
  if (!(inlier_ratio > 0.0) || !(inlier_ratio <= 1.0))
    throw std::invalid_argument("inlier ratio must be in (0, 1]");
  if (sample_size < 1)
    throw std::invalid_argument("sample size must be positive");
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::invalid_argument("confidence must be in (0, 1)");
  const double w = std::pow(inlier_ratio, sample_size);
  if (w >= 1.0) return 1;
  const double denom = std::log1p(-w);
  if (denom == 0.0) return kIterationSentinel;
  const double n = std::log1p(-confidence) / denom;
  double v = 0.0;
  switch (rounding) {
    case IterationRounding::kCeil:
      v = std::ceil(n);
      break;
    case IterationRounding::kNearest:
      v = std::round(n);
      break;
    case IterationRounding::kFloor:
      v = std::floor(n);
      break;
  }
  v = std::max(1.0, v);
  if (v >= static_cast<double>(kIterationSentinel)) return kIterationSentinel;
  return static_cast<long long>(v);
}

MinimalSolver make_2sift_solver() {
  return {"2sift", 2, [](std::span<const SiftCorrespondence> s) {
            return solve_2sift(s[0], s[1]);
          }};
}

MinimalSolver make_4pt_solver() {
  return {"4pt", 4, [](std::span<const SiftCorrespondence> s) {
            std::array<PointCorrespondence, 4> pts;
            for (int i = 0; i < 4; ++i) pts[i] = {s[i].p1, s[i].p2};
            return SolutionSet{solve_4pt(pts)};
          }};
}

MinimalSolver make_3ori_solver() {
  return {"3ori", 3, [](std::span<const SiftCorrespondence> s) {
            return SolutionSet{solve_3ori(s)};
          }};
}

MinimalSolver solver_by_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "2sift") return make_2sift_solver();
  if (lower == "4pt") return make_4pt_solver();
  if (lower == "3ori") return make_3ori_solver();
  throw std::invalid_argument("unknown solver \"" + std::string(name) +
                              "\", expected 2sift, 3ori or 4pt");
}

namespace {

// Per-correspondence symmetric transfer errors; a point at infinity gets an
// infinite error. SingularHomography propagates.
std::vector<double> transfer_errors(const Homography& h,
                                    std::span<const SiftCorrespondence> cs) {
  std::vector<double> errors;
  errors.reserve(cs.size());
  for (const SiftCorrespondence& c : cs) {
    try {
      errors.push_back(symmetric_transfer_error(h, {c.p1, c.p2}));
    } catch (const DegenerateDepth&) {
      errors.push_back(std::numeric_limits<double>::infinity());
    }
  }
  return errors;
}

}  // namespace

std::vector<bool> classify_inliers(const Homography& h,
                                   std::span<const SiftCorrespondence> cs,
                                   double threshold) {
  const std::vector<double> errors = transfer_errors(h, cs);
  std::vector<bool> mask(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i)
    mask[i] = errors[i] <= threshold;
  return mask;
}

RansacResult ransac(std::span<const SiftCorrespondence> cs,
                    const MinimalSolver& solver, const RansacConfig& config) {
  const int n = static_cast<int>(cs.size());
  const int m = solver.sample_size;
  if (m < 1 || !solver.solve)
    throw std::invalid_argument("ill-formed minimal solver");
  if (n < m)
    throw InsufficientData("fewer correspondences than the sample size");
  if (!(config.threshold > 0.0))
    throw std::invalid_argument("threshold must be positive");
  if (!(config.confidence > 0.0) || !(config.confidence < 1.0))
    throw std::invalid_argument("confidence must be in (0, 1)");
  if (config.max_iterations < 1)
    throw std::invalid_argument("max_iterations must be positive");

  std::mt19937_64 rng(config.seed);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<SiftCorrespondence> sample(m);

  Homography best_h;
  int best_count = 0;
  long long bound = config.max_iterations;
  long long iter = 0;

  while (iter < bound) {
    ++iter;
    for (int j = 0; j < m; ++j) {
      std::uniform_int_distribution<int> pick(j, n - 1);
      std::swap(idx[j], idx[pick(rng)]);
      sample[j] = cs[idx[j]];
    }
    SolutionSet models;
    try {
      models = solver.solve(sample);
    } catch (const Error&) {
      continue;  // degenerate sample, counted and skipped
    }
    for (const Homography& h : models) {
      int count = 0;
      try {
        for (const double e : transfer_errors(h, cs))
          count += e <= config.threshold;
      } catch (const Error&) {
        continue;
      }
      if (count > best_count) {
        best_count = count;
        best_h = h;
        const long long needed = required_iterations(
            static_cast<double>(count) / n, m, config.confidence);
        bound = std::min(bound, std::max<long long>(needed, 1));
      }
    }
  }

  if (best_count < m + 1)
    throw NoModelFound("no model exceeded the minimal sample support");

  RansacResult result;
  result.h = best_h;
  result.iterations = iter;
  if (config.refit) {
    const std::vector<bool> mask = classify_inliers(best_h, cs,
                                                    config.threshold);
    std::vector<PointCorrespondence> inliers;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (mask[i]) inliers.push_back({cs[i].p1, cs[i].p2});
    if (inliers.size() >= 4) {
      try {
        result.h = fit_homography_dlt(inliers);
      } catch (const Error&) {
        // keep the minimal-sample model when the least-squares fit fails
      }
    }
  }
  result.inlier_mask = classify_inliers(result.h, cs, config.threshold);
  result.inliers = static_cast<int>(
      std::count(result.inlier_mask.begin(), result.inlier_mask.end(), true));
  return result;
}

std::vector<SolverComparison> compare_solvers(
    std::span<const SiftCorrespondence> cs,
    std::span<const MinimalSolver> solvers, const RansacConfig& config) {
  std::vector<SolverComparison> report;
  report.reserve(solvers.size());
  for (const MinimalSolver& solver : solvers) {
    SolverComparison row;
    row.solver = solver.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const RansacResult result = ransac(cs, solver, config);
      const auto stop = std::chrono::steady_clock::now();
      row.inliers = result.inliers;
      row.iterations = result.iterations;
      row.time_ms =
          std::chrono::duration<double, std::milli>(stop - start).count();
      const std::vector<double> errors = transfer_errors(result.h, cs);
      double sum = 0.0;
      for (std::size_t i = 0; i < cs.size(); ++i)
        if (result.inlier_mask[i]) sum += errors[i];
      row.mean_inlier_error = result.inliers > 0 ? sum / result.inliers : 0.0;
    } catch (const Error&) {
      // No model found within the budget: keep the row with sentinel
      // values so the comparison still lines up one row per solver.
      const auto stop = std::chrono::steady_clock::now();
      row.inliers = 0;
      row.iterations = config.max_iterations;
      row.time_ms =
          std::chrono::duration<double, std::milli>(stop - start).count();
      row.mean_inlier_error = std::numeric_limits<double>::infinity();
    }
    report.push_back(row);
  }
  return report;
}

}  // namespace sifthom
