#ifndef SIFTHOM_SYNTHETIC_HPP_
#define SIFTHOM_SYNTHETIC_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sifthom/affine.hpp"
#include "sifthom/geometry.hpp"
#include "sifthom/ransac.hpp"

namespace sifthom {

struct SceneConfig {
  int n_points = 10;
  double distance_ratio = 5.0;  // camera distance over object size
  double noise_px = 0.0;        // Gaussian sigma on point coordinates
  double noise_angle = 0.0;     // Gaussian sigma on orientations, radians
  double noise_scale = 0.0;     // relative Gaussian sigma on scales
  double outlier_ratio = 0.0;   // fraction replaced by random matches
  std::uint64_t seed = 0;
  double focal = 1000.0;        // pixels
  double image_size = 1000.0;   // pixels, principal point at the center
};

// A synthetic two-view observation of a plane: correspondences with their
// generating homography, per-correspondence local frames and planted
// outlier labels. `anchors` are the exact projections of the four extra
// plane points that back h_gt; the noise model reuses them.
struct GroundTruthScene {
  Homography h_gt;
  std::vector<SiftCorrespondence> correspondences;
  std::vector<std::pair<LocalFrame, LocalFrame>> frames;
  std::vector<bool> outlier_mask;
  std::array<PointCorrespondence, 4> anchors;
  SceneConfig config;
};

// Samples a noise-free scene: two cameras on a sphere of radius
// distance_ratio looking at the origin, a random plane through the origin,
// points in its unit disc, the homography fitted to four extra plane
// points, and first-image frames drawn at random with the second frames
// propagated through the local affine approximation. The requested fraction
// of correspondences is replaced by uniformly random ones. Retries
// internally on degenerate draws and throws DegenerateScene when the retry
// budget is exhausted.
GroundTruthScene generate_scene(const SceneConfig& config);

// Applies the noise fields of `config` to a clean scene: Gaussian noise on
// all point coordinates, orientations and scales recomputed through the
// homography refitted to the noised anchor points, then direct Gaussian
// orientation noise (radians) and relative scale noise on top. With all
// noise fields zero the scene is returned unchanged.
GroundTruthScene add_noise(const GroundTruthScene& scene,
                           const SceneConfig& config);

// Histogram of log10 homography errors of the minimal solvers on exact
// scenes, one row of bins per solver.
struct StabilityResult {
  std::vector<double> bin_edges;  // bin i covers [edges[i], edges[i+1])
  std::vector<std::string> solvers;
  std::vector<std::vector<long>> counts;  // [solver][bin]
  std::vector<double> fraction_below_minus6;
  int runs = 0;
};

StabilityResult run_stability_study(int runs, std::uint64_t seed);

struct NoiseSweepCell {
  double noise_px = 0.0;
  double distance_ratio = 0.0;
  std::string solver;
  int runs = 0;              // runs aggregated into the mean
  double mean_error_px = 0.0;
};

// Mean transfer error of each minimal solver on a grid of point noise
// levels and camera distance ratios.
std::vector<NoiseSweepCell> run_noise_sweep(std::span<const double> sigmas,
                                            std::span<const double> ratios,
                                            int runs, std::uint64_t seed);

struct SiftNoiseCell {
  std::string axis;          // "orientation" (radians) or "scale" (fraction)
  double noise_value = 0.0;
  std::string solver;
  int runs = 0;
  double mean_error_px = 0.0;
};

// Sensitivity to feature noise at one pixel of point noise: sweeps
// orientation noise with scale noise held at 1%, then scale noise with
// orientation noise held at one degree.
std::vector<SiftNoiseCell> run_sift_noise_sweep(
    std::span<const double> angle_noises, std::span<const double> scale_noises,
    int runs, std::uint64_t seed);

struct RansacBenchRow {
  double outlier_ratio = 0.0;
  std::string solver;
  int runs = 0;
  double median_error_px = 0.0;
  double median_iterations = 0.0;
  double median_time_ms = 0.0;
};

// Robust estimation on scenes with planted outlier ratios: per ratio and
// solver, the median inlier error, iteration count and wall time across
// seeded runs.
std::vector<RansacBenchRow> run_ransac_benchmark(
    std::span<const double> outlier_ratios, int runs, double noise_px,
    const RansacConfig& config, std::uint64_t seed);

// CSV emitters. One data row per table cell, with per-solver column groups
// (e.g. runs_2sift,mean_error_px_2sift,...), header row first.
void write_stability_csv(std::ostream& os, const StabilityResult& result);
void write_noise_csv(std::ostream& os, std::span<const NoiseSweepCell> cells);
void write_sift_noise_csv(std::ostream& os,
                          std::span<const SiftNoiseCell> cells);
void write_ransac_csv(std::ostream& os, std::span<const RansacBenchRow> rows);

}  // namespace sifthom

#endif  // SIFTHOM_SYNTHETIC_HPP_
