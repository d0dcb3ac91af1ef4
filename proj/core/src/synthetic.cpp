#include "sifthom/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "sifthom/random.hpp"
#include "sifthom/solvers.hpp"

namespace sifthom {
namespace {

// Sub-stream tags so that scene sampling, the three noise sources and the
// robust estimator draw from decoupled sequences; the per-runner tags keep
// different benchmark cells from sharing scenes unless they are meant to.
constexpr std::uint64_t kStreamScene = 1;
constexpr std::uint64_t kStreamPointNoise = 2;
constexpr std::uint64_t kStreamAngleNoise = 3;
constexpr std::uint64_t kStreamScaleNoise = 4;
constexpr std::uint64_t kStreamRansac = 5;
constexpr std::uint64_t kTagStability = 100;
constexpr std::uint64_t kTagNoiseSweep = 200;
constexpr std::uint64_t kTagSiftOrientation = 300;
constexpr std::uint64_t kTagSiftScale = 301;
constexpr std::uint64_t kTagRansacBench = 400;
constexpr int kSceneAttempts = 100;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_config(const SceneConfig& c) {
  if (c.n_points < 4)
    throw std::invalid_argument("n_points must be at least four");
  if (!(c.distance_ratio > 0.0))
    throw std::invalid_argument("distance_ratio must be positive");
  if (c.noise_px < 0.0 || c.noise_angle < 0.0 || c.noise_scale < 0.0)
    throw std::invalid_argument("noise levels must be nonnegative");
  if (!(c.outlier_ratio >= 0.0) || !(c.outlier_ratio < 1.0))
    throw std::invalid_argument("outlier_ratio must be in [0, 1)");
  if (!(c.focal > 0.0) || !(c.image_size > 0.0))
    throw std::invalid_argument("focal and image_size must be positive");
}

Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v;
  do {
    v = Eigen::Vector3d(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

struct Camera {
  Eigen::Matrix3d k;
  Eigen::Matrix3d r;
  Eigen::Vector3d t;
};

Camera look_at_origin(const Eigen::Vector3d& center, double focal, double pp,
                      double roll) {
  const Eigen::Vector3d z = (-center).normalized();
  const Eigen::Vector3d ref = std::abs(z.x()) < 0.9
                                  ? Eigen::Vector3d::UnitX()
                                  : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d x0 = (ref - ref.dot(z) * z).normalized();
  const Eigen::Vector3d y0 = z.cross(x0);
  const Eigen::Vector3d x = std::cos(roll) * x0 + std::sin(roll) * y0;
  Camera cam;
  cam.k << focal, 0.0, pp, 0.0, focal, pp, 0.0, 0.0, 1.0;
  cam.r.row(0) = x;
  cam.r.row(1) = z.cross(x);
  cam.r.row(2) = z;
  cam.t = -cam.r * center;
  return cam;
}

Point2 project(const Camera& cam, const Eigen::Vector3d& x) {
  const Eigen::Vector3d pc = cam.r * x + cam.t;
  if (pc.z() <= 1e-3)
    throw DegenerateScene("point reaches the camera plane");
  const Eigen::Vector3d px = cam.k * pc;
  return {px.x() / px.z(), px.y() / px.z()};
}

struct DerivedSift {
  double alpha2 = 0.0;
  double q2 = 0.0;
  LocalFrame frame2;
};

// Second-image orientation and scale implied by the homography at a
// first-image point and frame.
DerivedSift derive_second_feature(const Homography& h, const Point2& p1,
                                  const LocalFrame& f1) {
  const Eigen::Matrix2d a = affine_from_homography(h, p1).a;
  const double det = a.determinant();
  if (!(det > 1e-6 && det < 1e6))
    throw DegenerateScene("degenerate local affinity");
  const Eigen::Matrix2d j2 = a * jacobian_from_frame(f1);
  const LocalFrame f2 = frame_from_jacobian(j2);
  return {f2.alpha, scale_of_jacobian(j2), f2};
}

GroundTruthScene generate_once(const SceneConfig& cfg, std::uint64_t attempt) {
  std::mt19937_64 rng = make_engine(split_seed(cfg.seed, kStreamScene, attempt));
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  // Cameras on a sphere around the object, baseline angle in [10, 170] deg.
  const Eigen::Vector3d d1 = random_unit(rng);
  Eigen::Vector3d d2;
  for (int guard = 0;; ++guard) {
    d2 = random_unit(rng);
    const double c = d1.dot(d2);
    if (c <= std::cos(10.0 * kPi / 180.0) && c >= std::cos(170.0 * kPi / 180.0))
      break;
    if (guard > 1000) throw DegenerateScene("no usable camera pair");
  }

  // Plane through the origin with both cameras clearly on one side.
  Eigen::Vector3d n = random_unit(rng);
  if (n.dot(d1) < 0.0) n = -n;
  if (n.dot(d1) < 0.05 || n.dot(d2) < 0.05)
    throw DegenerateScene("plane nearly contains a viewing direction");

  const double pp = cfg.image_size / 2.0;
  const Camera cam1 = look_at_origin(cfg.distance_ratio * d1, cfg.focal, pp,
                                     2.0 * kPi * uni(rng));
  const Camera cam2 = look_at_origin(cfg.distance_ratio * d2, cfg.focal, pp,
                                     2.0 * kPi * uni(rng));

  const Eigen::Vector3d ref = std::abs(n.x()) < 0.9
                                  ? Eigen::Vector3d::UnitX()
                                  : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = (ref - ref.dot(n) * n).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);
  auto disc_point = [&]() {
    const double r = std::sqrt(uni(rng));
    const double phi = 2.0 * kPi * uni(rng);
    return r * std::cos(phi) * e1 + r * std::sin(phi) * e2;
  };

  std::vector<PointCorrespondence> pcs(cfg.n_points);
  for (PointCorrespondence& c : pcs) {
    const Eigen::Vector3d x = disc_point();
    c = {project(cam1, x), project(cam2, x)};
  }
  // Well-spread anchor plane points (a square near the disc rim at a random
  // orientation): the four-point fits over them, exact here and noised in
  // add_noise, stay conditioned.
  std::array<PointCorrespondence, 4> anchors;
  const double theta = 2.0 * kPi * uni(rng);
  for (int k = 0; k < 4; ++k) {
    const double phi = theta + 0.5 * kPi * k;
    const Eigen::Vector3d x =
        0.9 * (std::cos(phi) * e1 + std::sin(phi) * e2);
    anchors[k] = {project(cam1, x), project(cam2, x)};
  }

  Homography h_gt;
  try {
    h_gt = fit_homography_dlt(anchors);
  } catch (const Error&) {
    throw DegenerateScene("anchor points do not determine the homography");
  }
  for (const PointCorrespondence& c : pcs)
    if (symmetric_transfer_error(h_gt, c) > 1e-6)
      throw DegenerateScene("homography does not reproduce the projections");

  GroundTruthScene scene;
  scene.h_gt = h_gt;
  scene.anchors = anchors;
  scene.config = cfg;
  scene.correspondences.resize(cfg.n_points);
  scene.frames.resize(cfg.n_points);
  scene.outlier_mask.assign(cfg.n_points, false);

  std::uniform_real_distribution<double> angle_dist(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> log_q(std::log(0.5), std::log(2.0));
  std::uniform_real_distribution<double> shear(-0.5, 0.5);

  for (int i = 0; i < cfg.n_points; ++i) {
    const LocalFrame f1{angle_dist(rng), std::exp(log_q(rng)),
                        std::exp(log_q(rng)), shear(rng)};
    const DerivedSift d = derive_second_feature(h_gt, pcs[i].p1, f1);
    SiftCorrespondence c;
    c.p1 = pcs[i].p1;
    c.p2 = pcs[i].p2;
    c.alpha1 = f1.alpha;
    c.alpha2 = d.alpha2;
    c.q1 = f1.qu * f1.qv;
    c.q2 = d.q2;
    scene.correspondences[i] = c;
    scene.frames[i] = {f1, d.frame2};
  }

  const long n_out = std::min<long>(std::llround(cfg.outlier_ratio * cfg.n_points),
                                    cfg.n_points);
  if (n_out > 0) {
    std::vector<int> order(cfg.n_points);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_real_distribution<double> img(0.0, cfg.image_size);
    for (long j = 0; j < n_out; ++j) {
      const int i = order[j];
      SiftCorrespondence c;
      c.p1 = {img(rng), img(rng)};
      c.p2 = {img(rng), img(rng)};
      c.alpha1 = angle_dist(rng);
      c.alpha2 = angle_dist(rng);
      c.q1 = std::exp(log_q(rng)) * std::exp(log_q(rng));
      c.q2 = std::exp(log_q(rng)) * std::exp(log_q(rng));
      scene.correspondences[i] = c;
      scene.frames[i] = {{c.alpha1, std::sqrt(c.q1), std::sqrt(c.q1), 0.0},
                         {c.alpha2, std::sqrt(c.q2), std::sqrt(c.q2), 0.0}};
      scene.outlier_mask[i] = true;
    }
  }
  return scene;
}

}  // namespace

GroundTruthScene generate_scene(const SceneConfig& config) {
  validate_config(config);
  for (int attempt = 0; attempt < kSceneAttempts; ++attempt) {
    try {
      return generate_once(config, attempt);
    } catch (const Error&) {
      // degenerate draw, retry with the next sub-seed
    }
  }
  throw DegenerateScene("scene sampling failed repeatedly");
}

GroundTruthScene add_noise(const GroundTruthScene& scene,
                           const SceneConfig& config) {
  if (config.noise_px < 0.0 || config.noise_angle < 0.0 ||
      config.noise_scale < 0.0)
    throw std::invalid_argument("noise levels must be nonnegative");

  GroundTruthScene out = scene;
  out.config.noise_px = config.noise_px;
  out.config.noise_angle = config.noise_angle;
  out.config.noise_scale = config.noise_scale;

  std::mt19937_64 pts = make_engine(split_seed(config.seed, kStreamPointNoise));
  std::mt19937_64 ang = make_engine(split_seed(config.seed, kStreamAngleNoise));
  std::mt19937_64 scl = make_engine(split_seed(config.seed, kStreamScaleNoise));
  std::normal_distribution<double> g;

  std::array<PointCorrespondence, 4> noisy_anchors = scene.anchors;
  for (PointCorrespondence& a : noisy_anchors) {
    a.p1.u += config.noise_px * g(pts);
    a.p1.v += config.noise_px * g(pts);
    a.p2.u += config.noise_px * g(pts);
    a.p2.v += config.noise_px * g(pts);
  }
  for (SiftCorrespondence& c : out.correspondences) {
    c.p1.u += config.noise_px * g(pts);
    c.p1.v += config.noise_px * g(pts);
    c.p2.u += config.noise_px * g(pts);
    c.p2.v += config.noise_px * g(pts);
  }

  // The feature parameters inherit the point noise through the homography
  // refitted to the noised anchor projections.
  Homography h_noisy;
  try {
    h_noisy = fit_homography_dlt(noisy_anchors);
  } catch (const Error&) {
    throw DegenerateScene("noised anchors no longer determine a homography");
  }
  for (std::size_t i = 0; i < out.correspondences.size(); ++i) {
    SiftCorrespondence& c = out.correspondences[i];
    if (!scene.outlier_mask[i]) {
      DerivedSift d;
      try {
        d = derive_second_feature(h_noisy, c.p1, scene.frames[i].first);
      } catch (const Error&) {
        throw DegenerateScene("noise degenerated a local affinity");
      }
      c.alpha2 = d.alpha2;
      c.q2 = d.q2;
      out.frames[i].second = d.frame2;
    }
    c.alpha1 += config.noise_angle * g(ang);
    c.alpha2 += config.noise_angle * g(ang);
    c.q1 *= std::max(0.01, 1.0 + config.noise_scale * g(scl));
    c.q2 *= std::max(0.01, 1.0 + config.noise_scale * g(scl));
  }
  return out;
}

namespace {

std::vector<MinimalSolver> all_solvers() {
  return {make_2sift_solver(), make_4pt_solver(), make_3ori_solver()};
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

// Fits a solver to the first correspondences of the noisy scene, picks the
// candidate that transfers the held-out noisy points best and reports its
// mean transfer error over the clean scene. Infinity flags a failed run.
double minimal_fit_error(const MinimalSolver& solver,
                         const GroundTruthScene& noisy,
                         const GroundTruthScene& clean) {
  const std::size_t m = static_cast<std::size_t>(solver.sample_size);
  const std::vector<SiftCorrespondence>& ncs = noisy.correspondences;
  if (ncs.size() < m) return kInf;
  SolutionSet models;
  try {
    models = solver.solve(std::span(ncs).first(m));
  } catch (const Error&) {
    return kInf;
  }
  double best_score = kInf;
  const Homography* best = nullptr;
  for (const Homography& h : models) {
    double score = 0.0;
    bool usable = true;
    try {
      for (std::size_t i = m; i < ncs.size(); ++i)
        score += symmetric_transfer_error(h, {ncs[i].p1, ncs[i].p2});
    } catch (const Error&) {
      usable = false;
    }
    if (!usable) continue;
    if (score < best_score) {
      best_score = score;
      best = &h;
    }
  }
  if (!best) return kInf;
  try {
    double sum = 0.0;
    for (const SiftCorrespondence& c : clean.correspondences)
      sum += symmetric_transfer_error(*best, {c.p1, c.p2});
    return sum / static_cast<double>(clean.correspondences.size());
  } catch (const Error&) {
    return kInf;
  }
}

void append_double(std::string* line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  *line += buf;
}

}  // namespace

StabilityResult run_stability_study(int runs, std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("runs must be positive");
  constexpr double kLo = -16.0, kHi = 2.0, kStep = 0.5;
  constexpr int kBins = 36;

  StabilityResult result;
  result.runs = runs;
  result.bin_edges.resize(kBins + 1);
  for (int b = 0; b <= kBins; ++b) result.bin_edges[b] = kLo + kStep * b;
  const std::vector<MinimalSolver> solvers = all_solvers();
  for (const MinimalSolver& s : solvers) result.solvers.push_back(s.name);
  result.counts.assign(solvers.size(), std::vector<long>(kBins, 0));
  result.fraction_below_minus6.assign(solvers.size(), 0.0);

  int completed = 0;
  for (int r = 0; r < runs; ++r) {
    SceneConfig cfg;
    cfg.seed = split_seed(seed, kTagStability, r);
    GroundTruthScene scene;
    try {
      scene = generate_scene(cfg);
    } catch (const Error&) {
      continue;
    }
    ++completed;
    for (std::size_t s = 0; s < solvers.size(); ++s) {
      const std::size_t m = static_cast<std::size_t>(solvers[s].sample_size);
      double err = kInf;
      try {
        for (const Homography& h :
             solvers[s].solve(std::span(scene.correspondences).first(m)))
          err = std::min(err, homography_distance(h, scene.h_gt));
      } catch (const Error&) {
      }
      const double lg = err > 0.0 ? std::log10(err) : -kInf;
      int bin = 0;
      if (lg >= kHi) {
        bin = kBins - 1;
      } else if (lg > kLo) {
        bin = static_cast<int>((lg - kLo) / kStep);
      }
      ++result.counts[s][bin];
      if (lg < -6.0) result.fraction_below_minus6[s] += 1.0;
    }
  }
  result.runs = completed;
  for (double& f : result.fraction_below_minus6)
    f /= std::max(completed, 1);
  return result;
}

std::vector<NoiseSweepCell> run_noise_sweep(std::span<const double> sigmas,
                                            std::span<const double> ratios,
                                            int runs, std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("runs must be positive");
  const std::vector<MinimalSolver> solvers = all_solvers();
  std::vector<NoiseSweepCell> cells;
  std::uint64_t cell_index = 0;
  for (const double sigma : sigmas) {
    for (const double ratio : ratios) {
      std::vector<double> sums(solvers.size(), 0.0);
      std::vector<int> used(solvers.size(), 0);
      for (int r = 0; r < runs; ++r) {
        SceneConfig cfg;
        cfg.distance_ratio = ratio;
        cfg.seed = split_seed(seed, kTagNoiseSweep + cell_index, r);
        GroundTruthScene scene, noisy;
        try {
          scene = generate_scene(cfg);
          SceneConfig noise_cfg = cfg;
          noise_cfg.noise_px = sigma;
          noisy = add_noise(scene, noise_cfg);
        } catch (const Error&) {
          continue;
        }
        for (std::size_t s = 0; s < solvers.size(); ++s) {
          const double err = minimal_fit_error(solvers[s], noisy, scene);
          if (std::isfinite(err)) {
            sums[s] += err;
            ++used[s];
          }
        }
      }
      for (std::size_t s = 0; s < solvers.size(); ++s)
        cells.push_back({sigma, ratio, solvers[s].name, used[s],
                         used[s] > 0 ? sums[s] / used[s]
                                     : std::numeric_limits<double>::quiet_NaN()});
      ++cell_index;
    }
  }
  return cells;
}

std::vector<SiftNoiseCell> run_sift_noise_sweep(
    std::span<const double> angle_noises, std::span<const double> scale_noises,
    int runs, std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("runs must be positive");
  const std::vector<MinimalSolver> solvers = all_solvers();
  std::vector<SiftNoiseCell> cells;

  // Runs share scenes and point noise across the cells of an axis, so a
  // solver blind to the feature parameters produces a constant column.
  auto sweep = [&](const char* axis, std::span<const double> values,
                   std::uint64_t tag, bool orientation_axis) {
    for (const double value : values) {
      std::vector<double> sums(solvers.size(), 0.0);
      std::vector<int> used(solvers.size(), 0);
      for (int r = 0; r < runs; ++r) {
        SceneConfig cfg;
        cfg.seed = split_seed(seed, tag, r);
        GroundTruthScene scene, noisy;
        try {
          scene = generate_scene(cfg);
          SceneConfig noise_cfg = cfg;
          noise_cfg.noise_px = 1.0;
          noise_cfg.noise_angle = orientation_axis ? value : kPi / 180.0;
          noise_cfg.noise_scale = orientation_axis ? 0.01 : value;
          noisy = add_noise(scene, noise_cfg);
        } catch (const Error&) {
          continue;
        }
        for (std::size_t s = 0; s < solvers.size(); ++s) {
          const double err = minimal_fit_error(solvers[s], noisy, scene);
          if (std::isfinite(err)) {
            sums[s] += err;
            ++used[s];
          }
        }
      }
      for (std::size_t s = 0; s < solvers.size(); ++s)
        cells.push_back({axis, value, solvers[s].name, used[s],
                         used[s] > 0 ? sums[s] / used[s]
                                     : std::numeric_limits<double>::quiet_NaN()});
    }
  };
  sweep("orientation", angle_noises, kTagSiftOrientation, true);
  sweep("scale", scale_noises, kTagSiftScale, false);
  return cells;
}

std::vector<RansacBenchRow> run_ransac_benchmark(
    std::span<const double> outlier_ratios, int runs, double noise_px,
    const RansacConfig& config, std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("runs must be positive");
  const std::vector<MinimalSolver> solvers = all_solvers();
  std::vector<RansacBenchRow> rows;
  for (std::size_t ri = 0; ri < outlier_ratios.size(); ++ri) {
    const double ratio = outlier_ratios[ri];
    std::vector<std::vector<double>> errs(solvers.size());
    std::vector<std::vector<double>> iters(solvers.size());
    std::vector<std::vector<double>> times(solvers.size());
    for (int r = 0; r < runs; ++r) {
      SceneConfig cfg;
      cfg.n_points = 100;
      cfg.outlier_ratio = ratio;
      cfg.seed = split_seed(seed, kTagRansacBench + ri, r);
      std::vector<SolverComparison> report;
      try {
        const GroundTruthScene scene = generate_scene(cfg);
        SceneConfig noise_cfg = cfg;
        noise_cfg.noise_px = noise_px;
        const GroundTruthScene noisy = add_noise(scene, noise_cfg);
        RansacConfig run_cfg = config;
        run_cfg.seed = split_seed(cfg.seed, kStreamRansac);
        report = compare_solvers(noisy.correspondences, solvers, run_cfg);
      } catch (const Error&) {
        continue;
      }
      for (std::size_t s = 0; s < solvers.size(); ++s) {
        errs[s].push_back(report[s].mean_inlier_error);
        iters[s].push_back(static_cast<double>(report[s].iterations));
        times[s].push_back(report[s].time_ms);
      }
    }
    for (std::size_t s = 0; s < solvers.size(); ++s)
      rows.push_back({ratio, solvers[s].name,
                      static_cast<int>(errs[s].size()), median(errs[s]),
                      median(iters[s]), median(times[s])});
  }
  return rows;
}

namespace {

// Solver names in first-appearance order, for the per-solver column groups.
template <class Cell>
std::vector<std::string> solver_columns(std::span<const Cell> cells) {
  std::vector<std::string> names;
  for (const Cell& c : cells)
    if (std::find(names.begin(), names.end(), c.solver) == names.end())
      names.push_back(c.solver);
  return names;
}

}  // namespace

void write_stability_csv(std::ostream& os, const StabilityResult& result) {
  std::string header = "log10_bin_low,log10_bin_high";
  for (const std::string& s : result.solvers) header += ",count_" + s;
  os << header << "\n";
  for (std::size_t b = 0; b + 1 < result.bin_edges.size(); ++b) {
    std::string line;
    append_double(&line, result.bin_edges[b]);
    line += ",";
    append_double(&line, result.bin_edges[b + 1]);
    for (std::size_t s = 0; s < result.solvers.size(); ++s)
      line += "," + std::to_string(result.counts[s][b]);
    os << line << "\n";
  }
}

void write_noise_csv(std::ostream& os, std::span<const NoiseSweepCell> cells) {
  const std::vector<std::string> solvers = solver_columns(cells);
  std::string header = "noise_px,distance_ratio";
  for (const std::string& s : solvers)
    header += ",runs_" + s + ",mean_error_px_" + s;
  os << header << "\n";
  // One data row per (noise, ratio) cell; cells arrive grouped by solver.
  for (std::size_t i = 0; i < cells.size(); i += solvers.size()) {
    std::string line;
    append_double(&line, cells[i].noise_px);
    line += ",";
    append_double(&line, cells[i].distance_ratio);
    for (const std::string& s : solvers) {
      for (std::size_t j = i; j < i + solvers.size() && j < cells.size(); ++j) {
        if (cells[j].solver != s) continue;
        line += "," + std::to_string(cells[j].runs) + ",";
        append_double(&line, cells[j].mean_error_px);
        break;
      }
    }
    os << line << "\n";
  }
}

void write_sift_noise_csv(std::ostream& os,
                          std::span<const SiftNoiseCell> cells) {
  const std::vector<std::string> solvers = solver_columns(cells);
  std::string header = "axis,noise_value";
  for (const std::string& s : solvers)
    header += ",runs_" + s + ",mean_error_px_" + s;
  os << header << "\n";
  for (std::size_t i = 0; i < cells.size(); i += solvers.size()) {
    std::string line = cells[i].axis + ",";
    append_double(&line, cells[i].noise_value);
    for (const std::string& s : solvers) {
      for (std::size_t j = i; j < i + solvers.size() && j < cells.size(); ++j) {
        if (cells[j].solver != s) continue;
        line += "," + std::to_string(cells[j].runs) + ",";
        append_double(&line, cells[j].mean_error_px);
        break;
      }
    }
    os << line << "\n";
  }
}

void write_ransac_csv(std::ostream& os, std::span<const RansacBenchRow> rows) {
  const std::vector<std::string> solvers = solver_columns(rows);
  std::string header = "outlier_ratio";
  for (const std::string& s : solvers)
    header += ",runs_" + s + ",median_error_px_" + s + ",median_iterations_" +
              s + ",median_time_ms_" + s;
  os << header << "\n";
  for (std::size_t i = 0; i < rows.size(); i += solvers.size()) {
    std::string line;
    append_double(&line, rows[i].outlier_ratio);
    for (const std::string& s : solvers) {
      for (std::size_t j = i; j < i + solvers.size() && j < rows.size(); ++j) {
        if (rows[j].solver != s) continue;
        line += "," + std::to_string(rows[j].runs) + ",";
        append_double(&line, rows[j].median_error_px);
        line += ",";
        append_double(&line, rows[j].median_iterations);
        line += ",";
        append_double(&line, rows[j].median_time_ms);
        break;
      }
    }
    os << line << "\n";
  }
}

}  // namespace sifthom
