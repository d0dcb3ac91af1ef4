// Command line frontend: estimate homographies from correspondence files,
// drive the synthetic benchmark suites, generate synthetic datasets.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sifthom/errors.hpp"
#include "sifthom/io.hpp"
#include "sifthom/ransac.hpp"
#include "sifthom/synthetic.hpp"
#include "sifthom/version.hpp"

namespace {

using nlohmann::ordered_json;

// Default seed; the SIFTHOM_SEED environment variable sets it, any --seed
// flag overrides it.
std::uint64_t env_seed() {
  const char* s = std::getenv("SIFTHOM_SEED");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (!end || *end != '\0') {
    std::cerr << "warning: ignoring unparseable SIFTHOM_SEED\n";
    return 0;
  }
  return v;
}

std::vector<double> row_major(const sifthom::Homography& h) {
  const sifthom::Vec9 v = h.vec();
  return std::vector<double>(v.data(), v.data() + 9);
}

struct EstimateArgs {
  std::string input;
  std::string output = "-";
  std::string solver = "2sift";
  double threshold = 2.0;
  double confidence = 0.95;
  long long max_iterations = 100000;
  std::uint64_t seed = 0;
  bool refit = false;
  bool degrees = false;
};

int run_estimate(const EstimateArgs& a) {
  const std::vector<sifthom::SiftCorrespondence> cs =
      sifthom::read_correspondence_file(a.input, a.degrees);
  const sifthom::MinimalSolver solver = sifthom::solver_by_name(a.solver);

  sifthom::RansacConfig cfg;
  cfg.threshold = a.threshold;
  cfg.confidence = a.confidence;
  cfg.max_iterations = a.max_iterations;
  cfg.seed = a.seed;
  cfg.refit = a.refit;

  const auto start = std::chrono::steady_clock::now();
  const sifthom::RansacResult result = sifthom::ransac(cs, solver, cfg);
  const auto stop = std::chrono::steady_clock::now();

  std::vector<std::size_t> inlier_indices;
  for (std::size_t i = 0; i < result.inlier_mask.size(); ++i)
    if (result.inlier_mask[i]) inlier_indices.push_back(i);

  ordered_json doc;
  doc["homography"] = row_major(result.h);
  doc["inliers"] = inlier_indices;
  doc["iterations"] = result.iterations;
  doc["time_ms"] =
      std::chrono::duration<double, std::milli>(stop - start).count();
  doc["solver"] = solver.name;
  doc["config"] = {{"input", a.input},
                   {"threshold", cfg.threshold},
                   {"confidence", cfg.confidence},
                   {"max_iterations", cfg.max_iterations},
                   {"seed", cfg.seed},
                   {"refit", cfg.refit},
                   {"degrees", a.degrees}};
  doc["version"] = sifthom::kVersion;

  if (a.output == "-") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream os(a.output);
    if (!os) throw sifthom::Error("cannot open " + a.output + " for writing");
    os << doc.dump(2) << "\n";
    if (!os.flush()) throw sifthom::Error("failed writing " + a.output);
  }
  return 0;
}

struct BenchArgs {
  std::string suite;
  std::string output;
  int runs = 0;  // 0 picks the per-suite default
  std::uint64_t seed = 0;
  std::vector<double> sigmas{0.0, 0.5, 1.0, 2.0};
  std::vector<double> ratios{2.0, 5.0, 10.0, 20.0};
  std::vector<double> angle_noises{0.0, 0.01, 0.02, 0.05, 0.1};
  std::vector<double> scale_noises{0.0, 0.01, 0.02, 0.05, 0.1};
  std::vector<double> outlier_ratios{0.25, 0.5, 0.75};
  double noise_px = 1.0;
  double threshold = 2.0;
  double confidence = 0.95;
  long long max_iterations = 100000;
  bool refit = false;
};

int run_bench(const BenchArgs& a) {
  const std::string path = a.output.empty() ? a.suite + ".csv" : a.output;
  std::ofstream os(path);
  if (!os) throw sifthom::Error("cannot open " + path + " for writing");

  if (a.suite == "stability") {
    const int runs = a.runs > 0 ? a.runs : 1000;
    const sifthom::StabilityResult result =
        sifthom::run_stability_study(runs, a.seed);
    sifthom::write_stability_csv(os, result);
    std::cout << "stability: " << result.runs << " runs, fraction below 1e-6";
    for (std::size_t s = 0; s < result.solvers.size(); ++s)
      std::cout << (s ? ", " : " ") << result.solvers[s] << " "
                << result.fraction_below_minus6[s];
    std::cout << " -> " << path << "\n";
  } else if (a.suite == "noise") {
    const int runs = a.runs > 0 ? a.runs : 100;
    const auto cells = sifthom::run_noise_sweep(a.sigmas, a.ratios, runs, a.seed);
    sifthom::write_noise_csv(os, cells);
    std::cout << "noise: " << a.sigmas.size() << " sigmas x "
              << a.ratios.size() << " ratios, " << runs << " runs each -> "
              << path << "\n";
  } else if (a.suite == "sift-noise") {
    const int runs = a.runs > 0 ? a.runs : 100;
    const auto cells = sifthom::run_sift_noise_sweep(a.angle_noises,
                                                     a.scale_noises, runs,
                                                     a.seed);
    sifthom::write_sift_noise_csv(os, cells);
    std::cout << "sift-noise: "
              << a.angle_noises.size() + a.scale_noises.size()
              << " cells, " << runs << " runs each -> " << path << "\n";
  } else {
    const int runs = a.runs > 0 ? a.runs : 100;
    sifthom::RansacConfig cfg;
    cfg.threshold = a.threshold;
    cfg.confidence = a.confidence;
    cfg.max_iterations = a.max_iterations;
    cfg.refit = a.refit;
    const auto rows = sifthom::run_ransac_benchmark(a.outlier_ratios, runs,
                                                    a.noise_px, cfg, a.seed);
    sifthom::write_ransac_csv(os, rows);
    std::cout << "ransac: " << a.outlier_ratios.size()
              << " outlier ratios, " << runs << " runs each -> " << path
              << "\n";
  }
  if (!os.flush()) throw sifthom::Error("failed writing " + path);
  return 0;
}

struct SynthArgs {
  std::string output;
  sifthom::SceneConfig cfg;
};

int run_synth(const SynthArgs& a) {
  const sifthom::GroundTruthScene scene = sifthom::generate_scene(a.cfg);
  const sifthom::GroundTruthScene noisy = sifthom::add_noise(scene, a.cfg);
  sifthom::write_correspondence_file(a.output, noisy.correspondences);

  ordered_json doc;
  doc["h_gt"] = row_major(scene.h_gt);
  doc["outliers"] = std::vector<bool>(scene.outlier_mask.begin(),
                                      scene.outlier_mask.end());
  doc["config"] = {{"n_points", a.cfg.n_points},
                   {"distance_ratio", a.cfg.distance_ratio},
                   {"noise_px", a.cfg.noise_px},
                   {"noise_angle", a.cfg.noise_angle},
                   {"noise_scale", a.cfg.noise_scale},
                   {"outlier_ratio", a.cfg.outlier_ratio},
                   {"seed", a.cfg.seed},
                   {"focal", a.cfg.focal},
                   {"image_size", a.cfg.image_size}};
  doc["version"] = sifthom::kVersion;

  const std::string sidecar = a.output + ".gt.json";
  std::ofstream os(sidecar);
  if (!os) throw sifthom::Error("cannot open " + sidecar + " for writing");
  os << doc.dump(2) << "\n";
  if (!os.flush()) throw sifthom::Error("failed writing " + sidecar);
  std::cout << a.output << " (" << noisy.correspondences.size()
            << " correspondences), " << sidecar << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homography estimation from scale- and orientation-covariant "
               "feature correspondences"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sifthom::kVersion);
  const std::uint64_t default_seed = env_seed();

  EstimateArgs est;
  est.seed = default_seed;
  CLI::App* estimate =
      app.add_subcommand("estimate", "Robustly fit a homography to a "
                                     "correspondence file");
  estimate->add_option("input", est.input, "Correspondence CSV file")
      ->required();
  estimate->add_option("--solver", est.solver,
                       "Minimal solver: 2sift, 3ori or 4pt");
  estimate->add_option("--threshold", est.threshold,
                       "Inlier threshold on the symmetric transfer error, px");
  estimate->add_option("--confidence", est.confidence,
                       "Termination confidence in (0, 1)");
  estimate->add_option("--max-iterations", est.max_iterations,
                       "Iteration cap")
      ->check(CLI::PositiveNumber);
  estimate->add_option("--seed", est.seed, "RNG seed");
  estimate->add_flag("--refit", est.refit,
                     "Least-squares refit on the final inlier set");
  estimate->add_flag("--degrees", est.degrees,
                     "Input orientations are degrees, not radians");
  estimate->add_option("--output", est.output, "Result path, - for stdout");

  BenchArgs bench;
  bench.seed = default_seed;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Run a synthetic benchmark suite");
  bench_cmd
      ->add_option("suite", bench.suite,
                   "One of: stability, noise, sift-noise, ransac")
      ->required()
      ->check(CLI::IsMember({"stability", "noise", "sift-noise", "ransac"}));
  bench_cmd->add_option("--output", bench.output,
                        "CSV path (default <suite>.csv)");
  bench_cmd->add_option("--runs", bench.runs,
                        "Runs per cell (default 1000 for stability, else 100)");
  bench_cmd->add_option("--seed", bench.seed, "RNG seed");
  bench_cmd->add_option("--sigmas", bench.sigmas,
                        "noise suite: point noise levels, px")
      ->delimiter(',');
  bench_cmd->add_option("--ratios", bench.ratios,
                        "noise suite: camera distance ratios")
      ->delimiter(',');
  bench_cmd->add_option("--angle-noises", bench.angle_noises,
                        "sift-noise suite: orientation noise levels, radians")
      ->delimiter(',');
  bench_cmd->add_option("--scale-noises", bench.scale_noises,
                        "sift-noise suite: relative scale noise levels")
      ->delimiter(',');
  bench_cmd->add_option("--outlier-ratios", bench.outlier_ratios,
                        "ransac suite: planted outlier ratios")
      ->delimiter(',');
  bench_cmd->add_option("--noise-px", bench.noise_px,
                        "ransac suite: point noise, px");
  bench_cmd->add_option("--threshold", bench.threshold,
                        "ransac suite: inlier threshold, px");
  bench_cmd->add_option("--confidence", bench.confidence,
                        "ransac suite: termination confidence");
  bench_cmd->add_option("--max-iterations", bench.max_iterations,
                        "ransac suite: iteration cap")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--refit", bench.refit,
                      "ransac suite: refit on final inliers");

  SynthArgs synth;
  synth.cfg.seed = default_seed;
  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "Generate a synthetic correspondence file with ground truth");
  synth_cmd->add_option("--output", synth.output, "Correspondence CSV path")
      ->required();
  synth_cmd->add_option("--n-points", synth.cfg.n_points,
                        "Correspondence count")
      ->check(CLI::Range(4, 1000000));
  synth_cmd->add_option("--distance-ratio", synth.cfg.distance_ratio,
                        "Camera distance over object size")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--noise-px", synth.cfg.noise_px,
                        "Point noise sigma, px")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--noise-angle", synth.cfg.noise_angle,
                        "Orientation noise sigma, radians")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--noise-scale", synth.cfg.noise_scale,
                        "Relative scale noise sigma")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--outlier-ratio", synth.cfg.outlier_ratio,
                        "Fraction replaced by random matches")
      ->check(CLI::Range(0.0, 0.999));
  synth_cmd->add_option("--seed", synth.cfg.seed, "RNG seed");
  synth_cmd->add_option("--focal", synth.cfg.focal, "Focal length, px")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--image-size", synth.cfg.image_size,
                        "Square image side, px")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*estimate) return run_estimate(est);
    if (*bench_cmd) return run_bench(bench);
    return run_synth(synth);
  } catch (const sifthom::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sifthom::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
