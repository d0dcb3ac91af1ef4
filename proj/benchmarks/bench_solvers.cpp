#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "sifthom/ransac.hpp"
#include "sifthom/solvers.hpp"
#include "sifthom/synthetic.hpp"

using namespace sifthom;

namespace {

GroundTruthScene scene_with(double outlier_ratio) {
  SceneConfig cfg;
  cfg.n_points = 100;
  cfg.outlier_ratio = outlier_ratio;
  cfg.seed = 99;
  return generate_scene(cfg);
}

}  // namespace

static void BM_solve_2sift(benchmark::State& state) {
  const GroundTruthScene scene = scene_with(0.0);
  const SiftCorrespondence& a = scene.correspondences[0];
  const SiftCorrespondence& b = scene.correspondences[1];
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_2sift(a, b));
}
BENCHMARK(BM_solve_2sift);

static void BM_solve_3ori(benchmark::State& state) {
  const GroundTruthScene scene = scene_with(0.0);
  const std::vector<SiftCorrespondence> cs(scene.correspondences.begin(),
                                           scene.correspondences.begin() + 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_3ori(cs));
}
BENCHMARK(BM_solve_3ori);

static void BM_solve_4pt(benchmark::State& state) {
  const GroundTruthScene scene = scene_with(0.0);
  std::vector<PointCorrespondence> cs;
  for (int i = 0; i < 4; ++i)
    cs.push_back({scene.correspondences[i].p1, scene.correspondences[i].p2});
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_4pt(cs));
}
BENCHMARK(BM_solve_4pt);

static void BM_solve_two_quadratics(benchmark::State& state) {
  const BivariateQuadratic f{1.0, 0.4, 1.0, -0.3, 0.2, -1.0};
  const BivariateQuadratic g{0.5, -1.1, 0.7, 0.6, -0.4, -0.8};
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_two_quadratics(f, g));
}
BENCHMARK(BM_solve_two_quadratics);

static void BM_ransac(benchmark::State& state) {
  const GroundTruthScene scene = scene_with(0.5);
  const MinimalSolver solver =
      state.range(0) == 2 ? make_2sift_solver()
      : state.range(0) == 3 ? make_3ori_solver()
                            : make_4pt_solver();
  RansacConfig cfg;
  cfg.confidence = 0.99;
  for (auto _ : state) {
    cfg.seed += 1;  // fresh sampling path each iteration
    benchmark::DoNotOptimize(ransac(scene.correspondences, solver, cfg));
  }
}
BENCHMARK(BM_ransac)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_generate_scene(benchmark::State& state) {
  SceneConfig cfg;
  cfg.n_points = 100;
  for (auto _ : state) {
    cfg.seed += 1;
    benchmark::DoNotOptimize(generate_scene(cfg));
  }
}
BENCHMARK(BM_generate_scene);

BENCHMARK_MAIN();
