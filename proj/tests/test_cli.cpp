// Drives the installed binary end to end through std::system. The binary
// path arrives through the SIFTHOM_CLI_PATH compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "sifthom/geometry.hpp"
#include "sifthom/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kExe = SIFTHOM_CLI_PATH;

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("sifthom_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

int run(const std::string& args, const std::string& redirect = "") {
  const std::string cmd = kExe + " " + args +
                          (redirect.empty() ? "" : " " + redirect);
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

sifthom::Homography from_json_array(const json& v) {
  sifthom::Vec9 h;
  for (int i = 0; i < 9; ++i) h(i) = v.at(i).get<double>();
  return sifthom::Homography::from_vec(h);
}

// Fifty distinct correspondences consistent with the identity map.
fs::path write_identity_fixture() {
  const fs::path path = work_dir() / "identity.csv";
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  std::vector<sifthom::SiftCorrespondence> cs;
  for (int i = 0; i < 50; ++i) {
    sifthom::SiftCorrespondence c;
    c.p1 = c.p2 = {u(rng), u(rng)};
    c.alpha1 = c.alpha2 = u(rng) / 100.0;
    c.q1 = c.q2 = 2.0;
    cs.push_back(c);
  }
  sifthom::write_correspondence_file(path.string(), cs);
  return path;
}

}  // namespace

TEST_CASE("estimate on an identity fixture") {
  const fs::path input = write_identity_fixture();
  const fs::path out = work_dir() / "identity.json";
  const int rc = run("estimate " + input.string() + " --solver 2sift --output " +
                     out.string());
  REQUIRE(rc == 0);

  const json doc = json::parse(slurp(out));
  CHECK(doc.at("solver") == "2sift");
  CHECK(doc.at("inliers").size() == 50);
  CHECK(doc.at("iterations").get<long long>() >= 1);
  CHECK(doc.contains("time_ms"));
  CHECK(doc.contains("version"));
  CHECK(doc.at("config").at("threshold").get<double>() == 2.0);
  const sifthom::Homography h = from_json_array(doc.at("homography"));
  CHECK(sifthom::homography_distance(h, sifthom::Homography{}) < 1e-6);
}

TEST_CASE("estimate failures exit nonzero") {
  SUBCASE("malformed record names its line") {
    const fs::path bad = work_dir() / "bad.csv";
    std::ofstream(bad) << "u1,v1,u2,v2,alpha1,alpha2,q1,q2\n"
                       << "1,2,3,4,0,0,1,1\n"
                       << "1,2,3,4,oops,0,1,1\n";
    const fs::path err = work_dir() / "bad.err";
    CHECK(run("estimate " + bad.string(), "2> " + err.string()) != 0);
    CHECK(slurp(err).find("line 3") != std::string::npos);
  }

  SUBCASE("single record cannot seed a sample") {
    const fs::path single = work_dir() / "single.csv";
    std::ofstream(single) << "u1,v1,u2,v2,alpha1,alpha2,q1,q2\n"
                          << "1,2,1,2,0.3,0.3,1,1\n";
    CHECK(run("estimate " + single.string() + " --solver 2sift",
              "2> /dev/null") != 0);
  }

  SUBCASE("unknown solver") {
    const fs::path input = write_identity_fixture();
    CHECK(run("estimate " + input.string() + " --solver 5pt",
              "2> /dev/null") != 0);
  }

  SUBCASE("missing file") {
    CHECK(run("estimate no_such_file.csv", "2> /dev/null") != 0);
  }
}

TEST_CASE("synthetic generation") {
  SUBCASE("round trip recovers the stored truth") {
    const fs::path data = work_dir() / "scene.csv";
    REQUIRE(run("synth --output " + data.string() +
                " --seed 42 --n-points 30") == 0);
    REQUIRE(fs::exists(data));
    const fs::path sidecar = data.string() + ".gt.json";
    REQUIRE(fs::exists(sidecar));

    const json gt = json::parse(slurp(sidecar));
    CHECK(gt.at("outliers").size() == 30);
    CHECK(gt.at("config").at("seed").get<std::uint64_t>() == 42);

    const fs::path est = work_dir() / "scene_est.json";
    REQUIRE(run("estimate " + data.string() + " --output " + est.string()) ==
            0);
    const json doc = json::parse(slurp(est));
    const sifthom::Homography h = from_json_array(doc.at("homography"));
    const sifthom::Homography h_gt = from_json_array(gt.at("h_gt"));
    CHECK(sifthom::homography_distance(h, h_gt) < 1e-6);
    CHECK(doc.at("inliers").size() == 30);
  }

  SUBCASE("seed repetition reproduces the bytes") {
    const fs::path a = work_dir() / "rep_a.csv";
    const fs::path b = work_dir() / "rep_b.csv";
    REQUIRE(run("synth --output " + a.string() + " --seed 8") == 0);
    REQUIRE(run("synth --output " + b.string() + " --seed 8") == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a.string() + ".gt.json") == slurp(b.string() + ".gt.json"));
  }

  SUBCASE("environment seed applies when no flag is given") {
    const fs::path a = work_dir() / "env_a.csv";
    const fs::path b = work_dir() / "env_b.csv";
    REQUIRE(std::system(("SIFTHOM_SEED=8 " + kExe + " synth --output " +
                         a.string() + " > /dev/null")
                            .c_str()) == 0);
    REQUIRE(run("synth --output " + b.string() + " --seed 8") == 0);
    CHECK(slurp(a) == slurp(b));

    // An explicit flag outranks the environment.
    const fs::path c = work_dir() / "env_c.csv";
    REQUIRE(std::system(("SIFTHOM_SEED=12345 " + kExe + " synth --output " +
                         c.string() + " --seed 8 > /dev/null")
                            .c_str()) == 0);
    CHECK(slurp(c) == slurp(b));
  }

  SUBCASE("heavy outlier contamination still writes the file") {
    const fs::path data = work_dir() / "dirty.csv";
    REQUIRE(run("synth --output " + data.string() +
                " --seed 4 --n-points 20 --outlier-ratio 0.95") == 0);
    std::ifstream is(data);
    const std::vector<sifthom::SiftCorrespondence> cs =
        sifthom::read_correspondence_csv(is);
    CHECK(cs.size() == 20);
  }
}

TEST_CASE("benchmark suites") {
  SUBCASE("stability output is byte stable") {
    const fs::path a = work_dir() / "stab_a.csv";
    const fs::path b = work_dir() / "stab_b.csv";
    REQUIRE(run("bench stability --runs 40 --seed 2 --output " + a.string(),
                "> /dev/null") == 0);
    REQUIRE(run("bench stability --runs 40 --seed 2 --output " + b.string(),
                "> /dev/null") == 0);
    const std::string content = slurp(a);
    CHECK(content == slurp(b));
    CHECK(content.rfind("log10_bin_low", 0) == 0);
  }

  SUBCASE("single-cell noise sweep has one data row") {
    const fs::path out = work_dir() / "noise_single.csv";
    REQUIRE(run("bench noise --runs 3 --sigmas 0.5 --ratios 5 --output " +
                    out.string(),
                "> /dev/null") == 0);
    std::istringstream is(slurp(out));
    std::string line;
    int lines = 0;
    while (std::getline(is, line))
      if (!line.empty()) ++lines;
    CHECK(lines == 2);  // header plus the single cell
  }

  SUBCASE("half outliers: fewer samples for the two-point solver") {
    const fs::path out = work_dir() / "ransac.csv";
    REQUIRE(run("bench ransac --runs 9 --outlier-ratios 0.5 --seed 3 "
                "--output " +
                    out.string(),
                "> /dev/null") == 0);
    std::istringstream is(slurp(out));
    std::string header, row;
    REQUIRE(std::getline(is, header));
    REQUIRE(std::getline(is, row));

    std::vector<std::string> names, values;
    for (std::istringstream hs(header); std::getline(hs, header, ',');)
      names.push_back(header);
    for (std::istringstream rs(row); std::getline(rs, row, ',');)
      values.push_back(row);
    REQUIRE(names.size() == values.size());
    double sift = -1, pt = -1;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == "median_iterations_2sift") sift = std::stod(values[i]);
      if (names[i] == "median_iterations_4pt") pt = std::stod(values[i]);
    }
    REQUIRE(sift > 0);
    REQUIRE(pt > 0);
    CHECK(sift < pt);
  }

  SUBCASE("unknown suite is rejected") {
    CHECK(run("bench warp", "> /dev/null 2>&1") != 0);
  }
}

TEST_CASE("version flag") {
  CHECK(run("--version", "> /dev/null") == 0);
}
