#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jostlp/config.hpp"
#include "jostlp/run.hpp"

using namespace jostlp;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

} // namespace

TEST_CASE("config parsing") {
  const std::string text = R"(
# comment
[run]
command = scatter
seed = 42
tol = 1e-9

[potential]
kind = gaussian
v0 = 2.0
width = 1.5
gamma = 2.5

[grid]
x_min = -20
x_max = 20
n_points = 801

[besov]
s_list = 0, 0.2, 0.4
p = 2
)";
  const auto cfg = parse_config_text(text);
  CHECK(cfg.command == "scatter");
  CHECK(cfg.seed == 42);
  CHECK(cfg.tol == 1e-9);
  CHECK(cfg.pot_kind == "gaussian");
  CHECK(cfg.v0 == 2.0);
  CHECK(cfg.width == 1.5);
  CHECK(cfg.gamma == 2.5);
  CHECK(cfg.n_points == 801);
  REQUIRE(cfg.s_list.size() == 3);
  CHECK(cfg.s_list[1] == 0.2);

  CHECK_THROWS_AS(parse_config_text("[grid]\nbogus = 3\n"), validation_error);
  CHECK_THROWS_AS(parse_config_text("[grid]\nn_points = many\n"), validation_error);
  CHECK_THROWS_AS(parse_config_text("[nosuch]\nx = 1\n"), validation_error);
  try {
    parse_config_text("[grid]\nn_points = many\n");
  } catch (const validation_error &e) {
    CHECK(std::string(e.what()).find("[grid] n_points") != std::string::npos);
  }
}

TEST_CASE("config validation catches field-level problems") {
  RunConfig cfg;
  cfg.command = "warp";
  CHECK_THROWS_AS(validate_config(cfg), validation_error);
  cfg.command = "scatter";
  cfg.tol = -1;
  CHECK_THROWS_AS(validate_config(cfg), validation_error);
  cfg.tol = 1e-8;
  cfg.pot_kind = "sampled"; // no file given
  CHECK_THROWS_AS(validate_config(cfg), validation_error);
}

TEST_CASE("counterexample command emits csv and fit summary") {
  TempDir dir("jostlp_test_ce");
  RunConfig cfg;
  cfg.command = "counterexample";
  cfg.out_dir = dir.str();
  std::ostringstream log;
  REQUIRE(run(cfg, log) == 0);

  const auto j = nlohmann::json::parse(slurp(dir.str() + "/counterexample_summary.json"));
  CHECK(std::abs(double(j["slope_riesz_sq"]) - 2.0) < 0.05);
  CHECK(std::abs(double(j["slope_norm_sq"]) - 1.0) < 0.05);

  const auto csv = slurp(dir.str() + "/counterexample.csv");
  CHECK(csv.find("N,riesz_at_zero,l2_norm_sq,ratio") != std::string::npos);
  CHECK(csv.find("config_hash=") != std::string::npos);
}

TEST_CASE("scatter on the zero potential reports the resonant free origin") {
  TempDir dir("jostlp_test_scatter0");
  RunConfig cfg;
  cfg.command = "scatter";
  cfg.pot_kind = "zero";
  cfg.x_min = -10;
  cfg.x_max = 10;
  cfg.n_points = 401;
  cfg.tau_max = 4.0;
  cfg.n_half = 16;
  cfg.out_dir = dir.str();
  std::ostringstream log;
  REQUIRE(run(cfg, log) == 0);

  const auto j = nlohmann::json::parse(slurp(dir.str() + "/scattering_summary.json"));
  CHECK(j["verdict"] == "resonant");
  CHECK(double(j["unitarity_max_defect"]) < 1e-12);

  // body rows all carry T = 1 + 0i and R = 0
  std::istringstream csv(slurp(dir.str() + "/scattering.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    ++rows;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double tau, reT, imT, reRp, imRp, reRm, imRm;
    ls >> tau >> reT >> imT >> reRp >> imRp >> reRm >> imRm;
    CHECK(reT == 1.0);
    CHECK(imT == 0.0);
    CHECK(reRp == 0.0);
    CHECK(reRm == 0.0);
  }
  CHECK(rows == 32);
}

TEST_CASE("runs are deterministic byte for byte") {
  TempDir d1("jostlp_det_a"), d2("jostlp_det_b");
  RunConfig cfg;
  cfg.command = "crossloc";
  cfg.pot_kind = "square_barrier";
  cfg.x_min = -40;
  cfg.x_max = 40;
  cfg.n_points = 513;
  cfg.k = 2;
  cfg.j_list = {0, 1, 2};
  cfg.probe_count = 4;
  cfg.seed = 99;
  std::ostringstream log;
  cfg.out_dir = d1.str();
  REQUIRE(run(cfg, log) == 0);
  cfg.out_dir = d2.str();
  REQUIRE(run(cfg, log) == 0);
  CHECK(slurp(d1.str() + "/crossloc.csv") == slurp(d2.str() + "/crossloc.csv"));
  CHECK(slurp(d1.str() + "/crossloc_summary.json") ==
        slurp(d2.str() + "/crossloc_summary.json"));
}

TEST_CASE("hypothesis violations exit with the dedicated status") {
  std::ostringstream log;

  SECTION("resonant potential in an equivalence run") {
    TempDir dir("jostlp_hypo_res");
    RunConfig cfg;
    cfg.command = "besov";
    cfg.pot_kind = "zero";
    cfg.n_points = 257;
    cfg.j_min = -2;
    cfg.j_max = 2;
    cfg.out_dir = dir.str();
    CHECK(run(cfg, log) == 3);
    CHECK(log.str().find("resonance") != std::string::npos);
  }

  SECTION("smoothness beyond the 1/p threshold") {
    TempDir dir("jostlp_hypo_s");
    RunConfig cfg;
    cfg.command = "besov";
    cfg.n_points = 257;
    cfg.j_min = -2;
    cfg.j_max = 2;
    cfg.s_list = {0.6};
    cfg.out_dir = dir.str();
    CHECK(run(cfg, log) == 3);
    CHECK(log.str().find("s < 1/p") != std::string::npos);
  }

  SECTION("validation failures use a different status") {
    RunConfig cfg;
    cfg.command = "nonsense";
    CHECK(run(cfg, log) == 2);
  }
}

TEST_CASE("besov command summarizes equivalence constants") {
  TempDir dir("jostlp_besov_run");
  RunConfig cfg;
  cfg.command = "besov";
  cfg.pot_kind = "square_barrier";
  cfg.x_min = -40;
  cfg.x_max = 40;
  cfg.n_points = 513;
  cfg.s_list = {0.0, 0.2};
  cfg.j_min = -3;
  cfg.j_max = 3;
  cfg.out_dir = dir.str();
  std::ostringstream log;
  REQUIRE(run(cfg, log) == 0);
  const auto j = nlohmann::json::parse(slurp(dir.str() + "/besov_summary.json"));
  REQUIRE(j["equivalence"].size() == 2);
  for (const auto &entry : j["equivalence"]) {
    CHECK(double(entry["constant"]) >= 1.0);
    CHECK(double(entry["constant"]) < 10.0);
  }
  CHECK(slurp(dir.str() + "/besov_blocks.csv").find("block_norm_free") !=
        std::string::npos);
}

TEST_CASE("kernel command dumps round-trippable kernels") {
  TempDir dir("jostlp_kernel_run");
  RunConfig cfg;
  cfg.command = "kernel";
  cfg.pot_kind = "square_barrier";
  cfg.x_min = -10;
  cfg.x_max = 10;
  cfg.n_points = 1025;
  cfg.M_list = {0.5, 2.0};
  cfg.out_dir = dir.str();
  std::ostringstream log;
  REQUIRE(run(cfg, log) == 0);
  const auto kf = read_kernel_dump(dir.str() + "/kernel_free_M2.bin");
  const auto kp = read_kernel_dump(dir.str() + "/kernel_perturbed_M2.bin");
  CHECK(kf.M == 2.0);
  CHECK(kp.provenance == KernelProvenance::perturbed);
  CHECK(fs::exists(dir.str() + "/kernel_leading_M0.5.bin"));
  CHECK(fs::exists(dir.str() + "/kernel_perturbed_M2.csv"));
}

TEST_CASE("jost command emits the field in csv and binary forms") {
  TempDir dir("jostlp_jost_run");
  RunConfig cfg;
  cfg.command = "jost";
  cfg.pot_kind = "gaussian";
  cfg.x_min = -8;
  cfg.x_max = 8;
  cfg.n_points = 1025;
  cfg.tau_max = 3.0;
  cfg.n_half = 6;
  cfg.out_dir = dir.str();
  std::ostringstream log;
  REQUIRE(run(cfg, log) == 0);
  const auto jf = read_jost_dump(dir.str() + "/jost.bin");
  CHECK(jf.fgrid.size() == 12);
  CHECK(slurp(dir.str() + "/jost_plus.csv").find("x,tau,re_m,im_m") != std::string::npos);
  CHECK(fs::exists(dir.str() + "/jost_minus.csv"));
}

#ifdef JOSTLP_CLI_PATH
TEST_CASE("command-line binary smoke run") {
  TempDir dir("jostlp_cli_smoke");
  const std::string cmd = std::string(JOSTLP_CLI_PATH) +
                          " counterexample --out " + dir.str() + " > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir.str() + "/counterexample.csv"));

  const std::string bad = std::string(JOSTLP_CLI_PATH) +
                          " nonsense --out " + dir.str() + " > /dev/null 2>&1";
  CHECK(std::system(bad.c_str()) != 0);
}
#endif
