#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cyclewalk/experiments.hpp"

using namespace cyclewalk;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("cyclewalk_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("time grid parsing") {
    const auto g = parse_time_grid("0:1:0.25");
    REQUIRE(g.size() == 5);
    REQUIRE(g.front() == 0.0);
    REQUIRE_THAT(g.back(), Catch::Matchers::WithinAbs(1.0, 1e-12));
    REQUIRE(parse_time_grid("0.1,0.5,0.9") == std::vector<double>{0.1, 0.5, 0.9});
    REQUIRE_THROWS_AS(parse_time_grid("1:0:0.1"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_time_grid("0:1:0"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_time_grid("0.5,0.2"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_time_grid(""), std::invalid_argument);
}

TEST_CASE("config files load and fill every field they mention") {
    const auto dir = fresh_dir("config");
    {
        std::ofstream out(dir / "exp.json");
        out << R"({"experiment": "tau_delta", "class": "k3=1", "n": 500,
                   "t_grid": {"start": 0.0, "stop": 1.0, "step": 0.5},
                   "replicas": 4, "seed": 42, "poissonize": true, "threads": 2,
                   "delta": 0.05, "t_end": 1.5, "window": [0.9, 1.0],
                   "watch": [0, 3], "expect_hits_min": 2})";
    }
    const auto cfg = load_config((dir / "exp.json").string());
    REQUIRE(cfg.experiment == "tau_delta");
    REQUIRE(cfg.cls == "k3=1");
    REQUIRE(cfg.n == 500);
    REQUIRE(cfg.t_grid == std::vector<double>{0.0, 0.5, 1.0});
    REQUIRE(cfg.replicas == 4);
    REQUIRE(cfg.seed == 42);
    REQUIRE(cfg.poissonize);
    REQUIRE(cfg.threads == 2);
    REQUIRE(cfg.delta == 0.05);
    REQUIRE(cfg.t_end == 1.5);
    REQUIRE(cfg.window_lo == 0.9);
    REQUIRE(cfg.window_hi == 1.0);
    REQUIRE(cfg.watch == std::vector<std::uint32_t>{0, 3});
    REQUIRE(cfg.expect_hits_min == 2);
    REQUIRE_THROWS_AS(load_config((dir / "missing.json").string()), std::invalid_argument);
}

TEST_CASE("trajectory output is identical across reruns and thread counts") {
    ExperimentConfig cfg;
    cfg.experiment = "trajectory";
    cfg.cls = "k2=1";
    cfg.n = 300;
    cfg.t_grid = {0.25, 0.5, 1.0};
    cfg.replicas = 4;
    cfg.seed = 9;

    const auto a = fresh_dir("traj_a");
    const auto b = fresh_dir("traj_b");
    cfg.out_dir = a.string();
    cfg.threads = 1;
    REQUIRE(run_experiment(cfg) == 0);
    cfg.out_dir = b.string();
    cfg.threads = 3;
    REQUIRE(run_experiment(cfg) == 0);

    const auto csv_a = slurp(a / "trajectory.csv");
    REQUIRE(csv_a == slurp(b / "trajectory.csv"));
    REQUIRE(slurp(a / "trajectory_summary.json") == slurp(b / "trajectory_summary.json"));
    REQUIRE(csv_a.rfind(
                "replica,t,steps,N,Nbar,lambda,L,frag,frag_small,lb_dist,"
                "u_pred,theta_pred,phi_pred\n",
                0) == 0);
    // One row per (replica, grid point).
    REQUIRE(std::count(csv_a.begin(), csv_a.end(), '\n') == 1 + 4 * 3);
}

TEST_CASE("tau-delta reports failed expectations through the exit code") {
    ExperimentConfig cfg;
    cfg.experiment = "tau_delta";
    cfg.cls = "k2=1";
    cfg.n = 200;
    cfg.replicas = 3;
    cfg.seed = 3;
    cfg.delta = 0.9;   // far above anything reachable by t_end = 0.1
    cfg.t_end = 0.1;
    cfg.expect_hits_min = 1;
    const auto dir = fresh_dir("tau");
    cfg.out_dir = dir.string();
    REQUIRE(run_experiment(cfg) == 2);

    const auto summary = nlohmann::json::parse(slurp(dir / "tau_delta_summary.json"));
    REQUIRE(summary.at("hits").get<int>() == 0);
    REQUIRE(summary.at("exit_code").get<int>() == 2);

    cfg.expect_hits_min = -1;
    cfg.expect_hits_max = 0;
    REQUIRE(run_experiment(cfg) == 0);
}

TEST_CASE("tau-delta validates its parameters") {
    ExperimentConfig cfg;
    cfg.experiment = "tau_delta";
    cfg.t_end = 1.0;
    cfg.delta = 0.0;
    REQUIRE_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg.delta = 0.5;
    cfg.t_end = 0.0;
    REQUIRE_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("profile writes the analytic table") {
    ExperimentConfig cfg;
    cfg.experiment = "profile";
    cfg.cls = "k3=1";
    cfg.t_grid = {0.1, 0.25, 0.5};
    const auto dir = fresh_dir("profile");
    cfg.out_dir = dir.string();
    REQUIRE(run_experiment(cfg) == 0);
    const auto csv = slurp(dir / "profile.csv");
    REQUIRE(csv.rfind("t,theta,u,phi,delta,m_ratio_exact,m_ratio_bound\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 1 + 3);
}

TEST_CASE("census runs and reports expectations for a pure class") {
    ExperimentConfig cfg;
    cfg.experiment = "census";
    cfg.cls = "k3=1";
    cfg.n = 400;
    cfg.replicas = 2;
    cfg.seed = 17;
    cfg.t_end = 0.1;
    cfg.census_max_edges = 2;
    const auto dir = fresh_dir("census");
    cfg.out_dir = dir.string();
    REQUIRE(run_experiment(cfg) == 0);
    const auto csv = slurp(dir / "census.csv");
    REQUIRE(csv.rfind("replica,t,h,count,expected_exact,expected_asymptotic\n", 0) == 0);
}

TEST_CASE("unknown experiment names are rejected") {
    ExperimentConfig cfg;
    cfg.experiment = "no_such_thing";
    REQUIRE_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("output directory falls back to the environment") {
    const auto dir = fresh_dir("envout");
    setenv("CYCLEWALK_OUT", dir.string().c_str(), 1);
    REQUIRE(default_out_dir() == dir.string());
    unsetenv("CYCLEWALK_OUT");
    REQUIRE(default_out_dir() == ".");
}
