#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "couette/flows.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliFixture {
public:
    CliFixture() {
        const char* cli = std::getenv("COUETTE_CLI");
        REQUIRE_MESSAGE(cli != nullptr, "COUETTE_CLI must point at the binary");
        cli_ = cli;
        dir_ = fs::temp_directory_path() /
               ("couette_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    ~CliFixture() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }

    RunResult run(const std::string& args) const {
        const fs::path out = dir_ / "stdout.txt";
        const fs::path err = dir_ / "stderr.txt";
        const std::string cmd =
            cli_ + " " + args + " >" + out.string() + " 2>" + err.string();
        const int status = std::system(cmd.c_str());
        RunResult r;
        r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = read_file(out);
        r.err = read_file(err);
        return r;
    }

    fs::path path(const std::string& name) const { return dir_ / name; }

private:
    std::string cli_;
    fs::path dir_;
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

} // namespace

TEST_CASE("eval emits the pinned schema and couette values") {
    CliFixture cli;
    const RunResult r = cli.run(
        "eval --r1 1 --r2 2 --family couette_inner_rotating --alpha 1 --n 5");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] ==
          std::vector<std::string>{"rho", "theta", "z", "u_rho", "u_theta", "u_z",
                                   "p", "w_rho", "w_theta", "w_z"});
    const couette::Annulus a(1.0, 2.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double rho = std::stod(rows[i][0]);
        const double u_theta = std::stod(rows[i][4]);
        const double expected =
            couette::couette_profile(a, couette::CouetteVariant::inner_rotating, rho);
        CHECK(u_theta == doctest::Approx(expected).epsilon(1e-14));
        CHECK(std::stod(rows[i][3]) == 0.0); // u_rho
        CHECK(std::stod(rows[i][5]) == 0.0); // u_z
    }
}

TEST_CASE("eval of the rest state is identically zero") {
    CliFixture cli;
    const RunResult r =
        cli.run("eval --r1 1 --r2 2 --family couette_inner_rotating --alpha 0 --n 9");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        for (std::size_t c = 3; c < rows[i].size(); ++c) {
            CHECK(std::stod(rows[i][c]) == 0.0);
        }
    }
}

TEST_CASE("config echo is the first stderr line and reruns are bit-identical") {
    CliFixture cli;
    const std::string cmd =
        "eval --r1 1 --r2 2 --family spiral_poiseuille_inner_rotating "
        "--alpha 2 --beta -1 --n 33 --seed 9";
    const RunResult r1 = cli.run(cmd);
    const RunResult r2 = cli.run(cmd);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.err == r2.err);
    const json echoed = json::parse(first_line(r1.err));
    CHECK(echoed.at("command") == "eval");
    CHECK(echoed.at("seed") == 9);
    CHECK(echoed.at("flow").at("alpha") == 2.0);
    CHECK(echoed.at("eval").at("n_rho") == 33);
}

TEST_CASE("a run can be reproduced from its own echoed config") {
    CliFixture cli;
    const RunResult first = cli.run(
        "eval --r1 1 --r2 2 --family spiral_pc_vorticity_on_inner --alpha 1.5 "
        "--beta 0.25 --gamma -0.5 --n 17 --theta 0.4 --z 1.2");
    CHECK(first.exit_code == 0);

    const fs::path cfg = cli.path("echoed.json");
    {
        std::ofstream out(cfg);
        out << first_line(first.err);
    }
    const RunResult replay = cli.run("--config " + cfg.string() + " eval");
    CHECK(replay.exit_code == 0);
    CHECK(replay.out == first.out);
}

TEST_CASE("verify passes exact flows and fails perturbed ones") {
    CliFixture cli;
    {
        const RunResult r = cli.run(
            "verify --r1 1 --r2 2 --family spiral_pc_vorticity_on_outer "
            "--alpha 1 --beta 1 --gamma -1 --samples 2000");
        CHECK(r.exit_code == 0);
        const json report = json::parse(r.out);
        CHECK(report.at("residual").at("max_abs").get<double>() < 1e-10);
        CHECK(report.at("boundary").at("max_violation").get<double>() < 1e-10);
    }
    {
        const RunResult r = cli.run(
            "verify --r1 1 --r2 2 --family spiral_poiseuille_inner_rotating "
            "--alpha 1 --beta 1 --mode fd --samples 200 --perturb 1e-3");
        CHECK(r.exit_code == 1);
    }
    {
        const RunResult r = cli.run(
            "verify --r1 1 --r2 2 --family spiral_poiseuille_inner_rotating "
            "--alpha 1 --beta 1 --mode fd --samples 200");
        CHECK(r.exit_code == 0);
    }
}

TEST_CASE("verify counterexample mode reports vanishing derivatives") {
    CliFixture cli;
    const RunResult r =
        cli.run("verify --r1 1 --r2 2 --mode counterexample --samples 500");
    CHECK(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report.at("div_max").get<double>() < 1e-8);
    CHECK(report.at("curl_max").get<double>() < 1e-8);
    CHECK(report.at("impermeability_max").get<double>() == 0.0);
}

TEST_CASE("stability certificate json") {
    CliFixture cli;
    const RunResult r = cli.run(
        "stability --r1 1 --r2 2 --family spiral_poiseuille_inner_rotating "
        "--alpha 0.1");
    CHECK(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report.at("certified").get<bool>());
    CHECK(report.at("m_value").get<double>() ==
          doctest::Approx(2.0 / 15.0).epsilon(1e-12));
    CHECK(report.at("theorem") == "dirichlet_inner_rotating");
}

TEST_CASE("stability batch mode consumes a spec array") {
    CliFixture cli;
    const fs::path specs = cli.path("specs.json");
    {
        std::ofstream out(specs);
        out << R"([{"family":"couette_inner_rotating","alpha":0.1},
                   {"family":"couette_inner_rotating","alpha":50.0}])";
    }
    const RunResult r = cli.run("stability --r1 1 --r2 2 --specs " + specs.string());
    CHECK(r.exit_code == 0);
    const json reports = json::parse(r.out);
    REQUIRE(reports.is_array());
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].at("certified").get<bool>());
    CHECK_FALSE(reports[1].at("certified").get<bool>());
}

TEST_CASE("map boundary along the alpha axis matches the closed threshold") {
    CliFixture cli;
    const fs::path svg = cli.path("map.svg");
    const RunResult r = cli.run(
        "map --r1 1 --r2 2 --family spiral_poiseuille_inner_rotating "
        "--alpha-min -5 --alpha-max 5 --alpha-n 101 --beta-min -5 --beta-max 5 "
        "--beta-n 21 --svg " +
        svg.string());
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"alpha", "beta", "m", "bound",
                                              "certified"});

    // Certified cells must fill a symmetric interval on the beta = 0 line
    // ending at the analytic threshold bound * (R2^2-R1^2) R1 / R2^2.
    double max_certified_alpha = 0.0;
    bool origin_certified = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double alpha = std::stod(rows[i][0]);
        const double beta = std::stod(rows[i][1]);
        const bool certified = rows[i][4] == "1";
        if (beta == 0.0 && certified) {
            max_certified_alpha = std::max(max_certified_alpha, std::abs(alpha));
        }
        if (alpha == 0.0 && beta == 0.0) origin_certified = certified;
    }
    CHECK(origin_certified);
    const double threshold = 3.8471867620540787 * 3.0 / 4.0;
    CHECK(std::abs(max_certified_alpha - threshold) <= 0.1 + 1e-12);

    // Scaling along rays: if a doubled parameter pair is certified, the
    // original must be too.
    std::map<std::pair<double, double>, bool> certified_at;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        certified_at[{std::stod(rows[i][0]), std::stod(rows[i][1])}] =
            rows[i][4] == "1";
    }
    for (const auto& [key, flag] : certified_at) {
        const auto doubled = certified_at.find({2.0 * key.first, 2.0 * key.second});
        if (flag == false && doubled != certified_at.end()) {
            CHECK_FALSE(doubled->second);
        }
    }

    const std::string svg_text = read_file(svg);
    CHECK(svg_text.rfind("<svg", 0) == 0);
    CHECK(svg_text.find("rect") != std::string::npos);
}

TEST_CASE("map of a curl-data family carries the gamma column") {
    CliFixture cli;
    const RunResult r = cli.run(
        "map --r1 1 --r2 2 --family spiral_pc_vorticity_on_inner --gamma 0.5 "
        "--alpha-min -1 --alpha-max 1 --alpha-n 9 --beta-min -1 --beta-max 1 "
        "--beta-n 9");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"alpha", "beta", "gamma", "m",
                                              "bound", "certified"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][2]) == 0.5);
    }
}

TEST_CASE("map output does not depend on the worker count") {
    CliFixture cli;
    const std::string base =
        "map --r1 1 --r2 2 --family spiral_poiseuille_inner_rotating "
        "--alpha-n 17 --beta-n 17";
    const RunResult serial = cli.run(base + " --jobs 1");
    const RunResult parallel = cli.run(base + " --jobs 4");
    CHECK(serial.exit_code == 0);
    CHECK(parallel.exit_code == 0);
    CHECK(serial.out == parallel.out);
}

TEST_CASE("poincare command emits bounds and quotients") {
    CliFixture cli;
    const RunResult r = cli.run("poincare --r1 1 --r2 2 --eps 1 --eps 0.1");
    CHECK(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report.at("bounds").at("lower_radial").get<double>() ==
          doctest::Approx(3.8471868).epsilon(1e-6));
    REQUIRE(report.at("v_epsilon").size() == 2);
    CHECK(report.at("v_epsilon")[0].at("closed_quotient").get<double>() ==
          doctest::Approx(13.0).epsilon(1e-12));
    CHECK(report.at("v_epsilon")[0].at("numeric_quotient").get<double>() ==
          doctest::Approx(13.0).epsilon(1e-5));
}

TEST_CASE("slscan emits the pinned csv schema with positive values") {
    CliFixture cli;
    const RunResult r = cli.run(
        "slscan --r1 1 --r2 2 --k 1 --k 2 --alpha-min -4 --alpha-max 4 "
        "--alpha-n 9 --n 100");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"k", "alpha", "sigma_min", "n"});
    CHECK(rows.size() == 1 + 2 * 9);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][2]) > 0.0);
        CHECK(rows[i][3] == "100");
    }
}

TEST_CASE("appendix writes the three tables") {
    CliFixture cli;
    const std::string prefix = cli.path("tables").string();
    const RunResult r = cli.run("appendix --r1 1 --r2 2 --out " + prefix);
    CHECK(r.exit_code == 0);

    const auto phi = parse_csv(read_file(prefix + ".phi.csv"));
    CHECK(phi[0] == std::vector<std::string>{"r1", "r2", "phi1", "phi2",
                                             "scaled_phi1"});
    CHECK(phi.size() > 5);

    const auto bounds = parse_csv(read_file(prefix + ".bounds.csv"));
    CHECK(bounds[0][0] == "r1");
    CHECK(bounds.size() == phi.size());

    const auto veps = parse_csv(read_file(prefix + ".veps.csv"));
    CHECK(veps[0][2] == "eps");
    for (std::size_t i = 1; i < veps.size(); ++i) {
        CHECK(std::stod(veps[i][5]) < 1e-5); // rel_error column
    }
}

TEST_CASE("config file drives a run and flags override it") {
    CliFixture cli;
    const fs::path cfg = cli.path("run.json");
    {
        std::ofstream out(cfg);
        out << R"({"annulus":{"r_inner":1.0,"r_outer":2.0},
                   "flow":{"family":"couette_inner_rotating","alpha":1.0},
                   "eval":{"n_rho":4}})";
    }
    const RunResult r = cli.run("--config " + cfg.string() + " eval --n 6");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows.size() == 7); // header + 6 samples, flag wins over config
}

TEST_CASE("usage and config errors exit with code 2") {
    CliFixture cli;
    CHECK(cli.run("eval --family not_a_family").exit_code == 2);
    CHECK(cli.run("eval --r1 2 --r2 1").exit_code == 2);
    CHECK(cli.run("--config /nonexistent.json eval").exit_code == 2);
    // gamma is rejected for Dirichlet families.
    CHECK(cli.run("eval --family couette_inner_rotating --gamma 1").exit_code == 2);
    CHECK(cli.run("definitely-not-a-command").exit_code == 2);
}
