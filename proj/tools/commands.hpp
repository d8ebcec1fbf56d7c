#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace couette::cli {

// Exit codes: 0 success, 1 numerical/tolerance failure, 2 usage/config error.
constexpr int exit_ok = 0;
constexpr int exit_numerical = 1;
constexpr int exit_config = 2;

/// Fully resolved run configuration. Defaults are materialized before a
/// command runs; the resolved form is echoed as the first JSON line on
/// stderr so any run can be reproduced bit-identically from its log.
struct RunConfig {
    std::string command;

    double r_inner = 1.0;
    double r_outer = 2.0;

    std::string family = "couette_inner_rotating";
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.0;

    std::uint64_t seed = 0;
    double tol = 1e-10;
    bool tol_explicit = false;
    int jobs = 0; // 0 = available parallelism
    std::string out; // empty = stdout

    // eval
    int eval_n_rho = 201;
    double eval_theta = 0.0;
    double eval_z = 0.0;

    // verify
    std::string verify_mode = "closed"; // closed | fd | counterexample
    int verify_samples = 10000;
    double verify_fd_step = 0.0; // 0 = default step
    double verify_perturb = 0.0;

    // stability
    std::string stability_theorem = "auto";
    std::string stability_bound = "builtin"; // builtin | user
    std::optional<double> stability_lambda;
    std::string stability_specs_file;

    // map
    double map_alpha_min = -5.0, map_alpha_max = 5.0;
    double map_beta_min = -5.0, map_beta_max = 5.0;
    int map_n_alpha = 101, map_n_beta = 101;
    std::vector<double> map_gammas; // vorticity slices; empty = {gamma}
    std::string map_svg;

    // poincare
    std::vector<double> poincare_eps{0.1, 1.0};
    int poincare_n_rho = 2048;
    int poincare_n_z = 2048;

    // slscan
    std::vector<int> slscan_k{1, 2, 3, 4};
    double slscan_alpha_min = -10.0, slscan_alpha_max = 10.0;
    int slscan_alpha_n = 201;
    int slscan_n = 400;

    // appendix
    std::vector<double> appendix_r1_seq{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> appendix_r2_seq{10.0, 100.0, 1000.0};
    std::vector<double> appendix_gap_seq{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> appendix_eps{1.0, 0.5, 0.1};

    void apply_json(const nlohmann::json& j);
    nlohmann::json resolved() const;
};

int run_eval(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);
int run_stability(const RunConfig& cfg);
int run_map(const RunConfig& cfg);
int run_poincare(const RunConfig& cfg);
int run_slscan(const RunConfig& cfg);
int run_appendix(const RunConfig& cfg);

} // namespace couette::cli
