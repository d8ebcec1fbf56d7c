#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"

namespace {

using couette::cli::RunConfig;

struct FlagOverrides {
    std::optional<double> r1, r2, alpha, beta, gamma, tol;
    std::optional<std::string> family, out;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
};

void add_common_flags(CLI::App* cmd, FlagOverrides& f) {
    cmd->add_option("--r1", f.r1, "Inner radius");
    cmd->add_option("--r2", f.r2, "Outer radius");
    cmd->add_option("--family", f.family, "Flow family tag");
    cmd->add_option("--alpha", f.alpha, "Azimuthal wall speed");
    cmd->add_option("--beta", f.beta, "Axial parameter");
    cmd->add_option("--gamma", f.gamma, "Axial pressure slope (vorticity families)");
}

void apply_overrides(RunConfig& cfg, const FlagOverrides& f) {
    if (f.r1) cfg.r_inner = *f.r1;
    if (f.r2) cfg.r_outer = *f.r2;
    if (f.family) cfg.family = *f.family;
    if (f.alpha) cfg.alpha = *f.alpha;
    if (f.beta) cfg.beta = *f.beta;
    if (f.gamma) cfg.gamma = *f.gamma;
    if (f.seed) cfg.seed = *f.seed;
    if (f.jobs) cfg.jobs = *f.jobs;
    if (f.out) cfg.out = *f.out;
    if (f.tol) {
        cfg.tol = *f.tol;
        cfg.tol_explicit = true;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Explicit steady annulus flows: evaluation, residual verification, "
        "stability certificates, spectral scans and report tables"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    FlagOverrides flags;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", flags.out, "Output path (default: stdout)");
    app.add_option("--jobs", flags.jobs, "Worker count (default: hardware)");
    app.add_option("--seed", flags.seed, "Sampling seed");
    app.add_option("--tol", flags.tol, "Pass/fail tolerance");

    auto* eval = app.add_subcommand("eval", "Sample a flow along a radial line (CSV)");
    add_common_flags(eval, flags);
    std::optional<int> eval_n;
    std::optional<double> eval_theta, eval_z;
    eval->add_option("--n", eval_n, "Radial sample count");
    eval->add_option("--theta", eval_theta, "Azimuth of the line");
    eval->add_option("--z", eval_z, "Height of the line");

    auto* verify = app.add_subcommand(
        "verify", "Residual and boundary audit of a flow (JSON)");
    add_common_flags(verify, flags);
    std::optional<std::string> verify_mode;
    std::optional<int> verify_samples;
    std::optional<double> verify_perturb, verify_fd_step;
    verify->add_option("--mode", verify_mode, "closed | fd | counterexample");
    verify->add_option("--samples", verify_samples, "Sample count");
    verify->add_option("--perturb", verify_perturb,
                       "Perturbation amplitude for the fd mode");
    verify->add_option("--fd-step", verify_fd_step, "Finite-difference step");

    auto* stability = app.add_subcommand(
        "stability", "Smallness certificate for one flow or a batch (JSON)");
    add_common_flags(stability, flags);
    std::optional<std::string> st_theorem, st_bound, st_specs;
    std::optional<double> st_lambda;
    stability->add_option("--theorem", st_theorem,
                          "Certificate tag (default: auto)");
    stability->add_option("--bound", st_bound, "builtin | user");
    stability->add_option("--lambda", st_lambda, "User-supplied lower bound");
    stability->add_option("--specs", st_specs, "JSON array of flow specs");

    auto* map = app.add_subcommand(
        "map", "Certified-region map over the parameter grid (CSV, optional SVG)");
    add_common_flags(map, flags);
    std::optional<double> m_amin, m_amax, m_bmin, m_bmax;
    std::optional<int> m_an, m_bn;
    std::optional<std::string> m_svg, m_bound;
    std::optional<double> m_lambda;
    map->add_option("--alpha-min", m_amin);
    map->add_option("--alpha-max", m_amax);
    map->add_option("--beta-min", m_bmin);
    map->add_option("--beta-max", m_bmax);
    map->add_option("--alpha-n", m_an);
    map->add_option("--beta-n", m_bn);
    map->add_option("--svg", m_svg, "Write an SVG heat map next to the CSV");
    map->add_option("--bound", m_bound, "builtin | user");
    map->add_option("--lambda", m_lambda, "User-supplied lower bound");

    auto* poincare = app.add_subcommand(
        "poincare", "Spectral-gap bounds and test-field quotients (JSON)");
    add_common_flags(poincare, flags);
    std::vector<double> po_eps;
    poincare->add_option("--eps", po_eps, "Test-field decay rates");

    auto* slscan = app.add_subcommand(
        "slscan", "Smallest singular value along the imaginary axis (CSV)");
    add_common_flags(slscan, flags);
    std::vector<int> sl_k;
    std::optional<double> sl_amin, sl_amax;
    std::optional<int> sl_an, sl_n;
    slscan->add_option("--k", sl_k, "Azimuthal mode numbers");
    slscan->add_option("--alpha-min", sl_amin);
    slscan->add_option("--alpha-max", sl_amax);
    slscan->add_option("--alpha-n", sl_an);
    slscan->add_option("--n", sl_n, "Grid nodes");

    auto* appendix = app.add_subcommand(
        "appendix", "Limit tables for the bounds and magnitude coefficients (CSV)");
    add_common_flags(appendix, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : couette::cli::exit_config;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot open config file: " << config_path
                          << "\n";
                return couette::cli::exit_config;
            }
            cfg.apply_json(nlohmann::json::parse(in));
        }
        apply_overrides(cfg, flags);

        if (eval->parsed()) {
            cfg.command = "eval";
            if (eval_n) cfg.eval_n_rho = *eval_n;
            if (eval_theta) cfg.eval_theta = *eval_theta;
            if (eval_z) cfg.eval_z = *eval_z;
            return couette::cli::run_eval(cfg);
        }
        if (verify->parsed()) {
            cfg.command = "verify";
            if (verify_mode) cfg.verify_mode = *verify_mode;
            if (verify_samples) cfg.verify_samples = *verify_samples;
            if (verify_perturb) cfg.verify_perturb = *verify_perturb;
            if (verify_fd_step) cfg.verify_fd_step = *verify_fd_step;
            return couette::cli::run_verify(cfg);
        }
        if (stability->parsed()) {
            cfg.command = "stability";
            if (st_theorem) cfg.stability_theorem = *st_theorem;
            if (st_bound) cfg.stability_bound = *st_bound;
            if (st_lambda) cfg.stability_lambda = *st_lambda;
            if (st_specs) cfg.stability_specs_file = *st_specs;
            return couette::cli::run_stability(cfg);
        }
        if (map->parsed()) {
            cfg.command = "map";
            if (m_amin) cfg.map_alpha_min = *m_amin;
            if (m_amax) cfg.map_alpha_max = *m_amax;
            if (m_bmin) cfg.map_beta_min = *m_bmin;
            if (m_bmax) cfg.map_beta_max = *m_bmax;
            if (m_an) cfg.map_n_alpha = *m_an;
            if (m_bn) cfg.map_n_beta = *m_bn;
            if (m_svg) cfg.map_svg = *m_svg;
            if (m_bound) cfg.stability_bound = *m_bound;
            if (m_lambda) cfg.stability_lambda = *m_lambda;
            return couette::cli::run_map(cfg);
        }
        if (poincare->parsed()) {
            cfg.command = "poincare";
            if (!po_eps.empty()) cfg.poincare_eps = po_eps;
            return couette::cli::run_poincare(cfg);
        }
        if (slscan->parsed()) {
            cfg.command = "slscan";
            if (!sl_k.empty()) cfg.slscan_k = sl_k;
            if (sl_amin) cfg.slscan_alpha_min = *sl_amin;
            if (sl_amax) cfg.slscan_alpha_max = *sl_amax;
            if (sl_an) cfg.slscan_alpha_n = *sl_an;
            if (sl_n) cfg.slscan_n = *sl_n;
            return couette::cli::run_slscan(cfg);
        }
        if (appendix->parsed()) {
            cfg.command = "appendix";
            return couette::cli::run_appendix(cfg);
        }
        std::cerr << "error: no command selected\n";
        return couette::cli::exit_config;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return couette::cli::exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return couette::cli::exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return couette::cli::exit_numerical;
    }
}
