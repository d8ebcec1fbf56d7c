#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "couette/flows.hpp"
#include "couette/functional_bounds.hpp"
#include "couette/json_io.hpp"
#include "couette/numerics.hpp"
#include "couette/spectral.hpp"
#include "couette/stability.hpp"
#include "couette/verify.hpp"

#include "svg_heatmap.hpp"

namespace couette::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Output sink: --out path or stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw std::invalid_argument("cannot open output file: " + path);
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

Annulus make_annulus(const RunConfig& cfg) {
    return Annulus(cfg.r_inner, cfg.r_outer);
}

FlowSpec make_spec(const RunConfig& cfg) {
    const auto family = family_from_string(cfg.family);
    if (!family) throw std::invalid_argument("unknown flow family: " + cfg.family);
    return FlowSpec(*family, cfg.alpha, cfg.beta, cfg.gamma);
}

void echo_config(const RunConfig& cfg) {
    std::cerr << cfg.resolved().dump() << "\n";
}

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs body(i) for i in [0, n) on a worker pool; each index writes only its
/// own output slot, so assembly is deterministic for any worker count. The
/// first worker exception is rethrown on the calling thread.
void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
    const int workers = std::max(1, std::min(resolve_jobs(jobs), n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    body(i);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n); // drain remaining work
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

template <typename T>
std::vector<T> get_list(const nlohmann::json& j, const char* key,
                        std::vector<T> fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<std::vector<T>>();
}

} // namespace

void RunConfig::apply_json(const nlohmann::json& j) {
    if (j.contains("annulus")) {
        const auto& a = j.at("annulus");
        r_inner = a.value("r_inner", r_inner);
        r_outer = a.value("r_outer", r_outer);
    }
    if (j.contains("flow")) {
        const auto& f = j.at("flow");
        family = f.value("family", family);
        alpha = f.value("alpha", alpha);
        beta = f.value("beta", beta);
        gamma = f.value("gamma", gamma);
    }
    seed = j.value("seed", seed);
    if (j.contains("tol")) {
        tol = j.at("tol").get<double>();
        tol_explicit = true;
    }
    jobs = j.value("jobs", jobs);
    out = j.value("out", out);

    if (j.contains("eval")) {
        const auto& e = j.at("eval");
        eval_n_rho = e.value("n_rho", eval_n_rho);
        eval_theta = e.value("theta", eval_theta);
        eval_z = e.value("z", eval_z);
    }
    if (j.contains("verify")) {
        const auto& v = j.at("verify");
        verify_mode = v.value("mode", verify_mode);
        verify_samples = v.value("n_samples", verify_samples);
        verify_fd_step = v.value("fd_step", verify_fd_step);
        verify_perturb = v.value("perturb", verify_perturb);
    }
    if (j.contains("stability")) {
        const auto& s = j.at("stability");
        stability_theorem = s.value("theorem", stability_theorem);
        stability_bound = s.value("bound", stability_bound);
        if (s.contains("lambda") && !s.at("lambda").is_null()) {
            stability_lambda = s.at("lambda").get<double>();
        }
        stability_specs_file = s.value("specs_file", stability_specs_file);
    }
    if (j.contains("map")) {
        const auto& m = j.at("map");
        map_alpha_min = m.value("alpha_min", map_alpha_min);
        map_alpha_max = m.value("alpha_max", map_alpha_max);
        map_beta_min = m.value("beta_min", map_beta_min);
        map_beta_max = m.value("beta_max", map_beta_max);
        map_n_alpha = m.value("n_alpha", map_n_alpha);
        map_n_beta = m.value("n_beta", map_n_beta);
        map_gammas = get_list<double>(m, "gammas", map_gammas);
        map_svg = m.value("svg", map_svg);
        stability_bound = m.value("bound", stability_bound);
        if (m.contains("lambda") && !m.at("lambda").is_null()) {
            stability_lambda = m.at("lambda").get<double>();
        }
    }
    if (j.contains("poincare")) {
        const auto& p = j.at("poincare");
        poincare_eps = get_list<double>(p, "eps", poincare_eps);
        poincare_n_rho = p.value("n_rho", poincare_n_rho);
        poincare_n_z = p.value("n_z", poincare_n_z);
    }
    if (j.contains("slscan")) {
        const auto& s = j.at("slscan");
        slscan_k = get_list<int>(s, "k", slscan_k);
        slscan_alpha_min = s.value("alpha_min", slscan_alpha_min);
        slscan_alpha_max = s.value("alpha_max", slscan_alpha_max);
        slscan_alpha_n = s.value("n_alpha", slscan_alpha_n);
        slscan_n = s.value("n", slscan_n);
    }
    if (j.contains("appendix")) {
        const auto& ap = j.at("appendix");
        appendix_r1_seq = get_list<double>(ap, "r1_sequence", appendix_r1_seq);
        appendix_r2_seq = get_list<double>(ap, "r2_sequence", appendix_r2_seq);
        appendix_gap_seq = get_list<double>(ap, "gap_sequence", appendix_gap_seq);
        appendix_eps = get_list<double>(ap, "eps", appendix_eps);
    }
}

nlohmann::json RunConfig::resolved() const {
    nlohmann::json j{
        {"command", command},
        {"annulus", {{"r_inner", r_inner}, {"r_outer", r_outer}}},
        {"flow",
         {{"family", family}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}}},
        {"seed", seed},
        {"tol", tol},
        {"jobs", jobs},
        {"out", out},
    };
    if (command == "eval") {
        j["eval"] = {{"n_rho", eval_n_rho}, {"theta", eval_theta}, {"z", eval_z}};
    } else if (command == "verify") {
        j["verify"] = {{"mode", verify_mode},
                       {"n_samples", verify_samples},
                       {"fd_step", verify_fd_step},
                       {"perturb", verify_perturb}};
    } else if (command == "stability") {
        j["stability"] = {{"theorem", stability_theorem},
                          {"bound", stability_bound},
                          {"lambda", stability_lambda
                                         ? nlohmann::json(*stability_lambda)
                                         : nlohmann::json(nullptr)},
                          {"specs_file", stability_specs_file}};
    } else if (command == "map") {
        j["map"] = {{"alpha_min", map_alpha_min}, {"alpha_max", map_alpha_max},
                    {"beta_min", map_beta_min},   {"beta_max", map_beta_max},
                    {"n_alpha", map_n_alpha},     {"n_beta", map_n_beta},
                    {"gammas", map_gammas},       {"svg", map_svg},
                    {"bound", stability_bound},
                    {"lambda", stability_lambda ? nlohmann::json(*stability_lambda)
                                                : nlohmann::json(nullptr)}};
    } else if (command == "poincare") {
        j["poincare"] = {{"eps", poincare_eps},
                         {"n_rho", poincare_n_rho},
                         {"n_z", poincare_n_z}};
    } else if (command == "slscan") {
        j["slscan"] = {{"k", slscan_k},
                       {"alpha_min", slscan_alpha_min},
                       {"alpha_max", slscan_alpha_max},
                       {"n_alpha", slscan_alpha_n},
                       {"n", slscan_n}};
    } else if (command == "appendix") {
        j["appendix"] = {{"r1_sequence", appendix_r1_seq},
                         {"r2_sequence", appendix_r2_seq},
                         {"gap_sequence", appendix_gap_seq},
                         {"eps", appendix_eps}};
    }
    return j;
}

int run_eval(const RunConfig& cfg) {
    echo_config(cfg);
    const Annulus a = make_annulus(cfg);
    const FlowSpec spec = make_spec(cfg);
    if (cfg.eval_n_rho < 2) throw std::invalid_argument("eval needs n_rho >= 2");

    Sink sink(cfg.out);
    auto& os = sink.stream();
    os << "rho,theta,z,u_rho,u_theta,u_z,p,w_rho,w_theta,w_z\n";
    const double h = a.gap() / (cfg.eval_n_rho - 1);
    for (int i = 0; i < cfg.eval_n_rho; ++i) {
        const double rho =
            (i == cfg.eval_n_rho - 1) ? a.r_outer() : a.r_inner() + i * h;
        const CylPoint p{rho, cfg.eval_theta, cfg.eval_z};
        const CylVector u = velocity(spec, a, p);
        const double q = pressure(spec, a, p);
        const CylVector w = vorticity(spec, a, p);
        os << fmt(rho) << ',' << fmt(p.theta) << ',' << fmt(p.z) << ','
           << fmt(u.v_rho) << ',' << fmt(u.v_theta) << ',' << fmt(u.v_z) << ','
           << fmt(q) << ',' << fmt(w.v_rho) << ',' << fmt(w.v_theta) << ','
           << fmt(w.v_z) << '\n';
    }
    return exit_ok;
}

namespace {

/// Smooth deterministic perturbation lattice used by verify --perturb.
CylVector perturbation(const CylPoint& p, const Annulus& a, double amp,
                       std::uint64_t seed) {
    const double xi = (p.rho - a.r_inner()) / a.gap();
    const double phase = 0.1 * static_cast<double>(seed % 63);
    const double s1 = std::sin(7.0 * std::numbers::pi * xi + phase);
    const double s2 = std::sin(3.0 * p.theta + 1.3 + phase);
    const double s3 = std::sin(2.0 * p.z + 0.7);
    return {amp * s1 * s2 * s3, amp * s1 * std::cos(2.0 * p.theta) * s3,
            amp * std::cos(5.0 * std::numbers::pi * xi) * s2};
}

std::vector<CylPoint> fd_sample_points(const Annulus& a, int n, double margin,
                                       std::uint64_t seed) {
    std::vector<CylPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const double lo = a.r_inner() + margin;
    const double hi = a.r_outer() - margin;
    if (!(hi > lo)) throw std::invalid_argument("fd margin swallows the annulus");
    const std::uint64_t start = 1 + 7919 * seed;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t idx = start + static_cast<std::uint64_t>(i);
        pts.emplace_back(lo + (hi - lo) * num::halton(idx, 2),
                         2.0 * std::numbers::pi * num::halton(idx, 3),
                         a.gap() * (2.0 * num::halton(idx, 5) - 1.0));
    }
    return pts;
}

} // namespace

int run_verify(const RunConfig& cfg) {
    echo_config(cfg);
    const Annulus a = make_annulus(cfg);
    Sink sink(cfg.out);

    if (cfg.verify_mode == "counterexample") {
        const double h = 1e-5 * a.gap();
        const auto field = [](const CylPoint& p) { return counterexample_field(p); };
        double div_max = 0.0, curl_max = 0.0, imp_max = 0.0;
        for (const CylPoint& p : fd_sample_points(a, cfg.verify_samples, 2.0 * h,
                                                  cfg.seed)) {
            div_max = std::max(div_max, std::abs(fd_divergence(field, a, p, h)));
            curl_max = std::max(curl_max, fd_curl(field, a, p, h).norm());
        }
        for (Wall wall : {Wall::inner, Wall::outer}) {
            for (const CylPoint& p : sample_wall(a, wall, 64, cfg.seed)) {
                imp_max = std::max(imp_max, std::abs(counterexample_field(p).v_rho));
            }
        }
        nlohmann::json j{{"mode", "counterexample"},
                         {"fd_step", h},
                         {"n_samples", cfg.verify_samples},
                         {"div_max", div_max},
                         {"curl_max", curl_max},
                         {"impermeability_max", imp_max}};
        sink.stream() << j.dump(2) << "\n";
        const double tol = cfg.tol_explicit ? cfg.tol : 1e-8;
        return (div_max <= tol && curl_max <= tol && imp_max == 0.0)
                   ? exit_ok
                   : exit_numerical;
    }

    const FlowSpec spec = make_spec(cfg);

    if (cfg.verify_mode == "closed") {
        const auto points = sample_interior(a, cfg.verify_samples, cfg.seed);
        const ResidualReport residual =
            ns_residual_closed(spec, a, points, cfg.seed);
        const BoundaryReport boundary =
            boundary_check(spec, a, std::min(cfg.verify_samples, 1000), cfg.seed);
        nlohmann::json j{{"mode", "closed"},
                         {"residual", residual},
                         {"boundary", boundary}};
        sink.stream() << j.dump(2) << "\n";
        return (residual.max_abs <= cfg.tol &&
                boundary.max_violation <= cfg.tol)
                   ? exit_ok
                   : exit_numerical;
    }

    if (cfg.verify_mode == "fd") {
        const double h =
            cfg.verify_fd_step > 0.0 ? cfg.verify_fd_step : default_fd_step(a);
        FlowField field = make_flow_field(spec, a);
        if (cfg.verify_perturb != 0.0) {
            const double amp = cfg.verify_perturb;
            const std::uint64_t seed = cfg.seed;
            const auto base = field.velocity;
            field.velocity = [base, a, amp, seed](const CylPoint& p) {
                const CylVector u = base(p);
                const CylVector n = perturbation(p, a, amp, seed);
                return CylVector{u.v_rho + n.v_rho, u.v_theta + n.v_theta,
                                 u.v_z + n.v_z};
            };
        }
        const int n = std::min(cfg.verify_samples, 2000);
        double max_abs = 0.0;
        std::array<double, 4> per_eq{};
        for (const CylPoint& p : fd_sample_points(a, n, 2.0 * h, cfg.seed)) {
            const FdResidual r = ns_residual_fd(field, a, p, h);
            for (int e = 0; e < 3; ++e) {
                per_eq[static_cast<std::size_t>(e)] =
                    std::max(per_eq[static_cast<std::size_t>(e)],
                             std::abs(r.momentum[static_cast<std::size_t>(e)]));
            }
            per_eq[3] = std::max(per_eq[3], std::abs(r.divergence));
            max_abs = std::max(max_abs, r.max_abs());
        }
        // Central differences cannot resolve below the truncation floor, so
        // the default gate is looser than the closed-form one.
        const double tol = cfg.tol_explicit ? cfg.tol : 1e-6;
        nlohmann::json j{{"mode", "fd"},
                         {"fd_step", h},
                         {"n_samples", n},
                         {"perturb", cfg.verify_perturb},
                         {"max_abs", max_abs},
                         {"per_equation_max", per_eq},
                         {"tol", tol}};
        sink.stream() << j.dump(2) << "\n";
        return max_abs <= tol ? exit_ok : exit_numerical;
    }

    throw std::invalid_argument("unknown verify mode: " + cfg.verify_mode);
}

namespace {

StabilityReport certify_from_config(const RunConfig& cfg, const FlowSpec& spec,
                                    const Annulus& a) {
    const BoundSource source = cfg.stability_bound == "user"
                                   ? BoundSource::user_value
                                   : BoundSource::builtin_lower;
    if (cfg.stability_bound != "user" && cfg.stability_bound != "builtin") {
        throw std::invalid_argument("bound must be 'builtin' or 'user'");
    }
    StabilityTheorem theorem;
    if (cfg.stability_theorem == "auto") {
        theorem = default_theorem(spec.family);
    } else {
        const auto t = theorem_from_string(cfg.stability_theorem);
        if (!t) {
            throw std::invalid_argument("unknown theorem tag: " +
                                        cfg.stability_theorem);
        }
        theorem = *t;
    }
    return certify(spec, a, theorem, source, cfg.stability_lambda);
}

} // namespace

int run_stability(const RunConfig& cfg) {
    echo_config(cfg);
    const Annulus a = make_annulus(cfg);
    Sink sink(cfg.out);

    if (!cfg.stability_specs_file.empty()) {
        std::ifstream in(cfg.stability_specs_file);
        if (!in) {
            throw std::invalid_argument("cannot open specs file: " +
                                        cfg.stability_specs_file);
        }
        nlohmann::json batch = nlohmann::json::parse(in);
        if (!batch.is_array()) {
            throw std::invalid_argument("specs file must hold a JSON array");
        }
        nlohmann::json out = nlohmann::json::array();
        for (const auto& item : batch) {
            const FlowSpec spec = flow_spec_from_json(item);
            out.push_back(certify_from_config(cfg, spec, a));
        }
        sink.stream() << out.dump(2) << "\n";
        return exit_ok;
    }

    const StabilityReport report = certify_from_config(cfg, make_spec(cfg), a);
    sink.stream() << nlohmann::json(report).dump(2) << "\n";
    return exit_ok;
}

int run_map(const RunConfig& cfg) {
    echo_config(cfg);
    const Annulus a = make_annulus(cfg);
    const auto family = family_from_string(cfg.family);
    if (!family) throw std::invalid_argument("unknown flow family: " + cfg.family);
    if (cfg.map_n_alpha < 2 || cfg.map_n_beta < 2) {
        throw std::invalid_argument("map grid needs at least 2x2 cells");
    }

    const bool vorticity_family = is_vorticity(*family);
    const bool couette_family = is_couette(*family);
    std::vector<double> gammas = cfg.map_gammas;
    if (gammas.empty()) gammas = {vorticity_family ? cfg.gamma : 0.0};
    if (!vorticity_family) gammas = {0.0};

    const StabilityTheorem theorem = default_theorem(*family);
    // The bound does not depend on the cell parameters.
    double lambda = 0.0;
    bool applicable = true;
    {
        const FlowSpec origin(*family, 0.0, 0.0, 0.0);
        const StabilityReport r =
            cfg.stability_bound == "user"
                ? certify(origin, a, theorem, BoundSource::user_value,
                          cfg.stability_lambda)
                : certify(origin, a, theorem);
        lambda = r.lambda_lower;
        applicable = r.applicable;
    }

    const double d_alpha =
        (cfg.map_alpha_max - cfg.map_alpha_min) / (cfg.map_n_alpha - 1);
    const double d_beta =
        (cfg.map_beta_max - cfg.map_beta_min) / (cfg.map_n_beta - 1);

    struct Row {
        double alpha, beta, gamma, m;
        bool certified;
    };
    const int cells_per_slice = cfg.map_n_alpha * cfg.map_n_beta;
    const int total = cells_per_slice * static_cast<int>(gammas.size());
    std::vector<Row> rows(static_cast<std::size_t>(total));

    parallel_for(total, cfg.jobs, [&](int idx) {
        const int slice = idx / cells_per_slice;
        const int cell = idx % cells_per_slice;
        const int jb = cell / cfg.map_n_alpha;
        const int ia = cell % cfg.map_n_alpha;
        const double alpha = cfg.map_alpha_min + ia * d_alpha;
        const double beta_raw = cfg.map_beta_min + jb * d_beta;
        const double beta = couette_family ? 0.0 : beta_raw;
        const double gamma = gammas[static_cast<std::size_t>(slice)];
        const FlowSpec spec(*family, alpha, beta, gamma);
        const double m = m_constant(spec, a).value;
        rows[static_cast<std::size_t>(idx)] =
            Row{alpha, beta_raw, gamma, m, applicable && m < lambda};
    });

    Sink sink(cfg.out);
    auto& os = sink.stream();
    if (vorticity_family) {
        os << "alpha,beta,gamma,m,bound,certified\n";
    } else {
        os << "alpha,beta,m,bound,certified\n";
    }
    for (const Row& r : rows) {
        os << fmt(r.alpha) << ',' << fmt(r.beta) << ',';
        if (vorticity_family) os << fmt(r.gamma) << ',';
        os << fmt(r.m) << ',' << fmt(lambda) << ',' << (r.certified ? 1 : 0)
           << '\n';
    }

    if (!cfg.map_svg.empty()) {
        HeatMap map;
        map.nx = cfg.map_n_alpha;
        map.ny = cfg.map_n_beta;
        map.x_min = cfg.map_alpha_min;
        map.x_max = cfg.map_alpha_max;
        map.y_min = cfg.map_beta_min;
        map.y_max = cfg.map_beta_max;
        map.x_label = "alpha";
        map.y_label = "beta";
        std::ostringstream title;
        title << cfg.family << "  bound=" << lambda;
        map.title = title.str();
        map.value.resize(static_cast<std::size_t>(cells_per_slice));
        map.flag.resize(static_cast<std::size_t>(cells_per_slice));
        // First gamma slice only; one file per run keeps the artifact simple.
        for (int cell = 0; cell < cells_per_slice; ++cell) {
            const Row& r = rows[static_cast<std::size_t>(cell)];
            const int jb = cell / cfg.map_n_alpha;
            const int ia = cell % cfg.map_n_alpha;
            const std::size_t at = static_cast<std::size_t>(jb) *
                                       static_cast<std::size_t>(cfg.map_n_alpha) +
                                   static_cast<std::size_t>(ia);
            map.value[at] = r.m;
            map.flag[at] = r.certified ? 1 : 0;
        }
        std::ofstream svg(cfg.map_svg, std::ios::binary);
        if (!svg) throw std::invalid_argument("cannot open svg file: " + cfg.map_svg);
        write_svg_heatmap(svg, map);
    }
    return exit_ok;
}

int run_poincare(const RunConfig& cfg) {
    echo_config(cfg);
    const Annulus a = make_annulus(cfg);
    Sink sink(cfg.out);

    nlohmann::json quotients = nlohmann::json::array();
    for (double eps : cfg.poincare_eps) {
        const VEpsilonQuotient q =
            v_epsilon_rayleigh(a, eps, cfg.poincare_n_rho, cfg.poincare_n_z);
        quotients.push_back({{"eps", eps},
                             {"numeric_quotient", q.numeric_quotient},
                             {"closed_quotient", q.closed_quotient},
                             {"numeric_l2_sq", q.numeric_l2_sq},
                             {"closed_l2_sq", q.closed_l2_sq},
                             {"numeric_grad_sq", q.numeric_grad_sq},
                             {"closed_grad_sq", q.closed_grad_sq}});
    }
    nlohmann::json j{{"bounds", bound_set(a)}, {"v_epsilon", quotients}};
    sink.stream() << j.dump(2) << "\n";
    return exit_ok;
}

int run_slscan(const RunConfig& cfg) {
    echo_config(cfg);
    const Annulus a = make_annulus(cfg);
    const Grid1D grid(a, cfg.slscan_n);
    const auto alphas = uniform_alpha_grid(cfg.slscan_alpha_min,
                                           cfg.slscan_alpha_max,
                                           cfg.slscan_alpha_n);

    std::vector<SLScanResult> results(cfg.slscan_k.size());
    parallel_for(static_cast<int>(cfg.slscan_k.size()), cfg.jobs, [&](int i) {
        results[static_cast<std::size_t>(i)] =
            sl_scan(a, cfg.slscan_k[static_cast<std::size_t>(i)], alphas, grid);
    });

    Sink sink(cfg.out);
    auto& os = sink.stream();
    os << "k,alpha,sigma_min,n\n";
    for (const SLScanResult& res : results) {
        for (std::size_t i = 0; i < res.alpha_grid.size(); ++i) {
            os << res.k << ',' << fmt(res.alpha_grid[i]) << ','
               << fmt(res.sigma_min[i]) << ',' << res.n << '\n';
        }
    }
    return exit_ok;
}

int run_appendix(const RunConfig& cfg) {
    echo_config(cfg);
    const std::string prefix = cfg.out.empty() ? "appendix" : cfg.out;

    std::vector<Annulus> annuli;
    for (double r1 : cfg.appendix_r1_seq) annuli.emplace_back(r1, 1.0);
    for (double r2 : cfg.appendix_r2_seq) annuli.emplace_back(1.0, r2);
    for (double gap : cfg.appendix_gap_seq) annuli.emplace_back(1.0, 1.0 + gap);

    {
        std::ofstream os(prefix + ".phi.csv", std::ios::binary);
        if (!os) throw std::invalid_argument("cannot open " + prefix + ".phi.csv");
        os << "r1,r2,phi1,phi2,scaled_phi1\n";
        for (const PhiRow& row : phi_asymptotics(annuli)) {
            os << fmt(row.r1) << ',' << fmt(row.r2) << ',' << fmt(row.phi1) << ','
               << fmt(row.phi2) << ',' << fmt(row.scaled_phi1) << '\n';
        }
    }
    {
        std::ofstream os(prefix + ".bounds.csv", std::ios::binary);
        if (!os) throw std::invalid_argument("cannot open " + prefix + ".bounds.csv");
        os << "r1,r2,lower_square,lower_radial,lower_best,upper,curl_factor,"
              "alpha_certified,beta_certified,alpha_cap,beta_cap\n";
        for (const Annulus& a : annuli) {
            const BoundSet b = bound_set(a);
            const double p1 = phi_rotational(a);
            const double p2 = phi_axial(a);
            os << fmt(a.r_inner()) << ',' << fmt(a.r_outer()) << ','
               << fmt(b.lower_square) << ',' << fmt(b.lower_radial) << ','
               << fmt(b.lower_best) << ',' << fmt(b.upper) << ','
               << fmt(b.curl_factor) << ',' << fmt(b.lower_best / std::sqrt(p1))
               << ',' << fmt(4.0 * b.lower_best / std::sqrt(p2)) << ','
               << fmt(b.upper / std::sqrt(p1)) << ','
               << fmt(4.0 * b.upper / std::sqrt(p2)) << '\n';
        }
    }
    {
        std::ofstream os(prefix + ".veps.csv", std::ios::binary);
        if (!os) throw std::invalid_argument("cannot open " + prefix + ".veps.csv");
        os << "r1,r2,eps,numeric_quotient,closed_quotient,rel_error\n";
        const Annulus a = make_annulus(cfg);
        for (double eps : cfg.appendix_eps) {
            const VEpsilonQuotient q = v_epsilon_rayleigh(a, eps);
            const double rel = std::abs(q.numeric_quotient - q.closed_quotient) /
                               q.closed_quotient;
            os << fmt(a.r_inner()) << ',' << fmt(a.r_outer()) << ',' << fmt(eps)
               << ',' << fmt(q.numeric_quotient) << ',' << fmt(q.closed_quotient)
               << ',' << fmt(rel) << '\n';
        }
    }
    return exit_ok;
}

} // namespace couette::cli
