// Command-line driver: eigen / constants / identity / pme / all.
//
// Exit codes: 0 success, 2 configuration error, 3 eigensolver
// non-convergence, 4 constant bound-check failure, 5 identity residual above
// threshold, 6 a held blow-up certificate contradicted by its run.

#include "CLI11.hpp"

#include "grushin/config.hpp"
#include "grushin/constants.hpp"
#include "grushin/csv.hpp"
#include "grushin/eigensolver.hpp"
#include "grushin/identity.hpp"
#include "grushin/operators.hpp"
#include "grushin/pme.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace grushin;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitBoundCheck = 4;
constexpr int kExitIdentity = 5;
constexpr int kExitBlowupBound = 6;

struct CliOverrides {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<double> p;
    std::optional<double> gamma;
    std::optional<int> grid;
    std::optional<unsigned> seed;
    std::optional<std::string> which;
};

RunConfig load_config(const CliOverrides& o) {
    RunConfig cfg;
    if (!o.config_path.empty()) cfg = RunConfig::from_file(o.config_path);
    for (const std::string& section : cfg.sections()) {
        if (section != "" && section != "domain" && section != "solver" &&
            section != "pme" && section != "constants" && section != "identity" &&
            section != "run")
            throw std::invalid_argument("config: unknown section [" + section + "]");
    }
    if (o.p) {
        cfg.set("solver", "p", CsvWriter::format_double(*o.p));
        cfg.set("constants", "p", CsvWriter::format_double(*o.p));
    }
    if (o.gamma) cfg.set("domain", "gamma", CsvWriter::format_double(*o.gamma));
    if (o.grid) cfg.set("domain", "grid", std::to_string(*o.grid));
    if (o.seed) cfg.set("run", "seed", std::to_string(*o.seed));
    if (o.which) cfg.set("constants", "which", *o.which);
    return cfg;
}

unsigned seed_of(const RunConfig& cfg) {
    return static_cast<unsigned>(cfg.get_int("run", "seed", 42));
}

DomainPtr domain_from_config(const RunConfig& cfg) {
    cfg.reject_unknown("domain", {"m", "k", "gamma", "grid", "x_lo", "x_hi", "y_lo", "y_hi"});
    const int m = cfg.get_int("domain", "m", 1);
    const int k = cfg.get_int("domain", "k", 1);
    const double gamma = cfg.get_double("domain", "gamma", 0.0);
    const int grid = cfg.get_int("domain", "grid", 64);
    const double xlo = cfg.get_double("domain", "x_lo", gamma > 0.0 ? -1.0 : 0.0);
    const double xhi = cfg.get_double("domain", "x_hi", 1.0);
    const double ylo = cfg.get_double("domain", "y_lo", 0.0);
    const double yhi = cfg.get_double("domain", "y_hi", 1.0);
    std::vector<AxisExtent> ext;
    std::vector<int> res;
    for (int c = 0; c < m; ++c) ext.push_back({xlo, xhi});
    for (int c = 0; c < k; ++c) ext.push_back({ylo, yhi});
    for (int c = 0; c < m + k; ++c) res.push_back(grid);
    return make_domain(m, k, gamma, std::move(ext), std::move(res));
}

SolverConfig solver_from_config(const RunConfig& cfg) {
    cfg.reject_unknown("solver", {"p", "tolerance", "max_iterations", "preconditioned",
                                  "eps_regularization_rel", "cg_tol", "random_restarts"});
    SolverConfig sc;
    sc.p = cfg.get_double("solver", "p", 2.0);
    sc.tolerance = cfg.get_double("solver", "tolerance", 1e-8);
    sc.max_iterations = cfg.get_int("solver", "max_iterations", 5000);
    sc.preconditioned = cfg.get_bool("solver", "preconditioned", true);
    sc.eps_regularization_rel = cfg.get_double("solver", "eps_regularization_rel", 1e-10);
    sc.cg_tol = cfg.get_double("solver", "cg_tol", 1e-10);
    sc.random_restarts = cfg.get_int("solver", "random_restarts", 0);
    return sc;
}

void ensure_out(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::invalid_argument("cannot create output directory: " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

// ---------------------------------------------------------------- eigen ----

int cmd_eigen(const CliOverrides& o) {
    RunConfig cfg = load_config(o);
    DomainPtr dom = domain_from_config(cfg);
    SolverConfig sc = solver_from_config(cfg);
    sc.seed = seed_of(cfg);
    ensure_out(o.out_dir);

    EigenPair pair = solve_first_eigenpair(dom, sc);

    CsvWriter summary(join(o.out_dir, "eigen_summary.csv"), sc.seed,
                      {"p", "gamma", "grid", "lambda1", "residual", "iterations",
                       "converged", "min_phi"});
    summary.row_begin();
    summary.field(sc.p);
    summary.field(dom->gamma());
    summary.field(static_cast<long long>(dom->resolution(0)));
    summary.field(pair.lambda1);
    summary.field(pair.residual);
    summary.field(static_cast<long long>(pair.iterations));
    summary.field(std::string(pair.converged ? "true" : "false"));
    summary.field(pair.min_phi);
    summary.row_end();

    std::vector<std::string> header;
    for (int c = 0; c < dom->n(); ++c) header.push_back("x" + std::to_string(c));
    header.push_back("re");
    header.push_back("im");
    CsvWriter phi(join(o.out_dir, "eigen_phi1.csv"), sc.seed, header);
    for (std::int64_t i = 0; i < dom->cells(); ++i) {
        phi.row_begin();
        for (double x : dom->cell_coords(i)) phi.field(x);
        phi.field(pair.phi1[i].real());
        phi.field(pair.phi1[i].imag());
        phi.row_end();
    }

    std::cout << "lambda1=" << CsvWriter::format_double(pair.lambda1)
              << " residual=" << CsvWriter::format_double(pair.residual) << "\n";
    return pair.converged ? 0 : kExitNonConvergence;
}

// ------------------------------------------------------------ constants ----

int cmd_constants(const CliOverrides& o) {
    RunConfig cfg = load_config(o);
    cfg.reject_unknown("constants", {"which", "p", "p_list_cp", "p_list", "search_radius",
                                     "coarse_grid", "refine_tol"});
    const unsigned seed = seed_of(cfg);
    ensure_out(o.out_dir);

    const std::vector<std::string> which =
        cfg.get_string_list("constants", "which", {"cp", "c1", "c2", "c3"});
    const std::vector<double> p_cp =
        cfg.get_double_list("constants", "p_list_cp", {2.0, 2.5, 3.0, 4.0, 6.0});
    const std::vector<double> p_sub =
        cfg.get_double_list("constants", "p_list", {1.1, 1.3, 1.5, 1.7, 1.9});

    ConstantQuery base;
    base.search_radius = cfg.get_double("constants", "search_radius", 1e3);
    base.coarse_grid = cfg.get_int("constants", "coarse_grid", 2001);
    base.refine_tol = cfg.get_double("constants", "refine_tol", 1e-8);

    CsvWriter csv(join(o.out_dir, "constants.csv"), seed,
                  {"p", "which", "value", "s_star", "t_star", "uncertainty",
                   "bound_check", "possibly_unbounded"});
    bool all_bounds = true;
    for (const std::string& w : which) {
        ConstantQuery q = base;
        q.which = constant_kind_from_string(w);
        std::vector<double> ps;
        if (cfg.has("constants", "p"))
            ps = {cfg.get_double("constants", "p", 2.0)};
        else
            ps = q.which == ConstantKind::CP ? p_cp : p_sub;
        for (double p : ps) {
            q.p = p;
            ConstantResult r = compute_constant(q);
            csv.row_begin();
            csv.field(p);
            csv.field(w);
            csv.field(r.value);
            csv.field(r.s);
            csv.field(r.t);
            csv.field(r.uncertainty);
            csv.field(std::string(r.bound_check ? "pass" : "fail"));
            csv.field(std::string(r.possibly_unbounded ? "true" : "false"));
            csv.row_end();
            std::cout << w << "(p=" << p << ") = " << CsvWriter::format_double(r.value)
                      << " bound_check=" << (r.bound_check ? "pass" : "fail") << "\n";
            all_bounds = all_bounds && r.bound_check;
        }
    }
    return all_bounds ? 0 : kExitBoundCheck;
}

// ------------------------------------------------------------- identity ----

ScalarField make_family(const DomainPtr& dom, const std::string& family) {
    if (family == "gaussian") return make_gaussian_bump(dom);
    if (family == "cosine") return make_shifted_cosine(dom);
    if (family == "phase") return make_phase_bump(dom);
    throw std::invalid_argument("unknown phi family: " + family);
}

int cmd_identity(const CliOverrides& o) {
    RunConfig cfg = load_config(o);
    cfg.reject_unknown("identity", {"p_list", "gamma_list", "grid_list", "families",
                                    "threshold", "attainment_threshold"});
    const unsigned seed = seed_of(cfg);
    ensure_out(o.out_dir);

    const std::vector<double> p_list = cfg.get_double_list("identity", "p_list", {1.5, 2.0, 3.0});
    const std::vector<double> gamma_list =
        cfg.get_double_list("identity", "gamma_list", {0.0, 1.0});
    const std::vector<double> grid_list =
        cfg.get_double_list("identity", "grid_list", {32, 64, 128});
    const std::vector<std::string> families =
        cfg.get_string_list("identity", "families", {"gaussian", "cosine", "phase"});
    const double threshold = cfg.get_double("identity", "threshold", 1e-2);
    const double att_threshold = cfg.get_double("identity", "attainment_threshold", 1e-6);

    CsvWriter csv(join(o.out_dir, "identity.csv"), seed,
                  {"case_id", "p", "gamma", "grid", "phi_family", "lhs", "rhs",
                   "abs_residual", "rel_residual", "rhs_imag", "pass"});
    bool all_pass = true;
    long long case_id = 0;
    unsigned case_seed = seed;
    for (double p : p_list) {
        for (double gamma : gamma_list) {
            for (const std::string& family : families) {
                ++case_seed;
                double prev = 1e300;
                for (std::size_t gi = 0; gi < grid_list.size(); ++gi) {
                    const int N = static_cast<int>(grid_list[gi]);
                    const AxisExtent xe = gamma > 0.0 ? AxisExtent{-1, 1} : AxisExtent{0, 1};
                    DomainPtr dom = make_domain_2d(gamma, xe, {0, 1}, N, N);
                    ScalarField phi = make_family(dom, family);
                    ScalarField u = make_random_smooth(dom, case_seed);
                    IdentityReport rep = verify_main_identity(u, phi, p);
                    bool pass = true;
                    if (gi + 1 == grid_list.size()) pass = rep.rel_residual <= threshold;
                    if (gi > 0) pass = pass && rep.rel_residual <= prev * 1.05;
                    prev = rep.rel_residual;
                    csv.row_begin();
                    csv.field(case_id++);
                    csv.field(p);
                    csv.field(gamma);
                    csv.field(static_cast<long long>(N));
                    csv.field(family);
                    csv.field(rep.lhs);
                    csv.field(rep.rhs);
                    csv.field(rep.abs_residual);
                    csv.field(rep.rel_residual);
                    csv.field(rep.rhs_imag);
                    csv.field(std::string(pass ? "true" : "false"));
                    csv.row_end();
                    all_pass = all_pass && pass;
                }
            }
        }
    }

    // attainment rows: u = c phi1 in the remainder formula at the final grid
    const int N = static_cast<int>(grid_list.back());
    for (double gamma : gamma_list) {
        const AxisExtent xe = gamma > 0.0 ? AxisExtent{-1, 1} : AxisExtent{0, 1};
        DomainPtr dom = make_domain_2d(gamma, xe, {0, 1}, N, N);
        SolverConfig sc;
        sc.p = 2.0;
        sc.tolerance = 1e-12;
        EigenPair pair = solve_first_eigenpair(dom, sc);
        ScalarField u(dom);
        const cplx c(1.0, 0.5);
        for (std::int64_t i = 0; i < u.size(); ++i) u[i] = c * pair.phi1[i];
        IdentityReport rep = verify_remainder_formula(u, pair, 2.0);
        const double scale = std::max(energy_p(u, 2.0), 1e-30);
        const bool pass = rep.abs_residual / scale <= att_threshold;
        csv.row_begin();
        csv.field(case_id++);
        csv.field(2.0);
        csv.field(gamma);
        csv.field(static_cast<long long>(N));
        csv.field(std::string("attainment"));
        csv.field(rep.lhs);
        csv.field(rep.rhs);
        csv.field(rep.abs_residual);
        csv.field(rep.abs_residual / scale);
        csv.field(0.0);
        csv.field(std::string(pass ? "true" : "false"));
        csv.row_end();
        all_pass = all_pass && pass;
    }

    std::cout << (all_pass ? "identity: all cases pass\n"
                           : "identity: residual threshold exceeded\n");
    return all_pass ? 0 : kExitIdentity;
}

// ------------------------------------------------------------------ pme ----

int cmd_pme(const CliOverrides& o) {
    RunConfig cfg = load_config(o);
    cfg.reject_unknown("pme", {"ell", "source", "q", "amplitude", "alpha", "beta", "theta",
                               "t_max", "blowup_threshold", "record_every", "certificate"});
    const unsigned seed = seed_of(cfg);
    ensure_out(o.out_dir);

    DomainPtr dom = domain_from_config(cfg);
    SolverConfig sc = solver_from_config(cfg);

    PmeProblem pb;
    pb.domain = dom;
    pb.p = sc.p;
    pb.ell = cfg.get_double("pme", "ell", 1.0);
    const std::string source = cfg.get_string("pme", "source", "zero");
    if (source == "zero") pb.source = PmeSource::zero();
    else if (source == "power") pb.source = PmeSource::power_law(cfg.get_double("pme", "q", 3.0));
    else throw std::invalid_argument("config: [pme] source must be zero or power");

    const double amplitude = cfg.get_double("pme", "amplitude", 1.0);
    pb.u0 = product_of_sines(dom);
    for (std::int64_t i = 0; i < pb.u0.size(); ++i) pb.u0[i] *= amplitude;

    EigenPair pair = solve_first_eigenpair(dom, sc);
    if (!pair.converged) return kExitNonConvergence;
    pb.lambda1 = pair.lambda1;

    pb.cert.alpha = cfg.get_double("pme", "alpha", 0.0);
    pb.cert.theta = cfg.get_double("pme", "theta", 0.0);
    const std::string cert_kind = cfg.get_string("pme", "certificate", "none");
    const std::string beta_str = cfg.get_string("pme", "beta", "auto");
    if (beta_str == "auto") {
        const double window = pb.lambda1 * (pb.cert.alpha - pb.ell - 1.0) / (pb.ell + 1.0);
        pb.cert.beta = cert_kind == "blowup" ? std::min(1.0, window) : window;
    } else {
        pb.cert.beta = cfg.get_double("pme", "beta", 0.0);
    }

    CertificateReport cert;
    bool have_cert = false;
    if (cert_kind == "blowup") {
        cert = check_blowup_certificate(pb);
        have_cert = true;
    } else if (cert_kind == "global") {
        cert = check_global_certificate(pb);
        have_cert = true;
    } else if (cert_kind != "none") {
        throw std::invalid_argument("config: [pme] certificate must be none, blowup or global");
    }

    const double t_max = cfg.get_double("pme", "t_max", 0.5);
    const double threshold = cfg.get_double("pme", "blowup_threshold", 0.0);
    const int record_every = cfg.get_int("pme", "record_every", 20);
    PmeTrace tr = run(pb, t_max, threshold, record_every);

    CsvWriter csv(join(o.out_dir, "pme_trace.csv"), seed, {"t", "mass", "J", "E", "sup_u"});
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        csv.row_begin();
        csv.field(tr.times[i]);
        csv.field(tr.mass[i]);
        csv.field(tr.J[i]);
        csv.field(tr.E[i]);
        csv.field(tr.sup_u[i]);
        csv.row_end();
    }

    std::ofstream rep(join(o.out_dir, "pme_certificate.txt"));
    if (have_cert) rep << cert.to_text();
    else rep << "certificate: none requested\n";
    rep << "run status: " << to_string(tr.status) << "\n";
    if (tr.status == PmeStatus::BlowUpDetected)
        rep << "t_detect: " << CsvWriter::format_double(tr.t_detect) << "\n";
    rep << "steps: " << tr.steps << "\n";
    rep << "max_clamp: " << CsvWriter::format_double(tr.max_clamp) << "\n";

    std::cout << "pme status=" << to_string(tr.status);
    if (tr.status == PmeStatus::BlowUpDetected)
        std::cout << " t_detect=" << CsvWriter::format_double(tr.t_detect);
    if (have_cert) std::cout << " certificate_holds=" << (cert.holds ? "true" : "false");
    std::cout << "\n";

    if (have_cert && cert.kind == CertificateReport::Kind::BlowUp && cert.holds) {
        if (tr.status != PmeStatus::BlowUpDetected || tr.t_detect > cert.Tstar_bound)
            return kExitBlowupBound;
    }
    return 0;
}

// ------------------------------------------------------------------ all ----

int run_pme_bundle(const CliOverrides& base, const std::string& name, const char* body) {
    CliOverrides e;
    e.out_dir = join(base.out_dir, name);
    e.seed = base.seed;
    ensure_out(e.out_dir);
    const std::string path = join(e.out_dir, "config.ini");
    std::ofstream f(path);
    f << body;
    f.close();
    e.config_path = path;
    return cmd_pme(e);
}

int cmd_all(const CliOverrides& o) {
    ensure_out(o.out_dir);
    int worst = 0;
    auto track = [&worst](int rc) {
        if (rc != 0 && worst == 0) worst = rc;
    };

    CliOverrides e0 = o;
    e0.out_dir = join(o.out_dir, "eigen_gamma0");
    e0.p = 2.0;
    e0.gamma = 0.0;
    e0.grid = 128;
    track(cmd_eigen(e0));

    CliOverrides e1 = o;
    e1.out_dir = join(o.out_dir, "eigen_gamma1");
    e1.p = 2.0;
    e1.gamma = 1.0;
    e1.grid = 32;
    track(cmd_eigen(e1));

    CliOverrides ec = o;
    ec.out_dir = join(o.out_dir, "constants");
    track(cmd_constants(ec));

    CliOverrides ei = o;
    ei.out_dir = join(o.out_dir, "identity");
    track(cmd_identity(ei));

    track(run_pme_bundle(o, "pme_blowup",
                         "[domain]\ngamma = 0\ngrid = 64\n[solver]\np = 2\n"
                         "[pme]\nsource = power\nq = 3\nell = 1\namplitude = 10\n"
                         "alpha = 4\ntheta = 0.01\ncertificate = blowup\nt_max = 10\n"));
    track(run_pme_bundle(o, "pme_global",
                         "[domain]\ngamma = 0\ngrid = 64\n[solver]\np = 2\n"
                         "[pme]\nsource = power\nq = 3\nell = 1\namplitude = 0.5\n"
                         "alpha = -2\ntheta = 0\ncertificate = global\nt_max = 0.5\n"));
    track(run_pme_bundle(o, "pme_zero",
                         "[domain]\ngamma = 0\ngrid = 64\n[solver]\np = 2\n"
                         "[pme]\nsource = zero\nell = 1\namplitude = 1\nt_max = 0.2\n"));

    std::cout << "all: done (exit " << worst << ")\n";
    return worst;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grushin Lp-Poincare remainder toolkit"};
    app.require_subcommand(1);

    CliOverrides o;
    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "configuration file (ini)");
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_option_function<double>("--p", [&o](double v) { o.p = v; }, "exponent p");
        sub->add_option_function<double>("--gamma", [&o](double v) { o.gamma = v; },
                                         "degeneracy exponent");
        sub->add_option_function<int>("--grid", [&o](int v) { o.grid = v; }, "cells per axis");
        sub->add_option_function<unsigned>("--seed", [&o](unsigned v) { o.seed = v; }, "RNG seed");
        sub->add_option_function<std::string>("--which", [&o](std::string v) { o.which = v; },
                                              "constant kind (constants subcommand)");
    };

    CLI::App* eigen = app.add_subcommand("eigen", "first Dirichlet eigenpair of -Delta_{gamma,p}");
    CLI::App* constants = app.add_subcommand("constants", "remainder constants c_p, c_1, c_2, c_3");
    CLI::App* identity = app.add_subcommand("identity", "integral identity and sharpness checks");
    CLI::App* pme = app.add_subcommand("pme", "porous-medium simulation with certificates");
    CLI::App* all = app.add_subcommand("all", "full experiment battery");
    for (CLI::App* sub : {eigen, constants, identity, pme, all}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eigen->parsed()) return cmd_eigen(o);
        if (constants->parsed()) return cmd_constants(o);
        if (identity->parsed()) return cmd_identity(o);
        if (pme->parsed()) return cmd_pme(o);
        if (all->parsed()) return cmd_all(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
