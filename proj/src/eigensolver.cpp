#include "grushin/eigensolver.hpp"

#include "grushin/detail/kernels.hpp"
#include "grushin/operators.hpp"

#include <cmath>
#include <random>

namespace grushin {

namespace {

using RVec = std::vector<double>;

double dot(const RVec& a, const RVec& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// -Delta_gamma applied to a real cell field (the p = 2 operator; SPD under
// the homogeneous Dirichlet convention).
struct NegLaplacian {
    const GrushinDomain& dom;
    mutable detail::GradData<double> scratch;
    explicit NegLaplacian(const GrushinDomain& d) : dom(d), scratch(d) {}
    void apply(const RVec& x, RVec& out) const {
        detail::compute_p_grushin(dom, BoundaryKind::DirichletZero, x, 2.0, 0.0, out, scratch);
        for (double& v : out) v = -v;
    }
};

// Unpreconditioned CG; the operator is well conditioned enough at the grid
// sizes the solver targets and determinism matters more than speed here.
void cg_solve(const NegLaplacian& A, const RVec& rhs, RVec& x, double tol, int itmax) {
    const std::size_t n = rhs.size();
    x.assign(n, 0.0);
    RVec r = rhs, pdir = rhs, Ap(n);
    double rr = dot(r, r);
    const double stop = tol * tol * rr;
    if (rr == 0.0) return;
    for (int it = 0; it < itmax && rr > stop; ++it) {
        A.apply(pdir, Ap);
        const double alpha = rr / dot(pdir, Ap);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * pdir[i];
            r[i] -= alpha * Ap[i];
        }
        const double rr2 = dot(r, r);
        const double beta = rr2 / rr;
        rr = rr2;
        for (std::size_t i = 0; i < n; ++i) pdir[i] = r[i] + beta * pdir[i];
    }
}

struct EnergyState {
    double energy = 0.0;        // int (|grad u|^2 + eps^2)^{p/2}
    RVec pg;                    // Delta_{gamma,p} u
};

void evaluate(const GrushinDomain& dom, const RVec& u, double p, double eps,
              detail::GradData<double>& scratch, EnergyState& st) {
    st.energy = detail::compute_energy_p(dom, BoundaryKind::DirichletZero, u, p, eps, scratch);
    st.pg.resize(u.size());
    detail::compute_p_grushin(dom, BoundaryKind::DirichletZero, u, p, eps, st.pg, scratch);
}

double lp_pow(const GrushinDomain& dom, const RVec& u, double p) {
    double acc = 0.0;
    for (double v : u) acc += std::pow(std::abs(v), p);
    return acc * dom.cell_volume();
}

void normalize_lp(const GrushinDomain& dom, RVec& u, double p) {
    const double np = lp_pow(dom, u, p);
    if (np <= 0.0) throw std::invalid_argument("eigensolver: field is identically zero");
    const double s = std::pow(np, -1.0 / p);
    for (double& v : u) v *= s;
}

struct DescentResult {
    double rq;
    RVec u;
    int iterations;
    bool converged;
};

DescentResult run_descent(const GrushinDomain& dom, RVec u, const SolverConfig& cfg) {
    const double p = cfg.p;
    detail::GradData<double> scratch(dom);
    for (double& v : u) v = std::abs(v);
    normalize_lp(dom, u, p);

    double eps = 0.0;
    if (p < 2.0) {
        detail::compute_grad_data(dom, BoundaryKind::DirichletZero, u, scratch);
        double m2max = 0.0;
        for (double v : scratch.mag2) m2max = std::max(m2max, v);
        eps = cfg.eps_regularization_rel * std::sqrt(m2max);
    }

    EnergyState st;
    evaluate(dom, u, p, eps, scratch, st);
    double rq = st.energy;  // int|u|^p = 1 after normalization

    NegLaplacian A(dom);
    RVec dir(u.size()), trial(u.size()), resfield(u.size());
    double tau = 1.0;
    const double w = dom.cell_volume();

    for (int it = 0; it < cfg.max_iterations; ++it) {
        // Residual field r = Delta_p u + rq |u|^{p-2} u; its w-inner product
        // with the step direction is the first-order decrease rate of the
        // Rayleigh quotient (times -p).
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double au = std::abs(u[i]);
            const double m = au > 0.0 ? std::pow(au, p - 2.0) * u[i] : 0.0;
            resfield[i] = st.pg[i] + rq * m;
        }
        if (cfg.preconditioned)
            cg_solve(A, resfield, dir, cfg.cg_tol, cfg.cg_max_iterations);
        else
            dir = resfield;
        const double slope = w * dot(resfield, dir);  // >= 0 for the SPD metric

        bool accepted = false;
        double t = tau;
        double rq_new = rq;
        EnergyState st_new;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < u.size(); ++i)
                trial[i] = std::abs(u[i] + t * dir[i]);
            const double np = lp_pow(dom, trial, p);
            if (np > 0.0) {
                const double sc = std::pow(np, -1.0 / p);
                for (double& v : trial) v *= sc;
                evaluate(dom, trial, p, eps, scratch, st_new);
                rq_new = st_new.energy;
                if (rq_new <= rq - cfg.sufficient_decrease * t * p * slope ||
                    rq_new < rq * (1.0 - 1e-15)) {
                    accepted = true;
                    break;
                }
            }
            t *= cfg.backtrack_shrink;
        }
        if (!accepted) return {rq, u, it, true};  // stationary to line-search resolution
        const double relchg = (rq - rq_new) / std::max(rq, 1e-300);
        u.swap(trial);
        st = std::move(st_new);
        rq = rq_new;
        tau = std::min(t * 2.0, 1e8);
        if (relchg < cfg.tolerance) return {rq, u, it + 1, true};
    }
    return {rq, u, cfg.max_iterations, false};
}

} // namespace

ScalarField product_of_sines(const DomainPtr& domain) {
    ScalarField u(domain, BoundaryKind::DirichletZero);
    const GrushinDomain& dom = *domain;
    for (std::int64_t i = 0; i < dom.cells(); ++i) {
        const auto idx = dom.cell_multi_index(i);
        double v = 1.0;
        for (int c = 0; c < dom.n(); ++c) {
            const AxisExtent& e = dom.extent(c);
            v *= std::sin(M_PI * (dom.coord(c, idx[static_cast<std::size_t>(c)]) - e.lo) /
                          (e.hi - e.lo));
        }
        u[i] = v;
    }
    return u;
}

double rayleigh_quotient(const ScalarField& u, double p) {
    if (p <= 1.0) throw std::invalid_argument("rayleigh_quotient: requires p > 1");
    const double np = lp_norm_pow(u, p);
    if (np <= 0.0) throw std::invalid_argument("rayleigh_quotient: u is identically zero");
    return energy_p(u, p) / np;
}

EigenPair solve_first_eigenpair(const DomainPtr& domain, const SolverConfig& cfg) {
    if (cfg.p <= 1.0) throw std::invalid_argument("eigensolver: requires p > 1");
    if (cfg.tolerance <= 0.0 || cfg.max_iterations < 1)
        throw std::invalid_argument("eigensolver: bad tolerance/max_iterations");
    const GrushinDomain& dom = *domain;

    ScalarField init = cfg.initial_guess ? *cfg.initial_guess : product_of_sines(domain);
    if (init.max_abs() == 0.0)
        throw std::invalid_argument("eigensolver: initial guess is identically zero");
    RVec u0(static_cast<std::size_t>(dom.cells()));
    for (std::int64_t i = 0; i < dom.cells(); ++i) u0[static_cast<std::size_t>(i)] = std::abs(init[i]);

    DescentResult best = run_descent(dom, u0, cfg);
    if (cfg.random_restarts > 0) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> unif(0.1, 1.0);
        for (int r = 0; r < cfg.random_restarts; ++r) {
            RVec v(u0.size());
            ScalarField env = product_of_sines(domain);
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = unif(rng) * env[static_cast<std::int64_t>(i)].real();
            DescentResult cand = run_descent(dom, std::move(v), cfg);
            if (cand.rq < best.rq) best = std::move(cand);
        }
    }

    EigenPair pair;
    pair.lambda1 = best.rq;
    pair.iterations = best.iterations;
    pair.converged = best.converged;
    pair.phi1 = ScalarField(domain, BoundaryKind::DirichletZero);
    double minphi = best.u.empty() ? 0.0 : best.u[0];
    for (std::size_t i = 0; i < best.u.size(); ++i) {
        pair.phi1[static_cast<std::int64_t>(i)] = best.u[i];
        minphi = std::min(minphi, best.u[i]);
    }
    pair.min_phi = minphi;

    // residual = || Delta_p phi + lambda |phi|^{p-2} phi ||_{L^2}
    detail::GradData<double> scratch(dom);
    RVec pg(best.u.size());
    double eps = 0.0;
    if (cfg.p < 2.0) {
        detail::compute_grad_data(dom, BoundaryKind::DirichletZero, best.u, scratch);
        double m2max = 0.0;
        for (double v : scratch.mag2) m2max = std::max(m2max, v);
        eps = cfg.eps_regularization_rel * std::sqrt(m2max);
    }
    detail::compute_p_grushin(dom, BoundaryKind::DirichletZero, best.u, cfg.p, eps, pg, scratch);
    double acc = 0.0;
    for (std::size_t i = 0; i < pg.size(); ++i) {
        const double au = std::abs(best.u[i]);
        const double m = au > 0.0 ? std::pow(au, cfg.p - 2.0) * best.u[i] : 0.0;
        const double r = pg[i] + pair.lambda1 * m;
        acc += r * r;
    }
    pair.residual = std::sqrt(acc * dom.cell_volume());
    return pair;
}

} // namespace grushin
