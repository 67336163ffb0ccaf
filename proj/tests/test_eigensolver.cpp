#include "doctest.h"

#include "grushin/eigensolver.hpp"
#include "grushin/identity.hpp"
#include "grushin/operators.hpp"

#include <Eigen/Dense>

#include <cmath>

using namespace grushin;

namespace {

// Dense assembly of -Delta_gamma (p = 2) by applying the operator to unit
// vectors; the independent route for the gamma=1 eigenvalue check.
Eigen::MatrixXd assemble_neg_laplacian(const DomainPtr& dom) {
    const std::int64_t n = dom->cells();
    Eigen::MatrixXd M(n, n);
    for (std::int64_t j = 0; j < n; ++j) {
        ScalarField e(dom);
        e[j] = 1.0;
        ScalarField lap = p_grushin(e, 2.0);
        for (std::int64_t i = 0; i < n; ++i) M(i, j) = -lap[i].real();
    }
    return M;
}

// First eigenvalue of the 1-D p-Laplacian -(|w'|^{p-2} w')' = lam |w|^{p-2} w
// on (0,1), w(0)=w(1)=0, by RK4 shooting on (w, s=|w'|^{p-2}w') and bisection
// on the endpoint sign.
double shooting_lambda1(double p) {
    auto endpoint = [&](double lam) {
        const int n = 4000;
        const double h = 1.0 / n;
        double w = 0.0, s = 1.0;
        auto fw = [&](double sv) {
            return sv >= 0 ? std::pow(sv, 1.0 / (p - 1.0))
                           : -std::pow(-sv, 1.0 / (p - 1.0));
        };
        auto fs = [&](double wv) {
            return wv >= 0 ? -lam * std::pow(wv, p - 1.0)
                           : lam * std::pow(-wv, p - 1.0);
        };
        for (int i = 0; i < n; ++i) {
            const double k1w = fw(s), k1s = fs(w);
            const double k2w = fw(s + 0.5 * h * k1s), k2s = fs(w + 0.5 * h * k1w);
            const double k3w = fw(s + 0.5 * h * k2s), k3s = fs(w + 0.5 * h * k2w);
            const double k4w = fw(s + h * k3s), k4s = fs(w + h * k3w);
            w += h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
            s += h / 6.0 * (k1s + 2 * k2s + 2 * k3s + k4s);
            if (w < 0.0) return -1.0;
        }
        return w;
    };
    double lo = 1.0, hi = 200.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (endpoint(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("rayleigh quotient: scale invariance, closed form, errors") {
    auto dom = make_domain_2d(0.0, {0, 1}, {0, 1}, 64, 64);
    ScalarField u = make_random_smooth(dom, 5);
    const double base = rayleigh_quotient(u, 3.0);
    ScalarField cu(dom);
    const cplx c(0.3, 1.9);
    for (std::int64_t i = 0; i < u.size(); ++i) cu[i] = c * u[i];
    CHECK(rayleigh_quotient(cu, 3.0) == doctest::Approx(base).epsilon(1e-12));

    ScalarField s = product_of_sines(dom);
    CHECK(rayleigh_quotient(s, 2.0) ==
          doctest::Approx(2.0 * M_PI * M_PI).epsilon(2e-4));

    ScalarField z(dom);
    CHECK_THROWS_AS(rayleigh_quotient(z, 2.0), std::invalid_argument);
}

TEST_CASE("p=2 gamma=0 eigenpair on the unit square") {
    auto dom = make_domain_2d(0.0, {0, 1}, {0, 1}, 128, 128);
    SolverConfig cfg;
    cfg.tolerance = 1e-12;
    EigenPair pair = solve_first_eigenpair(dom, cfg);
    CHECK(pair.converged);
    CHECK(pair.lambda1 == doctest::Approx(2.0 * M_PI * M_PI).epsilon(0.01));
    CHECK(pair.min_phi > 0.0);
    CHECK(lp_norm_pow(pair.phi1, 2.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rayleigh_quotient(pair.phi1, 2.0) == doctest::Approx(pair.lambda1).epsilon(1e-12));
    CHECK(pair.residual <= 1e-4 * pair.lambda1);
}

TEST_CASE("p=2 gamma=1 matches the dense-matrix oracle at 32^2") {
    auto dom = make_domain_2d(1.0, {-1, 1}, {0, 1}, 32, 32);
    Eigen::MatrixXd M = assemble_neg_laplacian(dom);
    const double sym = (M - M.transpose()).cwiseAbs().maxCoeff();
    CHECK(sym <= 1e-10 * M.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()),
                                                      Eigen::EigenvaluesOnly);
    const double lam_oracle = es.eigenvalues()(0);
    CHECK(lam_oracle > 0.0);

    SolverConfig cfg;
    cfg.tolerance = 1e-13;
    EigenPair pair = solve_first_eigenpair(dom, cfg);
    CHECK(pair.converged);
    CHECK(std::abs(pair.lambda1 - lam_oracle) <= 1e-6 * std::max(1.0, lam_oracle));
    CHECK(pair.min_phi > 0.0);
    CHECK(pair.residual <= 1e-4 * pair.lambda1);
}

TEST_CASE("p=3 quasi-1D approaches the 1-D p-Laplacian eigenvalue") {
    const double lam_1d = shooting_lambda1(3.0);
    CHECK(shooting_lambda1(2.0) == doctest::Approx(M_PI * M_PI).epsilon(1e-6));

    double prev_dist = 1e300;
    for (auto [L, ny] : {std::pair{3.0, 72}, std::pair{6.0, 144}}) {
        auto dom = make_domain_2d(0.0, {0, 1}, {0, L}, 48, ny);
        SolverConfig cfg;
        cfg.p = 3.0;
        cfg.tolerance = 1e-11;
        EigenPair pair = solve_first_eigenpair(dom, cfg);
        CHECK(pair.converged);
        const double dist = std::abs(pair.lambda1 - lam_1d) / lam_1d;
        CHECK(dist < prev_dist);
        prev_dist = dist;
    }
    CHECK(prev_dist <= 0.05);
}

TEST_CASE("monotone Rayleigh quotient and minimality") {
    auto dom = make_domain_2d(1.0, {-1, 1}, {0, 1}, 24, 24);
    SolverConfig cfg;
    cfg.p = 2.0;
    cfg.tolerance = 1e-12;
    EigenPair pair = solve_first_eigenpair(dom, cfg);
    CHECK(pair.converged);
    for (int rep = 0; rep < 100; ++rep) {
        ScalarField u = make_random_smooth(dom, 1000 + rep, 3, false);
        if (u.max_abs() == 0.0) continue;
        CHECK(rayleigh_quotient(u, 2.0) >= pair.lambda1 - 1e-6);
    }
}

TEST_CASE("p=1.5 solve converges with positive eigenfunction") {
    auto dom = make_domain_2d(0.0, {0, 1}, {0, 1}, 32, 32);
    SolverConfig cfg;
    cfg.p = 1.5;
    cfg.tolerance = 1e-11;
    EigenPair pair = solve_first_eigenpair(dom, cfg);
    CHECK(pair.converged);
    CHECK(pair.lambda1 > 0.0);
    CHECK(pair.min_phi > 0.0);
    CHECK(lp_norm_pow(pair.phi1, 1.5) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("degenerate initial guess is rejected") {
    auto dom = make_domain_2d(0.0, {0, 1}, {0, 1}, 8, 8);
    SolverConfig cfg;
    cfg.initial_guess = ScalarField(dom);
    CHECK_THROWS_AS(solve_first_eigenpair(dom, cfg), std::invalid_argument);
}

TEST_CASE("iteration cap returns unconverged incumbent") {
    auto dom = make_domain_2d(1.0, {-1, 1}, {0, 1}, 16, 16);
    SolverConfig cfg;
    cfg.max_iterations = 2;
    cfg.tolerance = 1e-15;
    cfg.preconditioned = false;
    EigenPair pair = solve_first_eigenpair(dom, cfg);
    CHECK_FALSE(pair.converged);
    CHECK(pair.lambda1 > 0.0);
}
