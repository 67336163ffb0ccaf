// Cross-cutting checks: 3-D paths, tabulated-vs-closed-form certificates,
// regularized p < 2 operators, and generator determinism.

#include "doctest.h"

#include "grushin/cp_functional.hpp"
#include "grushin/eigensolver.hpp"
#include "grushin/identity.hpp"
#include "grushin/operators.hpp"
#include "grushin/pme.hpp"

#include <cmath>

using namespace grushin;

TEST_CASE("main identity holds in 3-D (m=2, k=1)") {
    double prev = 1e300;
    for (int N : {12, 24}) {
        auto dom = make_domain(2, 1, 1.0, {{-1, 1}, {-1, 1}, {0, 1}}, {N, N, N});
        ScalarField u = make_random_smooth(dom, 4, 2);
        ScalarField phi = make_shifted_cosine(dom);
        IdentityReport rep = verify_main_identity(u, phi, 2.5);
        CHECK(rep.rel_residual < prev);
        prev = rep.rel_residual;
    }
    CHECK(prev <= 0.05);
}

TEST_CASE("3-D picone residual stays at rounding level") {
    auto dom = make_domain(2, 1, 0.5, {{-1, 1}, {-1, 1}, {0, 1}}, {10, 10, 10});
    ScalarField u = make_random_smooth(dom, 6, 2);
    ScalarField phi = make_gaussian_bump(dom);
    CHECK(picone_residual(u, phi, 2.7) <= 1e-11);
}

TEST_CASE("tabulated source reproduces the power-law certificate") {
    auto dom = make_domain_2d(0.0, {0, 1}, {0, 1}, 32, 32);
    SolverConfig sc;
    sc.tolerance = 1e-12;
    const double lambda1 = solve_first_eigenpair(dom, sc).lambda1;

    PmeProblem pb;
    pb.domain = dom;
    pb.p = 2.0;
    pb.ell = 1.0;
    pb.u0 = product_of_sines(dom);
    for (std::int64_t i = 0; i < pb.u0.size(); ++i) pb.u0[i] *= 10.0;
    pb.lambda1 = lambda1;
    pb.cert = {4.0, std::min(1.0, lambda1), 0.01};

    pb.source = PmeSource::power_law(3.0);
    const CertificateReport a = check_blowup_certificate(pb);

    std::vector<std::pair<double, double>> table;
    const double hi = 10.0 * pb.u0.max_abs() + 1.0;
    for (int i = 0; i <= 20000; ++i) {
        const double u = hi * i / 20000;
        table.emplace_back(u, u * u * u);
    }
    pb.source = PmeSource::tabulated(std::move(table));
    const CertificateReport b = check_blowup_certificate(pb);

    CHECK(a.holds);
    CHECK(b.holds);
    CHECK(b.J0 == doctest::Approx(a.J0).epsilon(1e-5));
    CHECK(b.M == doctest::Approx(a.M).epsilon(1e-4));
    CHECK(b.Tstar_bound == doctest::Approx(a.Tstar_bound).epsilon(1e-4));
}

TEST_CASE("regularized p < 2 operator is finite and converges to eps = 0") {
    auto dom = make_domain_2d(0.0, {0, 1}, {0, 1}, 24, 24);
    ScalarField phi = product_of_sines(dom);  // interior critical point
    ScalarField a = p_grushin(phi, 1.5, 0.0);
    CHECK(a.all_finite());
    ScalarField b = p_grushin(phi, 1.5, 1e-12);
    CHECK(b.all_finite());
    double dev = 0.0, scale = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) {
        dev = std::max(dev, std::abs(a[i] - b[i]));
        scale = std::max(scale, std::abs(a[i]));
    }
    CHECK(dev <= 1e-6 * scale);
}

TEST_CASE("seeded field generators are reproducible") {
    auto dom = make_domain_2d(1.0, {-1, 1}, {0, 1}, 16, 16);
    ScalarField a = make_random_smooth(dom, 123);
    ScalarField b = make_random_smooth(dom, 123);
    ScalarField c = make_random_smooth(dom, 124);
    double dab = 0.0, dac = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) {
        dab = std::max(dab, std::abs(a[i] - b[i]));
        dac = std::max(dac, std::abs(a[i] - c[i]));
    }
    CHECK(dab == 0.0);
    CHECK(dac > 0.0);
}

TEST_CASE("solver determinism: identical configs give identical pairs") {
    auto dom = make_domain_2d(1.0, {-1, 1}, {0, 1}, 16, 16);
    SolverConfig cfg;
    cfg.p = 3.0;
    cfg.tolerance = 1e-10;
    EigenPair a = solve_first_eigenpair(dom, cfg);
    EigenPair b = solve_first_eigenpair(dom, cfg);
    CHECK(a.lambda1 == b.lambda1);
    CHECK(a.iterations == b.iterations);
    double dev = 0.0;
    for (std::int64_t i = 0; i < a.phi1.size(); ++i)
        dev = std::max(dev, std::abs(a.phi1[i] - b.phi1[i]));
    CHECK(dev == 0.0);
}
