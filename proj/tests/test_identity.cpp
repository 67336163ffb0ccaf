#include "doctest.h"

#include "grushin/constants.hpp"
#include "grushin/identity.hpp"
#include "grushin/operators.hpp"

#include <cmath>

using namespace grushin;

namespace {

IdentityReport run_case(int N, double gamma, double p, const char* family, unsigned seed) {
    const AxisExtent xext = gamma > 0.0 ? AxisExtent{-1, 1} : AxisExtent{0, 1};
    auto dom = make_domain_2d(gamma, xext, {0, 1}, N, N);
    ScalarField phi;
    if (std::string(family) == "gaussian") phi = make_gaussian_bump(dom);
    else if (std::string(family) == "cosine") phi = make_shifted_cosine(dom);
    else phi = make_phase_bump(dom, 0.7);
    ScalarField u = make_random_smooth(dom, seed);
    return verify_main_identity(u, phi, p);
}

} // namespace

TEST_CASE("main identity: u = phi gives exactly matched sides") {
    auto dom = make_domain_2d(1.0, {-1, 1}, {0, 1}, 32, 32);
    ScalarField phi = product_of_sines(dom);  // zero-boundary bump
    IdentityReport rep = verify_main_identity(phi, phi, 3.0);
    // lhs: eta vanishes pointwise; rhs: exact discrete divergence theorem
    CHECK(std::abs(rep.lhs) <= 1e-12 * energy_p(phi, 3.0));
    CHECK(std::abs(rep.rhs) <= 1e-12 * energy_p(phi, 3.0));
}

TEST_CASE("main identity residual decreases under refinement") {
    for (double p : {2.0, 3.0, 1.5}) {
        double prev = 1e300;
        for (int N : {32, 64, 128}) {
            IdentityReport rep = run_case(N, 1.0, p, "gaussian", 3);
            CHECK(rep.rel_residual < prev);
            prev = rep.rel_residual;
        }
        CHECK(prev <= 1e-2);
    }
}

TEST_CASE("main identity with constant-phase complex phi keeps rhs real") {
    IdentityReport rep = run_case(64, 1.0, 3.0, "phase", 5);
    const double scale = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
    CHECK(std::abs(rep.rhs_imag) <= 1e-8 * scale);
    CHECK(rep.rel_residual <= 1e-2);
}

TEST_CASE("main identity rejects vanishing phi") {
    auto dom = make_domain_2d(0.0, {0, 1}, {0, 1}, 8, 8);
    ScalarField u = make_random_smooth(dom, 1);
    ScalarField zero(dom, BoundaryKind::Natural);
    CHECK_THROWS_AS(verify_main_identity(u, zero, 2.0), std::invalid_argument);
}

TEST_CASE("remainder formula with the eigenpair") {
    auto dom = make_domain_2d(0.0, {0, 1}, {0, 1}, 64, 64);
    SolverConfig cfg;
    cfg.p = 2.0;
    cfg.tolerance = 1e-13;
    EigenPair pair = solve_first_eigenpair(dom, cfg);
    REQUIRE(pair.converged);

    SUBCASE("attainment at u = c phi1") {
        for (cplx c : {cplx(1, 0), cplx(-2, 0), cplx(0, 3)}) {
            ScalarField u(dom);
            for (std::int64_t i = 0; i < u.size(); ++i) u[i] = c * pair.phi1[i];
            IdentityReport rep = verify_remainder_formula(u, pair, 2.0);
            const double scale = std::max(energy_p(u, 2.0), 1e-30);
            CHECK(rep.abs_residual / scale <=
                  10.0 * std::max(pair.residual, 1e-13));
        }
    }

    SUBCASE("p=2 closed form: lhs equals the direct |eta|^2 integral") {
        ScalarField u = make_random_smooth(dom, 8);
        IdentityReport rep = verify_remainder_formula(u, pair, 2.0);
        const CellGradient gu = cell_gradient(u);
        const CellGradient gp = cell_gradient(pair.phi1);
        std::vector<double> eta2(static_cast<std::size_t>(dom->cells()));
        for (std::int64_t i = 0; i < dom->cells(); ++i) {
            const cplx q = u[i] / pair.phi1[i];
            double acc = 0.0;
            for (int c = 0; c < 2; ++c)
                acc += std::norm(gu.comp[c][static_cast<std::size_t>(i)] -
                                 gp.comp[c][static_cast<std::size_t>(i)] * q);
            eta2[static_cast<std::size_t>(i)] = acc;
        }
        CHECK(rep.lhs == doctest::Approx(integrate_real(*dom, eta2)).epsilon(1e-10));
    }

    SUBCASE("Poincare direction on random fields") {
        for (int rep_i = 0; rep_i < 20; ++rep_i) {
            ScalarField u = make_random_smooth(dom, 100 + rep_i);
            IdentityReport rep = verify_remainder_formula(u, pair, 2.0);
            CHECK(rep.rhs >= -1e-8 * std::max(1.0, energy_p(u, 2.0)));
        }
    }
}

TEST_CASE("poincare slack") {
    auto dom = make_domain_2d(1.0, {-1, 1}, {0, 1}, 48, 48);
    SolverConfig cfg;
    cfg.p = 2.0;
    cfg.tolerance = 1e-13;
    EigenPair pair = solve_first_eigenpair(dom, cfg);
    REQUIRE(pair.converged);

    ScalarField z(dom);
    CHECK(verify_poincare(z, pair, 2.0) == 0.0);

    ScalarField att(dom);
    for (std::int64_t i = 0; i < att.size(); ++i) att[i] = pair.phi1[i];
    const double slack_att = verify_poincare(att, pair, 2.0);
    CHECK(std::abs(slack_att) <= 1e-9 * std::max(1.0, lp_norm_pow(att, 2.0)));

    for (int rep = 0; rep < 100; ++rep) {
        ScalarField u = make_random_smooth(dom, 500 + rep);
        const double scale = std::max(lp_norm_pow(u, 2.0), energy_p(u, 2.0) / pair.lambda1);
        CHECK(verify_poincare(u, pair, 2.0) >= -1e-8 * scale);
    }
}

TEST_CASE("remainder bounds p=3 and p=1.5") {
    ConstantQuery q;
    q.coarse_grid = 801;  // enough for 1e-6-level constants in a unit test

    SUBCASE("p >= 2: c_p lower bound") {
        auto dom = make_domain_2d(0.0, {0, 1}, {0, 1}, 48, 48);
        SolverConfig cfg;
        cfg.p = 3.0;
        cfg.tolerance = 1e-11;
        EigenPair pair = solve_first_eigenpair(dom, cfg);
        REQUIRE(pair.converged);
        q.p = 3.0;
        q.which = ConstantKind::CP;
        std::map<ConstantKind, ConstantResult> cs{{ConstantKind::CP, compute_constant(q)}};
        for (int rep = 0; rep < 20; ++rep) {
            ScalarField u = make_random_smooth(dom, 900 + rep);
            RemainderBoundsReport br = verify_remainder_bounds(u, pair, 3.0, cs);
            REQUIRE(br.checks.size() == 1);
            CHECK(br.checks[0].pass);
        }
        // missing constants and p-mismatched constants are both rejected
        CHECK_THROWS_AS(verify_remainder_bounds(make_random_smooth(dom, 1), pair, 1.5, cs),
                        std::invalid_argument);
        CHECK_THROWS_AS(verify_remainder_bounds(make_random_smooth(dom, 1), pair, 4.0, cs),
                        std::invalid_argument);
    }

    SUBCASE("1 < p < 2: c1/c2 bracket and c3 min-form") {
        auto dom = make_domain_2d(0.0, {0, 1}, {0, 1}, 48, 48);
        SolverConfig cfg;
        cfg.p = 1.5;
        cfg.tolerance = 1e-11;
        EigenPair pair = solve_first_eigenpair(dom, cfg);
        REQUIRE(pair.converged);
        std::map<ConstantKind, ConstantResult> cs;
        for (ConstantKind k : {ConstantKind::C1, ConstantKind::C2, ConstantKind::C3}) {
            q.p = 1.5;
            q.which = k;
            cs[k] = compute_constant(q);
        }
        for (int rep = 0; rep < 20; ++rep) {
            ScalarField u = make_random_smooth(dom, 700 + rep);
            RemainderBoundsReport br = verify_remainder_bounds(u, pair, 1.5, cs);
            REQUIRE(br.checks.size() == 3);
            for (const BoundCheck& b : br.checks) CHECK(b.pass);
            // bound ordering: c1-weighted <= remainder <= c2-weighted
            CHECK(br.checks[0].rhs <= br.remainder + 1e-8 * std::abs(br.remainder));
            CHECK(br.remainder <= br.checks[1].rhs + 1e-8 * std::abs(br.remainder));
        }
    }
}
