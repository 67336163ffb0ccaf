#include "doctest.h"

#include "grushin/constants.hpp"

#include <cmath>
#include <stdexcept>

using namespace grushin;

namespace {

// Frozen from the independent brute-force route (constants_oracle --grid
// 4001: dense log-polar scan plus two rectangular zoom rounds).
struct Golden {
    double p;
    double value;
};

constexpr Golden kGoldenCp[] = {
    {2.0, 1.0},
    {2.5, 0.7680186635},
    {3.0, 0.5857864376},  // = 2 - sqrt(2)
    {4.0, 1.0 / 3.0},
    {6.0, 0.1012917555},
};
constexpr Golden kGoldenC1[] = {
    {1.1, 0.0925492554}, {1.3, 0.2898437761}, {1.5, 0.4941058844},
    {1.7, 0.6983526015}, {1.9, 0.8999367263},
};
constexpr Golden kGoldenC2[] = {
    {1.1, 1.7244670470}, {1.3, 1.4734854777}, {1.5, 1.3065629649},
    {1.7, 1.1712981819}, {1.9, 1.0538373972},
};
constexpr Golden kGoldenC3[] = {
    {1.1, 0.0435469251}, {1.3, 0.1622888267}, {1.5, 0.3284271247},
    {1.7, 0.5490095854}, {1.9, 0.8321319661},
};

ConstantResult compute(ConstantKind which, double p, int grid = 1201) {
    ConstantQuery q;
    q.p = p;
    q.which = which;
    q.coarse_grid = grid;
    return compute_constant(q);
}

} // namespace

TEST_CASE("ratio_cp closed cases") {
    // p = 2: identically 1
    for (double s : {-3.0, -1.0, 0.5, 2.0})
        for (double t : {0.0, 0.7, -2.0}) {
            if (s == 0.0 && t == 0.0) continue;
            CHECK(ratio_cp(s, t, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
        }
    // hand-evaluated point
    CHECK(ratio_cp(-1.0, 0.0, 4.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(ratio_cp(0.0, 0.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(ratio_cp(1.0, 0.0, 1.5), std::invalid_argument);
}

TEST_CASE("ratio_cp tends to 1 along every ray") {
    for (double p : {2.0, 3.0, 4.0, 6.0}) {
        const double r = 1e6;
        for (int a = 0; a < 64; ++a) {
            const double th = 2.0 * M_PI * a / 64;
            const double v = ratio_cp(r * std::cos(th), r * std::sin(th), p);
            CHECK(std::abs(v - 1.0) <= 1e-3);
        }
    }
}

TEST_CASE("cp constants: exact p=2 and frozen goldens") {
    ConstantResult r2 = compute(ConstantKind::CP, 2.0);
    CHECK(r2.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r2.bound_check);
    CHECK(r2.uncertainty == 0.0);

    for (const Golden& g : kGoldenCp) {
        if (g.p == 2.0) continue;
        ConstantResult r = compute(ConstantKind::CP, g.p);
        CHECK(r.value == doctest::Approx(g.value).epsilon(2e-6));
        CHECK(r.value > 0.0);
        CHECK(r.value <= 1.0 + 1e-9);
        CHECK(r.bound_check);
        CHECK(std::abs(r.t) <= 1e-2);  // valley sits on the t = 0 axis
        CHECK(r.s < 0.0);
    }
}

TEST_CASE("c1 against the independent brute force") {
    for (const Golden& g : kGoldenC1) {
        ConstantResult r = compute(ConstantKind::C1, g.p);
        CHECK(r.value == doctest::Approx(g.value).epsilon(2e-6));
        // The published containment (0, p(p-1)/(2p-1)] does not hold for this
        // ratio: the infimum sits strictly above the claimed endpoint for
        // every p in (1,2) (see README). bound_check reports that honestly.
        CHECK(r.value > c1_interval_hi(g.p));
        CHECK_FALSE(r.bound_check);
    }
}

TEST_CASE("c2 against the independent brute force") {
    for (const Golden& g : kGoldenC2) {
        ConstantResult r = compute(ConstantKind::C2, g.p);
        CHECK(r.value == doctest::Approx(g.value).epsilon(2e-6));
        CHECK(r.value >= c2_interval_lo(g.p) - 1e-9);
        CHECK(r.bound_check);
        CHECK_FALSE(r.possibly_unbounded);
    }
}

TEST_CASE("c3 against the independent brute force") {
    for (const Golden& g : kGoldenC3) {
        ConstantResult r = compute(ConstantKind::C3, g.p);
        CHECK(r.value == doctest::Approx(g.value).epsilon(2e-6));
        CHECK(r.value > 0.0);
        CHECK(r.value <= c3_interval_hi(g.p) + 1e-9);
        CHECK(r.bound_check);
    }
}

TEST_CASE("c3 at p=1.5 attains the seam point (1,0)") {
    ConstantResult r = compute(ConstantKind::C3, 1.5);
    // value at the seam: 4^{3/4} - 1 - 1.5 = 2 sqrt(2) - 2.5
    CHECK(r.value == doctest::Approx(2.0 * std::sqrt(2.0) - 2.5).epsilon(1e-7));
    CHECK(std::hypot(r.s, r.t) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("query validation") {
    ConstantQuery q;
    q.p = 1.5;
    q.which = ConstantKind::CP;
    CHECK_THROWS_AS(compute_constant(q), std::invalid_argument);
    q.p = 2.5;
    q.which = ConstantKind::C1;
    CHECK_THROWS_AS(compute_constant(q), std::invalid_argument);
    q.which = ConstantKind::C2;
    CHECK_THROWS_AS(compute_constant(q), std::invalid_argument);
    q.which = ConstantKind::C3;
    CHECK_THROWS_AS(compute_constant(q), std::invalid_argument);
}

TEST_CASE("determinism and refinement consistency") {
    for (ConstantKind k : {ConstantKind::CP, ConstantKind::C2}) {
        const double p = k == ConstantKind::CP ? 3.0 : 1.5;
        ConstantResult a = compute(k, p, 801);
        ConstantResult b = compute(k, p, 801);
        CHECK(a.value == b.value);
        CHECK(a.s == b.s);
        CHECK(a.t == b.t);
        // finer coarse grid never worsens the extremum beyond refine_tol
        ConstantResult fine = compute(k, p, 1601);
        if (k == ConstantKind::CP)
            CHECK(fine.value <= a.value + 1e-8);
        else
            CHECK(fine.value >= a.value - 1e-8);
    }
}

TEST_CASE("kind names round-trip") {
    for (ConstantKind k : {ConstantKind::CP, ConstantKind::C1, ConstantKind::C2, ConstantKind::C3})
        CHECK(constant_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(constant_kind_from_string("c9"), std::invalid_argument);
}
