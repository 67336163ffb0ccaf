#include "grushin/identity.hpp"

#include "grushin/cp_functional.hpp"
#include "grushin/operators.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace grushin {

namespace {

void fill_grid_meta(IdentityReport& r, const GrushinDomain& dom, double p) {
    r.p = p;
    r.gamma = dom.gamma();
    r.resolution.resize(static_cast<std::size_t>(dom.n()));
    for (int c = 0; c < dom.n(); ++c) r.resolution[static_cast<std::size_t>(c)] = dom.resolution(c);
}

void finish(IdentityReport& r) {
    r.abs_residual = std::abs(r.lhs - r.rhs);
    r.rel_residual = r.abs_residual / std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-30});
}

} // namespace

IdentityReport verify_main_identity(const ScalarField& u, const ScalarField& phi, double p) {
    if (p <= 1.0) throw std::invalid_argument("verify_main_identity: requires p > 1");
    if (phi.min_abs() <= 0.0)
        throw std::invalid_argument("verify_main_identity: phi vanishes at an interior node");
    const GrushinDomain& dom = u.domain();

    IdentityReport rep;
    fill_grid_meta(rep, dom, p);

    const std::vector<double> cp = cp_field(u, phi, p);
    rep.lhs = integrate_real(dom, cp);

    const ScalarField pg = p_grushin(phi, p);
    cplx quot_term(0.0, 0.0);
    for (std::int64_t i = 0; i < dom.cells(); ++i) {
        const double au = std::abs(u[i]);
        const double ap = std::abs(phi[i]);
        const cplx quot = std::pow(au, p) / (std::pow(ap, p - 2.0) * phi[i]);
        quot_term += quot * pg[i];
    }
    quot_term *= dom.cell_volume();
    rep.rhs = energy_p(u, p) + quot_term.real();
    rep.rhs_imag = quot_term.imag();
    finish(rep);
    return rep;
}

IdentityReport verify_remainder_formula(const ScalarField& u, const EigenPair& pair, double p) {
    if (p <= 1.0) throw std::invalid_argument("verify_remainder_formula: requires p > 1");
    const GrushinDomain& dom = u.domain();
    IdentityReport rep;
    fill_grid_meta(rep, dom, p);
    const std::vector<double> cp = cp_field(u, pair.phi1, p);
    rep.lhs = integrate_real(dom, cp);
    rep.rhs = energy_p(u, p) - pair.lambda1 * lp_norm_pow(u, p);
    finish(rep);
    return rep;
}

double verify_poincare(const ScalarField& u, const EigenPair& pair, double p) {
    if (p <= 1.0) throw std::invalid_argument("verify_poincare: requires p > 1");
    return energy_p(u, p) / pair.lambda1 - lp_norm_pow(u, p);
}

RemainderBoundsReport verify_remainder_bounds(const ScalarField& u, const EigenPair& pair,
                                              double p,
                                              const std::map<ConstantKind, ConstantResult>& constants) {
    if (p <= 1.0) throw std::invalid_argument("verify_remainder_bounds: requires p > 1");
    const GrushinDomain& dom = u.domain();
    const ScalarField& phi = pair.phi1;
    if (phi.min_abs() <= 0.0)
        throw std::invalid_argument("verify_remainder_bounds: phi1 vanishes at a node");

    RemainderBoundsReport rep;
    rep.remainder = energy_p(u, p) - pair.lambda1 * lp_norm_pow(u, p);

    const CellGradient gu = cell_gradient(u);
    const CellGradient gp = cell_gradient(phi);
    const std::int64_t nc = dom.cells();
    const int n = dom.n();

    // Per-cell |eta|^p, (|xi|+|zeta|)^{p-2}|eta|^2 and the c3 min-form.
    std::vector<double> eta_p(static_cast<std::size_t>(nc));
    std::vector<double> weighted_eta2(static_cast<std::size_t>(nc));
    std::vector<double> min_form(static_cast<std::size_t>(nc));
    for (std::int64_t i = 0; i < nc; ++i) {
        const cplx q = u[i] / phi[i];
        double xi2 = 0.0, z2 = 0.0, eta2 = 0.0;
        for (int c = 0; c < n; ++c) {
            const cplx xi = gu.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            const cplx z = gp.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] * q;
            xi2 += std::norm(xi);
            z2 += std::norm(z);
            eta2 += std::norm(xi - z);
        }
        eta_p[static_cast<std::size_t>(i)] = std::pow(eta2, 0.5 * p);
        const double base = std::sqrt(xi2) + std::sqrt(z2);
        weighted_eta2[static_cast<std::size_t>(i)] =
            base > 0.0 ? std::pow(base, p - 2.0) * eta2 : 0.0;
        const double za = z2 > 0.0 ? std::pow(z2, 0.5 * (p - 2.0)) * eta2
                                   : (eta2 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        min_form[static_cast<std::size_t>(i)] =
            std::min(eta_p[static_cast<std::size_t>(i)], za);
    }

    auto need = [&](ConstantKind k) -> const ConstantResult& {
        auto it = constants.find(k);
        if (it == constants.end())
            throw std::invalid_argument("verify_remainder_bounds: missing constant " + to_string(k));
        if (it->second.p != p)
            throw std::invalid_argument("verify_remainder_bounds: constant " + to_string(k) +
                                        " was computed for a different p");
        return it->second;
    };

    const double scale = std::max({std::abs(rep.remainder), energy_p(u, p), 1.0});
    const double slack = 1e-8 * scale;
    if (p >= 2.0) {
        BoundCheck b;
        b.name = "cp_lower";
        b.lhs = rep.remainder;
        b.rhs = need(ConstantKind::CP).value * integrate_real(dom, eta_p);
        b.pass = b.lhs >= b.rhs - slack;
        rep.checks.push_back(b);
    } else {
        const double wint = integrate_real(dom, weighted_eta2);
        BoundCheck b1{"c1_lower", rep.remainder, need(ConstantKind::C1).value * wint, false};
        b1.pass = b1.lhs >= b1.rhs - slack;
        BoundCheck b2{"c2_upper", rep.remainder, need(ConstantKind::C2).value * wint, false};
        b2.pass = b2.lhs <= b2.rhs + slack;
        BoundCheck b3{"c3_lower", rep.remainder,
                      need(ConstantKind::C3).value * integrate_real(dom, min_form), false};
        b3.pass = b3.lhs >= b3.rhs - slack;
        rep.checks.push_back(b1);
        rep.checks.push_back(b2);
        rep.checks.push_back(b3);
    }
    rep.all_pass = true;
    for (const BoundCheck& b : rep.checks) rep.all_pass = rep.all_pass && b.pass;
    return rep;
}

ScalarField make_gaussian_bump(const DomainPtr& dom, double width) {
    ScalarField phi(dom, BoundaryKind::Natural);
    const GrushinDomain& d = *dom;
    for (std::int64_t i = 0; i < d.cells(); ++i) {
        const auto xs = d.cell_coords(i);
        double r2 = 0.0;
        for (int c = 0; c < d.n(); ++c) {
            const AxisExtent& e = d.extent(c);
            // slight off-center keeps the test fields generic
            const double mid = 0.5 * (e.lo + e.hi) + 0.05 * (e.hi - e.lo);
            const double dx = (xs[static_cast<std::size_t>(c)] - mid) / (width * (e.hi - e.lo));
            r2 += dx * dx;
        }
        phi[i] = std::exp(-r2);
    }
    return phi;
}

ScalarField make_shifted_cosine(const DomainPtr& dom, double offset) {
    ScalarField phi(dom, BoundaryKind::Natural);
    const GrushinDomain& d = *dom;
    for (std::int64_t i = 0; i < d.cells(); ++i) {
        const auto xs = d.cell_coords(i);
        double v = 1.0;
        for (int c = 0; c < d.n(); ++c) {
            const AxisExtent& e = d.extent(c);
            const double s = (xs[static_cast<std::size_t>(c)] - e.lo) / (e.hi - e.lo);
            v *= std::cos(M_PI * (s - 0.5));
        }
        phi[i] = offset + v;
    }
    return phi;
}

ScalarField make_phase_bump(const DomainPtr& dom, double theta0, double offset) {
    ScalarField phi = make_shifted_cosine(dom, offset);
    const cplx rot = std::polar(1.0, theta0);
    for (std::int64_t i = 0; i < phi.size(); ++i) phi[i] *= rot;
    return phi;
}

ScalarField make_random_smooth(const DomainPtr& dom, unsigned seed, int max_mode,
                               bool complex_values) {
    const GrushinDomain& d = *dom;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = d.n();
    // coefficient tensor over mode multi-indices 1..max_mode per axis
    std::int64_t nmodes = 1;
    for (int c = 0; c < n; ++c) nmodes *= max_mode;
    std::vector<cplx> coef(static_cast<std::size_t>(nmodes));
    for (auto& z : coef) {
        const double re = gauss(rng);
        const double im = complex_values ? gauss(rng) : 0.0;
        z = cplx(re, im);
    }
    ScalarField u(dom, BoundaryKind::DirichletZero);
    std::vector<double> s(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < d.cells(); ++i) {
        const auto xs = d.cell_coords(i);
        for (int c = 0; c < n; ++c) {
            const AxisExtent& e = d.extent(c);
            s[static_cast<std::size_t>(c)] = (xs[static_cast<std::size_t>(c)] - e.lo) / (e.hi - e.lo);
        }
        cplx acc(0.0, 0.0);
        for (std::int64_t mflat = 0; mflat < nmodes; ++mflat) {
            std::int64_t rest = mflat;
            double prod = 1.0;
            for (int c = n - 1; c >= 0; --c) {
                const int mode = static_cast<int>(rest % max_mode) + 1;
                rest /= max_mode;
                prod *= std::sin(mode * M_PI * s[static_cast<std::size_t>(c)]);
            }
            acc += coef[static_cast<std::size_t>(mflat)] * prod;
        }
        u[i] = acc;
    }
    return u;
}

} // namespace grushin
