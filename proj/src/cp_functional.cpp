#include "grushin/cp_functional.hpp"

#include "grushin/operators.hpp"

#include <cmath>

namespace grushin {

namespace {

void require_p(double p) {
    if (p <= 1.0) throw std::invalid_argument("Cp functional: requires p > 1");
}

void require_nonvanishing(const ScalarField& phi) {
    if (phi.min_abs() <= 0.0)
        throw std::invalid_argument("Cp functional: phi vanishes at an interior node");
}

} // namespace

double cp_eval_parts(double xi2, double dif2, double re_dif_conj_eta, double p) {
    const double a = std::pow(xi2, 0.5 * p);
    const double b = std::pow(dif2, 0.5 * p);
    const double w = dif2 > 0.0 ? std::pow(dif2, 0.5 * (p - 2.0)) : 0.0;
    return a - b - p * w * re_dif_conj_eta;
}

double cp_eval(std::span<const cplx> xi, std::span<const cplx> eta, double p) {
    require_p(p);
    if (xi.size() != eta.size()) throw std::invalid_argument("cp_eval: component count mismatch");
    double xi2 = 0.0, dif2 = 0.0, re = 0.0;
    for (std::size_t c = 0; c < xi.size(); ++c) {
        const cplx d = xi[c] - eta[c];
        xi2 += std::norm(xi[c]);
        dif2 += std::norm(d);
        re += (d * std::conj(eta[c])).real();
    }
    return cp_eval_parts(xi2, dif2, re, p);
}

std::vector<double> cp_field(const ScalarField& u, const ScalarField& phi, double p) {
    require_p(p);
    require_nonvanishing(phi);
    const GrushinDomain& dom = u.domain();
    if (!dom.same_grid(phi.domain())) throw std::invalid_argument("cp_field: grid mismatch");
    const CellGradient gu = cell_gradient(u);
    const CellGradient gp = cell_gradient(phi);
    const std::int64_t nc = dom.cells();
    const int n = dom.n();
    std::vector<double> out(static_cast<std::size_t>(nc));
    for (std::int64_t i = 0; i < nc; ++i) {
        const cplx q = u[i] / phi[i];
        double xi2 = 0.0, z2 = 0.0, re = 0.0;
        for (int c = 0; c < n; ++c) {
            const cplx xi = gu.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            const cplx z = gp.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] * q;
            xi2 += std::norm(xi);
            z2 += std::norm(z);
            re += (z * std::conj(xi - z)).real();
        }
        out[static_cast<std::size_t>(i)] = cp_eval_parts(xi2, z2, re, p);
    }
    return out;
}

std::vector<double> rp_field(const ScalarField& u, const ScalarField& phi, double p) {
    require_p(p);
    require_nonvanishing(phi);
    const GrushinDomain& dom = u.domain();
    if (!dom.same_grid(phi.domain())) throw std::invalid_argument("rp_field: grid mismatch");
    const CellGradient gu = cell_gradient(u);
    const CellGradient gp = cell_gradient(phi);

    ScalarField quot(u.domain_ptr(), u.boundary());
    for (std::int64_t i = 0; i < dom.cells(); ++i) {
        const double au = std::abs(u[i]);
        const double ap = std::abs(phi[i]);
        quot[i] = std::pow(au, p) / (std::pow(ap, p - 2.0) * phi[i]);
    }
    const CellGradient gq = cell_gradient(quot);

    const std::int64_t nc = dom.cells();
    const int n = dom.n();
    std::vector<double> out(static_cast<std::size_t>(nc));
    for (std::int64_t i = 0; i < nc; ++i) {
        double xi2 = 0.0, gp2 = 0.0;
        cplx dot(0.0, 0.0);
        for (int c = 0; c < n; ++c) {
            const cplx xg = gu.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            const cplx pg = gp.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            const cplx qg = gq.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            xi2 += std::norm(xg);
            gp2 += std::norm(pg);
            dot += qg * pg;
        }
        const double w = gp2 > 0.0 ? std::pow(gp2, 0.5 * (p - 2.0)) : 0.0;
        out[static_cast<std::size_t>(i)] = std::pow(xi2, 0.5 * p) - w * dot.real();
    }
    return out;
}

double rp_algebraic_eval(std::span<const cplx> grad_u, std::span<const cplx> grad_phi,
                         cplx u, cplx phi, double p) {
    require_p(p);
    const cplx q = u / phi;
    double xi2 = 0.0, z2 = 0.0;
    cplx dot(0.0, 0.0);
    for (std::size_t c = 0; c < grad_u.size(); ++c) {
        xi2 += std::norm(grad_u[c]);
        z2 += std::norm(grad_phi[c] * q);
        dot += grad_phi[c] * std::conj(grad_u[c]);
    }
    const double w = z2 > 0.0 ? std::pow(z2, 0.5 * (p - 2.0)) : 0.0;
    return std::pow(xi2, 0.5 * p) + (p - 1.0) * std::pow(z2, 0.5 * p) -
           p * (w * q * dot).real();
}

double picone_residual(const ScalarField& u, const ScalarField& phi, double p) {
    require_p(p);
    require_nonvanishing(phi);
    const GrushinDomain& dom = u.domain();
    if (!dom.same_grid(phi.domain())) throw std::invalid_argument("picone_residual: grid mismatch");
    const CellGradient gu = cell_gradient(u);
    const CellGradient gp = cell_gradient(phi);
    const std::int64_t nc = dom.cells();
    const int n = dom.n();
    double worst = 0.0;
    std::vector<cplx> xg(static_cast<std::size_t>(n)), pg(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < nc; ++i) {
        const cplx q = u[i] / phi[i];
        double xi2 = 0.0, z2 = 0.0, re = 0.0;
        for (int c = 0; c < n; ++c) {
            xg[static_cast<std::size_t>(c)] = gu.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            pg[static_cast<std::size_t>(c)] = gp.comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            const cplx z = pg[static_cast<std::size_t>(c)] * q;
            xi2 += std::norm(xg[static_cast<std::size_t>(c)]);
            z2 += std::norm(z);
            re += (z * std::conj(xg[static_cast<std::size_t>(c)] - z)).real();
        }
        const double cp = cp_eval_parts(xi2, z2, re, p);
        const double rp = rp_algebraic_eval(xg, pg, u[i], phi[i], p);
        const double scale = std::pow(std::max({1.0, std::sqrt(xi2), std::sqrt(z2)}), p);
        worst = std::max(worst, std::abs(cp - rp) / scale);
    }
    return worst;
}

} // namespace grushin
