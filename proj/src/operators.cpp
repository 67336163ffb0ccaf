#include "grushin/operators.hpp"

#include "grushin/detail/kernels.hpp"

namespace grushin {

VectorField grushin_gradient(const ScalarField& u) {
    VectorField g(u.domain_ptr());
    const GrushinDomain& dom = u.domain();
    for (int c = 0; c < dom.n(); ++c)
        detail::gradient_axis(dom, u.boundary(), c, u.values(), g.component(c));
    return g;
}

ScalarField grushin_divergence(const VectorField& V) {
    ScalarField d(V.domain_ptr());
    const GrushinDomain& dom = V.domain();
    for (int c = 0; c < dom.n(); ++c)
        detail::divergence_axis_accumulate(dom, c, V.component(c), d.values());
    return d;
}

CellGradient cell_gradient(const ScalarField& u) {
    const GrushinDomain& dom = u.domain();
    VectorField g = grushin_gradient(u);
    CellGradient cg;
    cg.dom = u.domain_ptr();
    cg.comp.resize(static_cast<std::size_t>(dom.n()));
    for (int c = 0; c < dom.n(); ++c) {
        cg.comp[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(dom.cells()), cplx(0.0, 0.0));
        detail::face_average_axis(dom, c, g.component(c), cg.comp[static_cast<std::size_t>(c)]);
    }
    return cg;
}

ScalarField p_grushin(const ScalarField& phi, double p, double eps) {
    if (p <= 1.0) throw std::invalid_argument("p_grushin: requires p > 1");
    const GrushinDomain& dom = phi.domain();
    ScalarField out(phi.domain_ptr(), phi.boundary());
    detail::GradData<cplx> scratch(dom);
    detail::compute_p_grushin(dom, phi.boundary(), phi.values(), p, eps, out.values(), scratch);
    return out;
}

cplx integrate(const ScalarField& u) {
    cplx acc(0.0, 0.0);
    for (const cplx& z : u.values()) acc += z;
    return acc * u.domain().cell_volume();
}

double integrate_real(const GrushinDomain& dom, const std::vector<double>& g) {
    if (static_cast<std::int64_t>(g.size()) != dom.cells())
        throw std::invalid_argument("integrate_real: size mismatch");
    double acc = 0.0;
    for (double v : g) acc += v;
    return acc * dom.cell_volume();
}

double lp_norm_pow(const ScalarField& u, double p) {
    double acc = 0.0;
    for (const cplx& z : u.values()) acc += std::pow(std::norm(z), 0.5 * p);
    return acc * u.domain().cell_volume();
}

double energy_p(const ScalarField& u, double p, double eps) {
    if (p <= 1.0) throw std::invalid_argument("energy_p: requires p > 1");
    detail::GradData<cplx> scratch(u.domain());
    return detail::compute_energy_p(u.domain(), u.boundary(), u.values(), p, eps, scratch);
}

double sobolev_seminorm(const ScalarField& u, double p) {
    if (p <= 1.0) throw std::invalid_argument("sobolev_seminorm: requires p > 1");
    return std::pow(energy_p(u, p, 0.0), 1.0 / p);
}

cplx face_inner_product(const VectorField& a, const VectorField& b) {
    const GrushinDomain& dom = a.domain();
    if (!dom.same_grid(b.domain())) throw std::invalid_argument("face_inner_product: grid mismatch");
    cplx acc(0.0, 0.0);
    const double w = dom.cell_volume();
    for (int c = 0; c < dom.n(); ++c) {
        const auto s = detail::axis_split(dom, c);
        const auto& ac = a.component(c);
        const auto& bc = b.component(c);
        const std::int64_t face_slab = static_cast<std::int64_t>(s.len + 1) * s.inner;
        for (std::int64_t o = 0; o < s.outer; ++o) {
            const std::int64_t fbase = o * face_slab;
            for (int f = 0; f <= s.len; ++f) {
                const double omega = (f == 0 || f == s.len) ? 0.5 * w : w;
                const std::int64_t frow = fbase + f * s.inner;
                cplx row(0.0, 0.0);
                for (std::int64_t i = 0; i < s.inner; ++i)
                    row += ac[static_cast<std::size_t>(frow + i)] *
                           std::conj(bc[static_cast<std::size_t>(frow + i)]);
                acc += omega * row;
            }
        }
    }
    return acc;
}

cplx cell_inner_product(const ScalarField& a, const ScalarField& b) {
    if (!a.domain().same_grid(b.domain()))
        throw std::invalid_argument("cell_inner_product: grid mismatch");
    cplx acc(0.0, 0.0);
    for (std::int64_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return acc * a.domain().cell_volume();
}

std::vector<double> grad_mag2_cells(const VectorField& g) {
    const GrushinDomain& dom = g.domain();
    std::vector<double> m2(static_cast<std::size_t>(dom.cells()), 0.0);
    for (int c = 0; c < dom.n(); ++c)
        detail::grad_mag2_accumulate(dom, c, g.component(c), m2);
    return m2;
}

} // namespace grushin
