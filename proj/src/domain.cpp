#include "grushin/domain.hpp"

#include <cmath>

namespace grushin {

GrushinDomain::GrushinDomain(int m, int k, double gamma,
                             std::vector<AxisExtent> extents,
                             std::vector<int> resolution)
    : m_(m), k_(k), gamma_(gamma), extents_(std::move(extents)), res_(std::move(resolution)) {
    if (m_ < 1 || k_ < 1) throw std::invalid_argument("GrushinDomain: need m >= 1 and k >= 1");
    if (gamma_ < 0.0) throw std::invalid_argument("GrushinDomain: gamma must be >= 0");
    const int nn = m_ + k_;
    if (static_cast<int>(extents_.size()) != nn || static_cast<int>(res_.size()) != nn)
        throw std::invalid_argument("GrushinDomain: extents/resolution must have m+k entries");
    h_.resize(extents_.size());
    cells_ = 1;
    for (int c = 0; c < nn; ++c) {
        if (res_[c] < 4) throw std::invalid_argument("GrushinDomain: resolution must be >= 4 per axis");
        if (!(extents_[c].hi > extents_[c].lo))
            throw std::invalid_argument("GrushinDomain: extent must have hi > lo");
        h_[c] = (extents_[c].hi - extents_[c].lo) / res_[c];
        cells_ *= res_[c];
    }
    cell_stride_.assign(extents_.size(), 1);
    for (int c = nn - 2; c >= 0; --c)
        cell_stride_[c] = cell_stride_[c + 1] * res_[c + 1];
    faces_.resize(extents_.size());
    for (int c = 0; c < nn; ++c)
        faces_[c] = cells_ / res_[c] * (res_[c] + 1);
    cell_volume_ = 1.0;
    for (double h : h_) cell_volume_ *= h;

    x_weight_.assign(static_cast<std::size_t>(cells_), 1.0);
    if (gamma_ != 0.0) {
        std::vector<int> idx(static_cast<std::size_t>(nn), 0);
        for (std::int64_t flat = 0; flat < cells_; ++flat) {
            double r2 = 0.0;
            for (int c = 0; c < m_; ++c) {
                const double x = coord(c, idx[static_cast<std::size_t>(c)]);
                r2 += x * x;
            }
            x_weight_[static_cast<std::size_t>(flat)] = std::pow(std::sqrt(r2), gamma_);
            for (int c = nn - 1; c >= 0; --c) {
                if (++idx[static_cast<std::size_t>(c)] < res_[c]) break;
                idx[static_cast<std::size_t>(c)] = 0;
            }
        }
    }
}

double GrushinDomain::min_spacing() const {
    double h = h_[0];
    for (double v : h_) h = std::min(h, v);
    return h;
}

std::vector<int> GrushinDomain::cell_multi_index(std::int64_t flat) const {
    std::vector<int> idx(static_cast<std::size_t>(n()));
    for (int c = 0; c < n(); ++c) {
        idx[static_cast<std::size_t>(c)] = static_cast<int>(flat / cell_stride_[c]);
        flat %= cell_stride_[c];
    }
    return idx;
}

std::vector<double> GrushinDomain::cell_coords(std::int64_t flat) const {
    std::vector<double> xs(static_cast<std::size_t>(n()));
    const auto idx = cell_multi_index(flat);
    for (int c = 0; c < n(); ++c) xs[static_cast<std::size_t>(c)] = coord(c, idx[static_cast<std::size_t>(c)]);
    return xs;
}

bool GrushinDomain::same_grid(const GrushinDomain& o) const {
    if (m_ != o.m_ || k_ != o.k_ || gamma_ != o.gamma_) return false;
    for (int c = 0; c < n(); ++c) {
        if (res_[c] != o.res_[c]) return false;
        if (extents_[c].lo != o.extents_[c].lo || extents_[c].hi != o.extents_[c].hi) return false;
    }
    return true;
}

DomainPtr make_domain(int m, int k, double gamma,
                      std::vector<AxisExtent> extents,
                      std::vector<int> resolution) {
    return std::make_shared<const GrushinDomain>(m, k, gamma, std::move(extents), std::move(resolution));
}

DomainPtr make_domain_2d(double gamma, AxisExtent x, AxisExtent y, int nx, int ny) {
    return make_domain(1, 1, gamma, {x, y}, {nx, ny});
}

bool ScalarField::all_finite() const {
    for (const cplx& z : v_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (const cplx& z : v_) m = std::max(m, std::abs(z));
    return m;
}

double ScalarField::min_abs() const {
    if (v_.empty()) return 0.0;
    double m = std::abs(v_[0]);
    for (const cplx& z : v_) m = std::min(m, std::abs(z));
    return m;
}

VectorField::VectorField(DomainPtr dom) : dom_(std::move(dom)) {
    comp_.resize(static_cast<std::size_t>(dom_->n()));
    for (int c = 0; c < dom_->n(); ++c)
        comp_[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(dom_->faces(c)), cplx(0.0, 0.0));
}

bool VectorField::all_finite() const {
    for (const auto& comp : comp_)
        for (const cplx& z : comp)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

} // namespace grushin
