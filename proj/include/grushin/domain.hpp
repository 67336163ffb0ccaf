#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace grushin {

using cplx = std::complex<double>;

struct AxisExtent {
    double lo = 0.0;
    double hi = 1.0;
};

/// Boundary convention of a grid function. DirichletZero fields are zero on
/// the box walls (the value used by difference stencils there); Natural
/// fields carry no wall data and are one-sided differenced at the walls.
enum class BoundaryKind { DirichletZero, Natural };

/// Rectangular box in R^{m+k} with a cell-centered grid. The first m axes
/// are the x-axes (degeneracy directions enter through |x|^gamma), the last
/// k axes are the y-axes. Nodes sit at cell centers lo + (i+1/2)h, so |x|=0
/// is never sampled on an even grid straddling the degeneracy line.
class GrushinDomain {
public:
    GrushinDomain(int m, int k, double gamma,
                  std::vector<AxisExtent> extents,
                  std::vector<int> resolution);

    int m() const { return m_; }
    int k() const { return k_; }
    int n() const { return m_ + k_; }
    double gamma() const { return gamma_; }

    /// Q = m + k(gamma+1)
    double homogeneous_dimension() const { return m_ + k_ * (gamma_ + 1.0); }

    const AxisExtent& extent(int axis) const { return extents_[axis]; }
    int resolution(int axis) const { return res_[axis]; }
    double spacing(int axis) const { return h_[axis]; }
    double min_spacing() const;

    std::int64_t cells() const { return cells_; }
    std::int64_t faces(int axis) const { return faces_[axis]; }
    double cell_volume() const { return cell_volume_; }
    double box_volume() const { return cell_volume_ * static_cast<double>(cells_); }

    /// Center coordinate of cell index i along an axis.
    double coord(int axis, int idx) const {
        return extents_[axis].lo + (idx + 0.5) * h_[axis];
    }

    std::int64_t cell_stride(int axis) const { return cell_stride_[axis]; }

    /// Multi-index of a flattened cell index.
    std::vector<int> cell_multi_index(std::int64_t flat) const;
    std::vector<double> cell_coords(std::int64_t flat) const;

    /// |x|^gamma sampled at cell centers (weight of the Y_j vector fields).
    /// Identically 1 when gamma == 0.
    const std::vector<double>& x_weight() const { return x_weight_; }

    bool same_grid(const GrushinDomain& other) const;

private:
    int m_, k_;
    double gamma_;
    std::vector<AxisExtent> extents_;
    std::vector<int> res_;
    std::vector<double> h_;
    std::vector<std::int64_t> cell_stride_;
    std::vector<std::int64_t> faces_;
    std::int64_t cells_;
    double cell_volume_;
    std::vector<double> x_weight_;
};

using DomainPtr = std::shared_ptr<const GrushinDomain>;

DomainPtr make_domain(int m, int k, double gamma,
                      std::vector<AxisExtent> extents,
                      std::vector<int> resolution);

/// Convenience: 2-D domain (m=k=1).
DomainPtr make_domain_2d(double gamma, AxisExtent x, AxisExtent y, int nx, int ny);

/// Complex grid function on the cell centers of a domain.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(DomainPtr dom, BoundaryKind kind = BoundaryKind::DirichletZero)
        : dom_(std::move(dom)), kind_(kind), v_(dom_->cells(), cplx(0.0, 0.0)) {}

    const GrushinDomain& domain() const { return *dom_; }
    const DomainPtr& domain_ptr() const { return dom_; }
    BoundaryKind boundary() const { return kind_; }
    void set_boundary(BoundaryKind k) { kind_ = k; }

    std::int64_t size() const { return static_cast<std::int64_t>(v_.size()); }
    cplx& operator[](std::int64_t i) { return v_[static_cast<std::size_t>(i)]; }
    const cplx& operator[](std::int64_t i) const { return v_[static_cast<std::size_t>(i)]; }
    std::vector<cplx>& values() { return v_; }
    const std::vector<cplx>& values() const { return v_; }

    bool all_finite() const;
    double max_abs() const;
    double min_abs() const;

private:
    DomainPtr dom_;
    BoundaryKind kind_ = BoundaryKind::DirichletZero;
    std::vector<cplx> v_;
};

/// Sub-elliptic gradient on the staggered face grid: component c of the
/// gradient lives on the faces normal to axis c (N_c+1 slices along c).
/// The y-components carry the |x|^gamma weight, so the stored values are the
/// physical components of nabla_gamma. The divergence below is the exact
/// negative adjoint of this operator under the cell/face quadrature pair,
/// which is what makes the discrete divergence theorem exact.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(DomainPtr dom);

    const GrushinDomain& domain() const { return *dom_; }
    const DomainPtr& domain_ptr() const { return dom_; }

    std::vector<cplx>& component(int axis) { return comp_[axis]; }
    const std::vector<cplx>& component(int axis) const { return comp_[axis]; }
    int components() const { return static_cast<int>(comp_.size()); }

    bool all_finite() const;

private:
    DomainPtr dom_;
    std::vector<std::vector<cplx>> comp_;
};

/// Gradient sampled back at cell centers (face averages of VectorField),
/// used by the pointwise Cp/Rp functionals. comp[c][cell].
struct CellGradient {
    DomainPtr dom;
    std::vector<std::vector<cplx>> comp;
};

} // namespace grushin
