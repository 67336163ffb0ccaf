#pragma once

#include "grushin/domain.hpp"

#include <cmath>
#include <vector>

namespace grushin::detail {

// Storage for the face grids of one scalar type. comp[c] has dom.faces(c)
// entries laid out with the same outer/inner order as the cells but N_c+1
// slices along axis c.
template <class T>
struct Faces {
    std::vector<std::vector<T>> comp;
    explicit Faces(const GrushinDomain& dom) {
        comp.resize(static_cast<std::size_t>(dom.n()));
        for (int c = 0; c < dom.n(); ++c)
            comp[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(dom.faces(c)), T{});
    }
};

struct AxisSplit {
    std::int64_t outer;  // product of resolutions before the axis
    std::int64_t inner;  // product of resolutions after the axis (cell stride)
    int len;             // resolution along the axis
};

inline AxisSplit axis_split(const GrushinDomain& dom, int axis) {
    AxisSplit s;
    s.inner = dom.cell_stride(axis);
    s.len = dom.resolution(axis);
    s.outer = dom.cells() / (s.inner * s.len);
    return s;
}

// The |x|^gamma weight of a y-face equals the weight of either adjacent cell
// (staggering along a y-axis leaves the x coordinates untouched). Faces of
// x-axes carry weight 1.
template <class T>
void gradient_axis(const GrushinDomain& dom, BoundaryKind kind, int axis,
                   const std::vector<T>& u, std::vector<T>& out) {
    const AxisSplit s = axis_split(dom, axis);
    const double invh = 1.0 / dom.spacing(axis);
    const bool weighted = axis >= dom.m() && dom.gamma() != 0.0;
    const std::vector<double>& w = dom.x_weight();
    const bool dirichlet = kind == BoundaryKind::DirichletZero;
    const std::int64_t cell_slab = static_cast<std::int64_t>(s.len) * s.inner;
    const std::int64_t face_slab = static_cast<std::int64_t>(s.len + 1) * s.inner;
    for (std::int64_t o = 0; o < s.outer; ++o) {
        const std::int64_t cbase = o * cell_slab;
        const std::int64_t fbase = o * face_slab;
        for (int f = 0; f <= s.len; ++f) {
            const std::int64_t frow = fbase + f * s.inner;
            if (f == 0) {
                const std::int64_t c0 = cbase;
                if (dirichlet) {
                    for (std::int64_t i = 0; i < s.inner; ++i)
                        out[frow + i] = u[c0 + i] * (2.0 * invh);
                } else {
                    const std::int64_t c1 = cbase + s.inner;
                    for (std::int64_t i = 0; i < s.inner; ++i)
                        out[frow + i] = (u[c1 + i] - u[c0 + i]) * invh;
                }
            } else if (f == s.len) {
                const std::int64_t cl = cbase + (s.len - 1) * s.inner;
                if (dirichlet) {
                    for (std::int64_t i = 0; i < s.inner; ++i)
                        out[frow + i] = u[cl + i] * (-2.0 * invh);
                } else {
                    const std::int64_t cp = cbase + (s.len - 2) * s.inner;
                    for (std::int64_t i = 0; i < s.inner; ++i)
                        out[frow + i] = (u[cl + i] - u[cp + i]) * invh;
                }
            } else {
                const std::int64_t cr = cbase + f * s.inner;
                const std::int64_t cl = cr - s.inner;
                for (std::int64_t i = 0; i < s.inner; ++i)
                    out[frow + i] = (u[cr + i] - u[cl + i]) * invh;
            }
            if (weighted) {
                // x-subindex of the face row: clamp f to a valid cell slice.
                const int fc = f < s.len ? f : s.len - 1;
                const std::int64_t crow = cbase + fc * s.inner;
                for (std::int64_t i = 0; i < s.inner; ++i)
                    out[frow + i] *= w[static_cast<std::size_t>(crow + i)];
            }
        }
    }
}

// out_cells += d/dx_c of (weight-folded faces). div V = sum_c D_c(W_c V_c).
template <class T>
void divergence_axis_accumulate(const GrushinDomain& dom, int axis,
                                const std::vector<T>& faces, std::vector<T>& out) {
    const AxisSplit s = axis_split(dom, axis);
    const double invh = 1.0 / dom.spacing(axis);
    const bool weighted = axis >= dom.m() && dom.gamma() != 0.0;
    const std::vector<double>& w = dom.x_weight();
    const std::int64_t cell_slab = static_cast<std::int64_t>(s.len) * s.inner;
    const std::int64_t face_slab = static_cast<std::int64_t>(s.len + 1) * s.inner;
    for (std::int64_t o = 0; o < s.outer; ++o) {
        const std::int64_t cbase = o * cell_slab;
        const std::int64_t fbase = o * face_slab;
        for (int c = 0; c < s.len; ++c) {
            const std::int64_t crow = cbase + c * s.inner;
            const std::int64_t flo = fbase + c * s.inner;
            const std::int64_t fhi = flo + s.inner;
            if (weighted) {
                for (std::int64_t i = 0; i < s.inner; ++i)
                    out[crow + i] += (faces[fhi + i] - faces[flo + i]) * invh *
                                     w[static_cast<std::size_t>(crow + i)];
            } else {
                for (std::int64_t i = 0; i < s.inner; ++i)
                    out[crow + i] += (faces[fhi + i] - faces[flo + i]) * invh;
            }
        }
    }
}

template <class T>
void face_average_axis(const GrushinDomain& dom, int axis,
                       const std::vector<T>& faces, std::vector<T>& out_cells) {
    const AxisSplit s = axis_split(dom, axis);
    const std::int64_t cell_slab = static_cast<std::int64_t>(s.len) * s.inner;
    const std::int64_t face_slab = static_cast<std::int64_t>(s.len + 1) * s.inner;
    for (std::int64_t o = 0; o < s.outer; ++o) {
        const std::int64_t cbase = o * cell_slab;
        const std::int64_t fbase = o * face_slab;
        for (int c = 0; c < s.len; ++c) {
            const std::int64_t crow = cbase + c * s.inner;
            const std::int64_t flo = fbase + c * s.inner;
            const std::int64_t fhi = flo + s.inner;
            for (std::int64_t i = 0; i < s.inner; ++i)
                out_cells[crow + i] = 0.5 * (faces[flo + i] + faces[fhi + i]);
        }
    }
}

// Spread cell-collocated coefficients to faces by adjacent-cell averaging
// (one-sided at walls), then multiply the face values in place.
template <class T>
void scale_faces_by_cell_coeff(const GrushinDomain& dom, int axis,
                               const std::vector<double>& coeff, std::vector<T>& faces) {
    const AxisSplit s = axis_split(dom, axis);
    const std::int64_t cell_slab = static_cast<std::int64_t>(s.len) * s.inner;
    const std::int64_t face_slab = static_cast<std::int64_t>(s.len + 1) * s.inner;
    for (std::int64_t o = 0; o < s.outer; ++o) {
        const std::int64_t cbase = o * cell_slab;
        const std::int64_t fbase = o * face_slab;
        for (int f = 0; f <= s.len; ++f) {
            const std::int64_t frow = fbase + f * s.inner;
            if (f == 0 || f == s.len) {
                const std::int64_t crow = cbase + (f == 0 ? 0 : s.len - 1) * s.inner;
                for (std::int64_t i = 0; i < s.inner; ++i)
                    faces[frow + i] *= coeff[static_cast<std::size_t>(crow + i)];
            } else {
                const std::int64_t cr = cbase + f * s.inner;
                const std::int64_t cl = cr - s.inner;
                for (std::int64_t i = 0; i < s.inner; ++i)
                    faces[frow + i] *=
                        0.5 * (coeff[static_cast<std::size_t>(cl + i)] +
                               coeff[static_cast<std::size_t>(cr + i)]);
            }
        }
    }
}

template <class T>
double abs2(const T& v) {
    if constexpr (std::is_same_v<T, double>) return v * v;
    else return std::norm(v);
}

// Cell-collocated |grad|^2: per axis, average of the two adjacent face
// squared moduli.
template <class T>
void grad_mag2_accumulate(const GrushinDomain& dom, int axis,
                          const std::vector<T>& faces, std::vector<double>& out) {
    const AxisSplit s = axis_split(dom, axis);
    const std::int64_t cell_slab = static_cast<std::int64_t>(s.len) * s.inner;
    const std::int64_t face_slab = static_cast<std::int64_t>(s.len + 1) * s.inner;
    for (std::int64_t o = 0; o < s.outer; ++o) {
        const std::int64_t cbase = o * cell_slab;
        const std::int64_t fbase = o * face_slab;
        for (int c = 0; c < s.len; ++c) {
            const std::int64_t crow = cbase + c * s.inner;
            const std::int64_t flo = fbase + c * s.inner;
            const std::int64_t fhi = flo + s.inner;
            for (std::int64_t i = 0; i < s.inner; ++i)
                out[static_cast<std::size_t>(crow + i)] +=
                    0.5 * (abs2(faces[flo + i]) + abs2(faces[fhi + i]));
        }
    }
}

// Full pipeline pieces shared by the complex API and the real-valued solver
// internals.
template <class T>
struct GradData {
    Faces<T> faces;
    std::vector<double> mag2;  // per cell
    explicit GradData(const GrushinDomain& dom)
        : faces(dom), mag2(static_cast<std::size_t>(dom.cells()), 0.0) {}
};

template <class T>
void compute_gradient(const GrushinDomain& dom, BoundaryKind kind,
                      const std::vector<T>& u, Faces<T>& out) {
    for (int c = 0; c < dom.n(); ++c)
        gradient_axis(dom, kind, c, u, out.comp[static_cast<std::size_t>(c)]);
}

template <class T>
void compute_grad_data(const GrushinDomain& dom, BoundaryKind kind,
                       const std::vector<T>& u, GradData<T>& gd) {
    compute_gradient(dom, kind, u, gd.faces);
    std::fill(gd.mag2.begin(), gd.mag2.end(), 0.0);
    for (int c = 0; c < dom.n(); ++c)
        grad_mag2_accumulate(dom, c, gd.faces.comp[static_cast<std::size_t>(c)], gd.mag2);
}

template <class T>
void compute_divergence(const GrushinDomain& dom, const Faces<T>& V, std::vector<T>& out) {
    std::fill(out.begin(), out.end(), T{});
    for (int c = 0; c < dom.n(); ++c)
        divergence_axis_accumulate(dom, c, V.comp[static_cast<std::size_t>(c)], out);
}

// Delta_{gamma,p} u = div(a grad u) with a = (mag2 + eps^2)^{(p-2)/2}
// interpolated to faces. Writes the operator value into out (cell layout).
template <class T>
void compute_p_grushin(const GrushinDomain& dom, BoundaryKind kind,
                       const std::vector<T>& u, double p, double eps,
                       std::vector<T>& out, GradData<T>& scratch) {
    compute_grad_data(dom, kind, u, scratch);
    if (p != 2.0) {
        const double e2 = p < 2.0 ? eps * eps : 0.0;
        std::vector<double> a(scratch.mag2.size());
        const double ex = 0.5 * (p - 2.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double m2 = scratch.mag2[i] + e2;
            // the flux |grad|^{p-2} grad vanishes with the gradient even for
            // p < 2, where the bare factor diverges
            a[i] = m2 > 0.0 ? std::pow(m2, ex) : 0.0;
        }
        for (int c = 0; c < dom.n(); ++c)
            scale_faces_by_cell_coeff(dom, c, a, scratch.faces.comp[static_cast<std::size_t>(c)]);
    }
    compute_divergence(dom, scratch.faces, out);
}

template <class T>
double compute_energy_p(const GrushinDomain& dom, BoundaryKind kind,
                        const std::vector<T>& u, double p, double eps,
                        GradData<T>& scratch) {
    compute_grad_data(dom, kind, u, scratch);
    const double e2 = p < 2.0 ? eps * eps : 0.0;
    const double w = dom.cell_volume();
    double acc = 0.0;
    if (p == 2.0) {
        for (double m2 : scratch.mag2) acc += m2;
    } else {
        const double ex = 0.5 * p;
        for (double m2 : scratch.mag2) acc += std::pow(m2 + e2, ex);
    }
    return w * acc;
}

} // namespace grushin::detail
