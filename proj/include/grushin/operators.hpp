#pragma once

#include "grushin/domain.hpp"

namespace grushin {

/// Discrete sub-elliptic gradient nabla_gamma on the staggered face grid.
/// Two-point differences at interior faces; at wall faces DirichletZero
/// fields use the wall value 0 at distance h/2, Natural fields reuse the
/// first interior difference (one-sided).
VectorField grushin_gradient(const ScalarField& u);

/// Negative adjoint of grushin_gradient: <grad u, V>_faces + <u, div V>_cells = 0
/// exactly (to rounding) for every DirichletZero u and every V.
ScalarField grushin_divergence(const VectorField& V);

/// Gradient sampled at cell centers (average of the two adjacent faces per
/// axis; centered differences away from the walls).
CellGradient cell_gradient(const ScalarField& u);

/// p-Grushin operator div_gamma(|nabla_gamma phi|^{p-2} nabla_gamma phi).
/// For p < 2 the magnitude factor is (|grad|^2 + eps^2)^{(p-2)/2}.
/// This is exactly -1/p times the gradient of energy_p below, so the
/// eigensolver residual is measured against the same discrete operator it
/// minimizes.
ScalarField p_grushin(const ScalarField& phi, double p, double eps = 0.0);

/// Quadrature: sum of cell values times the cell volume. Weights sum to the
/// box volume exactly.
cplx integrate(const ScalarField& u);
double integrate_real(const GrushinDomain& dom, const std::vector<double>& g);

/// int |u|^p over cells.
double lp_norm_pow(const ScalarField& u, double p);

/// Discrete energy int |nabla_gamma u|^p with the cell-collocated squared
/// magnitude (face averages of |component|^2). Agrees with the face
/// quadrature of |grad u|^2 exactly at p = 2.
double energy_p(const ScalarField& u, double p, double eps = 0.0);

/// (energy_p)^{1/p}; the W^{1,p}_gamma seminorm.
double sobolev_seminorm(const ScalarField& u, double p);

/// Complex face inner product sum_faces omega <a, conj b> (omega halves the
/// wall faces). Used by the summation-by-parts tests.
cplx face_inner_product(const VectorField& a, const VectorField& b);
cplx cell_inner_product(const ScalarField& a, const ScalarField& b);

/// Squared gradient magnitude collocated at cells (shared by energy_p,
/// p_grushin and the stability cap of the PME stepper).
std::vector<double> grad_mag2_cells(const VectorField& g);

} // namespace grushin
