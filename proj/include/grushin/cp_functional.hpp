#pragma once

#include "grushin/domain.hpp"

#include <span>
#include <vector>

namespace grushin {

/// One node's worth of a complex (m+k)-vector (xi = grad u, eta = grad u -
/// (grad phi / phi) u, ...).
using CVec = std::vector<cplx>;

/// C_p(xi, eta) = |xi|^p - |xi-eta|^p - p |xi-eta|^{p-2} Re (xi-eta).conj(eta).
/// For p < 2 the limit convention 0^{p-2} * 0 = 0 applies at xi = eta.
double cp_eval(std::span<const cplx> xi, std::span<const cplx> eta, double p);

/// Same functional evaluated from the squared moduli and the real cross
/// term; shared by the field sweeps so no per-node vectors get built.
double cp_eval_parts(double xi2, double dif2, double re_dif_conj_eta, double p);

/// Pointwise C_p(grad u, grad u - (grad phi/phi) u) over the cells.
/// Requires min |phi| > 0 on the cells.
std::vector<double> cp_field(const ScalarField& u, const ScalarField& phi, double p);

/// Pointwise R_p in quotient form:
///   |grad u|^p - Re[ |grad phi|^{p-2} grad(|u|^p / (|phi|^{p-2} phi)) . grad phi ]
/// with the unconjugated component sum and the real part taken at the end.
/// The quotient field inherits the zero-boundary convention of u.
std::vector<double> rp_field(const ScalarField& u, const ScalarField& phi, double p);

/// Max over cells of |cp - rp_algebraic| / max(1, |xi|, |zeta|)^p where
/// rp_algebraic is the expanded form
///   |grad u|^p + (p-1)|zeta|^p - p Re[|zeta|^{p-2} (u/phi)(grad phi . conj grad u)],
/// zeta = (grad phi / phi) u. Both forms are evaluated from the same node
/// data, so this measures pure algebra, not discretization.
double picone_residual(const ScalarField& u, const ScalarField& phi, double p);

/// rp_algebraic for a single sample; used by the random-sample sweeps.
double rp_algebraic_eval(std::span<const cplx> grad_u, std::span<const cplx> grad_phi,
                         cplx u, cplx phi, double p);

} // namespace grushin
