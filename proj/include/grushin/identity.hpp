#pragma once

#include "grushin/constants.hpp"
#include "grushin/domain.hpp"
#include "grushin/eigensolver.hpp"

#include <map>
#include <string>

namespace grushin {

struct IdentityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double rhs_imag = 0.0;  // imaginary part of the quotient integral
    double p = 0.0;
    double gamma = 0.0;
    std::vector<int> resolution;
};

/// int Cp(grad u, grad u - (grad phi/phi) u)  vs
/// int |grad u|^p + Re int |u|^p/(|phi|^{p-2} phi) Delta_{gamma,p} phi.
IdentityReport verify_main_identity(const ScalarField& u, const ScalarField& phi, double p);

/// int Cp(u; phi1) vs int |grad u|^p - lambda1 int |u|^p.
IdentityReport verify_remainder_formula(const ScalarField& u, const EigenPair& pair, double p);

/// slack = (1/lambda1) int |grad u|^p - int |u|^p  (>= 0 up to solver error).
double verify_poincare(const ScalarField& u, const EigenPair& pair, double p);

struct BoundCheck {
    std::string name;   // "cp_lower", "c1_lower", "c2_upper", "c3_lower"
    double lhs = 0.0;   // remainder side
    double rhs = 0.0;   // weighted eta integral times the constant
    bool pass = false;
};

struct RemainderBoundsReport {
    double remainder = 0.0;  // int|grad u|^p - lambda1 int|u|^p
    std::vector<BoundCheck> checks;
    bool all_pass = false;
};

/// p >= 2 activates the c_p lower bound; 1 < p < 2 activates the c_1 lower,
/// c_2 upper and c_3 min-form lower bounds. The supplied constants must have
/// been computed for the same p (invalid_argument otherwise). Inequalities
/// pass within a -1e-8 * scale slack.
RemainderBoundsReport verify_remainder_bounds(const ScalarField& u, const EigenPair& pair,
                                              double p,
                                              const std::map<ConstantKind, ConstantResult>& constants);

/// Built-in nonvanishing phi families for the identity experiments.
ScalarField make_gaussian_bump(const DomainPtr& dom, double width = 0.7);
ScalarField make_shifted_cosine(const DomainPtr& dom, double offset = 1.5);
/// Constant-phase complex bump e^{i theta0} (offset + cos...); the identity
/// requires the phase of phi to be constant (see README notes).
ScalarField make_phase_bump(const DomainPtr& dom, double theta0 = 0.7, double offset = 1.5);

/// Seeded random smooth zero-boundary field: low sine modes with
/// Gaussian coefficients (complex when complex_values is set).
ScalarField make_random_smooth(const DomainPtr& dom, unsigned seed, int max_mode = 3,
                               bool complex_values = true);

} // namespace grushin
