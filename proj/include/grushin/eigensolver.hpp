#pragma once

#include "grushin/domain.hpp"

#include <optional>

namespace grushin {

struct SolverConfig {
    double p = 2.0;
    int max_iterations = 5000;
    double tolerance = 1e-8;              // relative Rayleigh-quotient change
    double backtrack_shrink = 0.5;
    double sufficient_decrease = 1e-4;
    std::optional<ScalarField> initial_guess;  // default: product of sines
    double eps_regularization_rel = 1e-10;     // scaled by the initial gradient magnitude (p < 2)
    bool preconditioned = true;                // inverse gamma-Laplacian metric via CG
    double cg_tol = 1e-10;
    int cg_max_iterations = 20000;
    int random_restarts = 0;
    unsigned seed = 0;
};

struct EigenPair {
    double lambda1 = 0.0;
    ScalarField phi1;     // real, nonnegative, int |phi1|^p = 1
    double residual = 0.0;  // ||Delta_{gamma,p} phi1 + lambda1 phi1^{p-1}||_{L^2}
    int iterations = 0;
    bool converged = false;
    double min_phi = 0.0;
};

/// int |grad_gamma u|^p / int |u|^p. Errors when u is identically zero.
double rayleigh_quotient(const ScalarField& u, double p);

/// Projected descent on the p-energy with normalization int|u|^p = 1,
/// positivity by |u| between iterations, monotone Rayleigh quotient via
/// backtracking. Non-convergence returns the incumbent pair with
/// converged=false; an identically-zero initial guess throws.
EigenPair solve_first_eigenpair(const DomainPtr& domain, const SolverConfig& config);

/// Default initial guess: product of sines, positive, zero on the walls.
ScalarField product_of_sines(const DomainPtr& domain);

} // namespace grushin
