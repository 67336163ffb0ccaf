#pragma once

#include "grushin/domain.hpp"

#include <optional>
#include <string>
#include <vector>

namespace grushin {

/// Source term f(u) of the doubly nonlinear porous-medium problem; must
/// satisfy f(0) = 0 and f > 0 for u > 0 (locally Lipschitz).
struct PmeSource {
    enum class Kind { Zero, PowerLaw, Tabulated };
    Kind kind = Kind::Zero;
    double q = 1.0;  // PowerLaw exponent (>= 1 keeps f Lipschitz at 0)
    std::vector<std::pair<double, double>> table;  // (u, f(u)), u ascending, first entry (0,0)

    double eval(double u) const;
    static PmeSource zero() { return {}; }
    static PmeSource power_law(double q);
    static PmeSource tabulated(std::vector<std::pair<double, double>> t);
};

struct CertParams {
    double alpha = 0.0;
    double beta = 0.0;
    double theta = 0.0;
};

struct PmeProblem {
    DomainPtr domain;
    double p = 2.0;
    double ell = 1.0;
    PmeSource source;
    ScalarField u0;        // real nonnegative, zero-boundary
    CertParams cert;
    double lambda1 = 0.0;  // first eigenvalue of -Delta_{gamma,p} on the same domain/p
    double eps_regularization = 0.0;

    void validate() const;
};

enum class PmeStatus { BoundedToTmax, BlowUpDetected, Inconclusive };
std::string to_string(PmeStatus s);

struct PmeTrace {
    std::vector<double> times;
    std::vector<double> mass;   // int u^{ell+1}
    std::vector<double> J;      // -(1/(ell+1)) int |grad u^ell|^p + int (F(u)-theta)
    std::vector<double> E;      // int_0^t mass dtau (+ M when a blow-up certificate holds)
    std::vector<double> sup_u;
    PmeStatus status = PmeStatus::Inconclusive;
    double t_detect = 0.0;      // detection time when status == BlowUpDetected
    double max_clamp = 0.0;     // largest negative mass removed by the positivity clamp
    long steps = 0;
};

struct CertificateReport {
    enum class Kind { BlowUp, Global };
    Kind kind = Kind::BlowUp;
    bool holds = false;
    double sigma = 0.0;
    double M = 0.0;
    double Tstar_bound = 0.0;
    double J0 = 0.0;
    double lambda1_used = 0.0;
    // per-clause booleans
    bool structural_ok = false;
    bool theta_ok = false;
    bool alpha_ok = false;
    bool beta_ok = false;
    bool sigma_ok = false;
    bool j0_ok = false;
    double sample_range_hi = 0.0;  // structural inequality sampled on (0, this]
    int samples = 0;

    std::string to_text() const;
};

/// F(v) = (p ell/(ell+1)) int_0^v s^{ell-1} f(s) ds. Closed form for power
/// laws, adaptive Simpson quadrature for tabulated sources. Rejects v < 0.
double F_antiderivative(double v, const PmeProblem& problem);

/// Blow-up certificate: alpha F(u) <= u^ell f(u) + beta u^{p ell} + alpha theta
/// sampled on (0, 10 sup u0], theta > 0, alpha > ell+1,
/// 0 < beta <= lambda1 (alpha-ell-1)/(ell+1), sigma > 0 and J0 > 0. When it
/// holds, sigma, M and the blow-up time bound T* <= M/(sigma int u0^{ell+1})
/// are filled from the certificate formulas.
CertificateReport check_blowup_certificate(const PmeProblem& problem);

/// Global certificate: reversed structural inequality, theta >= 0, alpha <= 0,
/// beta >= lambda1 (alpha-ell-1)/(ell+1) and J0 > 0.
CertificateReport check_global_certificate(const PmeProblem& problem);

struct StepResult {
    ScalarField u;
    bool ok = false;          // false: non-finite values appeared, caller halves dt
    double clamped = 0.0;     // total negative mass removed
};

/// One explicit step u + dt (Delta_{gamma,p} u^ell + f(u)), clamped to >= 0.
StepResult step(const ScalarField& u, double dt, const PmeProblem& problem);

/// Adaptive explicit time integration with the conservative diffusion cap
/// dt <= 0.2 h_min^2 / (1 + ell max(u)^{ell-1} max|grad u^ell|^{p-2} (m+k))
/// plus a source cap; blow-up is detected by threshold crossing or dt
/// underflow below 1e-14.
PmeTrace run(const PmeProblem& problem, double t_max, double blowup_threshold = 0.0,
             int record_every = 20);

} // namespace grushin
