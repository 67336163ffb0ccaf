#pragma once

#include <string>

namespace grushin {

enum class ConstantKind { CP, C1, C2, C3 };

std::string to_string(ConstantKind k);
ConstantKind constant_kind_from_string(const std::string& s);

struct ConstantQuery {
    double p = 2.0;
    ConstantKind which = ConstantKind::CP;
    double search_radius = 1e3;  // initial box half-width for the polar scan
    int coarse_grid = 2001;      // nodes per axis (radius x angle)
    double refine_tol = 1e-8;
};

struct ConstantResult {
    double value = 0.0;
    double p = 0.0;              // exponent the constant was computed for
    double s = 0.0, t = 0.0;     // optimizer location
    double uncertainty = 0.0;    // spread between the last two refinement levels
    bool bound_check = false;    // value lies in the published interval
    bool possibly_unbounded = false;  // supremum kept growing under radius doubling
};

/// Ratio [t^2+s^2+2s+1]^{p/2} - 1 - ps over [t^2+s^2]^{p/2} (p >= 2).
/// Errors at the origin; identically 1 when p = 2.
double ratio_cp(double s, double t, double p);

/// Ratio with denominator (sqrt(t^2+s^2+2s+1) + 1)^{p-2} (t^2+s^2); its
/// infimum over the punctured plane is c_1(p) and its supremum c_2(p).
double ratio_c1c2(double s, double t, double p);

/// Denominator t^2+s^2 (used on 0 < s^2+t^2 < 1 for c_3's second regional
/// infimum).
double ratio_c3_inner(double s, double t, double p);

/// Coarse log-polar scan plus pattern-search refinement. CP requires p >= 2,
/// the others 1 < p < 2. The C2 supremum doubles the search radius until the
/// incumbent is stable; persistent >10% growth flags possibly_unbounded.
ConstantResult compute_constant(const ConstantQuery& q);

/// Published interval endpoints (bound_check compares against these).
double cp_interval_hi();                 // 1
double c1_interval_hi(double p);         // p(p-1)/(2p-1)
double c2_interval_lo(double p);         // p / 2^{p-1}
double c3_interval_hi(double p);         // p(p-1)/2

} // namespace grushin
