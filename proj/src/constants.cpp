#include "grushin/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace grushin {

std::string to_string(ConstantKind k) {
    switch (k) {
        case ConstantKind::CP: return "cp";
        case ConstantKind::C1: return "c1";
        case ConstantKind::C2: return "c2";
        case ConstantKind::C3: return "c3";
    }
    return "?";
}

ConstantKind constant_kind_from_string(const std::string& s) {
    if (s == "cp" || s == "CP") return ConstantKind::CP;
    if (s == "c1" || s == "C1") return ConstantKind::C1;
    if (s == "c2" || s == "C2") return ConstantKind::C2;
    if (s == "c3" || s == "C3") return ConstantKind::C3;
    throw std::invalid_argument("unknown constant kind: " + s);
}

namespace {

// Numerator [t^2+s^2+2s+1]^{p/2} - 1 - ps evaluated as
// expm1((p/2) log1p(2s+r^2)) - ps to survive the cancellation near the
// origin (there 2s+r^2 -> 0 while both subtracted terms stay O(|s|)).
double numerator(double s, double t, double p) {
    const double e = std::max(2.0 * s + s * s + t * t, -1.0);
    return std::expm1(0.5 * p * std::log1p(e)) - p * s;
}

void require_not_origin(double s, double t) {
    if (s == 0.0 && t == 0.0)
        throw std::invalid_argument("ratio undefined at the origin");
}

// cp-form ratio without the p >= 2 gate; c_3's first regional infimum uses
// this denominator on s^2+t^2 >= 1 with 1 < p < 2.
double ratio_cp_form(double s, double t, double p) {
    const double r2 = s * s + t * t;
    return numerator(s, t, p) / std::pow(r2, 0.5 * p);
}

} // namespace

double ratio_cp(double s, double t, double p) {
    require_not_origin(s, t);
    if (p < 2.0) throw std::invalid_argument("ratio_cp: requires p >= 2");
    const double r2 = s * s + t * t;
    return numerator(s, t, p) / std::pow(r2, 0.5 * p);
}

double ratio_c1c2(double s, double t, double p) {
    require_not_origin(s, t);
    const double r2 = s * s + t * t;
    const double X = std::max(1.0 + 2.0 * s + r2, 0.0);
    const double den = std::pow(std::sqrt(X) + 1.0, p - 2.0) * r2;
    return numerator(s, t, p) / den;
}

double ratio_c3_inner(double s, double t, double p) {
    require_not_origin(s, t);
    return numerator(s, t, p) / (s * s + t * t);
}

double cp_interval_hi() { return 1.0; }
double c1_interval_hi(double p) { return p * (p - 1.0) / (2.0 * p - 1.0); }
double c2_interval_lo(double p) { return p / std::pow(2.0, p - 1.0); }
double c3_interval_hi(double p) { return p * (p - 1.0) / 2.0; }

namespace {

struct ScanPoint {
    double value;
    double lr;     // log radius
    double theta;
};

using RatioFn = double (*)(double, double, double);

double eval_polar(RatioFn f, double lr, double theta, double p, double sign) {
    const double r = std::exp(lr);
    return sign * f(r * std::cos(theta), r * std::sin(theta), p);
}

// Coarse scan over [lr_lo, lr_hi] x [0, 2pi), keeping the best K cells.
std::vector<ScanPoint> coarse_scan(RatioFn f, double p, double sign,
                                   double lr_lo, double lr_hi, int grid, int keep) {
    std::vector<ScanPoint> best;
    best.reserve(static_cast<std::size_t>(keep));
    const double dlr = (lr_hi - lr_lo) / (grid - 1);
    const double dth = 2.0 * M_PI / grid;
    for (int ir = 0; ir < grid; ++ir) {
        const double lr = lr_lo + ir * dlr;
        const double r = std::exp(lr);
        for (int ia = 0; ia < grid; ++ia) {
            const double th = ia * dth;
            const double v = sign * f(r * std::cos(th), r * std::sin(th), p);
            if (!std::isfinite(v)) continue;
            if (best.size() < static_cast<std::size_t>(keep)) {
                best.push_back({v, lr, th});
                std::push_heap(best.begin(), best.end(),
                               [](const ScanPoint& a, const ScanPoint& b) { return a.value < b.value; });
            } else if (v < best.front().value) {
                std::pop_heap(best.begin(), best.end(),
                              [](const ScanPoint& a, const ScanPoint& b) { return a.value < b.value; });
                best.back() = {v, lr, th};
                std::push_heap(best.begin(), best.end(),
                               [](const ScanPoint& a, const ScanPoint& b) { return a.value < b.value; });
            }
        }
    }
    std::sort(best.begin(), best.end(),
              [](const ScanPoint& a, const ScanPoint& b) { return a.value < b.value; });
    return best;
}

// Compass pattern search in (log r, theta), clamped to the given radius
// band. Returns the refined point and reports the value one level before
// convergence for the uncertainty bracket.
ScanPoint pattern_refine(RatioFn f, double p, double sign, ScanPoint start,
                         double step_lr, double step_th, double tol,
                         double lr_lo, double lr_hi, double* prev_level_value) {
    ScanPoint cur = start;
    double slr = step_lr, sth = step_th;
    double prev = cur.value;
    while (slr > tol * 1e-2 || sth > tol * 1e-2) {
        bool moved = false;
        const double cand_lr[4] = {cur.lr + slr, cur.lr - slr, cur.lr, cur.lr};
        const double cand_th[4] = {cur.theta, cur.theta, cur.theta + sth, cur.theta - sth};
        for (int j = 0; j < 4; ++j) {
            const double lr = std::clamp(cand_lr[j], lr_lo, lr_hi);
            const double v = eval_polar(f, lr, cand_th[j], p, sign);
            if (std::isfinite(v) && v < cur.value) {
                cur = {v, lr, cand_th[j]};
                moved = true;
            }
        }
        if (!moved) {
            prev = cur.value;
            slr *= 0.5;
            sth *= 0.5;
            if (slr < 1e-14 && sth < 1e-14) break;
        }
    }
    *prev_level_value = prev;
    return cur;
}

struct RegionSpec {
    RatioFn fn;
    double lr_lo, lr_hi;
};

ConstantResult optimize(const std::vector<RegionSpec>& regions, double p, double sign,
                        int grid, double tol) {
    ConstantResult res;
    res.value = std::numeric_limits<double>::infinity();
    double prev_best = res.value;
    for (const RegionSpec& reg : regions) {
        auto seeds = coarse_scan(reg.fn, p, sign, reg.lr_lo, reg.lr_hi, grid, 16);
        const double dlr = (reg.lr_hi - reg.lr_lo) / (grid - 1);
        const double dth = 2.0 * M_PI / grid;
        for (const ScanPoint& s0 : seeds) {
            double prev = s0.value;
            ScanPoint r = pattern_refine(reg.fn, p, sign, s0, dlr, dth, tol,
                                         reg.lr_lo, reg.lr_hi, &prev);
            if (r.value < res.value) {
                res.value = r.value;
                prev_best = prev;
                const double rad = std::exp(r.lr);
                res.s = rad * std::cos(r.theta);
                res.t = rad * std::sin(r.theta);
            }
        }
    }
    res.value *= sign;
    res.uncertainty = std::abs(prev_best * sign - res.value);
    return res;
}

} // namespace

ConstantResult compute_constant(const ConstantQuery& q) {
    const double p = q.p;
    if (q.which == ConstantKind::CP) {
        if (p < 2.0) throw std::invalid_argument("compute_constant: CP requires p >= 2");
    } else {
        if (!(p > 1.0 && p < 2.0))
            throw std::invalid_argument("compute_constant: C1/C2/C3 require 1 < p < 2");
    }
    const double tol = q.refine_tol;
    const double btol = 1e-9;
    const double lr_min = std::log(1e-6);

    ConstantResult res;
    res.p = p;
    switch (q.which) {
        case ConstantKind::CP: {
            if (p == 2.0) {
                // The ratio is identically 1: numerator == denominator.
                res.value = 1.0;
                res.s = 1.0;
                res.t = 0.0;
                res.uncertainty = 0.0;
                res.bound_check = true;
                return res;
            }
            res = optimize({{&ratio_cp, lr_min, std::log(q.search_radius)}}, p, +1.0,
                           q.coarse_grid, tol);
            res.p = p;
            res.bound_check = res.value > 0.0 && res.value <= cp_interval_hi() + btol;
            return res;
        }
        case ConstantKind::C1: {
            res = optimize({{&ratio_c1c2, lr_min, std::log(q.search_radius)}}, p, +1.0,
                           q.coarse_grid, tol);
            res.p = p;
            const double hi = c1_interval_hi(p);
            res.bound_check = res.value > 0.0 && res.value <= hi + btol * std::max(1.0, hi);
            return res;
        }
        case ConstantKind::C2: {
            // Supremum; double the radius until the incumbent stabilizes.
            double radius = q.search_radius;
            int growth_streak = 0;
            ConstantResult cur;
            double prev_value = -std::numeric_limits<double>::infinity();
            for (int round = 0; round < 16; ++round) {
                cur = optimize({{&ratio_c1c2, lr_min, std::log(radius)}}, p, -1.0,
                               q.coarse_grid, tol);
                if (round > 0) {
                    const double change = cur.value - prev_value;
                    if (std::abs(change) < tol * std::max(1.0, std::abs(cur.value))) break;
                    if (change > 0.10 * std::abs(prev_value)) {
                        if (++growth_streak >= 3) {
                            cur.possibly_unbounded = true;
                            break;
                        }
                    } else {
                        growth_streak = 0;
                    }
                }
                prev_value = cur.value;
                radius *= 2.0;
            }
            res = cur;
            res.p = p;
            res.bound_check = res.value >= c2_interval_lo(p) - btol * std::max(1.0, c2_interval_lo(p));
            return res;
        }
        case ConstantKind::C3: {
            // min of two regional infima; the seam r = 1 belongs to region 1.
            res = optimize({{&ratio_cp_form, 0.0, std::log(q.search_radius)},
                            {&ratio_c3_inner, lr_min, 0.0}},
                           p, +1.0, q.coarse_grid, tol);
            res.p = p;
            const double hi = c3_interval_hi(p);
            res.bound_check = res.value > 0.0 && res.value <= hi + btol * std::max(1.0, hi);
            return res;
        }
    }
    throw std::logic_error("compute_constant: unreachable");
}

} // namespace grushin
