#include "grushin/pme.hpp"

#include "grushin/detail/kernels.hpp"
#include "grushin/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace grushin {

namespace {

double interp_table(const std::vector<std::pair<double, double>>& t, double u) {
    if (t.empty()) return 0.0;
    if (u <= t.front().first) return t.front().second;
    if (u >= t.back().first) return t.back().second;  // clamp beyond the table
    std::size_t lo = 0, hi = t.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (t[mid].first <= u) lo = mid;
        else hi = mid;
    }
    const double x0 = t[lo].first, x1 = t[hi].first;
    const double y0 = t[lo].second, y1 = t[hi].second;
    return y0 + (y1 - y0) * (u - x0) / (x1 - x0);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
    if (b <= a) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // absolute tolerance anchored to the integral's own magnitude
    const double tol = rel_tol * std::max(std::abs(whole), 1e-300);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 30);
}

using RVec = std::vector<double>;

double mass_of(const GrushinDomain& dom, const RVec& u, double ell) {
    double acc = 0.0;
    for (double v : u) acc += std::pow(v, ell + 1.0);
    return acc * dom.cell_volume();
}

double energy_of_pow(const GrushinDomain& dom, const RVec& u, double ell, double p,
                     double eps, detail::GradData<double>& scratch) {
    RVec w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = std::pow(u[i], ell);
    return detail::compute_energy_p(dom, BoundaryKind::DirichletZero, w, p, eps, scratch);
}

} // namespace

double PmeSource::eval(double u) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::PowerLaw: return std::pow(u, q);
        case Kind::Tabulated: return interp_table(table, u);
    }
    return 0.0;
}

PmeSource PmeSource::power_law(double q) {
    if (q < 1.0) throw std::invalid_argument("PmeSource: power law needs q >= 1 (Lipschitz at 0)");
    PmeSource s;
    s.kind = Kind::PowerLaw;
    s.q = q;
    return s;
}

PmeSource PmeSource::tabulated(std::vector<std::pair<double, double>> t) {
    if (t.size() < 2 || t.front().first != 0.0 || t.front().second != 0.0)
        throw std::invalid_argument("PmeSource: table must start at (0, 0)");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i].first <= t[i - 1].first)
            throw std::invalid_argument("PmeSource: table abscissae must increase");
    PmeSource s;
    s.kind = Kind::Tabulated;
    s.table = std::move(t);
    return s;
}

void PmeProblem::validate() const {
    if (!domain) throw std::invalid_argument("PmeProblem: missing domain");
    if (p <= 1.0) throw std::invalid_argument("PmeProblem: requires p > 1");
    if (ell < 1.0) throw std::invalid_argument("PmeProblem: requires ell >= 1");
    if (!u0.all_finite()) throw std::invalid_argument("PmeProblem: u0 has non-finite values");
    for (std::int64_t i = 0; i < u0.size(); ++i) {
        if (u0[i].imag() != 0.0 || u0[i].real() < 0.0)
            throw std::invalid_argument("PmeProblem: u0 must be real and nonnegative");
    }
    if (std::abs(source.eval(0.0)) != 0.0)
        throw std::invalid_argument("PmeProblem: source must satisfy f(0) = 0");
}

std::string to_string(PmeStatus s) {
    switch (s) {
        case PmeStatus::BoundedToTmax: return "BoundedToTmax";
        case PmeStatus::BlowUpDetected: return "BlowUpDetected";
        case PmeStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

double F_antiderivative(double v, const PmeProblem& problem) {
    if (v < 0.0) throw std::invalid_argument("F_antiderivative: negative argument");
    const double p = problem.p, ell = problem.ell;
    const double pref = p * ell / (ell + 1.0);
    switch (problem.source.kind) {
        case PmeSource::Kind::Zero:
            return 0.0;
        case PmeSource::Kind::PowerLaw: {
            const double q = problem.source.q;
            return pref * std::pow(v, q + ell) / (q + ell);
        }
        case PmeSource::Kind::Tabulated: {
            if (v == 0.0) return 0.0;
            const auto& src = problem.source;
            auto integrand = [&](double s) {
                return std::pow(s, ell - 1.0) * src.eval(s);
            };
            return pref * integrate_adaptive(integrand, 0.0, v, 1e-10);
        }
    }
    return 0.0;
}

namespace {

struct Clauses {
    bool structural = false;
    int samples = 0;
    double range_hi = 0.0;
};

// Sample alpha F(u) (<=|>=) u^ell f(u) + beta u^{p ell} + alpha theta on
// (0, 10 sup u0]. A tiny relative tolerance absorbs rounding in the term
// arithmetic, nothing more.
Clauses sample_structural(const PmeProblem& pb, bool blowup_direction) {
    Clauses c;
    const double sup0 = pb.u0.max_abs();
    c.range_hi = 10.0 * sup0;
    c.samples = 1000;
    const CertParams& cp = pb.cert;
    bool ok = true;
    for (int i = 1; i <= c.samples; ++i) {
        const double u = c.range_hi * i / c.samples;
        const double lhs = cp.alpha * F_antiderivative(u, pb);
        const double rhs = std::pow(u, pb.ell) * pb.source.eval(u) +
                           cp.beta * std::pow(u, pb.p * pb.ell) + cp.alpha * cp.theta;
        const double tol = 1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1.0});
        if (blowup_direction ? (lhs > rhs + tol) : (lhs < rhs - tol)) {
            ok = false;
            break;
        }
    }
    c.structural = ok;
    return c;
}

double compute_J0(const PmeProblem& pb) {
    const GrushinDomain& dom = *pb.domain;
    RVec u(static_cast<std::size_t>(dom.cells()));
    for (std::int64_t i = 0; i < dom.cells(); ++i) u[static_cast<std::size_t>(i)] = pb.u0[i].real();
    detail::GradData<double> scratch(dom);
    const double en = energy_of_pow(dom, u, pb.ell, pb.p, pb.eps_regularization, scratch);
    double fint = 0.0;
    for (double v : u) fint += F_antiderivative(v, pb) - pb.cert.theta;
    fint *= dom.cell_volume();
    return -en / (pb.ell + 1.0) + fint;
}

} // namespace

CertificateReport check_blowup_certificate(const PmeProblem& pb) {
    pb.validate();
    CertificateReport r;
    r.kind = CertificateReport::Kind::BlowUp;
    r.lambda1_used = pb.lambda1;
    const CertParams& cp = pb.cert;
    const double ell = pb.ell, p = pb.p;

    const Clauses cl = sample_structural(pb, /*blowup_direction=*/true);
    r.structural_ok = cl.structural;
    r.sample_range_hi = cl.range_hi;
    r.samples = cl.samples;
    r.theta_ok = cp.theta > 0.0;
    r.alpha_ok = cp.alpha > ell + 1.0;
    r.beta_ok = cp.beta > 0.0 && cp.beta <= pb.lambda1 * (cp.alpha - ell - 1.0) / (ell + 1.0);
    r.sigma = std::sqrt(std::max(p * ell * cp.alpha, 0.0)) / (ell + 1.0) - 1.0;
    r.sigma_ok = r.sigma > 0.0;
    r.J0 = compute_J0(pb);
    r.j0_ok = r.J0 > 0.0;
    r.holds = r.structural_ok && r.theta_ok && r.alpha_ok && r.beta_ok && r.sigma_ok && r.j0_ok;
    if (r.holds) {
        const GrushinDomain& dom = *pb.domain;
        RVec u(static_cast<std::size_t>(dom.cells()));
        for (std::int64_t i = 0; i < dom.cells(); ++i)
            u[static_cast<std::size_t>(i)] = pb.u0[i].real();
        const double m0 = mass_of(dom, u, ell);
        r.M = (1.0 + r.sigma) * (1.0 + 1.0 / r.sigma) * m0 * m0 /
              (cp.alpha * (ell + 1.0) * r.J0);
        r.Tstar_bound = r.M / (r.sigma * m0);
    }
    return r;
}

CertificateReport check_global_certificate(const PmeProblem& pb) {
    pb.validate();
    CertificateReport r;
    r.kind = CertificateReport::Kind::Global;
    r.lambda1_used = pb.lambda1;
    const CertParams& cp = pb.cert;
    const double ell = pb.ell;

    const Clauses cl = sample_structural(pb, /*blowup_direction=*/false);
    r.structural_ok = cl.structural;
    r.sample_range_hi = cl.range_hi;
    r.samples = cl.samples;
    r.theta_ok = cp.theta >= 0.0;
    r.alpha_ok = cp.alpha <= 0.0;
    r.beta_ok = cp.beta >= pb.lambda1 * (cp.alpha - ell - 1.0) / (ell + 1.0);
    r.sigma_ok = true;  // sigma plays no role in the global certificate
    r.J0 = compute_J0(pb);
    r.j0_ok = r.J0 > 0.0;
    r.holds = r.structural_ok && r.theta_ok && r.alpha_ok && r.beta_ok && r.j0_ok;
    return r;
}

std::string CertificateReport::to_text() const {
    std::ostringstream os;
    const bool blow = kind == Kind::BlowUp;
    os << "certificate: " << (blow ? "blow-up" : "global-existence") << "\n";
    auto line = [&os](const char* name, bool v) {
        os << "  " << name << ": " << (v ? "pass" : "fail") << "\n";
    };
    os << "  lambda1_used: " << lambda1_used << "\n";
    line("structural inequality (sampled)", structural_ok);
    os << "    sampled on (0, " << sample_range_hi << "], " << samples << " samples\n";
    line(blow ? "theta > 0" : "theta >= 0", theta_ok);
    line(blow ? "alpha > ell+1" : "alpha <= 0", alpha_ok);
    line(blow ? "0 < beta <= lambda1(alpha-ell-1)/(ell+1)"
              : "beta >= lambda1(alpha-ell-1)/(ell+1)",
         beta_ok);
    if (blow) line("sigma > 0", sigma_ok);
    os << "  J0 = " << J0 << "\n";
    line("J0 > 0", j0_ok);
    os << "  holds: " << (holds ? "true" : "false") << "\n";
    if (blow && holds) {
        os << "  sigma = " << sigma << "\n  M = " << M
           << "\n  Tstar_bound = " << Tstar_bound << "\n";
    }
    return os.str();
}

namespace {

struct RealStepper {
    const PmeProblem& pb;
    const GrushinDomain& dom;
    detail::GradData<double> scratch;
    RVec wfield, pg;

    explicit RealStepper(const PmeProblem& problem)
        : pb(problem), dom(*problem.domain), scratch(dom),
          wfield(static_cast<std::size_t>(dom.cells())),
          pg(static_cast<std::size_t>(dom.cells())) {}

    // dt cap: 0.2 h_min^2 / (1 + ell max(u)^{ell-1} max|grad u^ell|^{p-2} (m+k)),
    // plus a source cap keeping dt |f| below a tenth of the solution scale.
    double dt_cap(const RVec& u) {
        double sup = 0.0;
        for (double v : u) sup = std::max(sup, v);
        for (std::size_t i = 0; i < u.size(); ++i) wfield[i] = std::pow(u[i], pb.ell);
        detail::compute_grad_data(dom, BoundaryKind::DirichletZero, wfield, scratch);
        double m2max = 0.0;
        for (double v : scratch.mag2) m2max = std::max(m2max, v);
        const double gmax = std::sqrt(m2max) + pb.eps_regularization;
        const double diff = 1.0 + pb.ell * std::pow(std::max(sup, 1e-300), pb.ell - 1.0) *
                                      std::pow(std::max(gmax, 1e-300), pb.p - 2.0) *
                                      (dom.m() + dom.k());
        const double h = dom.min_spacing();
        double dt = 0.2 * h * h / diff;
        double fmax = 0.0;
        for (double v : u) fmax = std::max(fmax, std::abs(pb.source.eval(v)));
        if (fmax > 0.0) dt = std::min(dt, 0.1 * (1.0 + sup) / fmax);
        return dt;
    }

    // u <- u + dt (Delta_p u^ell + f(u)), clamped; returns false on
    // non-finite values (caller halves dt), clamped mass via *clamped.
    bool advance(RVec& u, double dt, double* clamped) {
        for (std::size_t i = 0; i < u.size(); ++i) wfield[i] = std::pow(u[i], pb.ell);
        detail::compute_p_grushin(dom, BoundaryKind::DirichletZero, wfield, pb.p,
                                  pb.eps_regularization, pg, scratch);
        double clamp_acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            double v = u[i] + dt * (pg[i] + pb.source.eval(u[i]));
            if (!std::isfinite(v)) return false;
            if (v < 0.0) {
                clamp_acc += -v;
                v = 0.0;
            }
            u[i] = v;
        }
        *clamped = clamp_acc * dom.cell_volume();
        return true;
    }

    double J_of(const RVec& u) {
        const double en = energy_of_pow(dom, u, pb.ell, pb.p, pb.eps_regularization, scratch);
        double fint = 0.0;
        for (double v : u) fint += F_antiderivative(v, pb) - pb.cert.theta;
        fint *= dom.cell_volume();
        return -en / (pb.ell + 1.0) + fint;
    }
};

} // namespace

StepResult step(const ScalarField& u, double dt, const PmeProblem& problem) {
    problem.validate();
    if (dt <= 0.0) throw std::invalid_argument("step: dt must be positive");
    const GrushinDomain& dom = *problem.domain;
    RVec v(static_cast<std::size_t>(dom.cells()));
    for (std::int64_t i = 0; i < dom.cells(); ++i) v[static_cast<std::size_t>(i)] = u[i].real();
    RealStepper st(problem);
    StepResult out;
    out.u = ScalarField(problem.domain, BoundaryKind::DirichletZero);
    double clamped = 0.0;
    out.ok = st.advance(v, dt, &clamped);
    out.clamped = clamped;
    if (out.ok)
        for (std::int64_t i = 0; i < dom.cells(); ++i)
            out.u[i] = v[static_cast<std::size_t>(i)];
    return out;
}

PmeTrace run(const PmeProblem& pb, double t_max, double blowup_threshold, int record_every) {
    pb.validate();
    const GrushinDomain& dom = *pb.domain;
    RealStepper st(pb);
    RVec u(static_cast<std::size_t>(dom.cells()));
    for (std::int64_t i = 0; i < dom.cells(); ++i) u[static_cast<std::size_t>(i)] = pb.u0[i].real();

    const double sup0 = pb.u0.max_abs();
    const double threshold = blowup_threshold > 0.0 ? blowup_threshold : 1e6 * sup0;

    const CertificateReport cert = check_blowup_certificate(pb);
    const double Moffset = cert.holds ? cert.M : 0.0;

    PmeTrace tr;
    double t = 0.0, Eacc = 0.0, prev_mass = mass_of(dom, u, pb.ell);
    tr.times.push_back(0.0);
    tr.mass.push_back(prev_mass);
    tr.J.push_back(st.J_of(u));
    tr.E.push_back(Moffset);
    tr.sup_u.push_back(sup0);
    tr.status = PmeStatus::Inconclusive;

    auto record = [&](double time, double m, double sup) {
        if (time <= tr.times.back()) return;
        tr.times.push_back(time);
        tr.mass.push_back(m);
        tr.J.push_back(st.J_of(u));
        tr.E.push_back(Eacc + Moffset);
        tr.sup_u.push_back(sup);
    };

    while (t_max - t > 1e-15 * t_max) {
        const double cap = st.dt_cap(u);
        if (cap < 1e-14) {
            tr.status = PmeStatus::BlowUpDetected;
            tr.t_detect = t;
            record(t, prev_mass, *std::max_element(u.begin(), u.end()));
            return tr;
        }
        double dt = std::min(cap, t_max - t);
        RVec backup = u;
        double clamped = 0.0;
        int halvings = 0;
        while (!st.advance(u, dt, &clamped)) {
            u = backup;
            dt *= 0.5;
            if (++halvings > 60 || dt < 1e-14) {
                tr.status = PmeStatus::BlowUpDetected;
                tr.t_detect = t;
                record(t, prev_mass, *std::max_element(u.begin(), u.end()));
                return tr;
            }
        }
        t += dt;
        ++tr.steps;
        tr.max_clamp = std::max(tr.max_clamp, clamped);
        const double m = mass_of(dom, u, pb.ell);
        const double sup = *std::max_element(u.begin(), u.end());
        Eacc += dt * 0.5 * (m + prev_mass);
        prev_mass = m;
        if (sup > threshold) {
            tr.status = PmeStatus::BlowUpDetected;
            tr.t_detect = t;
            record(t, m, sup);
            return tr;
        }
        if (tr.steps % record_every == 0) record(t, m, sup);
    }
    record(t, prev_mass, *std::max_element(u.begin(), u.end()));
    tr.status = PmeStatus::BoundedToTmax;
    return tr;
}

} // namespace grushin
