#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grushin/constants.hpp"
#include "grushin/cp_functional.hpp"
#include "grushin/eigensolver.hpp"
#include "grushin/identity.hpp"
#include "grushin/operators.hpp"
#include "grushin/pme.hpp"

namespace py = pybind11;
using namespace grushin;

namespace {

std::shared_ptr<GrushinDomain> make_domain_py(
    int m, int k, double gamma, const std::vector<std::pair<double, double>>& extents,
    const std::vector<int>& resolution) {
    std::vector<AxisExtent> ext;
    ext.reserve(extents.size());
    for (const auto& [lo, hi] : extents) ext.push_back({lo, hi});
    return std::make_shared<GrushinDomain>(m, k, gamma, std::move(ext), resolution);
}

ScalarField field_from_array(const DomainPtr& dom,
                             const py::array_t<std::complex<double>>& values,
                             bool dirichlet) {
    if (values.size() != dom->cells())
        throw std::invalid_argument("values must have one entry per cell");
    ScalarField f(dom, dirichlet ? BoundaryKind::DirichletZero : BoundaryKind::Natural);
    auto r = values.unchecked<1>();
    for (py::ssize_t i = 0; i < r.shape(0); ++i) f[i] = r(i);
    return f;
}

py::array_t<std::complex<double>> complex_array(std::size_t n) {
    // explicit strides; the bare count constructor produced zero-stride
    // arrays on older pybind11 releases
    return py::array_t<std::complex<double>>(
        {static_cast<py::ssize_t>(n)},
        {static_cast<py::ssize_t>(sizeof(std::complex<double>))});
}

py::array_t<std::complex<double>> field_to_array(const ScalarField& f) {
    auto out = complex_array(static_cast<std::size_t>(f.size()));
    auto w = out.mutable_unchecked<1>();
    for (std::int64_t i = 0; i < f.size(); ++i) w(i) = f[i];
    return out;
}

} // namespace

PYBIND11_MODULE(_grushin, m) {
    m.doc() = "Discrete Baouendi-Grushin operators, Lp-Poincare remainder "
              "identities, remainder constants and the doubly nonlinear PME";

    py::class_<GrushinDomain, std::shared_ptr<GrushinDomain>>(m, "Domain")
        .def(py::init(&make_domain_py), py::arg("m"), py::arg("k"), py::arg("gamma"),
             py::arg("extents"), py::arg("resolution"))
        .def_property_readonly("m", &GrushinDomain::m)
        .def_property_readonly("k", &GrushinDomain::k)
        .def_property_readonly("gamma", &GrushinDomain::gamma)
        .def_property_readonly("cells", &GrushinDomain::cells)
        .def("homogeneous_dimension", &GrushinDomain::homogeneous_dimension)
        .def("spacing", &GrushinDomain::spacing)
        .def("coords", &GrushinDomain::cell_coords);

    py::class_<ScalarField>(m, "ScalarField")
        .def(py::init([](const DomainPtr& dom, const py::array_t<std::complex<double>>& v,
                         bool dirichlet) { return field_from_array(dom, v, dirichlet); }),
             py::arg("domain"), py::arg("values"), py::arg("dirichlet") = true)
        .def("values", &field_to_array);

    m.def("product_of_sines", &product_of_sines);
    m.def("random_smooth", &make_random_smooth, py::arg("domain"), py::arg("seed"),
          py::arg("max_mode") = 3, py::arg("complex_values") = true);
    m.def("gaussian_bump", &make_gaussian_bump, py::arg("domain"), py::arg("width") = 0.7);
    m.def("shifted_cosine", &make_shifted_cosine, py::arg("domain"), py::arg("offset") = 1.5);
    m.def("phase_bump", &make_phase_bump, py::arg("domain"), py::arg("theta0") = 0.7,
          py::arg("offset") = 1.5);

    m.def("gradient", [](const ScalarField& u) {
        VectorField g = grushin_gradient(u);
        std::vector<py::array_t<std::complex<double>>> out;
        for (int c = 0; c < g.components(); ++c) {
            auto a = complex_array(g.component(c).size());
            auto w = a.mutable_unchecked<1>();
            for (std::size_t i = 0; i < g.component(c).size(); ++i) w(i) = g.component(c)[i];
            out.push_back(std::move(a));
        }
        return out;
    }, "face-staggered sub-elliptic gradient, one array per component");
    m.def("p_grushin", [](const ScalarField& u, double p, double eps) {
        return field_to_array(p_grushin(u, p, eps));
    }, py::arg("u"), py::arg("p"), py::arg("eps") = 0.0);
    m.def("integrate", [](const ScalarField& u) { return integrate(u); });
    m.def("sobolev_seminorm", &sobolev_seminorm);
    m.def("energy_p", &energy_p, py::arg("u"), py::arg("p"), py::arg("eps") = 0.0);
    m.def("lp_norm_pow", &lp_norm_pow);
    m.def("sbp_residual", [](const ScalarField& u) {
        // divergence-theorem residual against a gradient field of the same u
        VectorField g = grushin_gradient(u);
        const cplx a = face_inner_product(g, g);
        const cplx b = cell_inner_product(u, grushin_divergence(g));
        return std::abs(a + b) / std::max({std::abs(a), std::abs(b), 1e-30});
    });

    m.def("cp_eval", [](const std::vector<cplx>& xi, const std::vector<cplx>& eta, double p) {
        return cp_eval(xi, eta, p);
    });
    m.def("cp_field", [](const ScalarField& u, const ScalarField& phi, double p) {
        return cp_field(u, phi, p);
    });
    m.def("rp_field", [](const ScalarField& u, const ScalarField& phi, double p) {
        return rp_field(u, phi, p);
    });
    m.def("picone_residual", &picone_residual);

    py::enum_<ConstantKind>(m, "ConstantKind")
        .value("CP", ConstantKind::CP)
        .value("C1", ConstantKind::C1)
        .value("C2", ConstantKind::C2)
        .value("C3", ConstantKind::C3);
    py::class_<ConstantResult>(m, "ConstantResult")
        .def_readonly("value", &ConstantResult::value)
        .def_readonly("s", &ConstantResult::s)
        .def_readonly("t", &ConstantResult::t)
        .def_readonly("uncertainty", &ConstantResult::uncertainty)
        .def_readonly("bound_check", &ConstantResult::bound_check)
        .def_readonly("possibly_unbounded", &ConstantResult::possibly_unbounded);
    m.def("compute_constant",
          [](const std::string& which, double p, double search_radius, int coarse_grid,
             double refine_tol) {
              ConstantQuery q;
              q.which = constant_kind_from_string(which);
              q.p = p;
              q.search_radius = search_radius;
              q.coarse_grid = coarse_grid;
              q.refine_tol = refine_tol;
              return compute_constant(q);
          },
          py::arg("which"), py::arg("p"), py::arg("search_radius") = 1e3,
          py::arg("coarse_grid") = 2001, py::arg("refine_tol") = 1e-8);
    m.def("ratio_cp", &ratio_cp);
    m.def("ratio_c1c2", &ratio_c1c2);

    py::class_<EigenPair>(m, "EigenPair")
        .def_readonly("lambda1", &EigenPair::lambda1)
        .def_readonly("residual", &EigenPair::residual)
        .def_readonly("iterations", &EigenPair::iterations)
        .def_readonly("converged", &EigenPair::converged)
        .def_readonly("min_phi", &EigenPair::min_phi)
        .def_property_readonly("phi1",
                               [](const EigenPair& p) { return field_to_array(p.phi1); });
    m.def("solve_first_eigenpair",
          [](const DomainPtr& dom, double p, double tolerance, int max_iterations) {
              SolverConfig cfg;
              cfg.p = p;
              cfg.tolerance = tolerance;
              cfg.max_iterations = max_iterations;
              return solve_first_eigenpair(dom, cfg);
          },
          py::arg("domain"), py::arg("p") = 2.0, py::arg("tolerance") = 1e-8,
          py::arg("max_iterations") = 5000);
    m.def("rayleigh_quotient", &rayleigh_quotient);

    py::class_<IdentityReport>(m, "IdentityReport")
        .def_readonly("lhs", &IdentityReport::lhs)
        .def_readonly("rhs", &IdentityReport::rhs)
        .def_readonly("abs_residual", &IdentityReport::abs_residual)
        .def_readonly("rel_residual", &IdentityReport::rel_residual)
        .def_readonly("rhs_imag", &IdentityReport::rhs_imag);
    m.def("verify_main_identity", &verify_main_identity);
    m.def("verify_remainder_formula", &verify_remainder_formula);
    m.def("verify_poincare", &verify_poincare);

    py::class_<PmeTrace>(m, "PmeTrace")
        .def_readonly("times", &PmeTrace::times)
        .def_readonly("mass", &PmeTrace::mass)
        .def_readonly("J", &PmeTrace::J)
        .def_readonly("E", &PmeTrace::E)
        .def_readonly("sup_u", &PmeTrace::sup_u)
        .def_readonly("t_detect", &PmeTrace::t_detect)
        .def_readonly("steps", &PmeTrace::steps)
        .def_property_readonly("status",
                               [](const PmeTrace& t) { return to_string(t.status); });
    py::class_<CertificateReport>(m, "CertificateReport")
        .def_readonly("holds", &CertificateReport::holds)
        .def_readonly("sigma", &CertificateReport::sigma)
        .def_readonly("M", &CertificateReport::M)
        .def_readonly("Tstar_bound", &CertificateReport::Tstar_bound)
        .def_readonly("J0", &CertificateReport::J0)
        .def_readonly("structural_ok", &CertificateReport::structural_ok)
        .def_readonly("theta_ok", &CertificateReport::theta_ok)
        .def_readonly("alpha_ok", &CertificateReport::alpha_ok)
        .def_readonly("beta_ok", &CertificateReport::beta_ok)
        .def_readonly("j0_ok", &CertificateReport::j0_ok)
        .def("text", &CertificateReport::to_text);

    auto build_problem = [](const DomainPtr& dom, double p, double ell,
                            const std::string& source, double q, const ScalarField& u0,
                            double lambda1, double alpha, double beta, double theta) {
        PmeProblem pb;
        pb.domain = dom;
        pb.p = p;
        pb.ell = ell;
        if (source == "zero") pb.source = PmeSource::zero();
        else if (source == "power") pb.source = PmeSource::power_law(q);
        else throw std::invalid_argument("source must be zero or power");
        pb.u0 = u0;
        pb.lambda1 = lambda1;
        pb.cert = {alpha, beta, theta};
        return pb;
    };
    m.def("pme_run",
          [build_problem](const DomainPtr& dom, double p, double ell, const std::string& source,
                          double q, const ScalarField& u0, double lambda1, double alpha,
                          double beta, double theta, double t_max, double blowup_threshold) {
              return run(build_problem(dom, p, ell, source, q, u0, lambda1, alpha, beta, theta),
                         t_max, blowup_threshold);
          },
          py::arg("domain"), py::arg("p"), py::arg("ell"), py::arg("source"), py::arg("q"),
          py::arg("u0"), py::arg("lambda1"), py::arg("alpha") = 0.0, py::arg("beta") = 0.0,
          py::arg("theta") = 0.0, py::arg("t_max") = 0.5, py::arg("blowup_threshold") = 0.0);
    m.def("check_blowup_certificate",
          [build_problem](const DomainPtr& dom, double p, double ell, const std::string& source,
                          double q, const ScalarField& u0, double lambda1, double alpha,
                          double beta, double theta) {
              return check_blowup_certificate(
                  build_problem(dom, p, ell, source, q, u0, lambda1, alpha, beta, theta));
          },
          py::arg("domain"), py::arg("p"), py::arg("ell"), py::arg("source"), py::arg("q"),
          py::arg("u0"), py::arg("lambda1"), py::arg("alpha"), py::arg("beta"),
          py::arg("theta"));
    m.def("check_global_certificate",
          [build_problem](const DomainPtr& dom, double p, double ell, const std::string& source,
                          double q, const ScalarField& u0, double lambda1, double alpha,
                          double beta, double theta) {
              return check_global_certificate(
                  build_problem(dom, p, ell, source, q, u0, lambda1, alpha, beta, theta));
          },
          py::arg("domain"), py::arg("p"), py::arg("ell"), py::arg("source"), py::arg("q"),
          py::arg("u0"), py::arg("lambda1"), py::arg("alpha"), py::arg("beta"),
          py::arg("theta"));
}
