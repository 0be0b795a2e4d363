#include "hetnet/specialfns.hpp"

#include <fmt/format.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace hetnet {

namespace {

void disableGslAbort() {
    static std::once_flag once;
    std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

Workspace makeWorkspace(const QuadratureSpec& spec) {
    if (!(spec.relTol > 0) || !(spec.absTol > 0) || spec.maxSubdivisions == 0)
        throw ModelError("quadrature tolerances must be positive");
    disableGslAbort();
    Workspace w(gsl_integration_workspace_alloc(spec.maxSubdivisions));
    if (!w) throw QuadratureError("cannot allocate quadrature workspace");
    return w;
}

double trampoline(double x, void* params) { return (*static_cast<const Integrand*>(params))(x); }

void checkStatus(int status, const QuadratureResult& r, const char* where) {
    if (status == GSL_SUCCESS && std::isfinite(r.value)) return;
    throw QuadratureError(fmt::format("{}: quadrature did not converge ({}; estimate {:.6g} +/- {:.3g})",
                                      where, gsl_strerror(status), r.value, r.errorEstimate));
}

}  // namespace

QuadratureResult integrateSemiInfinite(const Integrand& f, const QuadratureSpec& spec, double scale) {
    auto ws = makeWorkspace(spec);
    if (!(scale > 0) || !std::isfinite(scale)) throw ModelError("quadrature scale must be positive");
    Integrand scaled = [&](double u) { return scale * f(scale * u); };
    gsl_function fn{&trampoline, const_cast<Integrand*>(&scaled)};
    QuadratureResult r;
    int status = gsl_integration_qagiu(&fn, 0.0, spec.absTol, spec.relTol, spec.maxSubdivisions, ws.get(),
                                       &r.value, &r.errorEstimate);
    checkStatus(status, r, "integrateSemiInfinite");
    return r;
}

QuadratureResult integrateFinite(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    auto ws = makeWorkspace(spec);
    gsl_function fn{&trampoline, const_cast<Integrand*>(&f)};
    QuadratureResult r;
    int status = gsl_integration_qag(&fn, a, b, spec.absTol, spec.relTol, spec.maxSubdivisions,
                                     GSL_INTEG_GAUSS31, ws.get(), &r.value, &r.errorEstimate);
    checkStatus(status, r, "integrateFinite");
    return r;
}

double hypGeomFactor(double alpha, double z) {
    if (!(alpha > 2)) throw ModelError("hypGeomFactor: alpha must exceed 2");
    if (!(z >= 0) || std::isinf(z)) throw ModelError("hypGeomFactor: z must be non-negative and finite");
    if (z == 0) return 1.0;
    // Euler integral (1-d) * int_0^1 t^-d / (1 + z t) dt with d = 2/alpha, after
    // t = s^p (p = alpha/(alpha-2)) which removes the endpoint singularity:
    //   int_0^1 ds / (1 + z s^p).
    const double p = alpha / (alpha - 2.0);
    const QuadratureSpec spec{1e-13, 1e-300, 2000};
    if (z <= 1.0) {
        Integrand f = [z, p](double s) { return 1.0 / (1.0 + z * std::pow(s, p)); };
        return integrateFinite(f, 0.0, 1.0, spec).value;
    }
    // For large z the integrand collapses onto s < z^(-1/p). With u = z^(1/p) s
    // the integral is z^(-1/p) int_0^U du / (1 + u^p), U = z^(1/p). The part
    // beyond u = 1 maps through w = u^(1-p) to the smooth
    //   ((alpha-2)/2) int_{z^(-2/alpha)}^1 dw / (1 + w^(alpha/2)).
    const double upper = std::pow(z, 1.0 / p);
    const double q = alpha / 2.0;
    Integrand head = [p](double u) { return 1.0 / (1.0 + std::pow(u, p)); };
    Integrand tail = [q](double w) { return 1.0 / (1.0 + std::pow(w, q)); };
    const double h = integrateFinite(head, 0.0, 1.0, spec).value;
    const double t = 0.5 * (alpha - 2.0) * integrateFinite(tail, std::pow(z, -2.0 / alpha), 1.0, spec).value;
    return (h + t) / upper;
}

double rho(double a, double b) {
    const double s = std::sqrt(b);
    return a + s * std::atan(s);
}

double geometryFactor(double x) {
    if (!(x > 0) || !std::isfinite(x)) throw ModelError("geometryFactor: x must be positive");
    Integrand f = [x](double t) { return std::sqrt(std::max(0.0, x * x + 1.0 - 2.0 * x * std::cos(t))); };
    QuadratureSpec spec{1e-13, 1e-15, 2000};
    return integrateFinite(f, 0.0, std::numbers::pi, spec).value / (x * x);
}

}  // namespace hetnet
