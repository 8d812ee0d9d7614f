#include "zxi/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <sstream>

#include "zxi/errors.hpp"

namespace zxi {

namespace {

double checked(double value, double err, double l1, const QuadratureOptions& opts, const char* what) {
    if (!std::isfinite(value)) throw NumericalFailure(std::string(what) + ": non-finite integral");
    const double scale = std::max(std::abs(value), 1e-300);
    if (l1 > 0.0 && err / scale > opts.max_rel_error) {
        std::ostringstream os;
        os << what << ": error estimate " << err << " exceeds tolerance for value " << value;
        throw NumericalFailure(os.str());
    }
    return value;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opts) {
    if (!(b > a)) throw InvalidArgument("integrate: need a < b");
    boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0;
    double l1 = 0.0;
    double v = 0.0;
    try {
        v = ts.integrate(f, a, b, opts.rel_tol, &err, &l1);
    } catch (const std::exception& e) {
        throw NumericalFailure(std::string("integrate: ") + e.what());
    }
    return checked(v, err, l1, opts, "integrate");
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double split,
                             const QuadratureOptions& opts) {
    if (!(split > a)) throw InvalidArgument("integrate_to_infinity: split must exceed the lower limit");
    const double head = integrate(f, a, split, opts);
    // w = split / s maps (0, 1] onto [split, inf); dw = split / s^2 ds = w * (w / split) ds.
    auto tail = [&f, split](double s) {
        const double w = split / s;
        if (!std::isfinite(w)) return 0.0;
        const double fw = f(w);
        if (fw == 0.0) return 0.0;
        const double v = (fw * w) * (w / split);
        return std::isfinite(v) ? v : 0.0;
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0;
    double l1 = 0.0;
    double t = 0.0;
    try {
        t = ts.integrate(tail, 0.0, 1.0, opts.rel_tol, &err, &l1);
    } catch (const std::exception& e) {
        throw NumericalFailure(std::string("integrate_to_infinity: ") + e.what());
    }
    return head + checked(t, err, l1, opts, "integrate_to_infinity");
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw NumericalFailure("bisect: no sign change on the bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace zxi
