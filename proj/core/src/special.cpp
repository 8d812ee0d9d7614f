#include "zxi/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "zxi/errors.hpp"

namespace zxi {

namespace {

constexpr double kAsymptotic = 40.0;

// sum_k k! / x^k, the common asymptotic tail of e^x E1(x) and e^-x Ei(x) with alternating sign.
double asymptotic(double x, double sign) {
    double term = 1.0;
    double acc = 1.0;
    for (int k = 1; k < 80; ++k) {
        const double next = term * k / x;
        if (next > term) break;
        term = next;
        acc += (sign > 0.0 || k % 2 == 0) ? term : -term;
        if (term < 1e-17 * acc) break;
    }
    return acc / x;
}

}  // namespace

double scaled_e1(double x) {
    if (!(x > 0.0)) throw InvalidArgument("scaled_e1: argument must be positive");
    if (x > kAsymptotic) return asymptotic(x, -1.0);
    return std::exp(x) * -std::expint(-x);
}

double scaled_ei(double x) {
    if (!(x > 0.0)) throw InvalidArgument("scaled_ei: argument must be positive");
    if (x > kAsymptotic) return asymptotic(x, 1.0);
    return std::exp(-x) * std::expint(x);
}

double hilbert_exp_abs(double a, double t) {
    if (t == 0.0) return 0.0;
    const double x = a * std::abs(t);
    const double v = (scaled_e1(x) + scaled_ei(x)) / std::numbers::pi;
    return t > 0.0 ? v : -v;
}

double hilbert_sgn_exp_abs(double a, double t) {
    if (t == 0.0) return -std::numeric_limits<double>::infinity();
    const double x = a * std::abs(t);
    return (scaled_ei(x) - scaled_e1(x)) / std::numbers::pi;
}

}  // namespace zxi
