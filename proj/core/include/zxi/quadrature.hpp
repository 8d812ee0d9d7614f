#pragma once

#include <functional>

namespace zxi {

struct QuadratureOptions {
    double rel_tol = 1e-12;
    // Reported estimates above this are a NumericalFailure.
    double max_rel_error = 1e-8;
};

// Finite interval [a, b], tanh-sinh.
double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opts = {});

// [a, inf): splits at `split` (> a) and maps the tail with w = split / s.
double integrate_to_infinity(const std::function<double(double)>& f, double a, double split,
                             const QuadratureOptions& opts = {});

// Bisection for a sign change of f on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace zxi
