#pragma once

namespace zxi {

// e^x E1(x), x > 0.
double scaled_e1(double x);
// e^-x Ei(x), x > 0.
double scaled_ei(double x);

// H{e^{-a|t|}}(t)
double hilbert_exp_abs(double a, double t);
// H{sgn(t) e^{-a|t|}}(t)
double hilbert_sgn_exp_abs(double a, double t);

}  // namespace zxi
