#include "zxi/analytic_ref.hpp"

#include <cmath>
#include <numbers>

#include "zxi/errors.hpp"
#include "zxi/quadrature.hpp"
#include "zxi/special.hpp"

namespace zxi {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtHalfPi = std::sqrt(kPi / 2.0);

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

// sin x - x cos x
double odd_kernel(double x) {
    if (std::abs(x) < 0.5) {
        // sum_{k>=1} (-1)^{k+1} 2k x^{2k+1} / (2k+1)!
        const double x2 = x * x;
        double term = x * x2 / 6.0;  // x^3 / 3!
        double acc = 0.0;
        for (int k = 1; k < 12; ++k) {
            acc += (k % 2 ? 1.0 : -1.0) * 2.0 * k * term;
            term *= x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        }
        return acc;
    }
    return std::sin(x) - x * std::cos(x);
}

// x sin x + cos x - 1
double even_kernel(double x) {
    if (std::abs(x) < 0.5) {
        // sum_{k>=1} (-1)^{k+1} (2k-1) x^{2k} / (2k)!
        const double x2 = x * x;
        double term = x2 / 2.0;
        double acc = 0.0;
        for (int k = 1; k < 12; ++k) {
            acc += (k % 2 ? 1.0 : -1.0) * (2.0 * k - 1.0) * term;
            term *= x2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        }
        return acc;
    }
    return x * std::sin(x) + std::cos(x) - 1.0;
}

// x^2 - 2 x sin x + 2 - 2 cos x, the squared envelope numerator
double envelope_radicand(double x) {
    if (std::abs(x) < 0.5) {
        // sum_{k>=2} 2 (-1)^k (2k-1) x^{2k} / (2k)!
        const double x2 = x * x;
        double term = x2 * x2 / 24.0;
        double acc = 0.0;
        for (int k = 2; k < 14; ++k) {
            acc += (k % 2 ? -2.0 : 2.0) * (2.0 * k - 1.0) * term;
            term *= x2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        }
        return acc;
    }
    return x * x - 2.0 * x * std::sin(x) + 2.0 - 2.0 * std::cos(x);
}

// ln(g) / (g - 1), finite at g = 1.
double log_ratio(double g) {
    const double d = g - 1.0;
    if (d == 0.0) return 1.0;
    return std::log1p(d) / d;
}

ResolutionReport from_integrals(double i1, double i2, double j1, double j2, Method m) {
    ResolutionReport r;
    r.delta_tau = 2.0 * kPi * i2 / (i1 * i1);
    r.delta_tau_c = 2.0 * kPi * j2 / (j1 * j1);
    r.gain = r.delta_tau / r.delta_tau_c;
    r.method = m;
    return r;
}

// integral_0^inf u^{a-1} / (1 + u^{2k})^b du
double butterworth_moment(double a, double b, double kappa) {
    const double p = a / (2.0 * kappa);
    const double q = b - p;
    if (q <= 0.0) return kInfinite;
    return std::beta(p, q) / (2.0 * kappa);
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

CorrelationModel gaussian_correlation(double B, double variance) {
    if (!(B > 0.0) || !(variance > 0.0)) throw InvalidArgument("gaussian correlation: B and variance must be positive");
    CorrelationModel m;
    m.variance = variance;
    m.rms_bandwidth = B;
    m.R = [=](double t) { return variance * std::exp(-0.5 * B * B * t * t); };
    m.dR = [=](double t) { return -variance * B * B * t * std::exp(-0.5 * B * B * t * t); };
    return m;
}

CorrelationModel bandlimited_correlation(double W, double variance) {
    if (!(W > 0.0) || !(variance > 0.0)) throw InvalidArgument("bandlimited correlation: W and variance must be positive");
    CorrelationModel m;
    m.variance = variance;
    m.rms_bandwidth = W / std::sqrt(3.0);
    m.R = [=](double t) {
        const double x = W * t;
        return x == 0.0 ? variance : variance * std::sin(x) / x;
    };
    m.dR = [=](double t) {
        const double x = W * t;
        return x == 0.0 ? 0.0 : -variance * W * odd_kernel(x) / (x * x);
    };
    return m;
}

CorrelationModel lorentzian_correlation(double gamma, double W, double variance) {
    if (!(gamma > 1.0) || !(W > 0.0) || !(variance > 0.0))
        throw InvalidArgument("lorentzian correlation: need gamma > 1, W > 0, variance > 0");
    CorrelationModel m;
    m.variance = variance;
    m.rms_bandwidth = W * std::sqrt(gamma);
    m.R = [=](double t) {
        const double a = std::abs(t);
        return variance * (gamma * std::exp(-W * a) - std::exp(-W * gamma * a)) / (gamma - 1.0);
    };
    m.dR = [=](double t) {
        const double a = std::abs(t);
        return variance * gamma * W * sgn(t) * (std::exp(-W * gamma * a) - std::exp(-W * a)) / (gamma - 1.0);
    };
    return m;
}

double structure_global_gaussian(double B, double variance, double tau) {
    return 2.0 * variance * (1.0 - std::exp(-0.5 * B * B * tau * tau));
}

double structure_local_gaussian(double B, double variance, double tau) {
    const double r = std::exp(-0.5 * B * B * tau * tau);
    const double u = B * tau;
    // 1 - r^2 - r'^2/r''(0) with r' = -B^2 tau r and r''(0) = -B^2, so the slope term adds.
    return variance * (-std::expm1(-u * u) + u * u * r * r);
}

double crosslation_gaussian(const std::function<double(double)>& dR, double B, double sigma, double tau) {
    return -kSqrtHalfPi * dR(tau) / (B * sigma);
}

SlepianMoments slepian_mean_and_variance(const CorrelationModel& m, double tau) {
    const double s2 = m.variance;
    const double B = m.rms_bandwidth;
    const double R = m.R(tau);
    const double dR = m.dR(tau);
    SlepianMoments out;
    out.mean = -kSqrtHalfPi * dR / (B * std::sqrt(s2));
    const double slope_part = dR * dR / (B * B * s2);
    out.self_noise_variance = std::max(0.0, s2 - R * R / s2 - slope_part);
    out.crossjectory_variance = out.self_noise_variance + (2.0 - kPi / 2.0) * slope_part;
    return out;
}

ComponentForms bandlimited_family(double W, double sigma, double tau) {
    const double x = W * tau;
    const double s2 = sigma * sigma;
    const double k = std::sqrt(1.5 * kPi) * sigma;
    ComponentForms f;
    if (x == 0.0) {
        f.R = s2;
        f.R_xy = 0.0;
        f.R_env = s2;
        f.C = 0.0;
        f.A = 0.5 * k;
        f.A_env = 0.5 * k;
        return f;
    }
    const double half = std::sin(0.5 * x);
    f.R = s2 * std::sin(x) / x;
    f.R_xy = 2.0 * s2 * half * half / x;
    f.R_env = s2 * std::abs(std::sin(0.5 * x) / (0.5 * x));
    f.C = k * odd_kernel(x) / (x * x);
    f.A = k * even_kernel(x) / (x * x);
    f.A_env = k * std::sqrt(envelope_radicand(x)) / (x * x);
    return f;
}

ComponentForms lorentzian_family(double gamma, double W, double variance, double tau) {
    if (!(gamma > 1.0)) throw InvalidArgument("lorentzian_family: gamma must exceed 1");
    const CorrelationModel m = lorentzian_correlation(gamma, W, variance);
    const double B = m.rms_bandwidth;
    const double sigma = std::sqrt(variance);
    const double c = variance / (gamma - 1.0);
    ComponentForms f;
    f.R = m.R(tau);
    f.R_xy = c * (gamma * hilbert_exp_abs(W, tau) - hilbert_exp_abs(W * gamma, tau));
    f.R_env = std::hypot(f.R, f.R_xy);
    f.C = crosslation_gaussian(m.dR, B, sigma, tau);
    double h_dR = 0.0;
    if (tau == 0.0) {
        h_dR = variance * gamma * W * (2.0 / kPi) * log_ratio(gamma);
    } else {
        h_dR = c * gamma * W * (hilbert_sgn_exp_abs(W * gamma, tau) - hilbert_sgn_exp_abs(W, tau));
    }
    f.A = kSqrtHalfPi / (B * sigma) * h_dR;
    f.A_env = std::hypot(f.A, f.C);
    return f;
}

std::string method_name(Method m) { return m == Method::closed_form ? "closed_form" : "quadrature"; }

ResolutionReport woodward_constants(const std::function<double(double)>& density, double scale, double upper,
                                    double lower) {
    if (!(scale > 0.0)) throw InvalidArgument("woodward_constants: scale must be positive");
    if (!(upper > lower) || lower < 0.0) throw InvalidArgument("woodward_constants: need 0 <= lower < upper");
    auto integral = [&](const std::function<double(double)>& f) {
        if (std::isinf(upper)) {
            const double split = std::max(scale, lower * 2.0 + scale);
            return integrate_to_infinity(f, lower, split);
        }
        return integrate(f, lower, upper);
    };
    const double i1 = integral([&](double w) { return density(w); });
    const double i2 = integral([&](double w) {
        const double s = density(w);
        return s * s;
    });
    const double j1 = integral([&](double w) { return w * density(w); });
    const double j2 = integral([&](double w) {
        const double ws = w * density(w);
        return ws * ws;
    });
    return from_integrals(i1, i2, j1, j2, Method::quadrature);
}

ResolutionReport woodward_constants_quadrature(const SpectrumModel& m) {
    validate(m);
    if (!is_random_gaussian(m)) throw InvalidArgument("woodward_constants: model has no spectral density");
    if (const auto* b = std::get_if<Butterworth>(&m); b && b->kappa <= 1.0) {
        // The first moment of w S diverges; report the sentinel instead of a failed integral.
        const double i1 = butterworth_moment(1.0, 1.0, 1.0);
        const double i2 = butterworth_moment(1.0, 2.0, 1.0);
        return ResolutionReport{2.0 * kPi * i2 / (b->W * i1 * i1), 0.0, kInfinite, Method::closed_form};
    }
    auto dens = [&m](double w) { return density(m, w); };
    const double upper = support_upper(m);
    const double lower = support_lower(m);
    const double scale = std::visit(overloaded{
                                        [](const GaussianShape& s) { return s.B; },
                                        [](const Butterworth& s) { return s.W; },
                                        [](const ModifiedLorentzian& s) { return s.W; },
                                        [upper](const auto&) { return std::isinf(upper) ? 1.0 : upper; },
                                    },
                                    m);
    return woodward_constants(dens, scale, upper, lower);
}

ResolutionReport woodward_constants(const SpectrumModel& m) {
    validate(m);
    if (const auto* s = std::get_if<BandLimited>(&m)) {
        return {2.0 * kPi / s->W, 8.0 * kPi / (3.0 * s->W), 0.75, Method::closed_form};
    }
    if (const auto* s = std::get_if<GaussianShape>(&m)) {
        const double dt = 2.0 * std::sqrt(kPi) / s->B;
        const double dc = kPi * std::sqrt(kPi) / (2.0 * s->B);
        return {dt, dc, 4.0 / kPi, Method::closed_form};
    }
    if (const auto* s = std::get_if<BandPass>(&m)) {
        const double a = s->W1;
        const double b = s->W2;
        const double dt = 2.0 * kPi / (b - a);
        const double dc = 8.0 * kPi * (b * b * b - a * a * a) / (3.0 * (b * b - a * a) * (b * b - a * a));
        return {dt, dc, dt / dc, Method::closed_form};
    }
    if (const auto* s = std::get_if<Butterworth>(&m)) {
        const double k = s->kappa;
        const double i1 = butterworth_moment(1.0, 1.0, k);
        const double i2 = butterworth_moment(1.0, 2.0, k);
        const double j1 = butterworth_moment(2.0, 1.0, k);
        const double j2 = butterworth_moment(3.0, 2.0, k);
        ResolutionReport r;
        r.method = Method::closed_form;
        r.delta_tau = 2.0 * kPi * i2 / (s->W * i1 * i1);
        if (std::isinf(j1)) {
            r.delta_tau_c = 0.0;
            r.gain = kInfinite;
        } else {
            r.delta_tau_c = 2.0 * kPi * j2 / (s->W * j1 * j1);
            r.gain = r.delta_tau / r.delta_tau_c;
        }
        return r;
    }
    if (const auto* s = std::get_if<ModifiedLorentzian>(&m)) {
        const double g = s->gamma;
        const double lr = log_ratio(g);
        ResolutionReport r;
        r.method = Method::closed_form;
        r.delta_tau = 2.0 * (g * g + 3.0 * g + 1.0) / (s->W * g * (1.0 + g));
        r.delta_tau_c = kPi * kPi / (2.0 * s->W * g * (1.0 + g) * lr * lr);
        r.gain = lorentzian_gain(g);
        return r;
    }
    return woodward_constants_quadrature(m);
}

double butterworth_gain(double kappa) {
    if (!std::isfinite(kappa) || kappa < 1.0) throw InvalidArgument("butterworth_gain: kappa must be >= 1");
    if (kappa == 1.0) return kInfinite;
    return woodward_constants(SpectrumModel{Butterworth{kappa, 1.0, 1.0}}).gain;
}

double lorentzian_gain(double gamma) {
    if (!std::isfinite(gamma) || gamma < 1.0) throw InvalidArgument("lorentzian_gain: gamma must be >= 1");
    const double lr = log_ratio(gamma);
    return 4.0 * (gamma * gamma + 3.0 * gamma + 1.0) * lr * lr / (kPi * kPi);
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::underdetermined: return "underdetermined";
        case Regime::determined: return "determined";
        case Regime::overdetermined: return "overdetermined";
    }
    return "unknown";
}

namespace {

Regime classify(double n_c, double lambda) {
    if (std::abs(n_c - lambda) <= 1e-9 * lambda) return Regime::determined;
    return n_c < lambda ? Regime::underdetermined : Regime::overdetermined;
}

}  // namespace

DofReport degrees_of_freedom(const SpectrumModel& m, double T) {
    if (!(T > 0.0)) throw InvalidArgument("degrees_of_freedom: T must be positive");
    DofReport d;
    d.lambda = 2.0 * T / woodward_constants(m).delta_tau;
    d.n_c_expected = T * rms_bandwidth(m) / kPi;
    d.regime = classify(d.n_c_expected, d.lambda);
    return d;
}

DofReport degrees_of_freedom(const CorrelationModel& m, double T) {
    if (!(T > 0.0)) throw InvalidArgument("degrees_of_freedom: T must be positive");
    const double scale = 1.0 / m.rms_bandwidth;
    const double half = integrate_to_infinity(
        [&m](double t) {
            const double r = m.R(t);
            return r * r;
        },
        0.0, scale);
    DofReport d;
    const double r0 = m.R(0.0);
    d.lambda = T * r0 * r0 / (2.0 * half);
    d.n_c_expected = T * m.rms_bandwidth / kPi;
    d.regime = classify(d.n_c_expected, d.lambda);
    return d;
}

double lorentzian_lambda_per_wt(double gamma) {
    const CorrelationModel m = lorentzian_correlation(gamma, 1.0, 1.0);
    const double half = integrate_to_infinity(
        [&m](double t) {
            const double r = m.R(t);
            return r * r;
        },
        0.0, 1.0);
    return 1.0 / (2.0 * half);
}

double gamma_star(double lo, double hi, double tol) {
    return bisect([](double g) { return lorentzian_lambda_per_wt(g) - std::sqrt(g) / kPi; }, lo, hi, tol);
}

CRReport cr_bounds(double noise_var, double signal_var, double B, double lambda, double n_c) {
    if (!(noise_var >= 0.0) || !(signal_var > 0.0) || !(B > 0.0) || !(lambda > 0.0) || !(n_c > 0.0))
        throw InvalidArgument("cr_bounds: need noise_var >= 0 and positive signal_var, B, lambda, n_c");
    const double slope2 = signal_var * B * B;
    CRReport r;
    r.var_correlation = noise_var / (lambda * slope2);
    r.var_crosslation_underdetermined = noise_var / (2.0 * n_c * slope2);
    r.var_crosslation_overdetermined = noise_var / (2.0 * lambda * slope2);
    r.regime = classify(n_c, lambda);
    const bool under = r.regime == Regime::underdetermined;
    r.var_crosslation = under ? r.var_crosslation_underdetermined : r.var_crosslation_overdetermined;
    r.ratio = lambda / (2.0 * (under ? n_c : lambda));
    return r;
}

}  // namespace zxi
