#pragma once

#include <functional>
#include <limits>
#include <string>

#include "zxi/spectrum_model.hpp"

namespace zxi {

inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

// Autocorrelation R(tau) with derivative and the process constants it implies.
struct CorrelationModel {
    std::function<double(double)> R;
    std::function<double(double)> dR;
    double variance = 1.0;
    double rms_bandwidth = 1.0;
};

CorrelationModel gaussian_correlation(double B, double variance);
CorrelationModel bandlimited_correlation(double W, double variance);
CorrelationModel lorentzian_correlation(double gamma, double W, double variance);

// Global structure function 2 s2 [1 - r(tau)], r = exp(-B^2 tau^2 / 2).
double structure_global_gaussian(double B, double variance, double tau);
// Local structure function s2 [1 - r^2 - r'^2 / r''(0)]: the mean of x^2 at lag tau from a crossing.
double structure_local_gaussian(double B, double variance, double tau);

// C(tau) = -sqrt(pi/2) R'(tau) / (B sigma)
double crosslation_gaussian(const std::function<double(double)>& dR, double B, double sigma, double tau);

struct SlepianMoments {
    double mean = 0.0;               // sign-flipped crossjectory mean, equals the crosslation
    double self_noise_variance = 0.0; // s2 - R^2/s2 - R'^2/(B^2 s2)
    double crossjectory_variance = 0.0; // self noise plus the Rayleigh slope spread (2 - pi/2) R'^2/(B^2 s2)
};

SlepianMoments slepian_mean_and_variance(const CorrelationModel& m, double tau);

struct ComponentForms {
    double R = 0.0;      // autocorrelation
    double R_xy = 0.0;   // H{R}
    double R_env = 0.0;  // sqrt(R^2 + R_xy^2)
    double C = 0.0;      // crosslation
    double A = 0.0;      // autoference
    double A_env = 0.0;  // sqrt(A^2 + C^2)
};

ComponentForms bandlimited_family(double W, double sigma, double tau);
ComponentForms lorentzian_family(double gamma, double W, double variance, double tau);

enum class Method { closed_form, quadrature };

struct ResolutionReport {
    double delta_tau = 0.0;
    double delta_tau_c = 0.0;
    double gain = 0.0;
    Method method = Method::closed_form;
};

std::string method_name(Method m);

// Closed forms where available, otherwise quadrature.
ResolutionReport woodward_constants(const SpectrumModel& m);
// Always by quadrature over the model density.
ResolutionReport woodward_constants_quadrature(const SpectrumModel& m);

// Arbitrary even density, integrated on [lower, upper); upper = inf uses the tail map
// with split at `scale`.
ResolutionReport woodward_constants(const std::function<double(double)>& density, double scale,
                                    double upper = kInfinite, double lower = 0.0);

// kInfinite at kappa = 1.
double butterworth_gain(double kappa);
// Finite limit 20/pi^2 at gamma = 1.
double lorentzian_gain(double gamma);

enum class Regime { underdetermined, determined, overdetermined };
std::string regime_name(Regime r);

struct DofReport {
    double lambda = 0.0;
    double n_c_expected = 0.0;
    Regime regime = Regime::determined;
};

// Closed forms for band-limited and Gaussian shapes, quadrature of the density otherwise.
DofReport degrees_of_freedom(const SpectrumModel& m, double T);
// Lambda = T R(0)^2 / integral R^2 dtau over the whole line, by quadrature.
DofReport degrees_of_freedom(const CorrelationModel& m, double T);

// Lambda(gamma) / (W T) for the modified Lorentzian, by quadrature of R^2.
double lorentzian_lambda_per_wt(double gamma);
// Root of Lambda(gamma) = n_c(gamma) on [lo, hi].
double gamma_star(double lo = 2.0, double hi = 20.0, double tol = 1e-6);

struct CRReport {
    double var_correlation = 0.0;
    double var_crosslation = 0.0;
    double ratio = 0.0;
    // Both branches of the crosslation bound; the reported one follows the regime.
    double var_crosslation_underdetermined = 0.0;
    double var_crosslation_overdetermined = 0.0;
    Regime regime = Regime::determined;
};

// noise_var: in-band noise variance; lambda: degrees of freedom; n_c: crossings used.
CRReport cr_bounds(double noise_var, double signal_var, double B, double lambda, double n_c);

}  // namespace zxi
