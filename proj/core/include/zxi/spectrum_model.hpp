#pragma once

#include <string>
#include <variant>
#include <vector>

namespace zxi {

// Densities are two-sided, S(w) = S(-w), normalized so that (1/2pi) * integral S dw = variance.
// Angular frequencies in rad/s.

struct BandLimited {
    double W = 1.0;
    double variance = 1.0;
};

struct GaussianShape {
    double B = 1.0;  // rms bandwidth
    double variance = 1.0;
};

struct Butterworth {
    double kappa = 2.0;
    double W = 1.0;
    double variance = 1.0;
};

struct ModifiedLorentzian {
    double gamma = 5.0;
    double W = 1.0;
    double variance = 1.0;
};

// Flat on W1 < |w| < W2.
struct BandPass {
    double W1 = 0.5;
    double W2 = 1.0;
    double variance = 1.0;
};

// Frequencies in Hz; phases drawn per realization.
struct MultiSine {
    std::vector<double> frequencies;
    double amplitude = 1.0;
};

// Carrier f0 in Hz, frequency-modulated by Gaussian noise whose rms bandwidth is mod_bandwidth (Hz).
// Frequency deviation (rms, Hz) = modulation_index * mod_bandwidth.
struct FMCarrier {
    double carrier = 1.0;
    double mod_bandwidth = 0.1;
    double modulation_index = 1.0;
    double amplitude = 1.0;
};

using SpectrumModel =
    std::variant<BandLimited, GaussianShape, Butterworth, ModifiedLorentzian, BandPass, MultiSine, FMCarrier>;

std::string family_name(const SpectrumModel& m);

// Throws InvalidArgument on out-of-domain parameters.
void validate(const SpectrumModel& m);

bool is_random_gaussian(const SpectrumModel& m);

// Two-sided density at angular frequency w. Random families only.
double density(const SpectrumModel& m, double w);

// Upper edge of the support; +inf for unbounded families.
double support_upper(const SpectrumModel& m);
double support_lower(const SpectrumModel& m);

double process_variance(const SpectrumModel& m);

// sqrt(integral w^2 S / integral S); +inf where the integral diverges.
double rms_bandwidth(const SpectrumModel& m);

// Rms frequency deviation in Hz.
double fm_deviation(const FMCarrier& m);

// -3 dB width in Hz of the wideband-FM spectrum (Gaussian in shape, set by the deviation).
double fm_occupied_bandwidth(const FMCarrier& m);

}  // namespace zxi
