#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "zxi/interferogram.hpp"
#include "zxi/waveform.hpp"
#include "zxi/zero_crossing.hpp"

namespace zxi {

// Rows x(t_i + k dt) for every event whose full window lies in the trusted range.
struct CrossjectoryMatrix {
    LagWindow window;
    double dt = 1.0;
    std::size_t rows = 0;
    std::vector<double> data;                // row-major, rows x window.size()
    std::vector<std::size_t> event_index;    // source event per row

    std::size_t cols() const { return window.size(); }
    const double* row(std::size_t i) const { return data.data() + i * cols(); }
};

CrossjectoryMatrix extract_crossjectories(const Waveform& w, const CrossingSet& cs, const LagWindow& window);
CrossjectoryMatrix extract_crossjectories(const Waveform& w, const CrossingSet& cs, double half_window);

// Mean over usable events of weight(e) * values(t_i + tau). This is the common kernel
// of every interferogram below; the weight sees the event and its index in cs.
using EventWeight = std::function<double(const CrossingEvent&, std::size_t)>;
Interferogram weighted_interferogram(const Waveform& values, const CrossingSet& cs, const LagWindow& window,
                                     const EventWeight& weight, Variant variant);

Interferogram empirical_crosslation(const Waveform& w, const CrossingSet& cs, const LagWindow& window);
Interferogram empirical_crosslation(const Waveform& w, const CrossingSet& cs, double half_window);

Interferogram empirical_up(const Waveform& w, const CrossingSet& cs, const LagWindow& window);
Interferogram empirical_down(const Waveform& w, const CrossingSet& cs, const LagWindow& window);

// Crossings detected on pair.x, values from pair.y.
Interferogram empirical_autoference(const AnalyticPair& pair, const LagWindow& window, const DetectOptions& opts = {});
Interferogram empirical_autoference(const AnalyticPair& pair, const CrossingSet& cs_x, const LagWindow& window);

// (1/n) sum y(t_i) y(t_i + tau), crossings of pair.x.
Interferogram weighted_autoference(const AnalyticPair& pair, const CrossingSet& cs_x, const LagWindow& window);

// Sign weights replaced by the signed slew rate of each event.
Interferogram slew_crosslation(const Waveform& w, const CrossingSet& cs, const LagWindow& window);
Interferogram slew_autoference(const AnalyticPair& pair, const CrossingSet& cs_x, const LagWindow& window);

// Mean of x^2(t_i + tau).
Interferogram local_structure(const Waveform& w, const CrossingSet& cs, const LagWindow& window);

// Per-lag sample variance of the sign-flipped crossjectories, with the standard error of
// that variance estimate.
Interferogram crossjectory_variance(const Waveform& w, const CrossingSet& cs, const LagWindow& window);

enum class DecimationRule {
    trim,     // keep exactly the target count of largest |slope|
    threshold // keep |slope| > eta, eta the Rayleigh quantile leaving target on average
};

CrossingSet decimate_by_slew(const CrossingSet& cs, std::size_t target, DecimationRule rule = DecimationRule::trim);

// Rayleigh threshold for which target of n events exceed on average; s2 = E{slope^2}/2.
double rayleigh_threshold(double s2, std::size_t n, std::size_t target);

// Throws InvalidArgument unless both share the lag grid.
ComplexCrosslation complex_crosslation(const Interferogram& C, const Interferogram& A);

// Autoference from a crosslation by the inverse Hilbert transform, A = -H{C}, computed on the
// lag window zero-padded by pad_factor.
Interferogram autoference_from_crosslation(const Interferogram& C, std::size_t pad_factor = 8);

// mean|x| / variance, the separable-process constant for a sampled waveform.
double estimate_mu(const Waveform& w);

struct SpectralEstimate {
    std::vector<double> omega;    // strictly positive, rad/s
    std::vector<double> density;  // two-sided density sampled at w > 0, as in SpectrumModel
};

// S(w) = (4 n0 / (mu w)) * integral_0^inf C_odd(tau) sin(w tau) dtau on a grid of n_freq
// frequencies up to Nyquist. C must be symmetric.
SpectralEstimate spectrum_from_crosslation(const Interferogram& C, double mu, double n0, std::size_t n_freq = 0);

// Largest permitted high/low ratio of a band with low > 0.
double max_band_ratio();

struct Band {
    double low = 0.0;   // rad/s; 0 for a lowpass band
    double high = 0.0;
};

struct FilterbankResult {
    Interferogram combined;
    std::vector<std::size_t> band_crossings;  // detected crossings per band
    std::size_t total_crossings = 0;
};

FilterbankResult filterbank_interferogram(const Waveform& w, const std::vector<Band>& bands, const LagWindow& window,
                                          const DetectOptions& opts = {});

// Splits [low, high] into contiguous bands of equal log-width ratio <= ratio.
std::vector<Band> octave_bands(double low, double high, double ratio);

}  // namespace zxi
