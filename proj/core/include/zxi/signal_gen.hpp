#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zxi/spectrum_model.hpp"
#include "zxi/waveform.hpp"

namespace zxi {

// Fraction of samples at each end of an FFT-processed record treated as untrusted.
inline constexpr double kHilbertEdgeFraction = 0.02;

// Random-phase realization with per-bin amplitude sqrt(S(w_k) * n / dt); the realized
// periodogram equals the target density on every bin. DC is zero.
Waveform synth_gaussian(const SpectrumModel& model, std::size_t n, double dt, std::uint64_t seed);

Waveform synth_multisine(const MultiSine& model, std::size_t n, double dt, std::uint64_t seed);

// Constant-envelope carrier. The carrier is snapped to the nearest DFT bin and the phase
// modulation is integrated spectrally, so the record is exactly periodic.
Waveform synth_fm_carrier(const FMCarrier& model, std::size_t n, double dt, std::uint64_t seed);

// Dispatches on the model family.
Waveform synthesize(const SpectrumModel& model, std::size_t n, double dt, std::uint64_t seed);

// y = w, x = H{w} (H{cos} = sin). Trust range shrinks by kHilbertEdgeFraction at each end.
AnalyticPair analytic_signal(const Waveform& w);

// Pair built from an in-phase record: x = w, y = H^-1{w} = -H{w}. Same trust handling.
AnalyticPair quadrature_pair(const Waveform& w);

// Discrete (circular) Hilbert transform of a sequence; DC and Nyquist bins map to zero.
std::vector<double> hilbert_transform(const std::vector<double>& v);

// Fractional delay by a frequency-domain phase ramp, then white Gaussian noise at the requested
// SNR relative to the sample variance of w. snr_db = +inf adds no noise. Samples within
// max(|delay|, 10 dt) of either end are marked untrusted.
Waveform delay_and_corrupt(const Waveform& w, double delay, double snr_db, std::uint64_t seed);

// Noise variance added by delay_and_corrupt for the given signal.
double noise_variance_for(const Waveform& w, double snr_db);

// Brick-wall band filter keeping low <= |w| <= high (rad/s).
Waveform band_filter(const Waveform& w, double low, double high);

// Periodogram |X_k|^2 dt / n on bins k = 0..n/2, returned as (omega, density) pairs.
struct Periodogram {
    std::vector<double> omega;
    std::vector<double> density;
};
Periodogram periodogram(const Waveform& w);

}  // namespace zxi
