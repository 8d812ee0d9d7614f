#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "zxi/analytic_ref.hpp"
#include "zxi/interferogram.hpp"
#include "zxi/spectrum_model.hpp"
#include "zxi/waveform.hpp"

namespace zxi {

enum class Estimator {
    correlation_env,       // envelope of R + j H{R} between reference and received
    crosslation_env,       // envelope of the complex crosslation, sign weights
    slew_crosslation_env   // envelope of the slew-weighted complex crosslation
};

std::string estimator_name(Estimator e);
Estimator parse_estimator(const std::string& s);

struct ExperimentConfig {
    SpectrumModel spectrum = GaussianShape{};
    double T = 1.0;
    double dt = 1.0;
    double delay = 0.0;
    double snr_db = 20.0;
    std::size_t trials = 100;
    Estimator estimator = Estimator::correlation_env;
    std::uint64_t base_seed = 1;
    // Half-width of the delay search, seconds; 0 selects min(T/4, 2|delay| + 32 dt).
    double search_window = 0.0;
    // Worker threads; 0 uses hardware concurrency.
    std::size_t threads = 0;

    std::size_t samples() const;
    void validate() const;
};

struct TrialResult {
    double delay_hat = 0.0;
    double peak_value = 0.0;
    std::size_t n_c_used = 0;
    double noise_variance = 0.0;  // per-sample white noise variance added
};

struct EstimationReport {
    double bias = 0.0;
    double variance = 0.0;  // population variance over trials
    double rmse = 0.0;
    double variance_stderr = 0.0;
    double mean_delay = 0.0;
    double mean_n_c = 0.0;
    double lambda = 0.0;
    // Noise variance inside the signal's degrees of freedom, sigma_n^2 * Lambda / N.
    double effective_noise_variance = 0.0;
    // Bound matching the estimator family.
    double bound = 0.0;
    CRReport cr_bound;
    std::size_t trials = 0;
    std::vector<TrialResult> results;
};

// Deterministic per-trial seed from the base seed and the trial index.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial_index);

TrialResult run_trial(const ExperimentConfig& cfg, std::size_t trial_index);

// Same as run_trial on a caller-supplied reference and received pair; crossings and slopes
// are taken from the reference.
TrialResult estimate_delay(const Waveform& reference, const Waveform& received, Estimator est, double search_window);

EstimationReport run_experiment(const ExperimentConfig& cfg);

// Lag-domain envelope used by estimate_delay on integer lags [-H, H].
Interferogram delay_envelope(const Waveform& reference, const Waveform& received, Estimator est, int half_lags);

// 3-point parabolic vertex offset in (-1/2, 1/2) around the maximum of (ym, y0, yp).
double parabolic_offset(double ym, double y0, double yp);

// integral |env|^2 dtau / |env(0)|^2 on the sampled envelope.
double empirical_woodward_constant(const std::vector<double>& envelope, double dt, std::size_t peak_index);

// -3 dB (half-power) full width of a sampled envelope around its peak, linearly interpolated.
double half_power_width(const std::vector<double>& envelope, double dt, std::size_t peak_index);

struct GainRow {
    double parameter = 0.0;
    double gain = 0.0;
    double quadrature_gain = 0.0;
    double empirical_gain = 0.0;  // NaN when not simulated
};

enum class GainFamily { butterworth, lorentzian };

// Analytic gains over the grid, plus empirical gains at the indices in simulate
// (ratio of Woodward constants of simulated correlation and crosslation envelopes).
std::vector<GainRow> resolution_sweep(GainFamily family, const std::vector<double>& grid,
                                      const std::vector<std::size_t>& simulate = {}, std::uint64_t seed = 1);

struct EmpiricalWoodward {
    double correlation = 0.0;
    double crosslation = 0.0;
};

// Woodward constants of the seed-averaged correlation and crosslation envelopes of a model.
EmpiricalWoodward empirical_woodward(const SpectrumModel& m, std::size_t n, double dt, std::size_t seeds,
                                     std::uint64_t seed, int half_lags);

}  // namespace zxi
