#include "zxi/estimation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "zxi/crosslation.hpp"
#include "zxi/errors.hpp"
#include "zxi/signal_gen.hpp"
#include "zxi/zero_crossing.hpp"

namespace zxi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Interferogram correlation_envelope(const Waveform& ref, const Waveform& recv, int H) {
    const std::vector<double> hr = hilbert_transform(recv.samples);
    const std::size_t lo = recv.trusted.begin + static_cast<std::size_t>(H);
    const std::size_t hi = recv.trusted.end > static_cast<std::size_t>(H) ? recv.trusted.end - H : 0;
    if (hi <= lo) throw InvalidArgument("correlation: received record too short for the search window");
    Interferogram g;
    g.window = LagWindow::symmetric(H);
    g.dt = recv.dt;
    g.variant = Variant::crosslation;
    g.n_used = hi - lo;
    const std::size_t L = g.window.size();
    g.values.resize(L);
    g.std_error.assign(L, kNaN);
    const double n = static_cast<double>(hi - lo);
    for (std::size_t l = 0; l < L; ++l) {
        const std::ptrdiff_t k = g.window.first + static_cast<int>(l);
        double r = 0.0;
        double rh = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double x = ref.samples[i];
            const auto idx = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + k);
            r += x * recv.samples[idx];
            rh += x * hr[idx];
        }
        g.values[l] = std::hypot(r / n, rh / n);
    }
    return g;
}

Interferogram crosslation_envelope(const Waveform& ref, const Waveform& recv, bool slew, int H) {
    const CrossingSet cs = detect_crossings(ref);
    if (cs.empty()) throw InvalidArgument("reference waveform has no zero crossings");
    Waveform ry(hilbert_transform(recv.samples), recv.dt, "inverse hilbert");
    for (auto& v : ry.samples) v = -v;
    ry.trusted = recv.trusted;
    const LagWindow win = LagWindow::symmetric(H);
    const EventWeight weight = slew ? EventWeight([](const CrossingEvent& e, std::size_t) { return e.slope; })
                                    : EventWeight([](const CrossingEvent& e, std::size_t) { return e.sign(); });
    const Variant vc = slew ? Variant::slew_crosslation : Variant::crosslation;
    const Variant va = slew ? Variant::slew_autoference : Variant::autoference;
    const Interferogram C = weighted_interferogram(recv, cs, win, weight, vc);
    const Interferogram A = weighted_interferogram(ry, cs, win, weight, va);
    const ComplexCrosslation cc = complex_crosslation(C, A);
    Interferogram g = C;
    g.values = cc.envelope;
    std::fill(g.std_error.begin(), g.std_error.end(), kNaN);
    return g;
}

double default_search_window(const ExperimentConfig& cfg) {
    const double T = cfg.T;
    return std::min(0.25 * T, 2.0 * std::abs(cfg.delay) + 32.0 * cfg.dt);
}

}  // namespace

std::string estimator_name(Estimator e) {
    switch (e) {
        case Estimator::correlation_env: return "correlation_env";
        case Estimator::crosslation_env: return "crosslation_env";
        case Estimator::slew_crosslation_env: return "slew_crosslation_env";
    }
    return "unknown";
}

Estimator parse_estimator(const std::string& s) {
    if (s == "correlation_env") return Estimator::correlation_env;
    if (s == "crosslation_env") return Estimator::crosslation_env;
    if (s == "slew_crosslation_env") return Estimator::slew_crosslation_env;
    throw InvalidArgument("unknown estimator '" + s + "'");
}

std::size_t ExperimentConfig::samples() const {
    return static_cast<std::size_t>(std::llround(T / dt)) + 1;
}

void ExperimentConfig::validate() const {
    zxi::validate(spectrum);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("config: dt must be positive");
    if (!(T > 16.0 * dt) || !std::isfinite(T)) throw InvalidArgument("config: T must span at least 16 samples");
    if (trials < 1) throw InvalidArgument("config: trials must be >= 1");
    if (!std::isfinite(delay) || std::abs(delay) >= 0.25 * T) throw InvalidArgument("config: |delay| must be below T/4");
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
        throw InvalidArgument("config: snr_db must be a number or +inf");
    if (search_window < 0.0 || search_window > 0.25 * T) throw InvalidArgument("config: search window must lie in [0, T/4]");
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial_index) {
    return splitmix64(base_seed ^ splitmix64(static_cast<std::uint64_t>(trial_index)));
}

double parabolic_offset(double ym, double y0, double yp) {
    const double denom = ym - 2.0 * y0 + yp;
    if (!(denom < 0.0)) return 0.0;
    const double off = 0.5 * (ym - yp) / denom;
    return std::clamp(off, -0.5, 0.5);
}

Interferogram delay_envelope(const Waveform& reference, const Waveform& received, Estimator est, int half_lags) {
    reference.validate();
    received.validate();
    if (reference.size() != received.size() || reference.dt != received.dt)
        throw InvalidArgument("reference and received records differ in length or dt");
    if (half_lags < 1) throw InvalidArgument("search window must cover at least one lag");
    switch (est) {
        case Estimator::correlation_env: return correlation_envelope(reference, received, half_lags);
        case Estimator::crosslation_env: return crosslation_envelope(reference, received, false, half_lags);
        case Estimator::slew_crosslation_env: return crosslation_envelope(reference, received, true, half_lags);
    }
    throw InvalidArgument("unknown estimator");
}

TrialResult estimate_delay(const Waveform& reference, const Waveform& received, Estimator est, double search_window) {
    const int H = std::max(1, static_cast<int>(std::ceil(search_window / reference.dt - 1e-9)));
    const Interferogram env = delay_envelope(reference, received, est, H);
    const auto it = std::max_element(env.values.begin(), env.values.end());
    const auto p = static_cast<std::size_t>(it - env.values.begin());
    double off = 0.0;
    if (p > 0 && p + 1 < env.size()) off = parabolic_offset(env.values[p - 1], env.values[p], env.values[p + 1]);
    TrialResult r;
    r.delay_hat = (env.lag_index(p) + off) * env.dt;
    r.peak_value = *it;
    r.n_c_used = est == Estimator::correlation_env ? detect_crossings(reference).count() : env.n_used;
    return r;
}

TrialResult run_trial(const ExperimentConfig& cfg, std::size_t trial_index) {
    cfg.validate();
    const std::uint64_t seed = trial_seed(cfg.base_seed, trial_index);
    const Waveform ref = synthesize(cfg.spectrum, cfg.samples(), cfg.dt, splitmix64(seed));
    const Waveform recv = delay_and_corrupt(ref, cfg.delay, cfg.snr_db, splitmix64(seed + 1));
    const double search = cfg.search_window > 0.0 ? cfg.search_window : default_search_window(cfg);
    TrialResult r = estimate_delay(ref, recv, cfg.estimator, search);
    r.noise_variance = noise_variance_for(ref, cfg.snr_db);
    return r;
}

EstimationReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<TrialResult> results(cfg.trials);
    std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, cfg.trials);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t w) {
        try {
            for (std::size_t i = w; i < cfg.trials; i += workers) results[i] = run_trial(cfg, i);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    EstimationReport rep;
    rep.trials = cfg.trials;
    const double n = static_cast<double>(cfg.trials);
    double sum = 0.0, nc = 0.0, nv = 0.0;
    for (const auto& r : results) {
        sum += r.delay_hat;
        nc += static_cast<double>(r.n_c_used);
        nv += r.noise_variance;
    }
    rep.mean_delay = sum / n;
    rep.mean_n_c = nc / n;
    rep.bias = rep.mean_delay - cfg.delay;
    double m2 = 0.0, m4 = 0.0, mse = 0.0;
    for (const auto& r : results) {
        const double d = r.delay_hat - rep.mean_delay;
        m2 += d * d;
        m4 += d * d * d * d;
        const double e = r.delay_hat - cfg.delay;
        mse += e * e;
    }
    rep.variance = m2 / n;
    rep.rmse = std::sqrt(mse / n);
    rep.variance_stderr = std::sqrt(std::max(0.0, m4 / n - rep.variance * rep.variance) / n);

    const double T = static_cast<double>(cfg.samples() - 1) * cfg.dt;
    const double s2 = process_variance(cfg.spectrum);
    const double B = rms_bandwidth(cfg.spectrum);
    rep.lambda = is_random_gaussian(cfg.spectrum) ? degrees_of_freedom(cfg.spectrum, T).lambda : rep.mean_n_c;
    rep.effective_noise_variance = (nv / n) * rep.lambda / static_cast<double>(cfg.samples());
    rep.cr_bound = cr_bounds(rep.effective_noise_variance, s2, B, rep.lambda, std::max(rep.mean_n_c, 1.0));
    rep.bound = cfg.estimator == Estimator::correlation_env ? rep.cr_bound.var_correlation : rep.cr_bound.var_crosslation;
    rep.results = std::move(results);
    return rep;
}

double empirical_woodward_constant(const std::vector<double>& envelope, double dt, std::size_t peak_index) {
    if (peak_index >= envelope.size() || !(envelope[peak_index] > 0.0))
        throw InvalidArgument("woodward constant: peak must be a positive sample");
    double acc = 0.0;
    for (double v : envelope) acc += v * v;
    return acc * dt / (envelope[peak_index] * envelope[peak_index]);
}

double half_power_width(const std::vector<double>& envelope, double dt, std::size_t peak_index) {
    if (peak_index >= envelope.size()) throw InvalidArgument("half_power_width: bad peak index");
    const double level = envelope[peak_index] / std::sqrt(2.0);
    auto crossing = [&](int step) {
        std::size_t i = peak_index;
        while (true) {
            const std::size_t next = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + step);
            if (next >= envelope.size()) throw NumericalFailure("half_power_width: envelope does not fall to half power");
            if (envelope[next] <= level) {
                const double f = (envelope[i] - level) / (envelope[i] - envelope[next]);
                return (static_cast<double>(i) + step * f) * dt;
            }
            i = next;
        }
    };
    return crossing(1) - crossing(-1);
}

EmpiricalWoodward empirical_woodward(const SpectrumModel& m, std::size_t n, double dt, std::size_t seeds,
                                     std::uint64_t seed, int half_lags) {
    if (seeds == 0) throw InvalidArgument("empirical_woodward: need at least one seed");
    const std::size_t L = 2 * static_cast<std::size_t>(half_lags) + 1;
    std::vector<double> corr(L, 0.0), xl(L, 0.0);
    for (std::size_t s = 0; s < seeds; ++s) {
        const Waveform w = synthesize(m, n, dt, trial_seed(seed, s));
        const Interferogram ce = delay_envelope(w, w, Estimator::correlation_env, half_lags);
        const Interferogram xe = delay_envelope(w, w, Estimator::crosslation_env, half_lags);
        for (std::size_t i = 0; i < L; ++i) {
            corr[i] += ce.values[i];
            xl[i] += xe.values[i];
        }
    }
    const auto centre = static_cast<std::size_t>(half_lags);
    return {empirical_woodward_constant(corr, dt, centre), empirical_woodward_constant(xl, dt, centre)};
}

std::vector<GainRow> resolution_sweep(GainFamily family, const std::vector<double>& grid,
                                      const std::vector<std::size_t>& simulate, std::uint64_t seed) {
    std::vector<GainRow> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = grid[i];
        GainRow row;
        row.parameter = p;
        row.empirical_gain = kNaN;
        SpectrumModel model;
        if (family == GainFamily::butterworth) {
            row.gain = butterworth_gain(p);
            model = Butterworth{p, 1.0, 1.0};
        } else {
            row.gain = lorentzian_gain(p);
            if (p > 1.0) model = ModifiedLorentzian{p, 1.0, 1.0};
        }
        if (family == GainFamily::lorentzian && p == 1.0) {
            row.quadrature_gain = kNaN;
        } else {
            row.quadrature_gain = woodward_constants_quadrature(model).gain;
        }
        if (std::find(simulate.begin(), simulate.end(), i) != simulate.end() && !std::isnan(row.quadrature_gain)) {
            // Nyquist at 20x the upper corner (gamma W for the Lorentzian), and at least 10/W of lag.
            const double corner = family == GainFamily::lorentzian ? p : 1.0;
            const double dt = std::numbers::pi / (20.0 * corner);
            const int half = std::max(400, static_cast<int>(std::ceil(10.0 / dt)));
            const std::size_t n = std::max<std::size_t>(1u << 15, std::bit_ceil(8u * static_cast<std::size_t>(half)));
            const EmpiricalWoodward e = empirical_woodward(model, n, dt, 8, seed, half);
            row.empirical_gain = e.correlation / e.crosslation;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace zxi
