#include "zxi/signal_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fft.hpp"
#include "zxi/errors.hpp"

namespace zxi {

namespace {

using detail::bin_omega;
using detail::cplx;

constexpr double kPi = std::numbers::pi;

void check_grid(std::size_t n, double dt, std::size_t min_n) {
    if (!std::isfinite(dt) || dt <= 0.0) throw InvalidArgument("sample interval dt must be finite and positive");
    if (n < min_n) throw InvalidArgument("sample count too small (need at least " + std::to_string(min_n) + ")");
}

std::string make_label(const std::string& what, std::uint64_t seed) {
    std::ostringstream os;
    os << what << " seed=" << seed;
    return os.str();
}

std::size_t edge_samples(std::size_t n) {
    return static_cast<std::size_t>(std::ceil(kHilbertEdgeFraction * static_cast<double>(n)));
}

// Random-phase spectrum with |X_k|^2 = S(w_k) n / dt.
std::vector<double> shaped_noise(const SpectrumModel& model, std::size_t n, double dt, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::vector<cplx> X(n / 2 + 1, cplx(0.0, 0.0));
    const double scale = static_cast<double>(n) / dt;
    for (std::size_t k = 1; k < X.size(); ++k) {
        const double amp = std::sqrt(density(model, bin_omega(k, n, dt)) * scale);
        const double ph = phase(rng);
        if (n % 2 == 0 && k == n / 2) {
            X[k] = cplx(ph < kPi ? amp : -amp, 0.0);
        } else {
            X[k] = std::polar(amp, ph);
        }
    }
    return detail::irfft(X, n);
}

}  // namespace

Waveform synth_gaussian(const SpectrumModel& model, std::size_t n, double dt, std::uint64_t seed) {
    check_grid(n, dt, 16);
    if (!is_random_gaussian(model))
        throw InvalidArgument("synth_gaussian: " + family_name(model) +
                              " is not a Gaussian random family; use synth_multisine or synth_fm_carrier");
    validate(model);
    std::mt19937_64 rng(seed);
    return Waveform(shaped_noise(model, n, dt, rng), dt, make_label("gaussian:" + family_name(model), seed));
}

Waveform synth_multisine(const MultiSine& model, std::size_t n, double dt, std::uint64_t seed) {
    check_grid(n, dt, 1);
    validate(SpectrumModel{model});
    const double nyquist = 0.5 / dt;
    for (double f : model.frequencies)
        if (f >= nyquist) throw InvalidArgument("multisine: frequency at or above Nyquist");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    std::vector<double> phases(model.frequencies.size());
    for (auto& p : phases) p = phase(rng);
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        double acc = 0.0;
        for (std::size_t q = 0; q < phases.size(); ++q)
            acc += std::sin(2.0 * kPi * model.frequencies[q] * t + phases[q]);
        x[i] = model.amplitude * acc;
    }
    return Waveform(std::move(x), dt, make_label("multisine", seed));
}

Waveform synth_fm_carrier(const FMCarrier& model, std::size_t n, double dt, std::uint64_t seed) {
    check_grid(n, dt, 16);
    validate(SpectrumModel{model});
    const double nyquist = 0.5 / dt;
    const double dev = fm_deviation(model);
    if (model.carrier - 5.0 * dev <= 0.0)
        throw InvalidArgument("fm: deviation too large, instantaneous frequency would go negative");
    if (model.carrier + 5.0 * dev + 2.0 * model.mod_bandwidth >= nyquist)
        throw InvalidArgument("fm: occupied bandwidth overflows past Nyquist");

    const double record = static_cast<double>(n) * dt;
    const double k0 = std::round(model.carrier * record);
    if (k0 < 1.0) throw InvalidArgument("fm: carrier below the record's frequency resolution");
    const double f0 = k0 / record;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase0(0.0, 2.0 * kPi);
    const double phi0 = phase0(rng);

    std::vector<double> integral(n, 0.0);
    if (dev > 0.0) {
        const SpectrumModel mod = GaussianShape{2.0 * kPi * model.mod_bandwidth, 1.0};
        const std::vector<double> m = shaped_noise(mod, n, dt, rng);
        std::vector<cplx> M = detail::rfft(m);
        M[0] = 0.0;
        for (std::size_t k = 1; k < M.size(); ++k) {
            if (n % 2 == 0 && k == n / 2) {
                M[k] = 0.0;
            } else {
                M[k] /= cplx(0.0, bin_omega(k, n, dt));
            }
        }
        integral = detail::irfft(M, n);
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        x[i] = model.amplitude * std::cos(phi0 + 2.0 * kPi * (f0 * t + dev * integral[i]));
    }
    return Waveform(std::move(x), dt, make_label("fm", seed));
}

Waveform synthesize(const SpectrumModel& model, std::size_t n, double dt, std::uint64_t seed) {
    if (auto* s = std::get_if<MultiSine>(&model)) return synth_multisine(*s, n, dt, seed);
    if (auto* s = std::get_if<FMCarrier>(&model)) return synth_fm_carrier(*s, n, dt, seed);
    return synth_gaussian(model, n, dt, seed);
}

std::vector<double> hilbert_transform(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<cplx> X = detail::rfft(v);
    X[0] = 0.0;
    for (std::size_t k = 1; k < X.size(); ++k) {
        if (n % 2 == 0 && k == n / 2) {
            X[k] = 0.0;
        } else {
            X[k] *= cplx(0.0, -1.0);
        }
    }
    return detail::irfft(X, n);
}

AnalyticPair analytic_signal(const Waveform& w) {
    w.validate();
    if (w.size() < 4) throw InvalidArgument("analytic_signal: need at least 4 samples");
    const std::size_t n = w.size();
    const std::size_t edge = edge_samples(n);
    AnalyticPair pair;
    pair.y = w;
    pair.x = Waveform(hilbert_transform(w.samples), w.dt, "hilbert(" + w.label + ")");
    const TrustRange inner{edge, n > edge ? n - edge : 0};
    pair.y.trusted = intersect(w.trusted, inner);
    pair.x.trusted = pair.y.trusted;
    return pair;
}

AnalyticPair quadrature_pair(const Waveform& w) {
    AnalyticPair pair = analytic_signal(w);
    std::swap(pair.x, pair.y);
    for (auto& v : pair.y.samples) v = -v;
    pair.y.label = "inverse hilbert(" + w.label + ")";
    return pair;
}

double noise_variance_for(const Waveform& w, double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0.0) return 0.0;
    if (!std::isfinite(snr_db)) throw InvalidArgument("snr_db must be finite or +inf");
    return variance(w) / std::pow(10.0, snr_db / 10.0);
}

Waveform delay_and_corrupt(const Waveform& w, double delay, double snr_db, std::uint64_t seed) {
    w.validate();
    if (!std::isfinite(delay) || std::abs(delay) >= 0.5 * w.duration())
        throw InvalidArgument("delay_and_corrupt: |delay| must be below T/2");
    const std::size_t n = w.size();
    const double noise_var = noise_variance_for(w, snr_db);

    std::vector<double> out;
    if (delay == 0.0) {
        out = w.samples;
    } else {
        std::vector<cplx> X = detail::rfft(w.samples);
        for (std::size_t k = 1; k < X.size(); ++k) {
            const double ph = -bin_omega(k, n, w.dt) * delay;
            if (n % 2 == 0 && k == n / 2) {
                X[k] *= std::cos(ph);
            } else {
                X[k] *= std::polar(1.0, ph);
            }
        }
        out = detail::irfft(X, n);
    }
    if (noise_var > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, std::sqrt(noise_var));
        for (auto& v : out) v += gauss(rng);
    }
    Waveform r(std::move(out), w.dt, w.label + " delayed");
    const auto guard = static_cast<std::size_t>(std::ceil(std::max(std::abs(delay), 10.0 * w.dt) / w.dt));
    const TrustRange shrunk{w.trusted.begin + guard, w.trusted.end > guard ? w.trusted.end - guard : 0};
    r.trusted = intersect(r.trusted, shrunk);
    return r;
}

Waveform band_filter(const Waveform& w, double low, double high) {
    w.validate();
    const std::size_t n = w.size();
    std::vector<cplx> X = detail::rfft(w.samples);
    const double slack = 1e-12 * std::max(high, 1.0 / w.dt);
    bool removed = false;
    for (std::size_t k = 0; k < X.size(); ++k) {
        const double om = bin_omega(k, n, w.dt);
        if (om < low - slack || om > high + slack) {
            X[k] = 0.0;
            removed = true;
        }
    }
    if (!removed) return w;
    Waveform r(detail::irfft(X, n), w.dt, w.label + " band");
    const std::size_t edge = edge_samples(n);
    r.trusted = intersect(w.trusted, TrustRange{edge, n > edge ? n - edge : 0});
    return r;
}

Periodogram periodogram(const Waveform& w) {
    w.validate();
    const std::size_t n = w.size();
    const std::vector<cplx> X = detail::rfft(w.samples);
    Periodogram p;
    p.omega.resize(X.size());
    p.density.resize(X.size());
    const double scale = w.dt / static_cast<double>(n);
    for (std::size_t k = 0; k < X.size(); ++k) {
        p.omega[k] = bin_omega(k, n, w.dt);
        p.density[k] = std::norm(X[k]) * scale;
    }
    return p;
}

}  // namespace zxi
