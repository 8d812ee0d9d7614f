#include "zxi/crosslation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "zxi/errors.hpp"
#include "zxi/signal_gen.hpp"

namespace zxi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_window(const Waveform& w, const LagWindow& window) {
    w.validate();
    if (window.last < window.first) throw InvalidArgument("lag window is empty");
    const double reach = std::max(std::abs(window.first), std::abs(window.last)) * w.dt;
    if (reach > 0.25 * w.duration() * (1.0 + 1e-12))
        throw InvalidArgument("half window exceeds a quarter of the observation interval");
}

LagWindow window_from(double half_window, double dt) { return LagWindow::symmetric(half_window_lags(half_window, dt)); }

// Sample position of the event and whether the whole lag window stays inside the trust range.
bool usable(const Waveform& values, const CrossingEvent& e, const LagWindow& window, double& p0) {
    p0 = e.t / values.dt;
    const double lo = p0 + window.first;
    const double hi = p0 + window.last;
    return lo >= static_cast<double>(values.trusted.begin) && hi <= static_cast<double>(values.trusted.end) - 1.0 &&
           values.trusted.end > 0;
}

template <class Combine>
Interferogram accumulate(const Waveform& values, const CrossingSet& cs, const LagWindow& window,
                         const EventWeight& weight, Combine combine, Variant variant) {
    check_window(values, window);
    if (cs.empty()) throw InvalidArgument("no crossings to average");
    const std::size_t L = window.size();
    std::vector<double> sum(L, 0.0), sum_sq(L, 0.0);
    std::size_t n = 0;
    for (std::size_t i = 0; i < cs.events.size(); ++i) {
        const CrossingEvent& e = cs.events[i];
        double p0 = 0.0;
        if (!usable(values, e, window, p0)) continue;
        const double wgt = weight(e, i);
        for (std::size_t l = 0; l < L; ++l) {
            const double v = combine(wgt, sample_at(values, p0 + window.first + static_cast<int>(l)));
            sum[l] += v;
            sum_sq[l] += v * v;
        }
        ++n;
    }
    if (n == 0) throw InvalidArgument("no crossings with a full lag window inside the trusted region");
    Interferogram g;
    g.window = window;
    g.dt = values.dt;
    g.n_used = n;
    g.variant = variant;
    g.values.resize(L);
    g.std_error.resize(L);
    const double dn = static_cast<double>(n);
    for (std::size_t l = 0; l < L; ++l) {
        const double m = sum[l] / dn;
        g.values[l] = m;
        if (n < 2) {
            g.std_error[l] = kInf;
        } else {
            const double var = std::max(0.0, (sum_sq[l] - dn * m * m) / (dn - 1.0));
            g.std_error[l] = std::sqrt(var / dn);
        }
    }
    return g;
}

double times(double w, double v) { return w * v; }

CrossingSet subset(const CrossingSet& cs, Direction d) {
    CrossingSet r = cs;
    r.events.clear();
    for (const auto& e : cs.events)
        if (e.psi == d) r.events.push_back(e);
    recount(r);
    if (r.empty()) throw InvalidArgument(d == Direction::up ? "no upcrossings" : "no downcrossings");
    return r;
}

void check_pair(const AnalyticPair& pair) {
    if (pair.x.size() != pair.y.size() || pair.x.dt != pair.y.dt)
        throw InvalidArgument("analytic pair channels differ in length or dt");
}

}  // namespace

CrossjectoryMatrix extract_crossjectories(const Waveform& w, const CrossingSet& cs, const LagWindow& window) {
    check_window(w, window);
    if (cs.empty()) throw InvalidArgument("no crossings to extract");
    CrossjectoryMatrix m;
    m.window = window;
    m.dt = w.dt;
    const std::size_t L = window.size();
    for (std::size_t i = 0; i < cs.events.size(); ++i) {
        double p0 = 0.0;
        if (!usable(w, cs.events[i], window, p0)) continue;
        for (std::size_t l = 0; l < L; ++l) m.data.push_back(sample_at(w, p0 + window.first + static_cast<int>(l)));
        m.event_index.push_back(i);
        ++m.rows;
    }
    if (m.rows == 0) throw InvalidArgument("no crossings with a full lag window inside the trusted region");
    return m;
}

CrossjectoryMatrix extract_crossjectories(const Waveform& w, const CrossingSet& cs, double half_window) {
    return extract_crossjectories(w, cs, window_from(half_window, w.dt));
}

Interferogram weighted_interferogram(const Waveform& values, const CrossingSet& cs, const LagWindow& window,
                                     const EventWeight& weight, Variant variant) {
    return accumulate(values, cs, window, weight, times, variant);
}

Interferogram empirical_crosslation(const Waveform& w, const CrossingSet& cs, const LagWindow& window) {
    return accumulate(
        w, cs, window, [](const CrossingEvent& e, std::size_t) { return e.sign(); }, times, Variant::crosslation);
}

Interferogram empirical_crosslation(const Waveform& w, const CrossingSet& cs, double half_window) {
    return empirical_crosslation(w, cs, window_from(half_window, w.dt));
}

Interferogram empirical_up(const Waveform& w, const CrossingSet& cs, const LagWindow& window) {
    return accumulate(
        w, subset(cs, Direction::up), window, [](const CrossingEvent&, std::size_t) { return 1.0; }, times,
        Variant::up_only);
}

Interferogram empirical_down(const Waveform& w, const CrossingSet& cs, const LagWindow& window) {
    return accumulate(
        w, subset(cs, Direction::down), window, [](const CrossingEvent&, std::size_t) { return 1.0; }, times,
        Variant::down_only);
}

Interferogram empirical_autoference(const AnalyticPair& pair, const CrossingSet& cs_x, const LagWindow& window) {
    check_pair(pair);
    return accumulate(
        pair.y, cs_x, window, [](const CrossingEvent& e, std::size_t) { return e.sign(); }, times,
        Variant::autoference);
}

Interferogram empirical_autoference(const AnalyticPair& pair, const LagWindow& window, const DetectOptions& opts) {
    return empirical_autoference(pair, detect_crossings(pair.x, opts), window);
}

Interferogram weighted_autoference(const AnalyticPair& pair, const CrossingSet& cs_x, const LagWindow& window) {
    check_pair(pair);
    const Waveform& y = pair.y;
    return accumulate(
        y, cs_x, window, [&y](const CrossingEvent& e, std::size_t) { return sample_at(y, e.t / y.dt); }, times,
        Variant::weighted_autoference);
}

Interferogram slew_crosslation(const Waveform& w, const CrossingSet& cs, const LagWindow& window) {
    return accumulate(
        w, cs, window, [](const CrossingEvent& e, std::size_t) { return e.slope; }, times, Variant::slew_crosslation);
}

Interferogram slew_autoference(const AnalyticPair& pair, const CrossingSet& cs_x, const LagWindow& window) {
    check_pair(pair);
    return accumulate(
        pair.y, cs_x, window, [](const CrossingEvent& e, std::size_t) { return e.slope; }, times,
        Variant::slew_autoference);
}

Interferogram local_structure(const Waveform& w, const CrossingSet& cs, const LagWindow& window) {
    return accumulate(
        w, cs, window, [](const CrossingEvent&, std::size_t) { return 1.0; },
        [](double, double v) { return v * v; }, Variant::local_structure);
}

Interferogram crossjectory_variance(const Waveform& w, const CrossingSet& cs, const LagWindow& window) {
    const CrossjectoryMatrix m = extract_crossjectories(w, cs, window);
    if (m.rows < 4) throw InvalidArgument("too few crossjectories for a variance estimate");
    const std::size_t L = m.cols();
    const double n = static_cast<double>(m.rows);
    Interferogram g;
    g.window = window;
    g.dt = w.dt;
    g.n_used = m.rows;
    g.variant = Variant::crossjectory_variance;
    g.values.assign(L, 0.0);
    g.std_error.assign(L, 0.0);
    std::vector<double> mean(L, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        const double s = cs.events[m.event_index[r]].sign();
        for (std::size_t l = 0; l < L; ++l) mean[l] += s * m.row(r)[l];
    }
    for (auto& v : mean) v /= n;
    std::vector<double> m2(L, 0.0), m4(L, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        const double s = cs.events[m.event_index[r]].sign();
        for (std::size_t l = 0; l < L; ++l) {
            const double d = s * m.row(r)[l] - mean[l];
            const double d2 = d * d;
            m2[l] += d2;
            m4[l] += d2 * d2;
        }
    }
    for (std::size_t l = 0; l < L; ++l) {
        const double var = m2[l] / (n - 1.0);
        const double mu2 = m2[l] / n;
        const double mu4 = m4[l] / n;
        g.values[l] = var;
        g.std_error[l] = std::sqrt(std::max(0.0, mu4 - mu2 * mu2) / n);
    }
    return g;
}

double rayleigh_threshold(double s2, std::size_t n, std::size_t target) {
    if (target == 0) throw InvalidArgument("target count must be positive");
    if (target >= n) return 0.0;
    return std::sqrt(2.0 * s2 * std::log(static_cast<double>(n) / static_cast<double>(target)));
}

CrossingSet decimate_by_slew(const CrossingSet& cs, std::size_t target, DecimationRule rule) {
    if (target == 0) throw InvalidArgument("decimate_by_slew: target count must be positive");
    if (target >= cs.count()) return cs;
    CrossingSet r = cs;
    r.events.clear();
    if (rule == DecimationRule::trim) {
        std::vector<std::size_t> order(cs.count());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(cs.events[a].slope) > std::abs(cs.events[b].slope);
        });
        order.resize(target);
        std::sort(order.begin(), order.end());
        for (std::size_t i : order) r.events.push_back(cs.events[i]);
    } else {
        double sq = 0.0;
        for (const auto& e : cs.events) sq += e.slope * e.slope;
        const double s2 = 0.5 * sq / static_cast<double>(cs.count());
        const double eta = rayleigh_threshold(s2, cs.count(), target);
        for (const auto& e : cs.events)
            if (std::abs(e.slope) > eta) r.events.push_back(e);
    }
    recount(r);
    return r;
}

ComplexCrosslation complex_crosslation(const Interferogram& C, const Interferogram& A) {
    if (C.window.first != A.window.first || C.window.last != A.window.last || C.dt != A.dt ||
        C.size() != A.size())
        throw InvalidArgument("complex_crosslation: components do not share a lag grid");
    ComplexCrosslation cc{A, C, {}};
    cc.envelope.resize(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) cc.envelope[i] = std::hypot(A.values[i], C.values[i]);
    return cc;
}

Interferogram autoference_from_crosslation(const Interferogram& C, std::size_t pad_factor) {
    if (pad_factor < 1) throw InvalidArgument("pad factor must be at least 1");
    const std::size_t L = C.size();
    std::vector<double> padded(L * pad_factor, 0.0);
    std::copy(C.values.begin(), C.values.end(), padded.begin());
    const std::vector<double> h = hilbert_transform(padded);
    Interferogram A = C;
    A.variant = Variant::autoference;
    for (std::size_t i = 0; i < L; ++i) A.values[i] = -h[i];
    std::fill(A.std_error.begin(), A.std_error.end(), std::numeric_limits<double>::quiet_NaN());
    return A;
}

double estimate_mu(const Waveform& w) {
    w.validate();
    const double m = mean(w);
    double abs_sum = 0.0;
    for (double v : w.samples) abs_sum += std::abs(v - m);
    const double var = variance(w);
    if (var <= 0.0) throw NumericalFailure("estimate_mu: waveform has zero variance");
    return abs_sum / static_cast<double>(w.size()) / var;
}

SpectralEstimate spectrum_from_crosslation(const Interferogram& C, double mu, double n0, std::size_t n_freq) {
    if (!C.window.is_symmetric()) throw InvalidArgument("spectrum_from_crosslation: lag window must be symmetric");
    if (!(mu > 0.0) || !(n0 > 0.0)) throw InvalidArgument("spectrum_from_crosslation: mu and n0 must be positive");
    const int H = C.window.last;
    if (H < 1) throw InvalidArgument("spectrum_from_crosslation: lag window too short");
    if (n_freq == 0) n_freq = 2 * static_cast<std::size_t>(H);
    std::vector<double> odd(static_cast<std::size_t>(H) + 1, 0.0);
    for (int k = 1; k <= H; ++k) odd[static_cast<std::size_t>(k)] = 0.5 * (C.at_lag(k) - C.at_lag(-k));

    SpectralEstimate s;
    s.omega.resize(n_freq);
    s.density.resize(n_freq);
    const double w_max = kPi / C.dt;
    for (std::size_t j = 0; j < n_freq; ++j) {
        const double om = w_max * static_cast<double>(j + 1) / static_cast<double>(n_freq);
        double acc = 0.0;
        for (int k = 1; k <= H; ++k) {
            const double wt = k == H ? 0.5 : 1.0;
            acc += wt * odd[static_cast<std::size_t>(k)] * std::sin(om * k * C.dt);
        }
        s.omega[j] = om;
        s.density[j] = 4.0 * n0 / (mu * om) * acc * C.dt;
    }
    return s;
}

double max_band_ratio() { return (7.0 + std::sqrt(33.0)) / 4.0; }

std::vector<Band> octave_bands(double low, double high, double ratio) {
    if (!(low > 0.0) || !(high > low) || !(ratio > 1.0)) throw InvalidArgument("octave_bands: need 0 < low < high, ratio > 1");
    const auto count = static_cast<std::size_t>(std::ceil(std::log(high / low) / std::log(ratio) - 1e-12));
    const double r = std::pow(high / low, 1.0 / static_cast<double>(count));
    std::vector<Band> bands;
    double a = low;
    for (std::size_t i = 0; i < count; ++i) {
        const double b = i + 1 == count ? high : a * r;
        bands.push_back({a, b});
        a = b;
    }
    return bands;
}

FilterbankResult filterbank_interferogram(const Waveform& w, const std::vector<Band>& bands, const LagWindow& window,
                                          const DetectOptions& opts) {
    w.validate();
    if (bands.empty()) throw InvalidArgument("filterbank: no bands given");
    const double limit = max_band_ratio();
    for (const auto& b : bands) {
        if (!(b.low >= 0.0) || !(b.high > b.low)) throw InvalidArgument("filterbank: each band needs 0 <= low < high");
        if (b.low > 0.0 && b.high / b.low > limit * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "filterbank: band ratio " << b.high / b.low << " exceeds the bandpass degrees-of-freedom limit (7+sqrt(33))/4 = "
               << limit;
            throw InvalidArgument(os.str());
        }
    }
    FilterbankResult res;
    std::vector<Interferogram> parts;
    for (const auto& b : bands) {
        const Waveform wb = band_filter(w, b.low, b.high);
        const CrossingSet cs = detect_crossings(wb, opts);
        res.band_crossings.push_back(cs.count());
        res.total_crossings += cs.count();
        if (cs.empty()) continue;
        try {
            parts.push_back(empirical_crosslation(wb, cs, window));
        } catch (const InvalidArgument&) {
            // band has crossings but none with a full window
        }
    }
    if (parts.empty()) throw InvalidArgument("filterbank: no band produced a usable interferogram");
    Interferogram g = parts.front();
    const std::size_t L = g.size();
    std::vector<double> sum(L, 0.0), var(L, 0.0);
    std::size_t n = 0;
    for (const auto& p : parts) {
        const double np = static_cast<double>(p.n_used);
        for (std::size_t l = 0; l < L; ++l) {
            sum[l] += np * p.values[l];
            var[l] += np * np * p.std_error[l] * p.std_error[l];
        }
        n += p.n_used;
    }
    const double dn = static_cast<double>(n);
    for (std::size_t l = 0; l < L; ++l) {
        g.values[l] = sum[l] / dn;
        g.std_error[l] = std::sqrt(var[l]) / dn;
    }
    g.n_used = n;
    res.combined = std::move(g);
    return res;
}

}  // namespace zxi
