#include "zxi/zero_crossing.hpp"

#include <cmath>

#include "zxi/errors.hpp"

namespace zxi {

namespace {

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

CrossingEvent make_event(const Waveform& w, std::size_t k, CrossingTiming timing) {
    const double a = w.samples[k];
    const double b = w.samples[k + 1];
    CrossingEvent e;
    e.index = k;
    e.slope = (b - a) / w.dt;
    e.psi = e.slope > 0.0 ? Direction::up : Direction::down;
    const double frac = timing == CrossingTiming::midpoint ? 0.5 : -a / (b - a);
    e.t = (static_cast<double>(k) + frac) * w.dt;
    return e;
}

void detect_plain(const Waveform& w, const DetectOptions& opts, CrossingSet& cs) {
    // A run of exact zeros takes the sign of the sample after it, so the event lands on the first zero.
    int last = 0;
    std::size_t last_k = 0;
    for (std::size_t k = 0; k < w.samples.size(); ++k) {
        const int s = sgn(w.samples[k]);
        if (s == 0) continue;
        if (last != 0 && s != last) cs.events.push_back(make_event(w, last_k, opts.timing));
        last = s;
        last_k = k;
    }
}

// Schmitt trigger: the state flips only past +-h; the event sits at the last sign change
// before the flip.
void detect_hysteresis(const Waveform& w, const DetectOptions& opts, CrossingSet& cs) {
    const auto& x = w.samples;
    const double h = opts.hysteresis;
    int state = 0;
    std::size_t last_change = 0;
    bool have_change = false;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (k > 0 && ((x[k - 1] < 0.0 && x[k] >= 0.0) || (x[k - 1] > 0.0 && x[k] <= 0.0))) {
            last_change = k - 1;
            have_change = true;
        }
        int target = 0;
        if (x[k] > h) target = 1;
        if (x[k] < -h) target = -1;
        if (target == 0) continue;
        if (state != 0 && target != state && have_change) {
            const CrossingEvent e = make_event(w, last_change, opts.timing);
            if ((e.slope > 0.0) == (target > 0)) cs.events.push_back(e);
        }
        if (target != state) have_change = false;
        state = target;
    }
}

}  // namespace

void recount(CrossingSet& cs) {
    cs.n_plus = 0;
    cs.n_minus = 0;
    for (const auto& e : cs.events) {
        if (e.psi == Direction::up) {
            ++cs.n_plus;
        } else {
            ++cs.n_minus;
        }
    }
}

CrossingSet detect_crossings(const Waveform& w, const DetectOptions& opts) {
    w.validate();
    if (!(opts.hysteresis >= 0.0) || !std::isfinite(opts.hysteresis))
        throw InvalidArgument("hysteresis must be finite and non-negative");
    CrossingSet cs;
    cs.dt = w.dt;
    cs.T = w.duration();
    if (opts.hysteresis > 0.0) {
        detect_hysteresis(w, opts, cs);
    } else {
        detect_plain(w, opts, cs);
    }
    recount(cs);
    return cs;
}

double slope_at(const Waveform& w, const CrossingEvent& e) {
    if (e.index + 1 >= w.size()) throw InvalidArgument("slope_at: event outside the waveform");
    if (!w.trusted.contains(e.index) || !w.trusted.contains(e.index + 1))
        throw InvalidArgument("slope_at: event lies in an untrusted zone");
    return (w.samples[e.index + 1] - w.samples[e.index]) / w.dt;
}

std::vector<SignImpulse> sign_train(const Waveform& w, const DetectOptions& opts) {
    const CrossingSet cs = detect_crossings(w, opts);
    std::vector<SignImpulse> d;
    d.reserve(cs.events.size());
    for (const auto& e : cs.events) d.push_back({e.t, e.sign()});
    return d;
}

}  // namespace zxi
