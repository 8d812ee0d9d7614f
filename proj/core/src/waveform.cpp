#include "zxi/waveform.hpp"

#include <algorithm>
#include <cmath>

#include "zxi/errors.hpp"

namespace zxi {

TrustRange intersect(const TrustRange& a, const TrustRange& b) {
    TrustRange r{std::max(a.begin, b.begin), std::min(a.end, b.end)};
    if (r.end < r.begin) r.end = r.begin;
    return r;
}

Waveform::Waveform(std::vector<double> s, double dt_, std::string label_)
    : samples(std::move(s)), dt(dt_), label(std::move(label_)), trusted{0, samples.size()} {}

double Waveform::duration() const {
    return samples.empty() ? 0.0 : static_cast<double>(samples.size() - 1) * dt;
}

void Waveform::validate() const {
    if (samples.empty()) throw InvalidArgument("waveform has no samples");
    if (!std::isfinite(dt) || dt <= 0.0) throw InvalidArgument("sample interval dt must be finite and positive");
    if (trusted.end > samples.size() || trusted.begin > trusted.end)
        throw InvalidArgument("trusted range exceeds the waveform");
}

double sample_at(const Waveform& w, double p) {
    const double fl = std::floor(p);
    const auto k = static_cast<std::size_t>(fl);
    const double f = p - fl;
    if (f == 0.0) return w.samples[k];
    return w.samples[k] + f * (w.samples[k + 1] - w.samples[k]);
}

double mean(const Waveform& w) {
    double s = 0.0;
    for (double v : w.samples) s += v;
    return w.samples.empty() ? 0.0 : s / static_cast<double>(w.samples.size());
}

double variance(const Waveform& w) {
    if (w.samples.empty()) return 0.0;
    const double m = mean(w);
    double s = 0.0;
    for (double v : w.samples) s += (v - m) * (v - m);
    return s / static_cast<double>(w.samples.size());
}

}  // namespace zxi
