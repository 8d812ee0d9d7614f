#include "zxi/streaming.hpp"

#include <cmath>
#include <limits>

#include "zxi/errors.hpp"

namespace zxi {

StreamingCrosslator::StreamingCrosslator(const StreamConfig& cfg) : cfg_(cfg) {
    if (cfg_.m < 2) throw InvalidArgument("stream: need at least 2 taps");
    if (!(cfg_.dt > 0.0) || !std::isfinite(cfg_.dt)) throw InvalidArgument("stream: dt must be positive");
    if (!(cfg_.lambda > 0.0 && cfg_.lambda <= 1.0)) throw InvalidArgument("stream: lambda must lie in (0, 1]");
    j_ = cfg_.j;
    if (j_ == 0) j_ = cfg_.mode == StreamMode::past_only ? 1 : cfg_.m / 2;
    if (j_ < 1 || j_ >= cfg_.m) throw InvalidArgument("stream: detector position must satisfy 1 <= j < m");
    if (cfg_.mode == StreamMode::past_only && j_ != 1) throw InvalidArgument("stream: past_only mode uses j = 1");
    if (cfg_.mode == StreamMode::future_in_the_past && j_ < 2)
        throw InvalidArgument("stream: future_in_the_past mode needs j >= 2");
    ring_.assign(cfg_.m, 0.0);
    reset();
}

void StreamingCrosslator::reset() {
    sum_.assign(cfg_.m, 0.0);
    sum_sq_.assign(cfg_.m, 0.0);
    sum_cross_.assign(cfg_.m - 1, 0.0);
    weight_ = 0.0;
    weight_sq_ = 0.0;
    events_ = 0;
}

double StreamingCrosslator::tap(std::size_t k) const { return ring_[(head_ + cfg_.m - (k - 1)) % cfg_.m]; }

LagWindow StreamingCrosslator::lag_window() const {
    const int j = static_cast<int>(j_);
    const int m = static_cast<int>(cfg_.m);
    return {j - m + 1, j - 1};
}

std::optional<StreamEvent> StreamingCrosslator::push_sample(double value) {
    if (ring_.empty()) throw InvalidArgument("stream: state not initialized");
    head_ = (head_ + 1) % cfg_.m;
    ring_[head_] = value;
    ++pushed_;
    if (pushed_ < cfg_.m) return std::nullopt;

    const double qa = tap(j_);
    const double qb = tap(j_ + 1);
    if (!(qa * qb < 0.0)) return std::nullopt;

    StreamEvent ev;
    ev.psi = qa > 0.0 ? Direction::up : Direction::down;
    ev.sample_index = pushed_ - j_;
    ev.t = (static_cast<double>(ev.sample_index) - 0.5) * cfg_.dt;
    const double s = ev.psi == Direction::up ? 1.0 : -1.0;

    const double lam = cfg_.averaging == Averaging::recursive ? cfg_.lambda : 1.0;
    double prev = 0.0;
    for (std::size_t k = 1; k <= cfg_.m; ++k) {
        const double v = s * tap(k);
        if (lam == 1.0) {
            sum_[k - 1] += v;
            sum_sq_[k - 1] += v * v;
            if (k > 1) sum_cross_[k - 2] += prev * v;
        } else {
            sum_[k - 1] = lam * sum_[k - 1] + v;
            sum_sq_[k - 1] = lam * sum_sq_[k - 1] + v * v;
            if (k > 1) sum_cross_[k - 2] = lam * sum_cross_[k - 2] + prev * v;
        }
        prev = v;
    }
    weight_ = lam * weight_ + 1.0;
    weight_sq_ = lam * lam * weight_sq_ + 1.0;
    ++events_;
    return ev;
}

StreamReport StreamingCrosslator::snapshot() const {
    StreamReport rep;
    rep.mode = cfg_.mode;
    rep.events_processed = events_;
    Interferogram& g = rep.interferogram;
    g.window = lag_window();
    g.dt = cfg_.dt;
    g.variant = Variant::crosslation;
    g.n_used = events_;
    if (events_ == 0) return rep;

    const std::size_t L = g.window.size();
    g.values.resize(L);
    g.std_error.resize(L);
    const double n_eff = weight_ * weight_ / weight_sq_;
    for (std::size_t i = 0; i < L; ++i) {
        // Lag L sits between taps k = j - L and k + 1; ascending lag is descending tap index.
        const int lag = g.window.first + static_cast<int>(i);
        const auto k = static_cast<std::size_t>(static_cast<int>(j_) - lag);
        const double a = sum_[k - 1] / weight_;
        const double b = sum_[k] / weight_;
        const double mean = 0.5 * (a + b);
        g.values[i] = mean;
        if (n_eff < 2.0) {
            g.std_error[i] = std::numeric_limits<double>::infinity();
        } else {
            const double m2 = 0.25 * (sum_sq_[k - 1] + 2.0 * sum_cross_[k - 1] + sum_sq_[k]) / weight_;
            const double var = std::max(0.0, m2 - mean * mean) * n_eff / (n_eff - 1.0);
            g.std_error[i] = std::sqrt(var / n_eff);
        }
    }
    return rep;
}

}  // namespace zxi
