#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "zxi/zxi.hpp"

using namespace zxi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr DetectOptions kMidpoint{CrossingTiming::midpoint, 0.0};

StreamingCrosslator feed(const Waveform& w, StreamConfig cfg, std::vector<StreamEvent>* events = nullptr) {
    cfg.dt = w.dt;
    StreamingCrosslator sc(cfg);
    for (double v : w.samples) {
        const auto e = sc.push_sample(v);
        if (e && events) events->push_back(*e);
    }
    return sc;
}

double max_gap(const Interferogram& a, const Interferogram& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace

TEST_CASE("sinusoid events are half a period apart", "[streaming]") {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(2.0 * kPi * (i + 0.3) / 50.0);
    std::vector<StreamEvent> ev;
    feed(Waveform(v, 1.0), StreamConfig{64, 0, StreamMode::future_in_the_past, Averaging::fixed, 1.0, 1.0}, &ev);
    REQUIRE(ev.size() > 10);
    for (std::size_t i = 1; i < ev.size(); ++i) {
        CHECK_THAT(ev[i].t - ev[i - 1].t, WithinAbs(25.0, 1.0));
        CHECK(ev[i].psi != ev[i - 1].psi);
        CHECK(ev[i].t > ev[i - 1].t);
    }
}

TEST_CASE("future-in-the-past stream equals the batch crosslation", "[streaming]") {
    const std::vector<Waveform> inputs{
        synth_gaussian(GaussianShape{0.2, 1.0}, 20000, 1.0, 1),
        synth_gaussian(Butterworth{2.0, 0.3, 2.0}, 20000, 1.0, 2),
        synth_multisine(MultiSine{{0.013, 0.031, 0.047}, 1.0}, 20000, 1.0, 3),
    };
    for (const auto& w : inputs) {
        for (std::size_t j : {std::size_t{127}, std::size_t{64}}) {
            const StreamConfig cfg{128, j, StreamMode::future_in_the_past, Averaging::fixed, 1.0, 1.0};
            const StreamingCrosslator sc = feed(w, cfg);
            const StreamReport rep = sc.snapshot();
            const CrossingSet cs = detect_crossings(w, kMidpoint);
            const Interferogram batch = empirical_crosslation(w, cs, sc.lag_window());
            CHECK(rep.events_processed == batch.n_used);
            CHECK(max_gap(rep.interferogram, batch) < 1e-9);
        }
    }
}

TEST_CASE("recursive averaging with unit factor is fixed averaging", "[streaming]") {
    const Waveform w = synth_gaussian(GaussianShape{0.2, 1.0}, 8000, 1.0, 9);
    const StreamReport a = feed(w, {64, 32, StreamMode::future_in_the_past, Averaging::fixed, 1.0, 1.0}).snapshot();
    const StreamReport b = feed(w, {64, 32, StreamMode::future_in_the_past, Averaging::recursive, 1.0, 1.0}).snapshot();
    CHECK(a.interferogram.values == b.interferogram.values);
    CHECK(a.interferogram.std_error == b.interferogram.std_error);
}

TEST_CASE("recursive averaging forgets old events exponentially", "[streaming]") {
    const Waveform w = synth_gaussian(GaussianShape{0.2, 1.0}, 6000, 1.0, 10);
    const double lambda = 0.97;
    const StreamingCrosslator sc = feed(w, {48, 24, StreamMode::future_in_the_past, Averaging::recursive, lambda, 1.0});
    const Interferogram g = sc.snapshot().interferogram;

    const CrossingSet cs = detect_crossings(w, kMidpoint);
    const CrossjectoryMatrix m = extract_crossjectories(w, cs, sc.lag_window());
    REQUIRE(m.rows == sc.event_count());
    for (std::size_t l = 0; l < m.cols(); ++l) {
        double num = 0.0, den = 0.0;
        for (std::size_t r = 0; r < m.rows; ++r) {
            const double wt = std::pow(lambda, static_cast<double>(m.rows - 1 - r));
            num += wt * cs.events[m.event_index[r]].sign() * m.row(r)[l];
            den += wt;
        }
        CHECK_THAT(g.values[l], WithinAbs(num / den, 1e-9));
    }
}

TEST_CASE("no events give an empty report", "[streaming]") {
    StreamingCrosslator sc({16, 0, StreamMode::future_in_the_past, Averaging::fixed, 1.0, 1.0});
    for (int i = 0; i < 100; ++i) CHECK_FALSE(sc.push_sample(1.0 + i).has_value());
    const StreamReport rep = sc.snapshot();
    CHECK(rep.events_processed == 0);
    CHECK(rep.interferogram.values.empty());
}

TEST_CASE("standard error shrinks as the inverse square root of the event count", "[streaming]") {
    const Waveform w = synth_gaussian(GaussianShape{0.2, 1.0}, 1 << 17, 1.0, 12);
    StreamingCrosslator sc({64, 32, StreamMode::future_in_the_past, Averaging::fixed, 1.0, 1.0});
    std::vector<double> log_n, log_se;
    std::size_t next = 100;
    for (double v : w.samples) {
        sc.push_sample(v);
        if (sc.event_count() == next) {
            const Interferogram g = sc.snapshot().interferogram;
            double se = 0.0;
            for (double s : g.std_error) se += s;
            log_n.push_back(std::log(static_cast<double>(next)));
            log_se.push_back(std::log(se / g.size()));
            next *= 2;
        }
    }
    REQUIRE(log_n.size() >= 5);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        mx += log_n[i];
        my += log_se[i];
    }
    mx /= log_n.size();
    my /= log_n.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        sxy += (log_n[i] - mx) * (log_se[i] - my);
        sxx += (log_n[i] - mx) * (log_n[i] - mx);
    }
    CHECK_THAT(sxy / sxx, WithinAbs(-0.5, 0.05));
}

TEST_CASE("past-only mode sees only non-positive lags", "[streaming]") {
    const StreamingCrosslator sc = feed(synth_gaussian(GaussianShape{0.2, 1.0}, 4000, 1.0, 13),
                                        {32, 0, StreamMode::past_only, Averaging::fixed, 1.0, 1.0});
    CHECK(sc.detector_position() == 1);
    CHECK(sc.lag_window().last == 0);
    CHECK(sc.lag_window().first == -30);
    const Interferogram g = sc.snapshot().interferogram;
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.tau(i) <= 0.0);
    CHECK(g.at_lag(-3) < 0.0);
}

TEST_CASE("stream output is causal", "[streaming]") {
    const Waveform a = synth_gaussian(GaussianShape{0.2, 1.0}, 4000, 1.0, 14);
    Waveform b = a;
    for (std::size_t i = 2000; i < b.size(); ++i) b.samples[i] = -b.samples[i] + 0.1;
    const StreamConfig cfg{32, 16, StreamMode::future_in_the_past, Averaging::fixed, 1.0, 1.0};
    StreamingCrosslator sa(cfg), sb(cfg);
    for (std::size_t i = 0; i < 2000; ++i) {
        sa.push_sample(a.samples[i]);
        sb.push_sample(b.samples[i]);
    }
    CHECK(sa.snapshot().interferogram.values == sb.snapshot().interferogram.values);
    sa.push_sample(a.samples[2000]);
    sb.push_sample(b.samples[2000]);
    CHECK(sa.samples_pushed() == 2001);
}

TEST_CASE("reset clears the averages but keeps the delay line", "[streaming]") {
    const Waveform w = synth_gaussian(GaussianShape{0.2, 1.0}, 4000, 1.0, 15);
    StreamingCrosslator sc({32, 16, StreamMode::future_in_the_past, Averaging::fixed, 1.0, 1.0});
    for (double v : w.samples) sc.push_sample(v);
    REQUIRE(sc.event_count() > 0);
    sc.reset();
    CHECK(sc.event_count() == 0);
    CHECK(sc.snapshot().interferogram.values.empty());
    CHECK(sc.samples_pushed() == w.size());
}

TEST_CASE("stream configuration is validated", "[streaming]") {
    CHECK_THROWS_AS(StreamingCrosslator({1, 0, StreamMode::future_in_the_past, Averaging::fixed, 1.0, 1.0}),
                    InvalidArgument);
    CHECK_THROWS_AS(StreamingCrosslator({16, 16, StreamMode::future_in_the_past, Averaging::fixed, 1.0, 1.0}),
                    InvalidArgument);
    CHECK_THROWS_AS(StreamingCrosslator({16, 4, StreamMode::past_only, Averaging::fixed, 1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(StreamingCrosslator({16, 0, StreamMode::future_in_the_past, Averaging::recursive, 0.0, 1.0}),
                    InvalidArgument);
    CHECK_THROWS_AS(StreamingCrosslator({16, 0, StreamMode::future_in_the_past, Averaging::fixed, 1.0, -1.0}),
                    InvalidArgument);
    StreamingCrosslator ok({256, 0, StreamMode::future_in_the_past, Averaging::fixed, 1.0, 1.0});
    CHECK(ok.detector_position() == 128);
}
