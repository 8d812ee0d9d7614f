#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "zxi/zxi.hpp"

using namespace zxi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

ExperimentConfig base_config(Estimator est) {
    ExperimentConfig c;
    c.spectrum = GaussianShape{0.2, 1.0};
    c.T = 16383.0;
    c.dt = 1.0;
    c.delay = 3.3;
    c.snr_db = kInf;
    c.trials = 16;
    c.estimator = est;
    c.base_seed = 99;
    return c;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

}  // namespace

TEST_CASE("noiseless trials recover the delay within a quarter sample", "[estimation]") {
    // Crosslation envelopes carry self-noise even without added noise; about 4000 crossings keep it under dt/4.
    for (Estimator est : {Estimator::correlation_env, Estimator::crosslation_env, Estimator::slew_crosslation_env}) {
        ExperimentConfig c = base_config(est);
        c.T = 65535.0;
        const EstimationReport r = run_experiment(c);
        for (const auto& t : r.results) CHECK_THAT(t.delay_hat, WithinAbs(3.3, 0.25));
        CHECK(r.bound == 0.0);
    }
}

TEST_CASE("zero delay is estimated without bias", "[estimation]") {
    ExperimentConfig c = base_config(Estimator::crosslation_env);
    c.delay = 0.0;
    c.snr_db = 10.0;
    c.T = 4095.0;
    c.trials = 200;
    const EstimationReport r = run_experiment(c);
    CHECK(std::abs(r.bias) < 2.0 * std::sqrt(r.variance / r.trials));
}

TEST_CASE("report moments are consistent", "[estimation]") {
    ExperimentConfig c = base_config(Estimator::correlation_env);
    c.snr_db = 5.0;
    c.T = 2047.0;
    c.trials = 50;
    const EstimationReport r = run_experiment(c);
    CHECK_THAT(r.rmse * r.rmse, WithinAbs(r.bias * r.bias + r.variance, 1e-12));
    CHECK(r.trials == 50);
    CHECK(r.results.size() == 50);
    CHECK(r.variance_stderr > 0.0);
    CHECK(r.variance + 3.0 * r.variance_stderr >= r.cr_bound.var_correlation);
}

TEST_CASE("experiments are reproducible across thread counts", "[estimation]") {
    ExperimentConfig c = base_config(Estimator::slew_crosslation_env);
    c.snr_db = 10.0;
    c.T = 2047.0;
    c.trials = 12;
    c.threads = 1;
    const EstimationReport a = run_experiment(c);
    c.threads = 3;
    const EstimationReport b = run_experiment(c);
    REQUIRE(a.results.size() == b.results.size());
    for (std::size_t i = 0; i < a.results.size(); ++i) CHECK(a.results[i].delay_hat == b.results[i].delay_hat);
    CHECK(a.variance == b.variance);
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 5) == trial_seed(1, 5));
}

TEST_CASE("integer shift of the received channel shifts the estimate", "[estimation]") {
    const Waveform ref = synth_gaussian(GaussianShape{0.2, 1.0}, 4096, 1.0, 5);
    const Waveform recv = delay_and_corrupt(ref, 2.4, 15.0, 6);
    for (Estimator est : {Estimator::correlation_env, Estimator::crosslation_env, Estimator::slew_crosslation_env}) {
        Waveform moved = recv;
        std::rotate(moved.samples.rbegin(), moved.samples.rbegin() + 3, moved.samples.rend());
        const double a = estimate_delay(ref, recv, est, 20.0).delay_hat;
        const double b = estimate_delay(ref, moved, est, 20.0).delay_hat;
        CHECK_THAT(b - a, WithinAbs(3.0, 1e-9));

        Waveform louder = recv;
        for (auto& v : louder.samples) v *= 3.7;
        CHECK_THAT(estimate_delay(ref, louder, est, 20.0).delay_hat, WithinAbs(a, 1e-9));
    }
}

TEST_CASE("correlation variance falls as the inverse SNR", "[estimation]") {
    std::vector<double> snr, var;
    for (double db : {-6.0, -3.0, 0.0, 3.0, 6.0}) {
        ExperimentConfig c = base_config(Estimator::correlation_env);
        c.delay = 3.0;
        c.T = 4095.0;
        c.snr_db = db;
        c.trials = 300;
        snr.push_back(std::pow(10.0, db / 10.0));
        var.push_back(run_experiment(c).variance);
    }
    CHECK_THAT(log_log_slope(snr, var), WithinAbs(-1.0, 0.1));
}

TEST_CASE("fm envelope width scales with the occupied bandwidth", "[estimation]") {
    // Desk-scale stand-in for a 1.4 carrier with 0.45 of occupied bandwidth.
    const FMCarrier m{1.4, 0.02, 9.5, 1.0};
    const double dt = 0.1;
    const Waveform w = synth_fm_carrier(m, 1 << 16, dt, 8);
    const Interferogram env = delay_envelope(w, w, Estimator::crosslation_env, 100);
    const std::size_t peak = static_cast<std::size_t>(
        std::max_element(env.values.begin(), env.values.end()) - env.values.begin());
    CHECK(peak == 100);
    const double product = half_power_width(env.values, dt, peak) * fm_occupied_bandwidth(m);
    CHECK_THAT(product, WithinRel(0.86, 0.30));
}

TEST_CASE("peak helpers", "[estimation]") {
    // y = 1 - (x - 0.3)^2 sampled at -1, 0, 1.
    auto y = [](double x) { return 1.0 - (x - 0.3) * (x - 0.3); };
    CHECK_THAT(parabolic_offset(y(-1.0), y(0.0), y(1.0)), WithinAbs(0.3, 1e-14));
    CHECK(parabolic_offset(1.0, 1.0, 1.0) == 0.0);

    const double dt = 0.01, a = 2.0;
    std::vector<double> env(2001);
    for (std::size_t i = 0; i < env.size(); ++i) {
        const double t = (static_cast<double>(i) - 1000.0) * dt;
        env[i] = std::exp(-a * t * t);
    }
    CHECK_THAT(empirical_woodward_constant(env, dt, 1000), WithinRel(std::sqrt(kPi / (2.0 * a)), 1e-9));
    CHECK_THAT(half_power_width(env, dt, 1000), WithinRel(2.0 * std::sqrt(std::log(2.0) / (2.0 * a)), 1e-4));
    CHECK_THROWS_AS(empirical_woodward_constant(env, dt, 5000), InvalidArgument);
}

TEST_CASE("resolution sweep tabulates closed form and quadrature", "[estimation]") {
    const auto rows = resolution_sweep(GainFamily::butterworth, {1.5, 2.0, 4.0});
    REQUIRE(rows.size() == 3);
    CHECK_THAT(rows[0].gain, WithinRel(4.0 * kPi / (3.0 * std::sqrt(3.0)), 1e-12));
    for (const auto& r : rows) {
        CHECK_THAT(r.quadrature_gain, WithinRel(r.gain, 1e-6));
        CHECK(std::isnan(r.empirical_gain));
    }
    std::vector<double> grid;
    for (double g = 1.5; g <= 100.0; g *= 1.25) grid.push_back(g);
    grid.push_back(5.0);
    const auto lz = resolution_sweep(GainFamily::lorentzian, grid);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) CHECK(lz[i].gain > lz[i - 1].gain);
    CHECK_THAT(lz.back().gain, WithinAbs(2.7, 0.05));
}

TEST_CASE("simulated gain follows the analytic gain", "[estimation]") {
    const auto rows = resolution_sweep(GainFamily::butterworth, {2.0}, {0}, 3);
    REQUIRE(!std::isnan(rows[0].empirical_gain));
    CHECK_THAT(rows[0].empirical_gain, WithinRel(rows[0].gain, 0.15));
}

TEST_CASE("empirical Woodward constant of bandlimited noise", "[estimation]") {
    const double W = 0.5;
    const EmpiricalWoodward e = empirical_woodward(BandLimited{W, 1.0}, 1 << 15, 1.0, 8, 21, 400);
    CHECK_THAT(e.correlation, WithinRel(2.0 * kPi / W, 0.10));
    CHECK_THAT(e.crosslation, WithinRel(8.0 * kPi / (3.0 * W), 0.10));
}

TEST_CASE("experiment configuration is validated", "[estimation]") {
    ExperimentConfig c = base_config(Estimator::correlation_env);
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = base_config(Estimator::correlation_env);
    c.delay = c.T / 4.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = base_config(Estimator::correlation_env);
    c.snr_db = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    CHECK_THROWS_AS(parse_estimator("matched"), InvalidArgument);
    CHECK(parse_estimator(estimator_name(Estimator::slew_crosslation_env)) == Estimator::slew_crosslation_env);

    const Waveform flat(std::vector<double>(256, 1.0), 1.0);
    CHECK_THROWS_AS(estimate_delay(flat, flat, Estimator::crosslation_env, 10.0), InvalidArgument);
}
