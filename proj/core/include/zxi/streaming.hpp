#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zxi/interferogram.hpp"
#include "zxi/zero_crossing.hpp"

namespace zxi {

enum class StreamMode {
    past_only,           // detector at the newest tap pair; only tau < 0 observed
    future_in_the_past   // detector further down the line; taps ahead of it hold tau > 0
};

enum class Averaging {
    fixed,     // cumulative mean since the last reset
    recursive  // exponentially forgetting normalized mean, S <- lambda S + v, N <- lambda N + 1
};

struct StreamConfig {
    std::size_t m = 256;
    // Detector pair (q_j, q_{j+1}), 1-based. 0 picks the mode default:
    // past_only -> 1, future_in_the_past -> m/2.
    std::size_t j = 0;
    StreamMode mode = StreamMode::future_in_the_past;
    Averaging averaging = Averaging::fixed;
    double lambda = 1.0;  // forgetting factor in (0, 1]
    double dt = 1.0;
};

struct StreamEvent {
    std::size_t sample_index = 0;  // chronological index of the crossing's later sample
    double t = 0.0;                // midpoint time
    Direction psi = Direction::up;
};

struct StreamReport {
    Interferogram interferogram;
    std::size_t events_processed = 0;
    StreamMode mode = StreamMode::future_in_the_past;
};

// m-tap delay line with a two-tap zero-crossing detector and a bank of m polarity-switched
// averagers. Tap q_k holds the sample pushed k-1 steps ago.
class StreamingCrosslator {
public:
    explicit StreamingCrosslator(const StreamConfig& cfg);

    std::optional<StreamEvent> push_sample(double value);
    StreamReport snapshot() const;
    // Clears the averagers; the delay line keeps its contents.
    void reset();

    const StreamConfig& config() const { return cfg_; }
    std::size_t detector_position() const { return j_; }
    std::size_t samples_pushed() const { return pushed_; }
    std::size_t event_count() const { return events_; }
    // Lag window of snapshots, relative to the midpoint of the detector pair, on the integer grid.
    LagWindow lag_window() const;

private:
    double tap(std::size_t k) const;  // q_k, 1-based

    StreamConfig cfg_;
    std::size_t j_ = 1;
    std::vector<double> ring_;
    std::size_t head_ = 0;
    std::size_t pushed_ = 0;
    std::size_t events_ = 0;
    std::vector<double> sum_;      // per tap
    std::vector<double> sum_sq_;   // per tap
    std::vector<double> sum_cross_; // q_k q_{k+1}, for standard errors of interpolated lags
    double weight_ = 0.0;
    double weight_sq_ = 0.0;
};

}  // namespace zxi
