#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zxi/waveform.hpp"

namespace zxi {

enum class Direction : std::uint8_t { up = 0, down = 1 };

struct CrossingEvent {
    double t = 0.0;        // seconds from sample 0
    Direction psi = Direction::up;
    double slope = 0.0;    // (x[k+1] - x[k]) / dt
    std::size_t index = 0; // k of the bracketing pair (k, k+1)

    // (-1)^psi
    double sign() const { return psi == Direction::up ? 1.0 : -1.0; }
};

struct CrossingSet {
    std::vector<CrossingEvent> events;
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    double T = 0.0;
    double dt = 1.0;

    std::size_t count() const { return events.size(); }
    bool empty() const { return events.empty(); }
    double rate() const { return T > 0.0 ? static_cast<double>(events.size()) / T : 0.0; }
};

enum class CrossingTiming {
    interpolated, // linear inverse interpolation between the bracketing samples
    midpoint      // (k + 1/2) dt, the two-tap detector convention
};

struct DetectOptions {
    CrossingTiming timing = CrossingTiming::interpolated;
    // Absolute Schmitt-trigger threshold; 0 disables.
    double hysteresis = 0.0;
};

// Does not demean. A sample exactly 0 takes the sign of the following sample.
CrossingSet detect_crossings(const Waveform& w, const DetectOptions& opts = {});

// Two-sample slope at the event's bracketing pair. Throws if the pair is outside w.trusted.
double slope_at(const Waveform& w, const CrossingEvent& e);

struct SignImpulse {
    double t = 0.0;
    double polarity = 1.0;
};

// The bipolar impulse train d(t): weight (-1)^psi at each crossing.
std::vector<SignImpulse> sign_train(const Waveform& w, const DetectOptions& opts = {});

// Recomputes n_plus and n_minus from the event list.
void recount(CrossingSet& cs);

}  // namespace zxi
