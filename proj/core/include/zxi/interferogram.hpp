#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace zxi {

enum class Variant {
    crosslation,
    up_only,
    down_only,
    autoference,
    weighted_autoference,
    slew_crosslation,
    slew_autoference,
    local_structure,
    crossjectory_variance
};

std::string variant_name(Variant v);

// Integer lag indices [first, last]; lag k means tau = k dt.
struct LagWindow {
    int first = 0;
    int last = 0;

    static LagWindow symmetric(int half) { return {-half, half}; }
    std::size_t size() const { return static_cast<std::size_t>(last - first + 1); }
    bool is_symmetric() const { return first == -last; }
};

// Half-width in samples for a half-window in seconds.
int half_window_lags(double half_window, double dt);

struct Interferogram {
    LagWindow window;
    double dt = 1.0;
    std::vector<double> values;
    std::vector<double> std_error;  // per-lag Monte-Carlo standard error; +inf if n_used < 2
    std::size_t n_used = 0;
    Variant variant = Variant::crosslation;

    std::size_t size() const { return values.size(); }
    int lag_index(std::size_t i) const { return window.first + static_cast<int>(i); }
    double tau(std::size_t i) const { return lag_index(i) * dt; }
    // Position of lag 0, or size() when the window does not contain it.
    std::size_t zero_index() const;
    double at_lag(int k) const { return values.at(static_cast<std::size_t>(k - window.first)); }
};

struct ComplexCrosslation {
    Interferogram A;  // even part
    Interferogram C;  // odd part
    std::vector<double> envelope;

    struct Point {
        double A;
        double C;
    };
    std::vector<Point> nyquist() const;
};

}  // namespace zxi
