#include "zxi/interferogram.hpp"

#include <cmath>

#include "zxi/errors.hpp"

namespace zxi {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::crosslation: return "crosslation";
        case Variant::up_only: return "up_only";
        case Variant::down_only: return "down_only";
        case Variant::autoference: return "autoference";
        case Variant::weighted_autoference: return "weighted_autoference";
        case Variant::slew_crosslation: return "slew_crosslation";
        case Variant::slew_autoference: return "slew_autoference";
        case Variant::local_structure: return "local_structure";
        case Variant::crossjectory_variance: return "crossjectory_variance";
    }
    return "unknown";
}

int half_window_lags(double half_window, double dt) {
    if (!std::isfinite(half_window) || half_window < 0.0) throw InvalidArgument("half window must be non-negative");
    if (!std::isfinite(dt) || dt <= 0.0) throw InvalidArgument("dt must be positive");
    return static_cast<int>(std::floor(half_window / dt + 1e-9));
}

std::size_t Interferogram::zero_index() const {
    if (window.first > 0 || window.last < 0) return values.size();
    return static_cast<std::size_t>(-window.first);
}

std::vector<ComplexCrosslation::Point> ComplexCrosslation::nyquist() const {
    std::vector<Point> p(A.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = {A.values[i], C.values[i]};
    return p;
}

}  // namespace zxi
