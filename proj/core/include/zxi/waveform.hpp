#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace zxi {

// Half-open sample range [begin, end) whose values downstream statistics may use.
struct TrustRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool contains(std::size_t i) const { return i >= begin && i < end; }
    std::size_t size() const { return end > begin ? end - begin : 0; }
};

TrustRange intersect(const TrustRange& a, const TrustRange& b);

struct Waveform {
    std::vector<double> samples;
    double dt = 1.0;
    std::string label;
    TrustRange trusted;

    Waveform() = default;
    Waveform(std::vector<double> s, double dt_, std::string label_ = {});

    std::size_t size() const { return samples.size(); }
    double duration() const;
    double time(std::size_t i) const { return static_cast<double>(i) * dt; }
    double operator[](std::size_t i) const { return samples[i]; }

    // Throws InvalidArgument if empty, dt not finite and positive, or trust range out of bounds.
    void validate() const;
};

// Linear interpolation at fractional sample position p; p must lie in [0, size-1].
double sample_at(const Waveform& w, double p);

double mean(const Waveform& w);
// Mean square about the mean.
double variance(const Waveform& w);

// In-phase x = H{y} and quadrature y.
struct AnalyticPair {
    Waveform x;
    Waveform y;
};

}  // namespace zxi
