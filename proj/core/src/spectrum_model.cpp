#include "zxi/spectrum_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "zxi/errors.hpp"

namespace zxi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* msg) {
    if (!ok) throw InvalidArgument(msg);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string family_name(const SpectrumModel& m) {
    return std::visit(overloaded{
                          [](const BandLimited&) { return std::string("bandlimited"); },
                          [](const GaussianShape&) { return std::string("gaussian"); },
                          [](const Butterworth&) { return std::string("butterworth"); },
                          [](const ModifiedLorentzian&) { return std::string("lorentzian"); },
                          [](const BandPass&) { return std::string("bandpass"); },
                          [](const MultiSine&) { return std::string("multisine"); },
                          [](const FMCarrier&) { return std::string("fm"); },
                      },
                      m);
}

void validate(const SpectrumModel& m) {
    std::visit(overloaded{
                   [](const BandLimited& s) {
                       require(positive(s.W), "bandlimited: W must be positive");
                       require(positive(s.variance), "bandlimited: variance must be positive");
                   },
                   [](const GaussianShape& s) {
                       require(positive(s.B), "gaussian: B must be positive");
                       require(positive(s.variance), "gaussian: variance must be positive");
                   },
                   [](const Butterworth& s) {
                       require(std::isfinite(s.kappa) && s.kappa >= 1.0, "butterworth: kappa must be >= 1");
                       require(positive(s.W), "butterworth: W must be positive");
                       require(positive(s.variance), "butterworth: variance must be positive");
                   },
                   [](const ModifiedLorentzian& s) {
                       require(std::isfinite(s.gamma) && s.gamma > 1.0, "lorentzian: gamma must be > 1");
                       require(positive(s.W), "lorentzian: W must be positive");
                       require(positive(s.variance), "lorentzian: variance must be positive");
                   },
                   [](const BandPass& s) {
                       require(std::isfinite(s.W1) && s.W1 >= 0.0, "bandpass: W1 must be >= 0");
                       require(positive(s.W2) && s.W2 > s.W1, "bandpass: W2 must exceed W1");
                       require(positive(s.variance), "bandpass: variance must be positive");
                   },
                   [](const MultiSine& s) {
                       require(!s.frequencies.empty(), "multisine: at least one frequency required");
                       for (double f : s.frequencies) require(positive(f), "multisine: frequencies must be positive");
                       require(positive(s.amplitude), "multisine: amplitude must be positive");
                   },
                   [](const FMCarrier& s) {
                       require(positive(s.carrier), "fm: carrier must be positive");
                       require(positive(s.mod_bandwidth), "fm: modulation bandwidth must be positive");
                       require(std::isfinite(s.modulation_index) && s.modulation_index >= 0.0,
                               "fm: modulation index must be >= 0");
                       require(positive(s.amplitude), "fm: amplitude must be positive");
                   },
               },
               m);
}

bool is_random_gaussian(const SpectrumModel& m) {
    return !std::holds_alternative<MultiSine>(m) && !std::holds_alternative<FMCarrier>(m);
}

double density(const SpectrumModel& m, double w) {
    const double a = std::abs(w);
    return std::visit(overloaded{
                          [a](const BandLimited& s) { return a <= s.W ? s.variance * kPi / s.W : 0.0; },
                          [a](const GaussianShape& s) {
                              const double u = a / s.B;
                              return s.variance * std::sqrt(2.0 * kPi) / s.B * std::exp(-0.5 * u * u);
                          },
                          [a](const Butterworth& s) {
                              const double c = 2.0 * s.variance * s.kappa * std::sin(kPi / (2.0 * s.kappa)) / s.W;
                              return c / (1.0 + std::pow(a / s.W, 2.0 * s.kappa));
                          },
                          [a](const ModifiedLorentzian& s) {
                              const double u = a / s.W;
                              const double v = a / (s.W * s.gamma);
                              return 2.0 * s.variance * (1.0 + s.gamma) / (s.W * s.gamma * (1.0 + u * u) * (1.0 + v * v));
                          },
                          [a](const BandPass& s) {
                              return (a > s.W1 && a <= s.W2) ? s.variance * kPi / (s.W2 - s.W1) : 0.0;
                          },
                          [](const MultiSine&) -> double {
                              throw InvalidArgument("multisine has a line spectrum, not a density");
                          },
                          [](const FMCarrier&) -> double {
                              throw InvalidArgument("fm carrier has no closed-form density");
                          },
                      },
                      m);
}

double support_upper(const SpectrumModel& m) {
    if (auto* s = std::get_if<BandLimited>(&m)) return s->W;
    if (auto* s = std::get_if<BandPass>(&m)) return s->W2;
    return kInf;
}

double support_lower(const SpectrumModel& m) {
    if (auto* s = std::get_if<BandPass>(&m)) return s->W1;
    return 0.0;
}

double process_variance(const SpectrumModel& m) {
    return std::visit(overloaded{
                          [](const MultiSine& s) {
                              return 0.5 * s.amplitude * s.amplitude * static_cast<double>(s.frequencies.size());
                          },
                          [](const FMCarrier& s) { return 0.5 * s.amplitude * s.amplitude; },
                          [](const auto& s) { return s.variance; },
                      },
                      m);
}

double rms_bandwidth(const SpectrumModel& m) {
    return std::visit(overloaded{
                          [](const BandLimited& s) { return s.W / std::sqrt(3.0); },
                          [](const GaussianShape& s) { return s.B; },
                          [](const Butterworth& s) {
                              if (s.kappa <= 1.5) return kInf;
                              return s.W * std::sqrt(std::sin(kPi / (2.0 * s.kappa)) / std::sin(3.0 * kPi / (2.0 * s.kappa)));
                          },
                          [](const ModifiedLorentzian& s) { return s.W * std::sqrt(s.gamma); },
                          [](const BandPass& s) {
                              return std::sqrt((s.W2 * s.W2 * s.W2 - s.W1 * s.W1 * s.W1) / (3.0 * (s.W2 - s.W1)));
                          },
                          [](const MultiSine& s) {
                              double acc = 0.0;
                              for (double f : s.frequencies) acc += (2.0 * kPi * f) * (2.0 * kPi * f);
                              return std::sqrt(acc / static_cast<double>(s.frequencies.size()));
                          },
                          [](const FMCarrier& s) {
                              const double w0 = 2.0 * kPi * s.carrier;
                              const double dw = 2.0 * kPi * fm_deviation(s);
                              return std::sqrt(w0 * w0 + dw * dw);
                          },
                      },
                      m);
}

double fm_deviation(const FMCarrier& m) { return m.modulation_index * m.mod_bandwidth; }

double fm_occupied_bandwidth(const FMCarrier& m) {
    return 2.0 * std::sqrt(2.0 * std::log(2.0)) * fm_deviation(m);
}

}  // namespace zxi
