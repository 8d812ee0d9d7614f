#include <cmath>
#include <limits>
#include <set>
#include <string>

#include <json.hpp>

#include "cli.hpp"
#include "zxi/errors.hpp"

namespace zxi::cli {

namespace {

using nlohmann::json;

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw InvalidArgument(where + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw InvalidArgument(where + ": unknown key '" + key + "'");
}

double number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        throw InvalidArgument("'" + key + "' must be a number");
    }
    if (!v.is_number()) throw InvalidArgument("'" + key + "' must be a number");
    return v.get<double>();
}

double required(const json& j, const std::string& key) {
    if (!j.contains(key)) throw InvalidArgument("missing required key '" + key + "'");
    return number(j, key, 0.0);
}

SpectrumModel parse_spectrum(const json& j) {
    if (!j.is_object() || !j.contains("family")) throw InvalidArgument("spectrum: needs a 'family'");
    const auto family = j.at("family").get<std::string>();
    const double var = number(j, "variance", 1.0);
    SpectrumModel m;
    if (family == "bandlimited") {
        only_keys(j, {"family", "W", "variance"}, "spectrum");
        m = BandLimited{required(j, "W"), var};
    } else if (family == "gaussian") {
        only_keys(j, {"family", "B", "variance"}, "spectrum");
        m = GaussianShape{required(j, "B"), var};
    } else if (family == "butterworth") {
        only_keys(j, {"family", "kappa", "W", "variance"}, "spectrum");
        m = Butterworth{required(j, "kappa"), required(j, "W"), var};
    } else if (family == "lorentzian") {
        only_keys(j, {"family", "gamma", "W", "variance"}, "spectrum");
        m = ModifiedLorentzian{required(j, "gamma"), required(j, "W"), var};
    } else if (family == "bandpass") {
        only_keys(j, {"family", "W1", "W2", "variance"}, "spectrum");
        m = BandPass{required(j, "W1"), required(j, "W2"), var};
    } else if (family == "multisine") {
        only_keys(j, {"family", "frequencies", "amplitude"}, "spectrum");
        MultiSine s;
        s.frequencies = j.at("frequencies").get<std::vector<double>>();
        s.amplitude = number(j, "amplitude", 1.0);
        m = s;
    } else if (family == "fm") {
        only_keys(j, {"family", "carrier", "mod_bandwidth", "modulation_index", "amplitude"}, "spectrum");
        m = FMCarrier{required(j, "carrier"), required(j, "mod_bandwidth"), required(j, "modulation_index"),
                      number(j, "amplitude", 1.0)};
    } else {
        throw InvalidArgument("spectrum: unknown family '" + family + "'");
    }
    validate(m);
    return m;
}

}  // namespace

DelaySimConfig parse_delay_sim_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        only_keys(j,
                  {"schema", "spectrum", "T", "dt", "delay", "snr_db", "trials", "estimator", "base_seed",
                   "search_window", "threads", "check"},
                  "config");
        if (!j.contains("schema") || j.at("schema") != 1) throw InvalidArgument("config: 'schema' must be 1");
        DelaySimConfig c;
        ExperimentConfig& e = c.experiment;
        if (!j.contains("spectrum")) throw InvalidArgument("config: missing 'spectrum'");
        e.spectrum = parse_spectrum(j.at("spectrum"));
        e.T = required(j, "T");
        e.dt = required(j, "dt");
        e.delay = number(j, "delay", 0.0);
        e.snr_db = number(j, "snr_db", 20.0);
        e.trials = j.value("trials", std::size_t{100});
        e.estimator = parse_estimator(j.value("estimator", std::string("correlation_env")));
        e.base_seed = j.value("base_seed", std::uint64_t{1});
        e.search_window = number(j, "search_window", 0.0);
        e.threads = j.value("threads", std::size_t{0});
        if (j.contains("check")) {
            const json& k = j.at("check");
            only_keys(k, {"variance_at_least_bound", "bound_tolerance_se", "max_abs_bias", "max_rmse"}, "check");
            c.check.variance_at_least_bound = k.value("variance_at_least_bound", false);
            c.check.bound_tolerance_se = number(k, "bound_tolerance_se", 3.0);
            c.check.max_abs_bias = number(k, "max_abs_bias", -1.0);
            c.check.max_rmse = number(k, "max_rmse", -1.0);
        }
        e.validate();
        return c;
    } catch (const json::exception& ex) {
        throw InvalidArgument(std::string("config: ") + ex.what());
    }
}

}  // namespace zxi::cli
