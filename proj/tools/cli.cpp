#include "cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zxi/zxi.hpp"

namespace zxi::cli {

namespace {

// Model parameters shared by every command that needs a spectrum.
struct ModelFlags {
    std::string family = "gaussian";
    double W = 1.0, B = 1.0, kappa = 2.0, gamma = 5.0, W1 = 0.5, W2 = 1.0, variance = 1.0;
    std::vector<double> frequencies;
    double amplitude = 1.0, carrier = 0.0, mod_bandwidth = 0.0, index = 0.0;

    void add(CLI::App* app) {
        app->add_option("--model", family, "bandlimited|gaussian|butterworth|lorentzian|bandpass|multisine|fm")
            ->capture_default_str();
        app->add_option("--W", W, "cutoff (rad/s)")->capture_default_str();
        app->add_option("--B", B, "rms bandwidth of the gaussian family (rad/s)")->capture_default_str();
        app->add_option("--kappa", kappa, "Butterworth order")->capture_default_str();
        app->add_option("--gamma", gamma, "Lorentzian bandwidth ratio")->capture_default_str();
        app->add_option("--W1", W1, "bandpass lower edge (rad/s)")->capture_default_str();
        app->add_option("--W2", W2, "bandpass upper edge (rad/s)")->capture_default_str();
        app->add_option("--variance", variance, "process variance")->capture_default_str();
        app->add_option("--frequencies", frequencies, "multisine frequencies (Hz)")->delimiter(',');
        app->add_option("--amplitude", amplitude, "multisine or fm amplitude")->capture_default_str();
        app->add_option("--carrier", carrier, "fm carrier (Hz)");
        app->add_option("--mod-bandwidth", mod_bandwidth, "fm modulating bandwidth (Hz)");
        app->add_option("--index", index, "fm modulation index");
    }

    SpectrumModel build() const {
        SpectrumModel m;
        if (family == "bandlimited") m = BandLimited{W, variance};
        else if (family == "gaussian") m = GaussianShape{B, variance};
        else if (family == "butterworth") m = Butterworth{kappa, W, variance};
        else if (family == "lorentzian") m = ModifiedLorentzian{gamma, W, variance};
        else if (family == "bandpass") m = BandPass{W1, W2, variance};
        else if (family == "multisine") m = MultiSine{frequencies, amplitude};
        else if (family == "fm") m = FMCarrier{carrier, mod_bandwidth, index, amplitude};
        else throw InvalidArgument("unknown model family '" + family + "'");
        validate(m);
        return m;
    }
};

// key=value summary line builder.
class Summary {
public:
    explicit Summary(const std::string& cmd) { os_ << "cmd=" << cmd; }
    Summary& add(const std::string& k, double v) {
        os_ << ' ' << k << '=' << format_g9(v);
        return *this;
    }
    Summary& add(const std::string& k, std::size_t v) {
        os_ << ' ' << k << '=' << v;
        return *this;
    }
    Summary& add(const std::string& k, const std::string& v) {
        os_ << ' ' << k << '=' << v;
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

CrossingTiming parse_timing(const std::string& s) {
    if (s == "interpolated") return CrossingTiming::interpolated;
    if (s == "midpoint") return CrossingTiming::midpoint;
    throw InvalidArgument("unknown timing '" + s + "'");
}

struct DetectFlags {
    std::string timing = "interpolated";
    double hysteresis = 0.0;
    void add(CLI::App* app) {
        app->add_option("--timing", timing, "interpolated|midpoint")->capture_default_str();
        app->add_option("--hysteresis", hysteresis, "Schmitt threshold (volts)")->capture_default_str();
    }
    DetectOptions build() const { return {parse_timing(timing), hysteresis}; }
};

// Default half window: ten rms-bandwidth periods estimated from the crossing rate, capped by the record.
LagWindow choose_window(const Waveform& w, const CrossingSet& cs, double half_window) {
    const double reach_cap = 0.25 * w.duration() * 0.999;
    double h = half_window;
    if (h <= 0.0) {
        if (cs.empty()) throw InvalidArgument("no zero crossings in input");
        h = std::min(10.0 / (std::numbers::pi * cs.rate()), reach_cap);
    }
    const int lags = half_window_lags(h, w.dt);
    if (lags < 1) throw InvalidArgument("half window shorter than one sample");
    return LagWindow::symmetric(lags);
}

template <class F>
void write_or_stdout(const std::string& path, std::ostream& out, F body) {
    if (path.empty() || path == "-") body(out);
    else write_atomic(path, body);
}

std::vector<double> parse_grid(const std::string& s) {
    double lo = 0.0, hi = 0.0;
    std::size_t n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || !(hi >= lo))
        throw InvalidArgument("grid must be lo:hi:count with lo <= hi");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return g;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool read_sample(std::istream& in, double& v) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) {
        if (in.gcount() != 0) throw InvalidArgument("stdin ended inside a sample");
        return false;
    }
    std::uint64_t u = 0;
    for (int i = 7; i >= 0; --i) u = (u << 8) | b[i];
    v = std::bit_cast<double>(u);
    return true;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"zxi: zero-crossing waveform interferometry", "zxi"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    // synth
    auto* synth = app.add_subcommand("synth", "Synthesize a waveform (raw f64 + .json sidecar)");
    ModelFlags synth_model;
    synth_model.add(synth);
    std::size_t synth_n = 65536;
    double synth_dt = 0.1;
    std::uint64_t synth_seed = 1;
    std::string synth_out, synth_csv;
    synth->add_option("-n,--samples", synth_n, "sample count")->capture_default_str();
    synth->add_option("--dt", synth_dt, "sampling interval (s)")->capture_default_str();
    synth->add_option("--seed", synth_seed, "RNG seed")->capture_default_str();
    synth->add_option("-o,--output", synth_out, "output waveform path")->required();
    synth->add_option("--csv", synth_csv, "also write t,value CSV");

    // crossings
    auto* crossings = app.add_subcommand("crossings", "Detect zero crossings (CSV t,psi,slope)");
    std::string cr_in, cr_out;
    DetectFlags cr_detect;
    crossings->add_option("-i,--input", cr_in, "input waveform")->required();
    crossings->add_option("-o,--output", cr_out, "CSV output ('-' for stdout)");
    cr_detect.add(crossings);

    // crosslate
    auto* crosslate = app.add_subcommand("crosslate", "Empirical crosslation and related interferograms");
    std::string cl_in, cl_out, cl_variant = "crosslation";
    double cl_half = 0.0, cl_band_low = 0.0, cl_band_high = 0.0, cl_band_ratio = 2.0;
    DetectFlags cl_detect;
    crosslate->add_option("-i,--input", cl_in, "input waveform")->required();
    crosslate->add_option("-o,--output", cl_out, "CSV output tau,value,stderr");
    crosslate->add_option("--half-window", cl_half, "half lag window (s); 0 picks ten rms periods");
    crosslate
        ->add_option("--variant", cl_variant, "crosslation|up|down|slew|local|variance|filterbank")
        ->capture_default_str();
    crosslate->add_option("--band-low", cl_band_low, "filterbank lowest edge (rad/s)");
    crosslate->add_option("--band-high", cl_band_high, "filterbank highest edge (rad/s)");
    crosslate->add_option("--band-ratio", cl_band_ratio, "filterbank band edge ratio")->capture_default_str();
    cl_detect.add(crosslate);

    // autoference
    auto* autof = app.add_subcommand("autoference", "Autoference of a waveform against its quadrature");
    std::string af_in, af_out, af_weighting = "sign", af_route = "direct";
    double af_half = 0.0;
    std::size_t af_pad = 8;
    autof->add_option("-i,--input", af_in, "input waveform")->required();
    autof->add_option("-o,--output", af_out, "CSV output tau,value,stderr");
    autof->add_option("--half-window", af_half, "half lag window (s); 0 picks ten rms periods");
    autof->add_option("--weighting", af_weighting, "sign|slew")->capture_default_str();
    autof->add_option("--route", af_route, "direct|hilbert")->capture_default_str();
    autof->add_option("--pad", af_pad, "zero-pad factor of the hilbert route")->capture_default_str();

    // envelope
    auto* envelope = app.add_subcommand("envelope", "Complex crosslation A + jC and its envelope");
    std::string env_in, env_out, env_nyquist;
    double env_half = 0.0;
    envelope->add_option("-i,--input", env_in, "input waveform")->required();
    envelope->add_option("-o,--output", env_out, "CSV output tau,A,C,envelope");
    envelope->add_option("--nyquist", env_nyquist, "also write the A,C trajectory");
    envelope->add_option("--half-window", env_half, "half lag window (s); 0 picks ten rms periods");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "Power spectral density from the crosslation");
    std::string sp_in, sp_out;
    double sp_half = 0.0;
    std::size_t sp_nfreq = 0;
    spectrum->add_option("-i,--input", sp_in, "input waveform")->required();
    spectrum->add_option("-o,--output", sp_out, "CSV output omega,density");
    spectrum->add_option("--half-window", sp_half, "half lag window (s); 0 picks ten rms periods");
    spectrum->add_option("--n-freq", sp_nfreq, "frequency count; 0 = twice the half window lags");

    // resolution
    auto* resolution = app.add_subcommand("resolution", "Woodward constants and resolution gain");
    ModelFlags res_model;
    res_model.family = "butterworth";
    res_model.add(resolution);
    std::string res_grid, res_out;
    std::vector<std::size_t> res_simulate;
    std::uint64_t res_seed = 1;
    bool res_quadrature = false;
    resolution->add_option("--grid", res_grid, "lo:hi:count sweep of kappa or gamma (writes CSV)");
    resolution->add_option("--simulate", res_simulate, "grid indices to also simulate")->delimiter(',');
    resolution->add_option("--seed", res_seed, "seed of simulated points")->capture_default_str();
    resolution->add_option("-o,--output", res_out, "CSV output of a sweep");
    resolution->add_flag("--quadrature", res_quadrature, "evaluate by numerical integration");

    // dof
    auto* dof = app.add_subcommand("dof", "Degrees of freedom and crossing count of a record");
    ModelFlags dof_model;
    dof_model.family = "lorentzian";
    dof_model.add(dof);
    double dof_T = 1000.0;
    bool dof_gamma_star = false;
    dof->add_option("--T", dof_T, "record duration (s)")->capture_default_str();
    dof->add_flag("--gamma-star", dof_gamma_star, "report the Lorentzian ratio where the two counts agree");

    // stream
    auto* stream = app.add_subcommand("stream", "Streaming crosslator over raw little-endian f64 on stdin");
    StreamConfig st_cfg;
    std::string st_mode = "future_in_the_past", st_avg = "fixed", st_out;
    std::size_t st_every = 0;
    stream->add_option("--m", st_cfg.m, "taps in the delay line")->capture_default_str();
    stream->add_option("--j", st_cfg.j, "detector tap; 0 = mode default")->capture_default_str();
    stream->add_option("--mode", st_mode, "past_only|future_in_the_past")->capture_default_str();
    stream->add_option("--averaging", st_avg, "fixed|recursive")->capture_default_str();
    stream->add_option("--lambda", st_cfg.lambda, "forgetting factor of recursive averaging")->capture_default_str();
    stream->add_option("--dt", st_cfg.dt, "sampling interval (s)")->capture_default_str();
    stream->add_option("--every", st_every, "emit a frame every this many samples; 0 = final only");
    stream->add_option("-o,--output", st_out, "write frames here instead of stdout");

    // delay-sim
    auto* delay = app.add_subcommand("delay-sim", "Monte-Carlo time-delay estimation from a JSON config");
    std::string ds_config, ds_out;
    bool ds_check = false;
    std::size_t ds_trials = 0, ds_threads = 0;
    delay->add_option("-c,--config", ds_config, "schema-1 JSON config")->required();
    delay->add_option("-o,--output", ds_out, "per-trial CSV report");
    delay->add_flag("--check", ds_check, "exit 1 when the config's check block is violated");
    delay->add_option("--trials", ds_trials, "override the trial count");
    delay->add_option("--threads", ds_threads, "override the worker count");

    // figure
    auto* figure = app.add_subcommand("figure", "Plot data of the pure function figures");
    int fig_id = 0;
    std::string fig_out;
    bool fig_list = false;
    figure->add_option("--id", fig_id, "figure number");
    figure->add_option("-o,--output", fig_out, "CSV output ('-' for stdout)");
    figure->add_flag("--list", fig_list, "list available figure numbers");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadConfig;
    }

    try {
        if (synth->parsed()) {
            const SpectrumModel m = synth_model.build();
            const Waveform w = synthesize(m, synth_n, synth_dt, synth_seed);
            write_waveform(synth_out, w);
            if (!synth_csv.empty()) write_atomic(synth_csv, [&](std::ostream& os) { write_waveform_csv(os, w); });
            out << Summary("synth")
                       .add("family", family_name(m))
                       .add("samples", w.size())
                       .add("dt", w.dt)
                       .add("seed", static_cast<std::size_t>(synth_seed))
                       .add("variance", variance(w))
                       .add("path", synth_out)
                       .str()
                << '\n';
        } else if (crossings->parsed()) {
            const Waveform w = read_waveform(cr_in);
            const CrossingSet cs = detect_crossings(w, cr_detect.build());
            if (!cr_out.empty()) write_or_stdout(cr_out, out, [&](std::ostream& os) { write_crossings_csv(os, cs); });
            std::ostream& sink = cr_out == "-" ? err : out;
            sink << Summary("crossings")
                        .add("n_c", cs.count())
                        .add("n_plus", cs.n_plus)
                        .add("n_minus", cs.n_minus)
                        .add("T", cs.T)
                        .add("rate", cs.rate())
                        .str()
                 << '\n';
        } else if (crosslate->parsed()) {
            const Waveform w = read_waveform(cl_in);
            const DetectOptions opts = cl_detect.build();
            const CrossingSet cs = detect_crossings(w, opts);
            const LagWindow win = choose_window(w, cs, cl_half);
            Interferogram g;
            if (cl_variant == "crosslation") g = empirical_crosslation(w, cs, win);
            else if (cl_variant == "up") g = empirical_up(w, cs, win);
            else if (cl_variant == "down") g = empirical_down(w, cs, win);
            else if (cl_variant == "slew") g = slew_crosslation(w, cs, win);
            else if (cl_variant == "local") g = local_structure(w, cs, win);
            else if (cl_variant == "variance") g = crossjectory_variance(w, cs, win);
            else if (cl_variant == "filterbank") {
                if (!(cl_band_high > cl_band_low)) throw InvalidArgument("filterbank needs --band-low < --band-high");
                g = filterbank_interferogram(w, octave_bands(cl_band_low, cl_band_high, cl_band_ratio), win, opts)
                        .combined;
            } else {
                throw InvalidArgument("unknown variant '" + cl_variant + "'");
            }
            if (!cl_out.empty()) write_or_stdout(cl_out, out, [&](std::ostream& os) { write_interferogram_csv(os, g); });
            const auto peak = std::max_element(g.values.begin(), g.values.end(),
                                               [](double a, double b) { return std::abs(a) < std::abs(b); });
            const std::size_t pi = static_cast<std::size_t>(peak - g.values.begin());
            std::ostream& sink = cl_out == "-" ? err : out;
            sink << Summary("crosslate")
                        .add("variant", variant_name(g.variant))
                        .add("n_c", cs.count())
                        .add("n_used", g.n_used)
                        .add("lags", g.size())
                        .add("peak_tau", g.tau(pi))
                        .add("peak_value", g.values[pi])
                        .str()
                 << '\n';
        } else if (autof->parsed()) {
            const Waveform w = read_waveform(af_in);
            const CrossingSet cs = detect_crossings(w);
            const LagWindow win = choose_window(w, cs, af_half);
            Interferogram g;
            if (af_route == "direct") {
                const AnalyticPair pair = quadrature_pair(w);
                if (af_weighting == "sign") g = empirical_autoference(pair, cs, win);
                else if (af_weighting == "slew") g = slew_autoference(pair, cs, win);
                else throw InvalidArgument("unknown weighting '" + af_weighting + "'");
            } else if (af_route == "hilbert") {
                if (af_weighting == "sign") g = autoference_from_crosslation(empirical_crosslation(w, cs, win), af_pad);
                else if (af_weighting == "slew")
                    g = autoference_from_crosslation(slew_crosslation(w, cs, win), af_pad);
                else throw InvalidArgument("unknown weighting '" + af_weighting + "'");
            } else {
                throw InvalidArgument("unknown route '" + af_route + "'");
            }
            if (!af_out.empty()) write_or_stdout(af_out, out, [&](std::ostream& os) { write_interferogram_csv(os, g); });
            std::ostream& sink = af_out == "-" ? err : out;
            sink << Summary("autoference")
                        .add("route", af_route)
                        .add("weighting", af_weighting)
                        .add("n_used", g.n_used)
                        .add("lags", g.size())
                        .add("A0", g.values[g.zero_index()])
                        .str()
                 << '\n';
        } else if (envelope->parsed()) {
            const Waveform w = read_waveform(env_in);
            const CrossingSet cs = detect_crossings(w);
            const LagWindow win = choose_window(w, cs, env_half);
            const Interferogram C = empirical_crosslation(w, cs, win);
            const Interferogram A = empirical_autoference(quadrature_pair(w), cs, win);
            const ComplexCrosslation cc = complex_crosslation(C, A);
            if (!env_out.empty()) write_or_stdout(env_out, out, [&](std::ostream& os) { write_complex_csv(os, cc); });
            if (!env_nyquist.empty())
                write_or_stdout(env_nyquist, out, [&](std::ostream& os) { write_nyquist_csv(os, cc); });
            const auto peak = std::max_element(cc.envelope.begin(), cc.envelope.end());
            const std::size_t pi = static_cast<std::size_t>(peak - cc.envelope.begin());
            std::ostream& sink = (env_out == "-" || env_nyquist == "-") ? err : out;
            sink << Summary("envelope")
                        .add("n_c", cs.count())
                        .add("lags", cc.envelope.size())
                        .add("peak_tau", cc.C.tau(pi))
                        .add("peak_envelope", *peak)
                        .add("half_power_width", half_power_width(cc.envelope, w.dt, pi))
                        .str()
                 << '\n';
        } else if (spectrum->parsed()) {
            const Waveform w = read_waveform(sp_in);
            const CrossingSet cs = detect_crossings(w);
            const LagWindow win = choose_window(w, cs, sp_half);
            const Interferogram C = empirical_crosslation(w, cs, win);
            const double mu = estimate_mu(w);
            const double n0 = cs.rate();
            const SpectralEstimate s = spectrum_from_crosslation(C, mu, n0, sp_nfreq);
            if (!sp_out.empty()) {
                std::vector<std::vector<double>> rows;
                rows.reserve(s.omega.size());
                for (std::size_t i = 0; i < s.omega.size(); ++i) rows.push_back({s.omega[i], s.density[i]});
                write_or_stdout(sp_out, out,
                                [&](std::ostream& os) { write_table_csv(os, {"omega", "density"}, rows); });
            }
            std::ostream& sink = sp_out == "-" ? err : out;
            sink << Summary("spectrum")
                        .add("mu", mu)
                        .add("n0", n0)
                        .add("points", s.omega.size())
                        .str()
                 << '\n';
        } else if (resolution->parsed()) {
            if (!res_grid.empty()) {
                GainFamily fam;
                if (res_model.family == "butterworth") fam = GainFamily::butterworth;
                else if (res_model.family == "lorentzian") fam = GainFamily::lorentzian;
                else throw InvalidArgument("a sweep needs --model butterworth or lorentzian");
                const auto rows = resolution_sweep(fam, parse_grid(res_grid), res_simulate, res_seed);
                std::vector<std::vector<double>> table;
                for (const auto& r : rows) table.push_back({r.parameter, r.gain, r.quadrature_gain, r.empirical_gain});
                const std::string pname = fam == GainFamily::butterworth ? "kappa" : "gamma";
                write_or_stdout(res_out, out, [&](std::ostream& os) {
                    write_table_csv(os, {pname, "gain", "quadrature_gain", "empirical_gain"}, table);
                });
                std::ostream& sink = (res_out.empty() || res_out == "-") ? err : out;
                sink << Summary("resolution")
                            .add("family", res_model.family)
                            .add("points", rows.size())
                            .add("simulated", res_simulate.size())
                            .str()
                     << '\n';
            } else {
                const SpectrumModel m = res_model.build();
                const ResolutionReport r = res_quadrature ? woodward_constants_quadrature(m) : woodward_constants(m);
                Summary s("resolution");
                s.add("family", family_name(m));
                if (res_model.family == "butterworth") s.add("kappa", res_model.kappa);
                if (res_model.family == "lorentzian") s.add("gamma", res_model.gamma);
                s.add("delta_tau", r.delta_tau).add("delta_tau_c", r.delta_tau_c).add("gain", r.gain);
                s.add("method", method_name(r.method));
                out << s.str() << '\n';
            }
        } else if (dof->parsed()) {
            if (dof_gamma_star) {
                const double g = gamma_star();
                out << Summary("dof").add("gamma_star", g).add("lambda_per_wt", lorentzian_lambda_per_wt(g)).str()
                    << '\n';
            } else {
                const SpectrumModel m = dof_model.build();
                const DofReport d = degrees_of_freedom(m, dof_T);
                out << Summary("dof")
                           .add("family", family_name(m))
                           .add("T", dof_T)
                           .add("lambda", d.lambda)
                           .add("n_c", d.n_c_expected)
                           .add("regime", regime_name(d.regime))
                           .str()
                    << '\n';
            }
        } else if (stream->parsed()) {
            if (st_mode == "past_only") st_cfg.mode = StreamMode::past_only;
            else if (st_mode == "future_in_the_past") st_cfg.mode = StreamMode::future_in_the_past;
            else throw InvalidArgument("unknown mode '" + st_mode + "'");
            if (st_avg == "fixed") st_cfg.averaging = Averaging::fixed;
            else if (st_avg == "recursive") st_cfg.averaging = Averaging::recursive;
            else throw InvalidArgument("unknown averaging '" + st_avg + "'");
            StreamingCrosslator sc(st_cfg);
            std::ostringstream buffered;
            std::ostream& frames = st_out.empty() ? out : static_cast<std::ostream&>(buffered);
            std::size_t n_frames = 0;
            auto emit = [&] {
                if (n_frames > 0) frames << '\n';
                write_interferogram_csv(frames, sc.snapshot().interferogram);
                ++n_frames;
            };
            double v = 0.0;
            while (read_sample(in, v)) {
                if (!std::isfinite(v)) throw InvalidArgument("non-finite sample on stdin");
                sc.push_sample(v);
                if (st_every > 0 && sc.samples_pushed() % st_every == 0) emit();
            }
            if (st_every == 0 || sc.samples_pushed() % st_every != 0) emit();
            if (!st_out.empty()) write_atomic(st_out, [&](std::ostream& os) { os << buffered.str(); });
            std::ostream& sink = st_out.empty() ? err : out;
            sink << Summary("stream")
                        .add("samples", sc.samples_pushed())
                        .add("events", sc.event_count())
                        .add("frames", n_frames)
                        .add("m", sc.config().m)
                        .add("j", sc.detector_position())
                        .str()
                 << '\n';
        } else if (delay->parsed()) {
            DelaySimConfig c = parse_delay_sim_config(read_file(ds_config));
            if (ds_trials > 0) c.experiment.trials = ds_trials;
            if (ds_threads > 0) c.experiment.threads = ds_threads;
            c.experiment.validate();
            const EstimationReport r = run_experiment(c.experiment);
            if (!ds_out.empty()) {
                std::vector<std::vector<double>> rows;
                for (std::size_t i = 0; i < r.results.size(); ++i) {
                    const auto& t = r.results[i];
                    rows.push_back({static_cast<double>(i), t.delay_hat, t.peak_value,
                                    static_cast<double>(t.n_c_used), t.noise_variance});
                }
                write_or_stdout(ds_out, out, [&](std::ostream& os) {
                    write_table_csv(os, {"trial", "delay_hat", "peak_value", "n_c_used", "noise_variance"}, rows);
                });
            }
            std::vector<std::string> violations;
            const CheckSpec& k = c.check;
            if (k.variance_at_least_bound && r.variance + k.bound_tolerance_se * r.variance_stderr < r.bound)
                violations.push_back("variance_below_bound");
            if (k.max_abs_bias >= 0.0 && std::abs(r.bias) > k.max_abs_bias) violations.push_back("bias");
            if (k.max_rmse >= 0.0 && r.rmse > k.max_rmse) violations.push_back("rmse");
            std::string verdict = "skipped";
            if (ds_check) {
                verdict = "pass";
                if (!violations.empty()) {
                    verdict.clear();
                    for (const auto& v : violations) verdict += (verdict.empty() ? "fail:" : ",") + v;
                }
            }
            std::ostream& sink = ds_out == "-" ? err : out;
            sink << Summary("delay-sim")
                        .add("estimator", estimator_name(c.experiment.estimator))
                        .add("trials", r.trials)
                        .add("bias", r.bias)
                        .add("variance", r.variance)
                        .add("rmse", r.rmse)
                        .add("variance_stderr", r.variance_stderr)
                        .add("bound", r.bound)
                        .add("cr_correlation", r.cr_bound.var_correlation)
                        .add("cr_crosslation", r.cr_bound.var_crosslation)
                        .add("lambda", r.lambda)
                        .add("mean_n_c", r.mean_n_c)
                        .add("regime", regime_name(r.cr_bound.regime))
                        .add("check", verdict)
                        .str()
                 << '\n';
            if (ds_check && !violations.empty()) return kCheckFailed;
        } else if (figure->parsed()) {
            if (fig_list) {
                std::string ids;
                for (int id : figure_ids()) ids += (ids.empty() ? "" : ",") + std::to_string(id);
                out << Summary("figure").add("ids", ids).str() << '\n';
                return kOk;
            }
            const FigureTable t = figure_table(fig_id);
            write_or_stdout(fig_out, out, [&](std::ostream& os) { write_table_csv(os, t.header, t.rows); });
            std::ostream& sink = (fig_out.empty() || fig_out == "-") ? err : out;
            Summary s("figure");
            s.add("id", static_cast<std::size_t>(fig_id)).add("rows", t.rows.size());
            sink << s.str() << (t.summary.empty() ? "" : " " + t.summary) << '\n';
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kBadConfig;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kBadConfig;
    }
    return kOk;
}

}  // namespace zxi::cli
