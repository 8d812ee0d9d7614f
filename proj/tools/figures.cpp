#include <cmath>
#include <sstream>

#include "cli.hpp"
#include "zxi/analytic_ref.hpp"
#include "zxi/errors.hpp"
#include "zxi/io.hpp"
#include "zxi/spectrum_model.hpp"

namespace zxi::cli {

namespace {

std::vector<double> grid(double a, double b, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

FigureTable structure_functions() {
    FigureTable t{{"tau", "D_local", "D_global_half"}, {}, ""};
    for (double tau : grid(0.0, 5.0, 201))
        t.rows.push_back({tau, structure_local_gaussian(1.0, 1.0, tau), 0.5 * structure_global_gaussian(1.0, 1.0, tau)});
    t.summary = "B=1 variance=1";
    return t;
}

FigureTable butterworth_densities() {
    const std::vector<double> kappas{1.0, 1.5, 2.0, 4.0, 8.0};
    FigureTable t;
    t.header.push_back("omega");
    for (double k : kappas) t.header.push_back("kappa_" + format_g9(k));
    for (double w : grid(0.0, 3.0, 301)) {
        std::vector<double> row{w};
        for (double k : kappas) row.push_back(density(Butterworth{k, 1.0, 1.0}, w));
        t.rows.push_back(row);
    }
    t.summary = "W=1 variance=1";
    return t;
}

FigureTable butterworth_gains() {
    FigureTable t{{"kappa", "gain"}, {}, ""};
    for (double k : grid(1.05, 4.0, 119)) t.rows.push_back({k, butterworth_gain(k)});
    t.summary = "gain_at_1.5=" + format_g9(butterworth_gain(1.5));
    return t;
}

template <class F>
FigureTable components(F forms, double span, bool normalize) {
    FigureTable t{{"tau", "R", "R_xy", "R_env", "C", "A", "A_env"}, {}, ""};
    const ComponentForms zero = forms(0.0);
    const double rn = normalize ? zero.R_env : 1.0;
    const double an = normalize ? zero.A_env : 1.0;
    for (double tau : grid(-span, span, 401)) {
        const ComponentForms f = forms(tau);
        t.rows.push_back({tau, f.R / rn, f.R_xy / rn, f.R_env / rn, f.C / an, f.A / an, f.A_env / an});
    }
    return t;
}

std::string constants(const SpectrumModel& m) {
    const ResolutionReport r = woodward_constants(m);
    std::ostringstream os;
    os << "delta_tau=" << format_g9(r.delta_tau) << " delta_tau_c=" << format_g9(r.delta_tau_c)
       << " gain=" << format_g9(r.gain);
    return os.str();
}

FigureTable lorentzian_gains() {
    FigureTable t{{"gamma", "gain"}, {}, ""};
    for (double g : grid(1.0, 100.0, 199)) t.rows.push_back({g, lorentzian_gain(g)});
    t.summary = "gain_at_5=" + format_g9(lorentzian_gain(5.0));
    return t;
}

FigureTable lorentzian_regions() {
    FigureTable t{{"gamma", "lambda_per_WT", "n_c_per_WT"}, {}, ""};
    for (double g : grid(1.05, 10.0, 180))
        t.rows.push_back({g, lorentzian_lambda_per_wt(g), std::sqrt(g) / 3.14159265358979323846});
    t.summary = "gamma_star=" + format_g9(gamma_star());
    return t;
}

}  // namespace

std::vector<int> figure_ids() { return {1, 13, 14, 15, 16, 17, 18, 19, 20}; }

FigureTable figure_table(int id) {
    switch (id) {
        case 1: return structure_functions();
        case 13: return butterworth_densities();
        case 14: return butterworth_gains();
        case 15:
        case 16: {
            FigureTable t = components([](double tau) { return bandlimited_family(1.0, 1.0, tau); }, 20.0, id == 16);
            t.summary = "W=1 sigma=1 " + constants(BandLimited{1.0, 1.0});
            return t;
        }
        case 17: return lorentzian_gains();
        case 18: return lorentzian_regions();
        case 19:
        case 20: {
            FigureTable t = components([](double tau) { return lorentzian_family(5.0, 1.0, 1.0, tau); }, 4.0, true);
            t.summary = "gamma=5 W=1 " + constants(ModifiedLorentzian{5.0, 1.0, 1.0});
            return t;
        }
        default: throw InvalidArgument("figure " + std::to_string(id) + " is not a pure function plot");
    }
}

}  // namespace zxi::cli
