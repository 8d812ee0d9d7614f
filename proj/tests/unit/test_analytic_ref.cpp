#include <catch_amalgamated.hpp>

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

// Piecewise quadrature of an oscillatory integrand on [0, upper].
double chunked(const std::function<double(double)>& f, double upper, double width) {
    double acc = 0.0;
    for (double a = 0.0; a < upper; a += width) acc += integrate(f, a, std::min(a + width, upper));
    return acc;
}

}  // namespace

TEST_CASE("scaled exponential integrals against high-precision values", "[special]") {
    // Reference values from 30-digit evaluation of e^x E1(x) and e^-x Ei(x).
    struct Row {
        double x, e1, ei;
    };
    const std::vector<Row> rows{
        {0.1, 2.01464254470845163, -1.46838175654763023},
        {1.0, 0.596347362323194074, 0.697174883235066069},
        {5.0, 0.170422176284732202, 0.270766255491057196},
        {39.9, 0.0244638495037561817, 0.0257249188150907447},
        {40.5, 0.0241097680641438439, 0.0253336104998964646},
        {50.0, 0.0196151099301148704, 0.0204170455559439873},
        {200.0, 0.00497524632317935662, 0.00502525382693330123},
    };
    for (const auto& r : rows) {
        CHECK_THAT(scaled_e1(r.x), WithinRel(r.e1, 1e-12));
        CHECK_THAT(scaled_ei(r.x), WithinRel(r.ei, 1e-12));
    }
}

TEST_CASE("closed-form Hilbert images of two-sided exponentials", "[special]") {
    // Reference values from principal-value quadrature at a = 2.
    CHECK_THAT(hilbert_exp_abs(2.0, 0.3), WithinRel(0.398031630285791289, 1e-12));
    CHECK_THAT(hilbert_exp_abs(2.0, 1.0), WithinRel(0.328435745958114412, 1e-12));
    CHECK_THAT(hilbert_exp_abs(2.0, -2.5), WithinRel(-0.140434639504156619, 1e-12));
    CHECK(hilbert_exp_abs(2.0, 0.0) == 0.0);
    CHECK_THAT(hilbert_sgn_exp_abs(2.0, 0.3), WithinRel(-0.129047164813539547, 1e-12));
    CHECK_THAT(hilbert_sgn_exp_abs(2.0, 1.0), WithinRel(0.0984068041248411427, 1e-12));
    CHECK_THAT(hilbert_sgn_exp_abs(2.0, -2.5), WithinRel(0.0319405124313825849, 1e-12));
}

TEST_CASE("quadrature helpers", "[quadrature]") {
    CHECK_THAT(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, 1.0), WithinRel(1.0, 1e-12));
    CHECK_THAT(integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0),
               WithinRel(kPi / 2.0, 1e-12));
    CHECK_THAT(integrate([](double x) { return std::sin(x); }, 0.0, kPi), WithinRel(2.0, 1e-12));
    CHECK_THAT(bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12), WithinAbs(std::sqrt(2.0), 1e-11));
    CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, 0.0, 2.0, 1e-9), NumericalFailure);
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("structure functions of the gaussian-shape process", "[analytic_ref]") {
    const double B = 1.3, var = 2.0;
    CHECK(structure_global_gaussian(B, var, 0.0) == 0.0);
    CHECK_THAT(structure_global_gaussian(B, var, 100.0), WithinRel(2.0 * var, 1e-12));
    CHECK_THAT(structure_local_gaussian(B, var, 0.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(structure_local_gaussian(B, var, 100.0), WithinRel(var, 1e-12));
    // Crossings sit where the slope is large, so the local function rises faster than D/2.
    for (double t = 0.05; t <= 10.0; t += 0.05) {
        const double local = structure_local_gaussian(B, var, t), half = 0.5 * structure_global_gaussian(B, var, t);
        CHECK(local >= half);
        if (B * t < 4.0) CHECK(local > half);
    }
    const double u = 0.01;
    CHECK_THAT(structure_local_gaussian(B, var, u / B), WithinRel(2.0 * var * u * u, 1e-3));
    // At B tau = 1 the two r^2 terms cancel.
    CHECK_THAT(structure_local_gaussian(B, var, 1.0 / B), WithinRel(var, 1e-14));
}

TEST_CASE("gaussian crosslation shape", "[analytic_ref]") {
    const double B = 0.7, sigma = 1.5;
    const CorrelationModel m = gaussian_correlation(B, sigma * sigma);
    auto C = [&](double t) { return crosslation_gaussian(m.dR, B, sigma, t); };
    CHECK(C(0.0) == 0.0);
    CHECK(C(0.1) > 0.0);
    CHECK_THAT(C(-0.4), WithinAbs(-C(0.4), 1e-15));
    // d/dtau [tau exp(-B^2 tau^2 / 2)] vanishes at 1/B.
    const double h = 1e-5;
    CHECK(C(1.0 / B) > C(1.0 / B - 1e-3));
    CHECK(C(1.0 / B) > C(1.0 / B + 1e-3));
    CHECK_THAT((C(1.0 / B + h) - C(1.0 / B - h)) / (2.0 * h), WithinAbs(0.0, 1e-8));
    CHECK_THAT(C(0.9), WithinRel(std::sqrt(kPi / 2.0) * sigma * B * 0.9 * std::exp(-0.5 * B * B * 0.81), 1e-14));
}

TEST_CASE("Slepian moments", "[analytic_ref]") {
    const CorrelationModel m = gaussian_correlation(0.5, 2.0);
    const SlepianMoments z = slepian_mean_and_variance(m, 0.0);
    CHECK_THAT(z.self_noise_variance, WithinAbs(0.0, 1e-15));
    CHECK_THAT(z.crossjectory_variance, WithinAbs(0.0, 1e-15));
    const SlepianMoments far = slepian_mean_and_variance(m, 200.0);
    CHECK_THAT(far.crossjectory_variance, WithinRel(2.0, 1e-12));
    const SlepianMoments mid = slepian_mean_and_variance(m, 2.0);
    CHECK(mid.crossjectory_variance > mid.self_noise_variance);
    CHECK_THAT(mid.mean, WithinRel(crosslation_gaussian(m.dR, 0.5, std::sqrt(2.0), 2.0), 1e-14));
}

TEST_CASE("bandlimited component forms", "[analytic_ref]") {
    const double W = 2.0, sigma = 1.2, k = std::sqrt(1.5 * kPi) * sigma;
    const ComponentForms f0 = bandlimited_family(W, sigma, 0.0);
    CHECK(f0.R == sigma * sigma);
    CHECK(f0.C == 0.0);
    CHECK_THAT(f0.A, WithinRel(k / 2.0, 1e-15));
    for (double t = -8.0; t <= 8.0; t += 0.0625) {
        const ComponentForms f = bandlimited_family(W, sigma, t);
        const double x = W * t;
        if (x != 0.0) {
            CHECK_THAT(f.R_env, WithinAbs(sigma * sigma * std::abs(std::sin(x / 2.0) / (x / 2.0)), 1e-12));
            CHECK_THAT(f.A_env,
                       WithinAbs(k * std::sqrt(x * x - 2.0 * x * std::sin(x) + 2.0 - 2.0 * std::cos(x)) / (x * x), 1e-9));
        }
        // Both components come from the same positive-frequency integral of w.
        const double c = k / (W * W);
        const double Cq = c * integrate([t](double w) { return w * std::sin(w * t); }, 0.0, W);
        const double Aq = c * integrate([t](double w) { return w * std::cos(w * t); }, 0.0, W);
        CHECK_THAT(f.C, WithinAbs(Cq, 1e-9));
        CHECK_THAT(f.A, WithinAbs(Aq, 1e-9));
        const ComponentForms g = bandlimited_family(W, sigma, -t);
        CHECK(g.C == -f.C);
        CHECK(g.A == f.A);
    }
}

TEST_CASE("lorentzian component forms", "[analytic_ref]") {
    const double gamma = 5.0, W = 1.0, var = 1.0;
    CHECK_THAT(lorentzian_family(gamma, W, var, 0.0).R, WithinRel(var, 1e-15));

    // Discrete Hilbert transform of a long sampled autocorrelation.
    const double dt = 0.05;
    const int half = 20000;
    std::vector<double> r(2 * half);
    for (int i = 0; i < 2 * half; ++i) r[i] = lorentzian_family(gamma, W, var, (i - half) * dt).R;
    const std::vector<double> h = hilbert_transform(r);
    double worst = 0.0;
    for (int i = half / 2; i < 3 * half / 2; ++i)
        worst = std::max(worst, std::abs(h[i] - lorentzian_family(gamma, W, var, (i - half) * dt).R_xy));
    CHECK(worst < 1e-3 * var);

    // Autoference from the spectral integral of w S(w) cos(w tau).
    const SpectrumModel model = ModifiedLorentzian{gamma, W, var};
    const double B = W * std::sqrt(gamma);
    const double c = std::sqrt(kPi / 2.0) / (kPi * B * std::sqrt(var));
    for (double t : {0.0, 0.2, 0.7, 1.5, 3.0}) {
        const ComponentForms f = lorentzian_family(gamma, W, var, t);
        const double Aq = c * chunked([&](double w) { return w * density(model, w) * std::cos(w * t); }, 4000.0, 1.0);
        const double Cq = c * chunked([&](double w) { return w * density(model, w) * std::sin(w * t); }, 4000.0, 1.0);
        CHECK_THAT(f.A, WithinAbs(Aq, 1e-5));
        CHECK_THAT(f.C, WithinAbs(Cq, 1e-5));
    }
}

TEST_CASE("woodward constants of the reference families", "[analytic_ref]") {
    const double W = 3.0;
    const ResolutionReport bl = woodward_constants(BandLimited{W, 1.0});
    CHECK_THAT(bl.delta_tau, WithinRel(2.0 * kPi / W, 1e-15));
    CHECK_THAT(bl.delta_tau_c, WithinRel(8.0 * kPi / (3.0 * W), 1e-15));
    CHECK_THAT(bl.gain, WithinAbs(0.75, 1e-15));
    const ResolutionReport blq = woodward_constants_quadrature(BandLimited{W, 1.0});
    CHECK(blq.method == Method::quadrature);
    CHECK_THAT(blq.delta_tau, WithinRel(2.0 * kPi / W, 1e-8));
    CHECK_THAT(blq.delta_tau_c, WithinRel(8.0 * kPi / (3.0 * W), 1e-8));

    CHECK_THAT(woodward_constants(GaussianShape{0.4, 1.0}).gain, WithinRel(4.0 / kPi, 1e-14));
    CHECK_THAT(woodward_constants_quadrature(GaussianShape{0.4, 1.0}).gain, WithinRel(4.0 / kPi, 1e-8));

    const ResolutionReport lap = woodward_constants([](double w) { return std::exp(-w / 0.8); }, 0.8);
    CHECK_THAT(lap.gain, WithinRel(2.0, 1e-8));

    const ResolutionReport bp = woodward_constants(BandPass{1.0, 2.0, 1.0});
    const ResolutionReport bpq = woodward_constants_quadrature(BandPass{1.0, 2.0, 1.0});
    CHECK_THAT(bp.gain, WithinRel(bpq.gain, 1e-8));
}

TEST_CASE("butterworth resolution gain", "[analytic_ref]") {
    CHECK_THAT(butterworth_gain(1.5), WithinRel(4.0 * kPi / (3.0 * std::sqrt(3.0)), 1e-12));
    // Reference values from 30-digit evaluation of the beta-function ratio.
    CHECK_THAT(butterworth_gain(1.05), WithinRel(53.49186168665164, 1e-10));
    CHECK_THAT(butterworth_gain(1.1), WithinRel(17.01530627951557, 1e-10));
    CHECK_THAT(butterworth_gain(2.0), WithinRel(1.5, 1e-12));
    CHECK_THAT(butterworth_gain(4.0), WithinRel(0.98994949366, 1e-9));
    CHECK_THAT(butterworth_gain(8.0), WithinRel(0.853971308684, 1e-9));
    CHECK(std::isinf(butterworth_gain(1.0)));
    CHECK_THROWS_AS(butterworth_gain(0.9), InvalidArgument);
    for (double kappa : {1.05, 1.5, 4.0}) {
        const double closed = butterworth_gain(kappa);
        const double quad = woodward_constants_quadrature(Butterworth{kappa, 1.0, 1.0}).gain;
        CHECK_THAT(quad, WithinRel(closed, 1e-6));
    }
}

TEST_CASE("lorentzian resolution gain", "[analytic_ref]") {
    CHECK_THAT(lorentzian_gain(1.0 + 1e-6), WithinAbs(20.0 / (kPi * kPi), 1e-6));
    CHECK_THAT(lorentzian_gain(1.0 + 1e-12), WithinAbs(20.0 / (kPi * kPi), 1e-9));
    CHECK_THAT(lorentzian_gain(5.0), WithinRel(2.690125709128412, 1e-10));
    CHECK_THAT(lorentzian_gain(100.0), WithinRel(9.033594928306881, 1e-10));
    double prev = lorentzian_gain(1.01);
    for (double g = 1.5; g <= 100.0; g *= 1.5) {
        const double cur = lorentzian_gain(g);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK_THAT(lorentzian_gain(1.0), WithinAbs(20.0 / (kPi * kPi), 1e-12));
    CHECK_THROWS_AS(lorentzian_gain(0.99), InvalidArgument);
}

TEST_CASE("degrees of freedom and crossing counts", "[analytic_ref]") {
    const double T = 1000.0;
    const DofReport bl = degrees_of_freedom(BandLimited{2.0, 1.0}, T);
    CHECK_THAT(bl.lambda, WithinRel(2.0 * T / kPi, 1e-14));
    CHECK_THAT(bl.n_c_expected / bl.lambda, WithinRel(1.0 / std::sqrt(3.0), 1e-14));
    CHECK(bl.regime == Regime::underdetermined);

    const DofReport g = degrees_of_freedom(GaussianShape{0.5, 1.0}, T);
    CHECK_THAT(g.lambda, WithinRel(0.5 * T / std::sqrt(kPi), 1e-14));
    CHECK_THAT(g.n_c_expected / g.lambda, WithinRel(1.0 / std::sqrt(kPi), 1e-14));
    const DofReport gq = degrees_of_freedom(gaussian_correlation(0.5, 1.0), T);
    CHECK_THAT(gq.lambda, WithinRel(g.lambda, 1e-10));

    const DofReport lz = degrees_of_freedom(lorentzian_correlation(5.0, 1.0, 1.0), T);
    CHECK_THAT(lz.lambda, WithinRel(degrees_of_freedom(ModifiedLorentzian{5.0, 1.0, 1.0}, T).lambda, 1e-9));
    CHECK(degrees_of_freedom(ModifiedLorentzian{10.0, 1.0, 1.0}, T).regime == Regime::overdetermined);
    CHECK(degrees_of_freedom(ModifiedLorentzian{2.0, 1.0, 1.0}, T).regime == Regime::underdetermined);

    const double gs = gamma_star();
    CHECK_THAT(gs, WithinAbs(5.560574793375145, 1e-5));
    CHECK_THAT(lorentzian_lambda_per_wt(gs), WithinRel(std::sqrt(gs) / kPi, 1e-6));
}

TEST_CASE("Cramer-Rao bounds", "[analytic_ref]") {
    const CRReport over = cr_bounds(0.1, 1.0, 0.5, 100.0, 150.0);
    CHECK(over.regime == Regime::overdetermined);
    CHECK_THAT(over.ratio, WithinAbs(0.5, 1e-15));
    CHECK_THAT(over.var_crosslation / over.var_correlation, WithinRel(0.5, 1e-15));
    CHECK_THAT(over.var_correlation, WithinRel(0.1 / (100.0 * 0.25), 1e-15));

    const CRReport under = cr_bounds(0.1, 1.0, 0.5, 100.0, 50.0);
    CHECK(under.regime == Regime::underdetermined);
    CHECK_THAT(under.var_crosslation, WithinRel(under.var_correlation, 1e-15));
    CHECK_THAT(under.var_crosslation_underdetermined, WithinRel(under.var_correlation, 1e-15));

    const CRReport quiet = cr_bounds(0.0, 1.0, 0.5, 100.0, 150.0);
    CHECK(quiet.var_correlation == 0.0);
    CHECK(quiet.var_crosslation == 0.0);
    CHECK_THROWS_AS(cr_bounds(0.1, 1.0, 0.5, 0.0, 150.0), InvalidArgument);
}
