// Acceptance gate. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any selected criterion fails. Pass a criterion number to run a
// single one.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twinbeam/twinbeam.hpp"

using namespace twinbeam;

namespace {

constexpr LightKind kKinds[] = {LightKind::Squashed, LightKind::Squeezed, LightKind::Classical};
const std::vector<double> kSteadyGrid = {0.01, 0.05, 0.1, 0.2};

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

Outcome steady_state_match(LightKind kind) {
    double worst = 0.0;
    for (double n : kSteadyGrid) worst = std::max(worst, std::abs(p33_numeric(kind, n) - p33_closed_form(kind, n)));
    return {worst < 1e-9, std::string(to_string(kind)) + " rho33 max error " + fmt(worst) + " (tol 1e-9)"};
}

Outcome criterion_1() { return steady_state_match(LightKind::Squeezed); }
Outcome criterion_2() { return steady_state_match(LightKind::Classical); }
Outcome criterion_3() { return steady_state_match(LightKind::Squashed); }

Outcome criterion_4() {
    struct Target {
        LightKind kind;
        double expected;
    };
    Outcome out;
    std::ostringstream text;
    text << "exponents over [1e-4, 1e-3]:";
    for (Target t : {Target{LightKind::Squeezed, 1.0}, Target{LightKind::Classical, 2.0},
                     Target{LightKind::Squashed, 2.0}}) {
        const double slope = scaling_exponent(t.kind);
        const bool ok = std::abs(slope - t.expected) <= 0.05;
        out.pass = out.pass && ok;
        text << ' ' << to_string(t.kind) << '=' << fmt(slope) << (ok ? "" : "(!)") << " vs " << fmt(t.expected)
             << "+-0.05";
        if (t.kind != LightKind::Squashed) text << ';';
    }
    out.detail = text.str();
    return out;
}

Outcome criterion_5() {
    std::mt19937_64 rng(0xacce55);
    std::uniform_real_distribution<double> lambda_dist(-0.999, -0.001);
    std::uniform_real_distribution<double> n_dist(0.0, 2.0);
    double worst_a = 0.0;
    double worst_b = 0.0;
    double worst_c = 0.0;
    double worst_d = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double lambda = lambda_dist(rng);
        worst_a = std::max(worst_a, max_abs_difference(gen_2la_squashed_direct(lambda),
                                                       gen_2la_unified(make_squashed(lambda))));
        const LightParams sq = make_squeezed_max(n_dist(rng), -1);
        worst_b = std::max(worst_b, max_abs_difference(gen_2la_squeezed_direct(sq.quadrature_l()),
                                                       gen_2la_unified(sq)));
    }
    for (double lambda : {-0.9, -0.5, -0.2, -0.01}) {
        for (QuadratureSign sign : {QuadratureSign::Plus, QuadratureSign::Minus}) {
            worst_c = std::max(worst_c, max_abs_difference(gen_3la_squashed_direct(lambda, sign),
                                                           gen_3la_unified(make_squashed(lambda, sign))));
        }
    }
    for (double n : {0.0, 0.01, 0.1, 0.5, 2.0}) {
        const auto general = GeneralTwinParams::make(1.0, 1.0, n, n, -std::sqrt(n * (n + 1)));
        worst_d = std::max(worst_d, max_abs_difference(gen_3la_squeezed_general(general),
                                                       gen_3la_unified(make_squeezed_max(n, -1))));
    }
    const double worst = std::max({worst_a, worst_b, worst_c, worst_d});
    return {worst < 1e-12, "direct vs unified max diff: 2LA squashed " + fmt(worst_a) + ", 2LA squeezed " +
                               fmt(worst_b) + ", 3LA squashed " + fmt(worst_c) + ", 3LA general " + fmt(worst_d) +
                               " (tol 1e-12)"};
}

Outcome criterion_6() {
    double worst_gx = 0.0;
    double worst_c = 0.0;
    auto check_gamma_x = [&](const LightParams& p) {
        const BlochRates rates = decay_rates_2la(gen_2la_unified(p));
        worst_gx = std::max(worst_gx, std::abs(rates.gamma_x - twin_beam_spectra(p).s_x / 2));
        return rates;
    };
    for (double lambda : {-0.9, -0.7, -0.5, -0.3, -0.1}) {
        worst_c = std::max(worst_c, std::abs(check_gamma_x(make_squashed(lambda)).c - (1.0 + lambda)));
    }
    for (double n : {0.01, 0.05, 0.1, 0.5, 1.0}) {
        worst_c = std::max(worst_c, std::abs(check_gamma_x(make_squeezed_max(n, -1)).c - 1.0));
        check_gamma_x(make_classical(n, -n));
    }
    return {worst_gx < 1e-12 && worst_c < 1e-12,
            "gamma_x vs S_X/2 max diff " + fmt(worst_gx) + ", C max diff " + fmt(worst_c) + " (tol 1e-12)"};
}

Outcome criterion_7() {
    double worst_exact = 0.0;
    double worst_fd = 0.0;
    for (LightKind kind : kKinds) {
        for (double n : {1e-4, 0.01, 0.1, 0.2}) {
            const LightParams p = light_at_intensity(kind, n);
            for (CoherenceDirection dir : {CoherenceDirection::Down, CoherenceDirection::Up}) {
                const CoherenceSlopeRow row = coherence_slope_table({kind}, n, dir).front();
                const double expected = (dir == CoherenceDirection::Down ? p.m_down() : p.m_up()) / 2;
                worst_exact = std::max(worst_exact, std::abs(row.exact_slope - expected));
                worst_fd = std::max(worst_fd, std::abs(row.finite_difference - row.exact_slope));
            }
        }
    }
    double worst_rel = 0.0;
    for (LightKind kind : kKinds) {
        for (CoherenceDirection dir : {CoherenceDirection::Down, CoherenceDirection::Up}) {
            const CoherenceSlopeRow row = coherence_slope_table({kind}, 1e-4, dir).front();
            worst_rel = std::max(worst_rel, std::abs(row.exact_slope - row.leading_order) / std::abs(row.leading_order));
        }
    }
    return {worst_exact < 1e-12 && worst_fd < 1e-6 && worst_rel <= 0.1,
            "slope vs M/2 " + fmt(worst_exact) + ", finite difference " + fmt(worst_fd) +
                " (tol 1e-6), leading order rel " + fmt(worst_rel) + " (tol 0.1)"};
}

Outcome criterion_8() {
    std::vector<double> times;
    for (int k = 0; k <= 100; ++k) times.push_back(0.5 * k);
    Matrix mixed = Matrix::Zero(3, 3);
    mixed(0, 0) = 0.3;
    mixed(1, 1) = 0.2;
    mixed(2, 2) = 0.5;
    mixed(0, 2) = mixed(2, 0) = 0.25;
    const std::vector<DensityMatrix> starts = {DensityMatrix::level(3, 1), DensityMatrix::level(3, 3),
                                               DensityMatrix::state(mixed)};
    double worst = 0.0;
    for (LightKind kind : kKinds) {
        for (double n : {0.01, 0.1}) {
            for (const auto& rho0 : starts) worst = std::max(worst, crosscheck(light_at_intensity(kind, n), rho0, times));
        }
    }
    return {worst < 1e-8, "reduced vs full max deviation over [0, 50] " + fmt(worst) + " (tol 1e-8)"};
}

Outcome criterion_9() {
    Outcome out;
    double worst_dc = 0.0;
    for (double g : {-1.0, -0.5, 0.5}) {
        const double s = inloop_spectrum({.gain = g}, {0.0}).s_x[0];
        worst_dc = std::max(worst_dc, std::abs(s - 1.0 / ((1.0 - g) * (1.0 - g))));
    }
    double worst_identity = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double g = -20.0 + 20.9 * k / 200.0;
        const double lambda = lambda_from_gain(g);
        const double lhs = 1.0 / ((1.0 - g) * (1.0 - g));
        worst_identity = std::max(worst_identity, std::abs(lhs - (1.0 + 2.0 * lambda + lambda * lambda)) / std::max(1.0, lhs));
    }
    bool product_ok = true;
    for (double g : {-0.1, -0.5, -1.0, -5.0}) {
        const FeedbackLoop loop{.gain = g};
        for (double prod : inloop_spectrum(loop, default_frequency_grid(loop.response)).product) {
            product_ok = product_ok && prod < 1.0;
        }
    }
    bool stability_ok = true;
    const auto grid = default_frequency_grid(ResponseSpec::ideal());
    for (double g : {-5.0, -1.5, -0.5, 0.0, 0.5, 0.99, 1.01, 1.5, 4.0}) {
        for (double tau : {0.0, 0.3}) {
            const bool expected = tau == 0.0 ? g < 1.0 : std::abs(g) < 1.0;
            stability_ok = stability_ok && stability_check({.gain = g, .delay = tau}, grid).stable == expected;
        }
    }
    out.pass = worst_dc < 1e-15 && worst_identity < 1e-12 && product_ok && stability_ok;
    out.detail = "S_X(0) vs (1-g)^-2 " + fmt(worst_dc) + ", identity rel " + fmt(worst_identity) +
                 ", product<1 " + (product_ok ? "yes" : "no") + ", stability " + (stability_ok ? "matches" : "mismatch");
    return out;
}

Outcome criterion_10() {
    std::vector<double> times;
    for (int k = 0; k <= 100; ++k) times.push_back(0.5 * k);
    Matrix mixed = Matrix::Zero(3, 3);
    mixed(0, 0) = 0.4;
    mixed(1, 1) = 0.1;
    mixed(2, 2) = 0.5;
    mixed(0, 2) = mixed(2, 0) = -0.4;
    const std::vector<DensityMatrix> starts = {DensityMatrix::level(3, 1), DensityMatrix::level(3, 2),
                                               DensityMatrix::level(3, 3), DensityMatrix::maximally_mixed(3),
                                               DensityMatrix::state(mixed)};
    double trace_err = 0.0;
    double herm_err = 0.0;
    double min_eig = 1.0;
    double leak = 0.0;
    double route_gap = 0.0;
    int count = 0;
    for (LightKind kind : kKinds) {
        for (double n : {0.01, 0.1}) {
            const Generator g = gen_3la_unified(light_at_intensity(kind, n));
            for (const auto& rho0 : starts) {
                ++count;
                const TransientTrace ex = trajectory(g, rho0, times, Propagator::MatrixExponential);
                const TransientTrace rk = trajectory(g, rho0, times, Propagator::RungeKutta);
                for (std::size_t i = 0; i < times.size(); ++i) {
                    const Matrix& rho = ex.states[i].matrix();
                    trace_err = std::max(trace_err, std::abs(rho.trace() - 1.0));
                    herm_err = std::max(herm_err, hermiticity_error(rho));
                    min_eig = std::min(min_eig, ex.states[i].min_eigenvalue());
                    leak = std::max({leak, std::abs(rho(0, 1)), std::abs(rho(1, 2))});
                    route_gap = std::max(route_gap, (rho - rk.states[i].matrix()).cwiseAbs().maxCoeff());
                }
            }
        }
    }
    return {trace_err < 1e-9 && herm_err < 1e-12 && min_eig >= -1e-8 && leak < 1e-12 && route_gap < 1e-8,
            std::to_string(count) + " trajectories: trace " + fmt(trace_err) + ", hermiticity " + fmt(herm_err) +
                ", min eigenvalue " + fmt(min_eig) + ", one-photon coherence " + fmt(leak) + ", expm vs rk4 " +
                fmt(route_gap)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                            criterion_5, criterion_6, criterion_7, criterion_8,
                                                            criterion_9, criterion_10};
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
            return 2;
        }
    }
    int failures = 0;
    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) {
        if (only != 0 && k != only) continue;
        Outcome out;
        try {
            out = criteria[k - 1]();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s\n", out.pass ? "PASS" : "FAIL", k, out.detail.c_str());
        if (!out.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
