#include "twinbeam/feedback.hpp"

#include <cmath>
#include <sstream>

namespace twinbeam {

ResponseSpec ResponseSpec::one_pole(double bandwidth) {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw RangeError("response bandwidth must be finite and > 0");
    }
    return ResponseSpec(OnePoleResponse{bandwidth});
}

std::complex<double> ResponseSpec::evaluate(double omega) const {
    if (const auto* pole = std::get_if<OnePoleResponse>(&variant_)) {
        return 1.0 / std::complex<double>(1.0, omega / pole->bandwidth);
    }
    return 1.0;
}

double ResponseSpec::scale() const {
    if (const auto* pole = std::get_if<OnePoleResponse>(&variant_)) return pole->bandwidth;
    return 1.0;
}

std::complex<double> loop_transfer(const FeedbackLoop& loop, double omega) {
    if (!(loop.delay >= 0.0)) throw RangeError("loop delay must be >= 0");
    const std::complex<double> delay = std::polar(1.0, -omega * loop.delay);
    return loop.gain * loop.response.evaluate(omega) * delay;
}

StabilityReport stability_check(const FeedbackLoop& loop, const std::vector<double>& omegas) {
    StabilityReport report;
    bool first = true;
    for (double omega : omegas) {
        const double margin = 1.0 - loop_transfer(loop, omega).real();
        if (first || margin < report.min_margin) {
            report.min_margin = margin;
            report.worst_omega = omega;
            first = false;
        }
    }
    report.stable = !first && report.min_margin > 0.0;
    return report;
}

std::vector<double> default_frequency_grid(const ResponseSpec& response) {
    constexpr int kPoints = 2001;
    const double lo = std::log10(1e-3 * response.scale());
    const double hi = std::log10(1e3 * response.scale());
    std::vector<double> grid;
    grid.reserve(kPoints + 1);
    grid.push_back(0.0);
    for (int k = 0; k < kPoints; ++k) {
        grid.push_back(std::pow(10.0, lo + (hi - lo) * k / (kPoints - 1)));
    }
    return grid;
}

SpectrumCurve inloop_spectrum(const FeedbackLoop& loop, const std::vector<double>& omegas) {
    const StabilityReport report = stability_check(loop, omegas);
    if (!report.stable) {
        std::ostringstream os;
        os.precision(17);
        os << "feedback loop with g = " << loop.gain << " is unstable at omega = "
           << report.worst_omega << " (margin " << report.min_margin << ")";
        throw UnstableLoopError(os.str(), report.worst_omega);
    }
    SpectrumCurve curve;
    curve.omegas = omegas;
    for (double omega : omegas) {
        const double sx = 1.0 / std::norm(1.0 - loop_transfer(loop, omega));
        curve.s_x.push_back(sx);
        curve.s_y.push_back(1.0);
        curve.product.push_back(sx);
    }
    return curve;
}

double lambda_from_gain(double g) {
    if (!(g < 1.0) || !std::isfinite(g)) {
        std::ostringstream os;
        os.precision(17);
        os << "loop gain g = " << g << " must be < 1";
        throw RangeError(os.str());
    }
    return g / (1.0 - g);
}

double gain_from_lambda(double lambda) {
    if (!(lambda > -1.0) || !std::isfinite(lambda)) {
        std::ostringstream os;
        os.precision(17);
        os << "feedback parameter lambda = " << lambda << " must be > -1";
        throw RangeError(os.str());
    }
    return lambda / (1.0 + lambda);
}

}  // namespace twinbeam
