#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "twinbeam/errors.hpp"

namespace twinbeam {

/// Flat loop response, h(omega) = 1 at every frequency.
struct IdealResponse {};

/// Single-pole low-pass response, h(omega) = 1 / (1 + i omega / B).
struct OnePoleResponse {
    double bandwidth = 1.0;
};

/// Normalized loop response function (h(0) = 1 for every variant).
class ResponseSpec {
public:
    static ResponseSpec ideal() { return ResponseSpec(IdealResponse{}); }
    /// Throws RangeError unless bandwidth > 0.
    static ResponseSpec one_pole(double bandwidth);

    std::complex<double> evaluate(double omega) const;

    /// Characteristic frequency: the pole bandwidth, or 1 for the ideal response.
    double scale() const;

    bool is_ideal() const { return std::holds_alternative<IdealResponse>(variant_); }

private:
    explicit ResponseSpec(std::variant<IdealResponse, OnePoleResponse> v) : variant_(v) {}
    std::variant<IdealResponse, OnePoleResponse> variant_;
};

/// Homodyne feedback loop with round-loop gain g and delay tau.
struct FeedbackLoop {
    double gain = 0.0;
    double delay = 0.0;
    ResponseSpec response = ResponseSpec::ideal();
};

/// g h(omega) exp(-i omega tau)
std::complex<double> loop_transfer(const FeedbackLoop& loop, double omega);

struct StabilityReport {
    bool stable = true;
    /// min over the grid of 1 - g Re[h(omega) exp(-i omega tau)].
    double min_margin = 0.0;
    double worst_omega = 0.0;
};

/// Grid check of g Re[h(omega) exp(-i omega tau)] < 1. Only as good as the grid.
StabilityReport stability_check(const FeedbackLoop& loop, const std::vector<double>& omegas);

/// 2001 log-spaced points over [1e-3, 1e3] times the response scale, plus omega = 0.
std::vector<double> default_frequency_grid(const ResponseSpec& response);

struct SpectrumCurve {
    std::vector<double> omegas;
    std::vector<double> s_x;        ///< in-loop X spectrum |1 - g h e^{-i w tau}|^-2
    std::vector<double> s_y;        ///< conjugate quadrature, unaffected by the loop
    std::vector<double> product;    ///< s_x * s_y
};

/// Thrown when an in-loop spectrum is requested for a loop that fails the
/// stability inequality somewhere on the grid.
class UnstableLoopError : public NumericalError {
public:
    UnstableLoopError(const std::string& what, double omega) : NumericalError(what), omega_(omega) {}
    double omega() const { return omega_; }

private:
    double omega_;
};

SpectrumCurve inloop_spectrum(const FeedbackLoop& loop, const std::vector<double>& omegas);

/// lambda = g / (1 - g), a bijection from g < 1 onto lambda > -1.
double lambda_from_gain(double g);
double gain_from_lambda(double lambda);

}  // namespace twinbeam
