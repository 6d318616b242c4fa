#pragma once

#include <string_view>
#include <vector>

#include "twinbeam/light.hpp"

namespace twinbeam {

/// Light of intensity n in the conventions used for side-by-side comparison:
/// squashed with lambda = -2 sqrt(n) and M = +N, maximally squeezed with
/// M = -sqrt(n(n+1)), and maximally correlated classical with M = -n.
LightParams light_at_intensity(LightKind kind, double n);

/// Closed-form steady-state population of the top cascade level:
///   squeezed   n / (1 + 2n)
///   classical  2n^2 / ((1 + 2n)(1 + 3n))
///   squashed   2n^2 / (1 - sqrt(n)(6 + 10n) + n(13 + 6n)),  0 < n < 0.25
double p33_closed_form(LightKind kind, double n);

/// Steady-state rho33 from the full cascade generator.
double p33_numeric(LightKind kind, double n);

struct ScanRow {
    LightKind kind = LightKind::Vacuum;
    double intensity = 0.0;
    double rho33_numeric = 0.0;
    double rho33_closed_form = 0.0;
    double abs_error = 0.0;
};

/// `points` log-spaced values in [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, int points);

/// One row per (kind, intensity), kinds outermost, in input order. Rows are
/// computed concurrently but the result order is deterministic.
std::vector<ScanRow> population_scan(const std::vector<LightKind>& kinds, const std::vector<double>& n_grid);

/// Least-squares slope of log rho33 against log n on a log grid.
double scaling_exponent(LightKind kind, double n_lo = 1e-4, double n_hi = 1e-3, int points = 25);

enum class CoherenceDirection {
    Down,  ///< starting in |3>, slope M_D / 2
    Up,    ///< starting in |1>, slope M_U / 2
};

std::string_view to_string(CoherenceDirection direction);

struct CoherenceSlopeRow {
    LightKind kind = LightKind::Vacuum;
    double intensity = 0.0;
    CoherenceDirection direction = CoherenceDirection::Down;
    double exact_slope = 0.0;          ///< Re G(rho0)_13
    double finite_difference = 0.0;    ///< from short propagations
    double leading_order = 0.0;        ///< small-intensity asymptote
};

/// Leading-order transient slope of Re rho13 for small intensity:
/// squashed down -sqrt(n), squashed up n/2, squeezed -sqrt(n)/2, classical -n/2.
double leading_order_slope(LightKind kind, double n, CoherenceDirection direction);

std::vector<CoherenceSlopeRow> coherence_slope_table(const std::vector<LightKind>& kinds, double n,
                                                     CoherenceDirection direction);

/// Classical light obtained by taking the probe beam from a second vacuum
/// input modulated by the same feedback signal: N = M = lambda^2 / 4.
LightParams classical_from_feedback(double lambda);

struct PhasePoint {
    double theta = 0.0;
    double s_q = 0.0;
};

/// Broadband spectrum of Q_theta = X cos(theta) + Y sin(theta), evaluated as
/// S_X cos^2(theta) + S_Y sin^2(theta); valid for the real-M light used here.
std::vector<PhasePoint> phase_contour(const LightParams& p, int points);

}  // namespace twinbeam
