#include "twinbeam/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "twinbeam/dynamics.hpp"
#include "twinbeam/errors.hpp"
#include "twinbeam/master.hpp"

namespace twinbeam {

namespace {

std::string describe(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_comparison_kind(LightKind kind) {
    if (kind != LightKind::Squashed && kind != LightKind::Squeezed && kind != LightKind::Classical) {
        throw DomainError("intensity comparisons are defined for squashed, squeezed and classical light, not " +
                          std::string(to_string(kind)));
    }
}

void require_intensity(LightKind kind, double n) {
    if (!(n >= 0.0) || !std::isfinite(n)) throw RangeError("intensity " + describe(n) + " must be >= 0");
    if (kind == LightKind::Squashed && !(n < 0.25)) {
        throw RangeError("squashed intensity " + describe(n) + " must be below 0.25");
    }
}

// Runs body(i) for i in [0, count) on a small worker pool; the first exception
// (lowest index) is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t count, Body body) {
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

LightParams light_at_intensity(LightKind kind, double n) {
    if (kind == LightKind::Vacuum) {
        if (n != 0.0) throw DomainError("vacuum has zero intensity");
        return LightParams::vacuum();
    }
    require_comparison_kind(kind);
    require_intensity(kind, n);
    switch (kind) {
        case LightKind::Squashed: return make_squashed(lambda_for_intensity(n), QuadratureSign::Plus);
        case LightKind::Squeezed: return make_squeezed_max(n, -1);
        default: return make_classical(n, -n);
    }
}

double p33_closed_form(LightKind kind, double n) {
    require_comparison_kind(kind);
    require_intensity(kind, n);
    switch (kind) {
        case LightKind::Squeezed: return n / (1.0 + 2.0 * n);
        case LightKind::Classical: return 2.0 * n * n / ((1.0 + 2.0 * n) * (1.0 + 3.0 * n));
        default: {
            const double root = std::sqrt(n);
            return 2.0 * n * n / (1.0 - root * (6.0 + 10.0 * n) + n * (13.0 + 6.0 * n));
        }
    }
}

double p33_numeric(LightKind kind, double n) {
    return steady_state(gen_3la_unified(light_at_intensity(kind, n))).population(3);
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi >= lo)) throw RangeError("log grid needs 0 < lo <= hi");
    if (points < 1) throw RangeError("log grid needs at least one point");
    if (points == 1) return {lo};
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (points - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<ScanRow> population_scan(const std::vector<LightKind>& kinds, const std::vector<double>& n_grid) {
    for (LightKind kind : kinds) {
        require_comparison_kind(kind);
        for (double n : n_grid) {
            require_intensity(kind, n);
            if (kind == LightKind::Squashed && n == 0.0) {
                throw RangeError("squashed intensity must be > 0");
            }
        }
    }
    std::vector<ScanRow> rows(kinds.size() * n_grid.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        ScanRow& row = rows[i];
        row.kind = kinds[i / n_grid.size()];
        row.intensity = n_grid[i % n_grid.size()];
        row.rho33_numeric = p33_numeric(row.kind, row.intensity);
        row.rho33_closed_form = p33_closed_form(row.kind, row.intensity);
        row.abs_error = std::abs(row.rho33_numeric - row.rho33_closed_form);
    });
    return rows;
}

double scaling_exponent(LightKind kind, double n_lo, double n_hi, int points) {
    require_comparison_kind(kind);
    if (!(n_lo > 0.0) || !(n_hi > n_lo)) {
        throw RangeError("scaling window needs 0 < n_lo < n_hi (got [" + describe(n_lo) + ", " +
                         describe(n_hi) + "])");
    }
    if (points < 2) throw RangeError("scaling fit needs at least two points");
    require_intensity(kind, n_hi);

    const auto grid = log_grid(n_lo, n_hi, points);
    const auto rows = population_scan({kind}, grid);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& row : rows) {
        if (!(row.rho33_numeric > 0.0)) throw NumericalError("non-positive rho33 in scaling fit");
        const double x = std::log(row.intensity);
        const double y = std::log(row.rho33_numeric);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double count = static_cast<double>(rows.size());
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

std::string_view to_string(CoherenceDirection direction) {
    return direction == CoherenceDirection::Down ? "down" : "up";
}

double leading_order_slope(LightKind kind, double n, CoherenceDirection direction) {
    require_comparison_kind(kind);
    require_intensity(kind, n);
    switch (kind) {
        case LightKind::Squashed:
            return direction == CoherenceDirection::Down ? -std::sqrt(n) : n / 2.0;
        case LightKind::Squeezed: return -std::sqrt(n) / 2.0;
        default: return -n / 2.0;
    }
}

std::vector<CoherenceSlopeRow> coherence_slope_table(const std::vector<LightKind>& kinds, double n,
                                                     CoherenceDirection direction) {
    std::vector<CoherenceSlopeRow> rows;
    const DensityMatrix start = direction == CoherenceDirection::Down ? DensityMatrix::level(3, 3)
                                                                      : DensityMatrix::level(3, 1);
    const LevelPair coherence{1, 3};
    for (LightKind kind : kinds) {
        const Generator g = gen_3la_unified(light_at_intensity(kind, n));
        rows.push_back(CoherenceSlopeRow{
            .kind = kind,
            .intensity = n,
            .direction = direction,
            .exact_slope = short_time_slope(g, start, coherence).real(),
            .finite_difference = finite_difference_slope(g, start, coherence).real(),
            .leading_order = leading_order_slope(kind, n, direction),
        });
    }
    return rows;
}

LightParams classical_from_feedback(double lambda) {
    if (!(lambda > -1.0) || !std::isfinite(lambda)) {
        throw RangeError("feedback parameter lambda = " + describe(lambda) + " must be > -1");
    }
    const double n = lambda * lambda / 4.0;
    return make_classical(n, n);
}

std::vector<PhasePoint> phase_contour(const LightParams& p, int points) {
    if (points < 1) throw RangeError("phase contour needs at least one point");
    const SpectraSet s = twin_beam_spectra(p);
    std::vector<PhasePoint> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / points;
        const double c = std::cos(theta);
        const double sn = std::sin(theta);
        out.push_back({theta, s.s_x * c * c + s.s_y * sn * sn});
    }
    return out;
}

}  // namespace twinbeam
