#pragma once

#include <map>
#include <string>
#include <vector>

#include "twinbeam/master.hpp"
#include "twinbeam/superop.hpp"

namespace twinbeam {

/// Eigenvalue below which a generator eigenvalue counts as zero, and the
/// minimum gap to the next one for the null space to count as one-dimensional.
inline constexpr double kNullEigenvalueTolerance = 1e-10;
inline constexpr double kNullSpaceGap = 1e-6;

/// Unique stationary state of `g`. Throws NumericalError when the null space
/// is not one-dimensional, the null vector has zero trace, or the residual
/// max |G(rho_ss)| exceeds 1e-10.
DensityMatrix steady_state(const Generator& g);

/// exp(t G) rho0 via scaling-and-squaring. Throws RangeError for t < 0 and
/// NumericalError if the trace drifts by more than 1e-10.
DensityMatrix evolve(const Generator& g, const DensityMatrix& rho0, double t);

/// Same map integrated with classical RK4 at step min(0.01, t/100), halving the
/// step until successive solutions agree within `tolerance`.
DensityMatrix evolve_rk4(const Generator& g, const DensityMatrix& rho0, double t,
                         double tolerance = 1e-10);

/// d rho_ij / dt at t = 0, i.e. G(rho0)_ij (1-based labels).
Complex short_time_slope(const Generator& g, const DensityMatrix& rho0, LevelPair element);

/// The same derivative estimated from evolve() at t = 1e-4 and 1e-5 with one
/// Richardson step removing the O(t) term of the forward difference.
Complex finite_difference_slope(const Generator& g, const DensityMatrix& rho0, LevelPair element);

/// Reads gamma_x, gamma_y, gamma_z and c off a two-level generator by applying
/// it to the Pauli basis. Throws NumericalError if the Bloch equations do not
/// close (cross-coupling above 1e-12).
BlochRates decay_rates_2la(const Generator& g);

enum class Propagator { MatrixExponential, RungeKutta };

struct TransientTrace {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    /// rho11, rho22, rho33, re_rho13 for the cascade atom; rho11, rho22,
    /// re_rho12 for the two-level atom.
    std::map<std::string, std::vector<double>> observables;
};

/// Names of the observable series recorded for a given atomic dimension, in
/// output column order.
std::vector<std::string> observable_names(int dim);

/// Evolves rho0 to each of `times` (strictly increasing, >= 0) by stepping
/// between consecutive times.
TransientTrace trajectory(const Generator& g, const DensityMatrix& rho0,
                          const std::vector<double>& times,
                          Propagator propagator = Propagator::MatrixExponential);

}  // namespace twinbeam
