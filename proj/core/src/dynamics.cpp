#include "twinbeam/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "twinbeam/errors.hpp"

namespace twinbeam {

namespace {

constexpr double kEvolveTraceTolerance = 1e-10;
constexpr double kSteadyResidualTolerance = 1e-10;
constexpr double kBlochClosureTolerance = 1e-12;

void require_matching_dim(const Generator& g, const DensityMatrix& rho) {
    if (g.dim() != rho.dim()) {
        throw DimensionError("state dimension " + std::to_string(rho.dim()) +
                             " does not match generator dimension " + std::to_string(g.dim()));
    }
}

void require_nonnegative_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        std::ostringstream os;
        os << "evolution time must be finite and >= 0, got " << t;
        throw RangeError(os.str());
    }
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

DensityMatrix finish_state(const Vector& v, int dim) {
    const Matrix m = devectorize(v, dim);
    const double drift = std::abs(m.trace() - 1.0);
    if (drift > kEvolveTraceTolerance) {
        std::ostringstream os;
        os << "propagated state lost normalization (trace error " << drift << ")";
        throw NumericalError(os.str());
    }
    return DensityMatrix::state(hermitize(m), kEvolveTraceTolerance);
}

Vector rk4_run(const Matrix& g, const Vector& y0, double t, int steps) {
    const double h = t / steps;
    Vector y = y0;
    for (int n = 0; n < steps; ++n) {
        const Vector k1 = g * y;
        const Vector k2 = g * (y + 0.5 * h * k1);
        const Vector k3 = g * (y + 0.5 * h * k2);
        const Vector k4 = g * (y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

}  // namespace

DensityMatrix steady_state(const Generator& g) {
    Eigen::ComplexEigenSolver<Matrix> solver(g.matrix(), true);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigen-decomposition of the generator failed");
    }
    const Vector& eigenvalues = solver.eigenvalues();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(eigenvalues.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(eigenvalues(a)) < std::abs(eigenvalues(b));
    });

    const Complex smallest = eigenvalues(order[0]);
    const Complex next = eigenvalues(order[1]);
    if (std::abs(smallest) >= kNullEigenvalueTolerance) {
        std::ostringstream os;
        os << "generator has no null vector (smallest |eigenvalue| " << std::abs(smallest) << ")";
        throw NumericalError(os.str());
    }
    if (std::abs(next - smallest) < kNullSpaceGap) {
        std::ostringstream os;
        os << "degenerate null space: second eigenvalue " << std::abs(next)
           << " is within the gap tolerance [" << g.provenance() << "]";
        throw NumericalError(os.str());
    }

    Matrix m = devectorize(solver.eigenvectors().col(order[0]), g.dim());
    const Complex tr = m.trace();
    if (std::abs(tr) < 1e-12) {
        throw NumericalError("null vector of the generator has zero trace");
    }
    m = hermitize(m / tr);
    m /= m.trace().real();

    const double residual = g.apply(m).cwiseAbs().maxCoeff();
    if (residual > kSteadyResidualTolerance) {
        std::ostringstream os;
        os << "steady-state residual " << residual << " exceeds tolerance";
        throw NumericalError(os.str());
    }
    return DensityMatrix::state(std::move(m));
}

DensityMatrix evolve(const Generator& g, const DensityMatrix& rho0, double t) {
    require_matching_dim(g, rho0);
    require_nonnegative_time(t);
    if (t == 0.0) return rho0;
    const Matrix propagator = (t * g.matrix()).exp();
    return finish_state(propagator * vectorize(rho0), g.dim());
}

DensityMatrix evolve_rk4(const Generator& g, const DensityMatrix& rho0, double t, double tolerance) {
    require_matching_dim(g, rho0);
    require_nonnegative_time(t);
    if (t == 0.0) return rho0;

    const double h0 = std::min(0.01, t / 100.0);
    int steps = static_cast<int>(std::ceil(t / h0 - 1e-9));
    const Vector y0 = vectorize(rho0);
    Vector coarse = rk4_run(g.matrix(), y0, t, steps);
    constexpr int kMaxHalvings = 10;
    for (int halving = 0; halving < kMaxHalvings; ++halving) {
        steps *= 2;
        Vector fine = rk4_run(g.matrix(), y0, t, steps);
        const double estimate = (fine - coarse).cwiseAbs().maxCoeff();
        if (estimate < tolerance) return finish_state(fine, g.dim());
        coarse = std::move(fine);
    }
    throw NumericalError("RK4 integration did not reach the requested tolerance");
}

Complex short_time_slope(const Generator& g, const DensityMatrix& rho0, LevelPair element) {
    require_matching_dim(g, rho0);
    if (element.row < 1 || element.col < 1 || element.row > g.dim() || element.col > g.dim()) {
        throw DimensionError("element (" + std::to_string(element.row) + "," +
                             std::to_string(element.col) + ") out of range");
    }
    return g.apply(rho0)(element.row - 1, element.col - 1);
}

Complex finite_difference_slope(const Generator& g, const DensityMatrix& rho0, LevelPair element) {
    // Validates the element before any propagation.
    short_time_slope(g, rho0, element);
    constexpr double kCoarse = 1e-4;
    constexpr double kFine = 1e-5;
    const Complex start = rho0.element(element.row, element.col);
    const Complex coarse = (evolve(g, rho0, kCoarse).element(element.row, element.col) - start) / kCoarse;
    const Complex fine = (evolve(g, rho0, kFine).element(element.row, element.col) - start) / kFine;
    constexpr double ratio = kCoarse / kFine;
    return (ratio * fine - coarse) / (ratio - 1.0);
}

BlochRates decay_rates_2la(const Generator& g) {
    if (g.dim() != 2) throw DimensionError("Bloch rates need a two-level generator");
    const auto& ops = two_level_ops();
    const Matrix* paulis[3] = {&ops.sigma_x, &ops.sigma_y, &ops.sigma_z};

    // d<s_j>/dt = sum_k A(j, k) <s_k> + b(j) with rho = (I + sum_k r_k s_k) / 2.
    Eigen::Matrix3d a;
    Eigen::Vector3d b;
    double imaginary = 0.0;
    const Matrix half_identity = 0.5 * ops.identity;
    const Matrix drift = g.apply(half_identity);
    for (int j = 0; j < 3; ++j) {
        const Complex bj = (drift * *paulis[j]).trace();
        b(j) = bj.real();
        imaginary = std::max(imaginary, std::abs(bj.imag()));
        for (int k = 0; k < 3; ++k) {
            const Complex ajk = (g.apply(Matrix(0.5 * *paulis[k])) * *paulis[j]).trace();
            a(j, k) = ajk.real();
            imaginary = std::max(imaginary, std::abs(ajk.imag()));
        }
    }
    // Trace preservation: no component along the identity.
    double trace_leak = std::abs(drift.trace());
    for (int k = 0; k < 3; ++k) {
        trace_leak = std::max(trace_leak, std::abs(g.apply(Matrix(0.5 * *paulis[k])).trace()));
    }

    double coupling = std::max({std::abs(b(0)), std::abs(b(1)), imaginary, trace_leak});
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            if (j != k) coupling = std::max(coupling, std::abs(a(j, k)));
        }
    }
    if (coupling > kBlochClosureTolerance) {
        std::ostringstream os;
        os << "Bloch equations do not close: cross-coupling " << coupling << " ["
           << g.provenance() << "]";
        throw NumericalError(os.str());
    }
    return BlochRates{.gamma_x = -a(0, 0), .gamma_y = -a(1, 1), .gamma_z = -a(2, 2), .c = -b(2)};
}

std::vector<std::string> observable_names(int dim) {
    if (dim == 3) return {"rho11", "rho22", "rho33", "re_rho13"};
    if (dim == 2) return {"rho11", "rho22", "re_rho12"};
    throw DimensionError("atomic dimension must be 2 or 3");
}

TransientTrace trajectory(const Generator& g, const DensityMatrix& rho0, const std::vector<double>& times,
                          Propagator propagator) {
    require_matching_dim(g, rho0);
    TransientTrace trace;
    const auto names = observable_names(g.dim());
    for (const auto& name : names) trace.observables[name] = {};

    double previous = 0.0;
    DensityMatrix current = rho0;
    for (std::size_t n = 0; n < times.size(); ++n) {
        const double t = times[n];
        require_nonnegative_time(t);
        if (n > 0 && !(t > times[n - 1])) {
            throw RangeError("trajectory times must be strictly increasing");
        }
        const double dt = t - previous;
        if (dt > 0.0) {
            current = propagator == Propagator::MatrixExponential ? evolve(g, current, dt)
                                                                  : evolve_rk4(g, current, dt);
        }
        previous = t;

        trace.times.push_back(t);
        trace.states.push_back(current);
        trace.observables["rho11"].push_back(current.population(1));
        trace.observables["rho22"].push_back(current.population(2));
        if (g.dim() == 3) {
            trace.observables["rho33"].push_back(current.population(3));
            trace.observables["re_rho13"].push_back(current.element(1, 3).real());
        } else {
            trace.observables["re_rho12"].push_back(current.element(1, 2).real());
        }
    }
    return trace;
}

}  // namespace twinbeam
