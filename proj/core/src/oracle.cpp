#include "twinbeam/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "twinbeam/dynamics.hpp"
#include "twinbeam/errors.hpp"
#include "twinbeam/master.hpp"

namespace twinbeam {

namespace {

constexpr double kSubspaceTolerance = 1e-12;

// exp(A) by Taylor series on A / 2^s followed by s squarings.
Eigen::Matrix4d taylor_exp(const Eigen::Matrix4d& a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    const Eigen::Matrix4d scaled = a / std::ldexp(1.0, squarings);

    Eigen::Matrix4d result = Eigen::Matrix4d::Identity();
    Eigen::Matrix4d term = Eigen::Matrix4d::Identity();
    for (int k = 1; k <= 20; ++k) {
        term = term * scaled / static_cast<double>(k);
        result += term;
    }
    for (int k = 0; k < squarings; ++k) result = result * result;
    return result;
}

}  // namespace

ReducedSystem::State ReducedSystem::propagate(const State& x0, double t) const {
    if (!(t >= 0.0)) throw RangeError("propagation time must be >= 0");
    return taylor_exp(matrix * t) * x0;
}

ReducedSystem::State ReducedSystem::steady_state() const {
    // Replace the rho33 equation by normalization rho11 + rho22 + rho33 = 1.
    Eigen::Matrix4d a = matrix;
    a.row(2) << 1.0, 1.0, 1.0, 0.0;
    State rhs(0.0, 0.0, 1.0, 0.0);
    return a.fullPivLu().solve(rhs);
}

ReducedSystem reduced_system(const LightParams& p) {
    const double down = 1.0 + p.n_down();
    const double up = p.n_up();
    const double md = p.m_down();
    const double mu = p.m_up();

    Eigen::Matrix4d m;
    // clang-format off
    m << -up,       down,               0.0,       md,
          up,      -down - up,          down,    -(md + mu),
          0.0,      up,                -down,      mu,
          0.5 * mu, -0.5 * (md + mu),   0.5 * md, -0.5 * (down + up);
    // clang-format on
    return ReducedSystem{m, p};
}

ReducedSystem::State reduced_state(const DensityMatrix& rho) {
    if (rho.dim() != 3) throw DimensionError("reduced system needs a cascade (3-level) state");
    const double one_photon = std::max({std::abs(rho.element(1, 2)), std::abs(rho.element(2, 3))});
    if (one_photon > kSubspaceTolerance) {
        throw DomainError("initial state has one-photon coherences; the reduced system does not apply");
    }
    return ReducedSystem::State(rho.population(1), rho.population(2), rho.population(3),
                                rho.element(1, 3).real());
}

double crosscheck(const LightParams& p, const DensityMatrix& rho0, const std::vector<double>& times) {
    const ReducedSystem reduced = reduced_system(p);
    const ReducedSystem::State x0 = reduced_state(rho0);
    const Generator full = gen_3la_unified(p);

    double deviation = 0.0;
    for (double t : times) {
        const ReducedSystem::State xr = reduced.propagate(x0, t);
        const ReducedSystem::State xf = reduced_state(evolve(full, rho0, t));
        deviation = std::max(deviation, (xr - xf).cwiseAbs().maxCoeff());
    }
    return deviation;
}

}  // namespace twinbeam
