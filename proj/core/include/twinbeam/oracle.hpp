#pragma once

#include <Eigen/Dense>
#include <vector>

#include "twinbeam/light.hpp"
#include "twinbeam/superop.hpp"

namespace twinbeam {

/// Populations and two-photon coherence of the cascade atom, written out by
/// hand from the unified master equation. With r = Re rho13:
///
///   d rho11/dt = (1+N_D) rho22 - N_U rho11 + M_D r
///   d rho22/dt = (1+N_D)(rho33 - rho22) + N_U (rho11 - rho22) - (M_D+M_U) r
///   d rho33/dt = -(1+N_D) rho33 + N_U rho22 + M_U r
///   d r/dt     = -(1+N_D+N_U) r / 2 + M_D (rho33 - rho22) / 2 + M_U (rho11 - rho22) / 2
///
/// This path deliberately avoids the superoperator machinery so that it can
/// serve as an independent check of the full 9x9 generator.
struct ReducedSystem {
    using State = Eigen::Vector4d;  ///< (rho11, rho22, rho33, Re rho13)

    Eigen::Matrix4d matrix;
    LightParams params;

    State derivative(const State& x) const { return matrix * x; }
    State propagate(const State& x0, double t) const;
    State steady_state() const;
};

ReducedSystem reduced_system(const LightParams& p);

/// Projects a cascade state onto the reduced variables. Throws DomainError if
/// rho12 or rho23 are non-zero (outside the invariant subspace).
ReducedSystem::State reduced_state(const DensityMatrix& rho);

/// Max |deviation| of (rho11, rho22, rho33, Re rho13) between the reduced
/// system and the full unified generator over `times`.
double crosscheck(const LightParams& p, const DensityMatrix& rho0, const std::vector<double>& times);

}  // namespace twinbeam
