#pragma once

#include "twinbeam/light.hpp"
#include "twinbeam/superop.hpp"

namespace twinbeam {

/// Decay constants of the two-level Bloch equations
///   d<sx>/dt = -gamma_x <sx>,  d<sy>/dt = -gamma_y <sy>,
///   d<sz>/dt = -gamma_z <sz> - c,
/// in units of the natural linewidth.
struct BlochRates {
    double gamma_x = 0.0;
    double gamma_y = 0.0;
    double gamma_z = 0.0;
    double c = 0.0;
};

/// Two-level atom in broadband light with effective N/M parameters:
///   (1+N_D) D[s] + N_U D[s^dag] - (M_D+M_U)/2 (s.s + s^dag.s^dag).
Generator gen_2la_unified(const LightParams& p);

/// Two-level atom in minimum-uncertainty squeezed light written as a single
/// dissipator, (1/4L) D[(L+1) s - (L-1) s^dag]. Requires l > 0.
Generator gen_2la_squeezed_direct(double l);

/// Two-level atom inside a broadband homodyne feedback loop:
///   D[s] - i(lambda/2)[s_y, s rho + rho s^dag] + (lambda^2/4) D[s_y].
/// Requires lambda > -1; values outside (-1, 0) are allowed but do not squash.
Generator gen_2la_squashed_direct(double lambda);

/// Cascade atom, unified form. gamma1 = gamma2 = 1.
Generator gen_3la_unified(const LightParams& p);

/// Cascade atom in a general squeezed twin-beam (per-transition decay rates
/// and intensities, complex M).
Generator gen_3la_squeezed_general(const GeneralTwinParams& p);

/// Cascade atom in twin-beam squashed light as derived from the double
/// feedback loop. Minus negates the lambda/2 and lambda^2/8 groups.
/// Requires lambda > -1.
Generator gen_3la_squashed_direct(double lambda, QuadratureSign sign = QuadratureSign::Plus);

/// Closed-form Bloch rates for gen_2la_unified(p):
///   gamma_x = (1+N_U+N_D+M_U+M_D)/2, gamma_y = (1+N_U+N_D-M_U-M_D)/2,
///   gamma_z = gamma_x + gamma_y,     c = 1 + N_D - N_U.
BlochRates bloch_rates(const LightParams& p);

}  // namespace twinbeam
