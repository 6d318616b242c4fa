#include "twinbeam/light.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "twinbeam/errors.hpp"

namespace twinbeam {

namespace {

std::string describe(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_finite(double v, std::string_view name) {
    if (!std::isfinite(v)) {
        throw RangeError(std::string(name) + " must be finite");
    }
}

void require_nonnegative_spectra(const SpectraSet& s) {
    if (s.s_x < -kLightTolerance || s.s_y < -kLightTolerance) {
        throw DomainError("quadrature spectra must be non-negative (S_X = " + describe(s.s_x) +
                          ", S_Y = " + describe(s.s_y) + ")");
    }
}

}  // namespace

std::string_view to_string(LightKind kind) {
    switch (kind) {
        case LightKind::Squashed: return "squashed";
        case LightKind::Squeezed: return "squeezed";
        case LightKind::Classical: return "classical";
        case LightKind::Vacuum: return "vacuum";
        case LightKind::Custom: return "custom";
    }
    return "unknown";
}

LightKind light_kind_from_string(std::string_view name) {
    for (auto kind : {LightKind::Squashed, LightKind::Squeezed, LightKind::Classical,
                      LightKind::Vacuum, LightKind::Custom}) {
        if (to_string(kind) == name) return kind;
    }
    throw DomainError("unknown light kind '" + std::string(name) +
                      "' (expected squashed, squeezed, classical, vacuum or custom)");
}

LightParams LightParams::vacuum() { return LightParams(0.0, 0.0, 0.0, 0.0, LightKind::Vacuum); }

LightParams LightParams::custom(double n_up, double n_down, double m_up, double m_down) {
    for (double v : {n_up, n_down, m_up, m_down}) require_finite(v, "custom light rate");
    LightParams p(n_up, n_down, m_up, m_down, LightKind::Custom);
    require_nonnegative_spectra(twin_beam_spectra(p));
    return p;
}

LightParams make_squashed(double lambda, QuadratureSign sign) {
    if (!(lambda > -1.0 && lambda < 0.0)) {
        throw RangeError("squashing parameter lambda = " + describe(lambda) +
                         " must lie in the open interval (-1, 0)");
    }
    const double n_up = lambda * lambda / 4.0;
    const double n_down = lambda + n_up;
    const double s = sign == QuadratureSign::Plus ? 1.0 : -1.0;
    return LightParams(n_up, n_down, s * n_up, s * n_down, LightKind::Squashed);
}

LightParams make_squeezed_max(double n, int sign_of_m) {
    if (sign_of_m != 1 && sign_of_m != -1) {
        throw DomainError("sign of M must be +1 or -1");
    }
    require_finite(n, "n");
    if (n < 0.0) throw RangeError("photon number n = " + describe(n) + " must be >= 0");
    return make_squeezed(n, sign_of_m * std::sqrt(n * (n + 1.0)));
}

LightParams make_squeezed(double n, double m) {
    require_finite(n, "n");
    require_finite(m, "m");
    if (n < 0.0) throw RangeError("photon number n = " + describe(n) + " must be >= 0");
    if (std::abs(m) > std::sqrt(n * (n + 1.0)) + kLightTolerance) {
        throw DomainError("squeezed correlation violates |M| <= sqrt(N(N+1)) (N = " + describe(n) +
                          ", M = " + describe(m) + ")");
    }
    return LightParams(n, n, m, m, LightKind::Squeezed);
}

LightParams make_classical(double n, double m) {
    require_finite(n, "n");
    require_finite(m, "m");
    if (n < 0.0) throw RangeError("photon number n = " + describe(n) + " must be >= 0");
    if (std::abs(m) > n + kLightTolerance) {
        throw DomainError("classically impossible correlation: |M| <= N required (N = " +
                          describe(n) + ", M = " + describe(m) + ")");
    }
    return LightParams(n, n, m, m, LightKind::Classical);
}

double intensity(const LightParams& p) { return p.n_up(); }

double lambda_for_intensity(double n) {
    if (!(n > 0.0 && n < 0.25)) {
        throw RangeError("squashed intensity " + describe(n) +
                         " must lie in the open interval (0, 0.25)");
    }
    return -2.0 * std::sqrt(n);
}

SpectraSet twin_beam_spectra(const LightParams& p) {
    const double n_sum = p.n_up() + p.n_down();
    const double m_sum = p.m_up() + p.m_down();
    const double plus = 1.0 + n_sum + m_sum;
    const double minus = 1.0 + n_sum - m_sum;
    return SpectraSet{
        .s_x = plus,
        .s_y = minus,
        .s_x_plus = plus,
        .s_y_plus = minus,
        .s_x_minus = minus,
        .s_y_minus = plus,
    };
}

GeneralTwinParams GeneralTwinParams::make(double gamma1, double gamma2, double n1, double n2,
                                          std::complex<double> m) {
    for (double v : {gamma1, gamma2, n1, n2, m.real(), m.imag()}) {
        require_finite(v, "twin-beam parameter");
    }
    if (gamma1 < 0.0 || gamma2 < 0.0) throw RangeError("decay rates must be >= 0");
    if (n1 < 0.0 || n2 < 0.0) throw RangeError("photon numbers must be >= 0");
    const double bound = n1 * n2 + std::min(n1, n2);
    if (std::norm(m) > bound + kLightTolerance) {
        throw DomainError("twin-beam correlation violates |M|^2 <= N1 N2 + min(N1, N2) (|M|^2 = " +
                          describe(std::norm(m)) + ", bound = " + describe(bound) + ")");
    }
    return GeneralTwinParams(gamma1, gamma2, n1, n2, m);
}

}  // namespace twinbeam
