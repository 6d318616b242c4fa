#pragma once

#include <complex>
#include <string_view>

namespace twinbeam {

enum class LightKind { Squashed, Squeezed, Classical, Vacuum, Custom };

/// Which pair of twin-beam quadratures carries the reduced (or added) noise.
/// Plus: X+ and Y-, Minus: Y+ and X-.
enum class QuadratureSign { Plus, Minus };

std::string_view to_string(LightKind kind);
LightKind light_kind_from_string(std::string_view name);

/// Absolute tolerance used by every invariant check on light parameters.
inline constexpr double kLightTolerance = 1e-12;

/// Broadband light described by its effective upward/downward one-photon
/// rates (N_U, N_D) and two-photon correlation rates (M_U, M_D).
///
/// Instances are only produced by the factory functions below, each of which
/// enforces the constraints of its light kind. Squeezed and classical light
/// have N_U = N_D and M_U = M_D; squashed (in-loop) light does not.
class LightParams {
public:
    static LightParams vacuum();

    /// Arbitrary rates; only non-negativity of the quadrature spectra is enforced.
    static LightParams custom(double n_up, double n_down, double m_up, double m_down);

    double n_up() const { return n_up_; }
    double n_down() const { return n_down_; }
    double m_up() const { return m_up_; }
    double m_down() const { return m_down_; }
    LightKind kind() const { return kind_; }

    /// 1 + N_U + N_D + M_U + M_D, which reduces to L = 1 + 2N + 2M for
    /// symmetric (squeezed or classical) light.
    double quadrature_l() const { return 1.0 + n_up_ + n_down_ + m_up_ + m_down_; }

    friend bool operator==(const LightParams&, const LightParams&) = default;

private:
    LightParams(double n_up, double n_down, double m_up, double m_down, LightKind kind)
        : n_up_(n_up), n_down_(n_down), m_up_(m_up), m_down_(m_down), kind_(kind) {}

    friend LightParams make_squashed(double, QuadratureSign);
    friend LightParams make_squeezed(double, double);
    friend LightParams make_classical(double, double);

    double n_up_ = 0.0;
    double n_down_ = 0.0;
    double m_up_ = 0.0;
    double m_down_ = 0.0;
    LightKind kind_ = LightKind::Vacuum;
};

/// In-loop light from broadband feedback with parameter lambda in (-1, 0):
/// N_U = lambda^2/4, N_D = lambda + lambda^2/4, M = +-N.
/// Throws RangeError outside (-1, 0).
LightParams make_squashed(double lambda, QuadratureSign sign = QuadratureSign::Plus);

/// Minimum-uncertainty squeezed light: N_U = N_D = n, M = sign * sqrt(n(n+1)).
/// `sign_of_m` must be +1 or -1.
LightParams make_squeezed_max(double n, int sign_of_m = -1);

/// General squeezed light with real correlation, |m| <= sqrt(n(n+1)).
LightParams make_squeezed(double n, double m);

/// Classically correlated noise, |m| <= n. Throws DomainError otherwise.
LightParams make_classical(double n, double m);

/// Photon-flux intensity, equal to N_U for all light kinds.
double intensity(const LightParams& p);

/// Feedback parameter giving squashed light of intensity n: lambda = -2 sqrt(n).
/// Requires 0 < n < 0.25.
double lambda_for_intensity(double n);

/// Broadband quadrature spectra of the single beam (X, Y) and of the twin-beam
/// combinations (X+-, Y+-).
struct SpectraSet {
    double s_x = 1.0;
    double s_y = 1.0;
    double s_x_plus = 1.0;
    double s_y_plus = 1.0;
    double s_x_minus = 1.0;
    double s_y_minus = 1.0;
};

SpectraSet twin_beam_spectra(const LightParams& p);

/// Parameters of the un-simplified twin-beam squeezed master equation, with
/// separate decay rates and intensities per transition and complex M.
class GeneralTwinParams {
public:
    /// Throws RangeError on negative rates/intensities and DomainError when
    /// |m|^2 > n1 n2 + min(n1, n2).
    static GeneralTwinParams make(double gamma1, double gamma2, double n1, double n2,
                                  std::complex<double> m);

    double gamma1() const { return gamma1_; }
    double gamma2() const { return gamma2_; }
    double n1() const { return n1_; }
    double n2() const { return n2_; }
    std::complex<double> m() const { return m_; }

private:
    GeneralTwinParams(double gamma1, double gamma2, double n1, double n2, std::complex<double> m)
        : gamma1_(gamma1), gamma2_(gamma2), n1_(n1), n2_(n2), m_(m) {}

    double gamma1_;
    double gamma2_;
    double n1_;
    double n2_;
    std::complex<double> m_;
};

}  // namespace twinbeam
