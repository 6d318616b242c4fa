#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "twinbeam/errors.hpp"
#include "twinbeam/light.hpp"

namespace twinbeam {
namespace {

using testing::uniform;

// sqrt(0.1 * 1.1) and L = 1 + 2N + 2M, evaluated with 40-digit arithmetic.
constexpr double kSqrt011 = 0.33166247903553998491;
constexpr double kSqueezedL = 0.53667504192892003018;

void expect_params(const LightParams& p, double nu, double nd, double mu, double md) {
    EXPECT_NEAR(p.n_up(), nu, 1e-15);
    EXPECT_NEAR(p.n_down(), nd, 1e-15);
    EXPECT_NEAR(p.m_up(), mu, 1e-15);
    EXPECT_NEAR(p.m_down(), md, 1e-15);
}

TEST(MakeSquashed, SubstitutesLambda) {
    expect_params(make_squashed(-0.5, QuadratureSign::Plus), 0.0625, -0.4375, 0.0625, -0.4375);
    expect_params(make_squashed(-0.5, QuadratureSign::Minus), 0.0625, -0.4375, -0.0625, 0.4375);
    EXPECT_EQ(make_squashed(-0.5).kind(), LightKind::Squashed);
}

TEST(MakeSquashed, OptimalEndpointFormula) {
    // lambda = -1 itself is excluded; the formula approaches (0.25, -0.75).
    const auto p = make_squashed(-1.0 + 1e-12);
    EXPECT_NEAR(p.n_up(), 0.25, 1e-11);
    EXPECT_NEAR(p.n_down(), -0.75, 1e-11);
    EXPECT_NEAR(p.m_up(), 0.25, 1e-11);
    EXPECT_NEAR(p.m_down(), -0.75, 1e-11);
}

TEST(MakeSquashed, RejectsLambdaOutsideOpenInterval) {
    EXPECT_THROW(make_squashed(-1.0), RangeError);
    EXPECT_THROW(make_squashed(0.0), RangeError);
    EXPECT_THROW(make_squashed(0.3), RangeError);
    EXPECT_THROW(make_squashed(std::nan("")), RangeError);
    try {
        make_squashed(-1.5);
        FAIL();
    } catch (const RangeError& e) {
        EXPECT_NE(std::string(e.what()).find("(-1, 0)"), std::string::npos);
    }
}

TEST(MakeSqueezedMax, ZeroPhotonsIsVacuumEquivalent) {
    for (int sign : {1, -1}) {
        const auto p = make_squeezed_max(0.0, sign);
        expect_params(p, 0, 0, 0, 0);
    }
}

TEST(MakeSqueezedMax, MinimumUncertaintyCorrelation) {
    const auto p = make_squeezed_max(0.1, -1);
    expect_params(p, 0.1, 0.1, -kSqrt011, -kSqrt011);
    EXPECT_NEAR(p.quadrature_l(), kSqueezedL, 1e-15);
    EXPECT_THROW(make_squeezed_max(-0.1, 1), RangeError);
    EXPECT_THROW(make_squeezed_max(0.1, 0), DomainError);
}

TEST(MakeSqueezed, EnforcesUncertaintyBound) {
    EXPECT_NO_THROW(make_squeezed(0.1, 0.2));
    EXPECT_THROW(make_squeezed(0.1, 0.34), DomainError);
}

TEST(MakeClassical, BoundsCorrelationByIntensity) {
    expect_params(make_classical(0.1, -0.1), 0.1, 0.1, -0.1, -0.1);
    const auto s = twin_beam_spectra(make_classical(0.1, 0.0));
    EXPECT_NEAR(s.s_x, 1.2, 1e-15);
    EXPECT_NEAR(s.s_y, 1.2, 1e-15);
    try {
        make_classical(0.1, -0.2);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("|M| <= N"), std::string::npos);
    }
}

TEST(Custom, OnlyRequiresNonNegativeSpectra) {
    EXPECT_NO_THROW(LightParams::custom(0.3, 0.1, 0.2, -0.4));
    EXPECT_THROW(LightParams::custom(0.0, 0.0, -1.0, -1.0), DomainError);
    EXPECT_EQ(LightParams::custom(0, 0, 0, 0).kind(), LightKind::Custom);
}

TEST(Intensity, EqualsUpwardRate) {
    EXPECT_DOUBLE_EQ(intensity(make_squashed(-0.5)), 0.0625);
    EXPECT_DOUBLE_EQ(intensity(LightParams::vacuum()), 0.0);
    EXPECT_DOUBLE_EQ(intensity(make_squeezed_max(0.1)), 0.1);
}

TEST(LambdaForIntensity, ExactSquaresAndBoundaries) {
    EXPECT_DOUBLE_EQ(lambda_for_intensity(0.0625), -0.5);
    EXPECT_NEAR(lambda_for_intensity(0.01), -0.2, 1e-16);
    EXPECT_THROW(lambda_for_intensity(0.25), RangeError);
    EXPECT_THROW(lambda_for_intensity(0.0), RangeError);
    EXPECT_THROW(lambda_for_intensity(-0.1), RangeError);
}

TEST(LambdaForIntensity, RoundTripOnLogGrid) {
    for (int k = 0; k <= 200; ++k) {
        const double n = std::exp(std::log(1e-6) + (std::log(0.2499) - std::log(1e-6)) * k / 200.0);
        for (auto sign : {QuadratureSign::Plus, QuadratureSign::Minus}) {
            EXPECT_NEAR(intensity(make_squashed(lambda_for_intensity(n), sign)), n, 1e-14) << n;
        }
    }
}

TEST(TwinBeamSpectra, SquashedSpectrumIsSquareOfOnePlusLambda) {
    for (double lambda : {-0.9, -0.5, -0.1}) {
        const auto s = twin_beam_spectra(make_squashed(lambda));
        EXPECT_NEAR(s.s_x, 1.0 + 2.0 * lambda + lambda * lambda, 1e-15);
        EXPECT_NEAR(s.s_y, 1.0, 1e-15);
    }
    EXPECT_NEAR(twin_beam_spectra(make_squashed(-0.5)).s_x, 0.25, 1e-15);
}

TEST(TwinBeamSpectra, SqueezedIsMinimumUncertainty) {
    const auto s = twin_beam_spectra(make_squeezed_max(0.1, -1));
    EXPECT_NEAR(s.s_x, kSqueezedL, 1e-15);
    EXPECT_NEAR(s.s_y, 1.0 / kSqueezedL, 1e-14);
    EXPECT_NEAR(s.s_x * s.s_y, 1.0, 1e-14);
}

TEST(TwinBeamSpectra, ClassicalAddsNoiseToOneQuadrature) {
    const auto s = twin_beam_spectra(make_classical(0.1, -0.1));
    EXPECT_NEAR(s.s_x, 1.0, 1e-15);
    EXPECT_NEAR(s.s_y, 1.4, 1e-15);
}

TEST(TwinBeamSpectra, VacuumIsShotNoise) {
    const auto s = twin_beam_spectra(LightParams::vacuum());
    for (double v : {s.s_x, s.s_y, s.s_x_plus, s.s_y_plus, s.s_x_minus, s.s_y_minus}) EXPECT_EQ(v, 1.0);
}

// Property sweeps over random parameters of each kind.
TEST(LightProperties, HeisenbergAndClassicalBounds) {
    for (int trial = 0; trial < 500; ++trial) {
        const double n = uniform(0.0, 2.0);
        const double m_sq = uniform(-1.0, 1.0) * std::sqrt(n * (n + 1.0));
        const auto sq = twin_beam_spectra(make_squeezed(n, m_sq));
        EXPECT_GE(sq.s_x * sq.s_y, 1.0 - 1e-12);
        const auto sq_max = twin_beam_spectra(make_squeezed_max(n, trial % 2 ? 1 : -1));
        EXPECT_NEAR(sq_max.s_x * sq_max.s_y, 1.0, 1e-12);

        const auto cl = twin_beam_spectra(make_classical(n, uniform(-1.0, 1.0) * n));
        EXPECT_GE(std::min(cl.s_x, cl.s_y), 1.0 - 1e-12);

        const double lambda = uniform(-0.999, -1e-6);
        const auto sh = twin_beam_spectra(make_squashed(lambda, QuadratureSign::Plus));
        EXPECT_LT(sh.s_x, 1.0);
        EXPECT_EQ(sh.s_y, 1.0);
        EXPECT_LT(sh.s_x * sh.s_y, 1.0);

        for (const auto& s : {sq, cl, sh}) {
            EXPECT_EQ(s.s_x_plus, s.s_y_minus);
            EXPECT_EQ(s.s_x_minus, s.s_y_plus);
            EXPECT_GE(s.s_x, 0.0);
            EXPECT_GE(s.s_y, 0.0);
        }
    }
}

TEST(LightKindNames, RoundTrip) {
    for (auto kind : {LightKind::Squashed, LightKind::Squeezed, LightKind::Classical, LightKind::Vacuum,
                      LightKind::Custom}) {
        EXPECT_EQ(light_kind_from_string(to_string(kind)), kind);
    }
    EXPECT_THROW(light_kind_from_string("thermal"), DomainError);
}

TEST(GeneralTwinParams, CorrelationBound) {
    EXPECT_NO_THROW(GeneralTwinParams::make(1, 1, 0.1, 0.1, {-std::sqrt(0.11), 0.0}));
    EXPECT_NO_THROW(GeneralTwinParams::make(1, 2, 0.1, 0.3, std::polar(std::sqrt(0.13), 0.7)));
    EXPECT_THROW(GeneralTwinParams::make(1, 1, 0.1, 0.1, {0.34, 0.0}), DomainError);
    EXPECT_THROW(GeneralTwinParams::make(-1, 1, 0.1, 0.1, {}), RangeError);
    EXPECT_THROW(GeneralTwinParams::make(1, 1, -0.1, 0.1, {}), RangeError);
}

}  // namespace
}  // namespace twinbeam
