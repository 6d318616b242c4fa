#include "twinbeam/master.hpp"

#include <cmath>
#include <sstream>

#include "twinbeam/errors.hpp"

namespace twinbeam {

namespace {

std::string fmt_params(const LightParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << to_string(p.kind()) << " N_U=" << p.n_up() << " N_D=" << p.n_down()
       << " M_U=" << p.m_up() << " M_D=" << p.m_down();
    return os.str();
}

void require_lambda_above_minus_one(double lambda) {
    if (!(lambda > -1.0) || !std::isfinite(lambda)) {
        std::ostringstream os;
        os.precision(17);
        os << "feedback parameter lambda = " << lambda << " must be > -1";
        throw RangeError(os.str());
    }
}

}  // namespace

Generator gen_2la_unified(const LightParams& p) {
    const auto& ops = two_level_ops();
    Generator g = (1.0 + p.n_down()) * dissipator(ops.sigma) +
                  p.n_up() * dissipator(ops.sigma.adjoint()) -
                  0.5 * (p.m_down() + p.m_up()) * sandwich_sum(ops.sigma, ops.sigma);
    return g.with_provenance("2LA unified: " + fmt_params(p));
}

Generator gen_2la_squeezed_direct(double l) {
    if (!(l > 0.0) || !std::isfinite(l)) {
        throw RangeError("squeezing parameter L must be > 0");
    }
    const auto& ops = two_level_ops();
    const Matrix jump = (l + 1.0) * ops.sigma - (l - 1.0) * ops.sigma.adjoint();
    std::ostringstream os;
    os.precision(17);
    os << "2LA squeezed direct: L=" << l;
    return ((1.0 / (4.0 * l)) * dissipator(jump)).with_provenance(os.str());
}

Generator gen_2la_squashed_direct(double lambda) {
    require_lambda_above_minus_one(lambda);
    const auto& ops = two_level_ops();
    const Complex i(0.0, 1.0);
    // [s_y, s rho + rho s^dag]
    const Generator feedback =
        compose(commutator(ops.sigma_y), left_multiply(ops.sigma) + right_multiply(ops.sigma.adjoint()));
    Generator g = dissipator(ops.sigma) + (-i * lambda / 2.0) * feedback +
                  (lambda * lambda / 4.0) * dissipator(ops.sigma_y);
    std::ostringstream os;
    os.precision(17);
    os << "2LA squashed direct: lambda=" << lambda;
    return g.with_provenance(os.str());
}

Generator gen_3la_unified(const LightParams& p) {
    const auto& ops = cascade_ops();
    const Matrix s1d = ops.s1.adjoint();
    const Matrix s2d = ops.s2.adjoint();
    Generator g = (1.0 + p.n_down()) * (dissipator(ops.s1) + dissipator(ops.s2)) +
                  p.n_up() * (dissipator(s1d) + dissipator(s2d)) +
                  0.5 * p.m_down() * (double_commutator(ops.s1, ops.s2) + double_commutator(s1d, s2d)) +
                  0.5 * p.m_up() * (double_commutator(ops.s2, ops.s1) + double_commutator(s2d, s1d));
    return g.with_provenance("3LA unified: " + fmt_params(p));
}

Generator gen_3la_squeezed_general(const GeneralTwinParams& p) {
    const auto& ops = cascade_ops();
    const Matrix s1d = ops.s1.adjoint();
    const Matrix s2d = ops.s2.adjoint();
    const double g1 = p.gamma1();
    const double g2 = p.gamma2();
    const double root = std::sqrt(g1 * g2);
    const Complex m = p.m();
    Generator g = (1.0 + p.n1()) * g1 * dissipator(ops.s1) + (1.0 + p.n2()) * g2 * dissipator(ops.s2) +
                  p.n1() * g1 * dissipator(s1d) + p.n2() * g2 * dissipator(s2d) +
                  (0.5 * std::conj(m) * root) *
                      (double_commutator(ops.s1, ops.s2) + double_commutator(ops.s2, ops.s1)) +
                  (0.5 * m * root) * (double_commutator(s1d, s2d) + double_commutator(s2d, s1d));
    std::ostringstream os;
    os.precision(17);
    os << "3LA squeezed general: gamma1=" << g1 << " gamma2=" << g2 << " N1=" << p.n1()
       << " N2=" << p.n2() << " M=" << m.real() << (m.imag() < 0 ? "-" : "+") << std::abs(m.imag())
       << "i";
    return g.with_provenance(os.str());
}

Generator gen_3la_squashed_direct(double lambda, QuadratureSign sign) {
    require_lambda_above_minus_one(lambda);
    const auto& ops = cascade_ops();
    const Matrix s1d = ops.s1.adjoint();
    const Matrix s2d = ops.s2.adjoint();
    const double s = sign == QuadratureSign::Plus ? 1.0 : -1.0;
    const double l2 = lambda * lambda;
    const Generator down_pair = double_commutator(ops.s1, ops.s2) + double_commutator(s1d, s2d);
    const Generator up_pair = double_commutator(ops.s2, ops.s1) + double_commutator(s2d, s1d);
    Generator g = (1.0 + lambda + l2 / 4.0) * (dissipator(ops.s1) + dissipator(ops.s2)) +
                  (l2 / 4.0) * (dissipator(s1d) + dissipator(s2d)) + (s * lambda / 2.0) * down_pair +
                  (s * l2 / 8.0) * (down_pair + up_pair);
    std::ostringstream os;
    os.precision(17);
    os << "3LA squashed direct: lambda=" << lambda << " sign=" << (s > 0 ? "plus" : "minus");
    return g.with_provenance(os.str());
}

BlochRates bloch_rates(const LightParams& p) {
    const double n = p.n_up() + p.n_down();
    const double m = p.m_up() + p.m_down();
    BlochRates r;
    r.gamma_x = 0.5 * (1.0 + n + m);
    r.gamma_y = 0.5 * (1.0 + n - m);
    r.gamma_z = r.gamma_x + r.gamma_y;
    r.c = 1.0 + p.n_down() - p.n_up();
    return r;
}

}  // namespace twinbeam
