#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace twinbeam {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Level labels are 1-based to match the usual rho_ij notation: for the
/// cascade atom 1 is the ground level and 3 the top level; for the two-level
/// atom 1 is ground and 2 excited.
struct LevelPair {
    int row = 1;
    int col = 1;
};

/// A physical atomic state: Hermitian, unit trace, positive semidefinite,
/// dimension 2 or 3. Construction through `state()` validates all of that.
class DensityMatrix {
public:
    static constexpr double kHermitianTolerance = 1e-12;
    static constexpr double kTraceTolerance = 1e-12;
    static constexpr double kPositivityTolerance = 1e-10;

    /// Throws DimensionError for bad shapes and NumericalError when `m` is not
    /// a valid state within the tolerances above. Propagators that have already
    /// bounded their own trace drift may pass a looser `trace_tolerance`.
    static DensityMatrix state(Matrix m, double trace_tolerance = kTraceTolerance);

    /// |k><k| with 1-based level label k.
    static DensityMatrix level(int dim, int k);
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

    /// rho_ij with 1-based labels.
    Complex element(int i, int j) const;
    double population(int k) const { return element(k, k).real(); }

    double min_eigenvalue() const;

private:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

/// max |m - m^dagger|
double hermiticity_error(const Matrix& m);

/// Column stacking: entry (i, j) of a d x d matrix lands at index i + d*j.
Vector vectorize(const Matrix& m);
Vector vectorize(const DensityMatrix& rho);
Matrix devectorize(const Vector& v, int dim);

/// A linear map rho -> G(rho) on d x d matrices, stored as the d^2 x d^2 matrix
/// acting on vec(rho). With column stacking, X rho Y has matrix (Y^T kron X).
class Generator {
public:
    Generator(int dim, Matrix matrix, std::string provenance = {});

    static Generator zero(int dim);

    int dim() const { return dim_; }
    const Matrix& matrix() const { return matrix_; }
    const std::string& provenance() const { return provenance_; }

    Generator with_provenance(std::string description) const;

    Matrix apply(const Matrix& rho) const;
    Matrix apply(const DensityMatrix& rho) const { return apply(rho.matrix()); }

    Generator& operator+=(const Generator& other);
    Generator& operator-=(const Generator& other);
    Generator& operator*=(Complex c);

private:
    int dim_;
    Matrix matrix_;
    std::string provenance_;
};

Generator operator+(Generator a, const Generator& b);
Generator operator-(Generator a, const Generator& b);
Generator operator*(Complex c, Generator g);
Generator operator*(double c, Generator g);

/// Composition: (a * b)(rho) = a(b(rho)).
Generator compose(const Generator& a, const Generator& b);

/// Largest entrywise difference between two generators of the same dimension.
double max_abs_difference(const Generator& a, const Generator& b);

/// rho -> A rho
Generator left_multiply(const Matrix& a);
/// rho -> rho B
Generator right_multiply(const Matrix& b);
/// rho -> A rho B
Generator sandwich(const Matrix& a, const Matrix& b);
/// rho -> [A, rho]
Generator commutator(const Matrix& a);

/// D[A] rho = A rho A^dagger - 1/2 {A^dagger A, rho}
Generator dissipator(const Matrix& a);

/// rho -> [A, [B, rho]]
Generator double_commutator(const Matrix& a, const Matrix& b);

/// rho -> A rho B + B^dagger rho A^dagger
Generator sandwich_sum(const Matrix& a, const Matrix& b);

/// Two-level atom operators; basis index 0 = ground, 1 = excited.
struct TwoLevelOps {
    Matrix sigma;    ///< |g><e|
    Matrix sigma_x;  ///< sigma + sigma^dagger
    Matrix sigma_y;  ///< i sigma - i sigma^dagger
    Matrix sigma_z;  ///< sigma^dagger sigma - sigma sigma^dagger = |e><e| - |g><g|
    Matrix identity;
};

/// Cascade atom operators; basis index 0, 1, 2 = levels |1>, |2>, |3>.
struct CascadeOps {
    Matrix s1;  ///< |1><2|
    Matrix s2;  ///< |2><3|
    Matrix identity;

    Matrix s_x(int transition) const;  ///< s + s^dagger
    Matrix s_y(int transition) const;  ///< i s - i s^dagger
};

const TwoLevelOps& two_level_ops();
const CascadeOps& cascade_ops();

}  // namespace twinbeam
