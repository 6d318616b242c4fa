#include "twinbeam/superop.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "twinbeam/errors.hpp"

namespace twinbeam {

namespace {

void require_supported_dim(int dim) {
    if (dim != 2 && dim != 3) {
        throw DimensionError("atomic dimension must be 2 or 3, got " + std::to_string(dim));
    }
}

int square_dim(const Matrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        std::ostringstream os;
        os << what << " must be square, got " << a.rows() << "x" << a.cols();
        throw DimensionError(os.str());
    }
    const int dim = static_cast<int>(a.rows());
    require_supported_dim(dim);
    return dim;
}

int common_dim(const Matrix& a, const Matrix& b) {
    const int da = square_dim(a, "operator");
    const int db = square_dim(b, "operator");
    if (da != db) {
        throw DimensionError("operator dimensions differ: " + std::to_string(da) + " vs " +
                             std::to_string(db));
    }
    return da;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix basis_op(int dim, int row, int col) {
    Matrix m = Matrix::Zero(dim, dim);
    m(row, col) = 1.0;
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::state(Matrix m, double trace_tolerance) {
    square_dim(m, "density matrix");
    const double herm = hermiticity_error(m);
    if (herm > kHermitianTolerance) {
        throw NumericalError("density matrix is not Hermitian (error " + std::to_string(herm) + ")");
    }
    const Complex tr = m.trace();
    if (std::abs(tr - 1.0) > trace_tolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "density matrix trace " << tr.real() << " differs from 1";
        throw NumericalError(os.str());
    }
    DensityMatrix rho(std::move(m));
    const double min_eig = rho.min_eigenvalue();
    if (min_eig < -kPositivityTolerance) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << min_eig;
        throw NumericalError(os.str());
    }
    return rho;
}

DensityMatrix DensityMatrix::level(int dim, int k) {
    require_supported_dim(dim);
    if (k < 1 || k > dim) throw DimensionError("level label out of range");
    return DensityMatrix(basis_op(dim, k - 1, k - 1));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    require_supported_dim(dim);
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Complex DensityMatrix::element(int i, int j) const {
    if (i < 1 || j < 1 || i > dim() || j > dim()) {
        throw DimensionError("element (" + std::to_string(i) + "," + std::to_string(j) +
                             ") outside a " + std::to_string(dim()) + "-level state");
    }
    return m_(i - 1, j - 1);
}

double DensityMatrix::min_eigenvalue() const {
    const Matrix herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double hermiticity_error(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------
// vectorization

Vector vectorize(const Matrix& m) {
    square_dim(m, "matrix");
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Vector vectorize(const DensityMatrix& rho) { return vectorize(rho.matrix()); }

Matrix devectorize(const Vector& v, int dim) {
    require_supported_dim(dim);
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw DimensionError("vector of length " + std::to_string(v.size()) +
                             " cannot be reshaped to " + std::to_string(dim) + "x" +
                             std::to_string(dim));
    }
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

// ---------------------------------------------------------------------------
// Generator

Generator::Generator(int dim, Matrix matrix, std::string provenance)
    : dim_(dim), matrix_(std::move(matrix)), provenance_(std::move(provenance)) {
    require_supported_dim(dim_);
    if (matrix_.rows() != dim_ * dim_ || matrix_.cols() != dim_ * dim_) {
        throw DimensionError("generator matrix must be d^2 x d^2");
    }
}

Generator Generator::zero(int dim) {
    require_supported_dim(dim);
    return Generator(dim, Matrix::Zero(dim * dim, dim * dim), "zero");
}

Generator Generator::with_provenance(std::string description) const {
    return Generator(dim_, matrix_, std::move(description));
}

Matrix Generator::apply(const Matrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
        throw DimensionError("state dimension does not match generator");
    }
    return devectorize(matrix_ * vectorize(rho), dim_);
}

Generator& Generator::operator+=(const Generator& other) {
    if (other.dim_ != dim_) throw DimensionError("cannot add generators of different dimension");
    matrix_ += other.matrix_;
    return *this;
}

Generator& Generator::operator-=(const Generator& other) {
    if (other.dim_ != dim_) throw DimensionError("cannot subtract generators of different dimension");
    matrix_ -= other.matrix_;
    return *this;
}

Generator& Generator::operator*=(Complex c) {
    matrix_ *= c;
    return *this;
}

Generator operator+(Generator a, const Generator& b) { return a += b; }
Generator operator-(Generator a, const Generator& b) { return a -= b; }
Generator operator*(Complex c, Generator g) { return g *= c; }
Generator operator*(double c, Generator g) { return g *= Complex(c, 0.0); }

Generator compose(const Generator& a, const Generator& b) {
    if (a.dim() != b.dim()) throw DimensionError("cannot compose generators of different dimension");
    return Generator(a.dim(), a.matrix() * b.matrix());
}

double max_abs_difference(const Generator& a, const Generator& b) {
    if (a.dim() != b.dim()) throw DimensionError("cannot compare generators of different dimension");
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// elementary superoperators

Generator left_multiply(const Matrix& a) {
    const int d = square_dim(a, "operator");
    return Generator(d, kron(Matrix::Identity(d, d), a));
}

Generator right_multiply(const Matrix& b) {
    const int d = square_dim(b, "operator");
    return Generator(d, kron(b.transpose(), Matrix::Identity(d, d)));
}

Generator sandwich(const Matrix& a, const Matrix& b) {
    const int d = common_dim(a, b);
    return Generator(d, kron(b.transpose(), a));
}

Generator commutator(const Matrix& a) { return left_multiply(a) - right_multiply(a); }

Generator dissipator(const Matrix& a) {
    square_dim(a, "dissipator operator");
    const Matrix ad = a.adjoint();
    const Matrix n = ad * a;
    return (sandwich(a, ad) - 0.5 * left_multiply(n) - 0.5 * right_multiply(n))
        .with_provenance("D[A]");
}

Generator double_commutator(const Matrix& a, const Matrix& b) {
    common_dim(a, b);
    return compose(commutator(a), commutator(b)).with_provenance("[A,[B,.]]");
}

Generator sandwich_sum(const Matrix& a, const Matrix& b) {
    common_dim(a, b);
    return (sandwich(a, b) + sandwich(b.adjoint(), a.adjoint())).with_provenance("A.B + B'.A'");
}

// ---------------------------------------------------------------------------
// atomic operators

const TwoLevelOps& two_level_ops() {
    static const TwoLevelOps ops = [] {
        const Complex i(0.0, 1.0);
        TwoLevelOps o;
        o.sigma = basis_op(2, 0, 1);
        o.sigma_x = o.sigma + o.sigma.adjoint();
        o.sigma_y = i * o.sigma - i * o.sigma.adjoint();
        o.sigma_z = o.sigma.adjoint() * o.sigma - o.sigma * o.sigma.adjoint();
        o.identity = Matrix::Identity(2, 2);
        return o;
    }();
    return ops;
}

const CascadeOps& cascade_ops() {
    static const CascadeOps ops = [] {
        CascadeOps o;
        o.s1 = basis_op(3, 0, 1);
        o.s2 = basis_op(3, 1, 2);
        o.identity = Matrix::Identity(3, 3);
        return o;
    }();
    return ops;
}

Matrix CascadeOps::s_x(int transition) const {
    if (transition != 1 && transition != 2) throw DimensionError("transition must be 1 or 2");
    const Matrix& s = transition == 1 ? s1 : s2;
    return s + s.adjoint();
}

Matrix CascadeOps::s_y(int transition) const {
    if (transition != 1 && transition != 2) throw DimensionError("transition must be 1 or 2");
    const Matrix& s = transition == 1 ? s1 : s2;
    const Complex i(0.0, 1.0);
    return i * s - i * s.adjoint();
}

}  // namespace twinbeam
