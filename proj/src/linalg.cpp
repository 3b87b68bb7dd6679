#include "iafeas/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace iafeas {

namespace {

Eigen::VectorXd singular_values(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return Eigen::VectorXd();
    if (std::min(a.rows(), a.cols()) > 16)
        return Eigen::BDCSVD<ComplexMatrix>(a).singularValues();
    return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
}

} // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto rows = a.rows() * b.rows();
    const auto cols = a.cols() * b.cols();
    if (rows > (1 << 24) || cols > (1 << 24))
        throw std::invalid_argument("kron: result dimensions overflow");
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix commutation_matrix(int m, int n) {
    ComplexMatrix k = ComplexMatrix::Zero(static_cast<Eigen::Index>(m) * n,
                                          static_cast<Eigen::Index>(m) * n);
    // vec(A)[i + j*m] = A(i,j) and vec(A^T)[j + i*n] = A(i,j)
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) k(j + i * n, i + j * m) = 1.0;
    return k;
}

ComplexVector vec(const ComplexMatrix& a) {
    ComplexVector v(a.size());
    Eigen::Index idx = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) v(idx++) = a(i, j);
    return v;
}

ComplexMatrix unvec(const ComplexVector& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols)
        throw std::invalid_argument("unvec: length does not match shape");
    ComplexMatrix a(rows, cols);
    Eigen::Index idx = 0;
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) a(i, j) = v(idx++);
    return a;
}

ComplexMatrix random_gaussian(int rows, int cols, Rng& rng) {
    ComplexMatrix out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out(i, j) = rng.complex_normal();
    return out;
}

ComplexMatrix random_stiefel(int rows, int cols, Rng& rng) {
    if (rows < cols)
        throw std::invalid_argument("random_stiefel: need rows >= cols");
    const ComplexMatrix g = random_gaussian(rows, cols, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
    const ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (int j = 0; j < cols; ++j) {
        const std::complex<double> d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

ComplexMatrix nullspace_basis(const ComplexMatrix& a, double rel_tol) {
    if (a.cols() == 0) return ComplexMatrix(0, 0);
    if (a.rows() == 0) return ComplexMatrix::Identity(a.cols(), a.cols());
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double sigma_max = sv.size() ? sv(0) : 0.0;
    if (rel_tol < 0.0)
        rel_tol = static_cast<double>(std::max(a.rows(), a.cols())) *
                  std::numeric_limits<double>::epsilon();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sigma_max) ++rank;
    if (sigma_max == 0.0) rank = 0;
    return svd.matrixV().rightCols(a.cols() - rank);
}

double smallest_singular_value(const ComplexMatrix& a) {
    const Eigen::VectorXd sv = singular_values(a);
    return sv.size() ? sv(sv.size() - 1) : 0.0;
}

double least_squares_residual(const ComplexMatrix& a, const ComplexVector& b) {
    if (b.size() != a.rows())
        throw std::invalid_argument("least_squares_residual: b length must equal rows");
    if (a.cols() == 0) return b.norm();
    Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(a);
    const ComplexVector w = cod.solve(b);
    return (a * w - b).norm();
}

bool all_finite(const ComplexMatrix& a) {
    return a.allFinite();
}

} // namespace iafeas
