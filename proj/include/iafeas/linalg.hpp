#ifndef IAFEAS_LINALG_HPP
#define IAFEAS_LINALG_HPP

#include <Eigen/Dense>

#include "iafeas/rng.hpp"

namespace iafeas {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Kronecker product: block (i,j) of the result equals a(i,j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Commutation matrix K_{mn} (mn x mn, 0/1 entries): K_{mn} * vec(A) =
/// vec(A^T) for every m x n matrix A, with column-major vec.
ComplexMatrix commutation_matrix(int m, int n);

/// Column-major vectorization, so vec(A X B) = (B^T kron A) vec(X).
ComplexVector vec(const ComplexMatrix& a);

/// Inverse of vec for the given shape.
ComplexMatrix unvec(const ComplexVector& v, int rows, int cols);

/// Matrix of i.i.d. standard complex Gaussian entries (independent standard
/// normal real and imaginary parts).
ComplexMatrix random_gaussian(int rows, int cols, Rng& rng);

/// Haar-distributed matrix with orthonormal columns (rows >= cols), obtained
/// by QR of a complex Gaussian matrix with the phase-of-R sign fix.
/// Throws std::invalid_argument when rows < cols.
ComplexMatrix random_stiefel(int rows, int cols, Rng& rng);

/// Orthonormal basis of the right nullspace, computed from the SVD. Singular
/// values <= rel_tol * sigma_max count as zero; rel_tol < 0 selects the
/// default max(rows, cols) * machine-epsilon. An empty nullspace yields a
/// matrix with zero columns.
ComplexMatrix nullspace_basis(const ComplexMatrix& a, double rel_tol = -1.0);

/// Smallest singular value over min(rows, cols).
double smallest_singular_value(const ComplexMatrix& a);

/// min_w || a w - b ||_2 via a rank-revealing factorization.
double least_squares_residual(const ComplexMatrix& a, const ComplexVector& b);

bool all_finite(const ComplexMatrix& a);

} // namespace iafeas

#endif
