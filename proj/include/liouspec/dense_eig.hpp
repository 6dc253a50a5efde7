// dense_eig.hpp — Dense nonsymmetric eigenvalue kernels (LAPACK geev wrappers)
#pragma once

#include <vector>

#include <Eigen/Dense>

namespace liouspec::detail {

// Eigenvalues of a general complex matrix. The input is copied; LAPACK's
// internal balancing is left on.
Eigen::VectorXcd complex_eigenvalues(const Eigen::MatrixXcd& a);

// Eigenvalues of a general real matrix. LAPACK returns complex pairs from
// 2x2 Schur blocks, so conjugate eigenvalues come out exactly paired and
// real eigenvalues come out with imaginary part exactly zero.
Eigen::VectorXcd real_eigenvalues(const Eigen::MatrixXd& a);

// Eigenvalues plus right eigenvectors (columns) of a complex matrix.
struct ComplexEigensystem {
    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;
};
ComplexEigensystem complex_eigensystem(const Eigen::MatrixXcd& a);

// Eigenvalues of a matrix A obeying the antiunitary structure
//
//   conj(A(i, j)) == A(sigma(i), sigma(j))
//
// for an involutive index permutation sigma. Such a matrix is similar to a
// real one by a unitary change of basis built from sigma's fixed points and
// 2-cycles; solving the real form keeps the spectrum exactly closed under
// conjugation. Raises if the structure does not actually hold.
Eigen::VectorXcd conjugation_symmetric_eigenvalues(const Eigen::MatrixXcd& a,
                                                   const std::vector<int>& sigma);

// Diagonal similarity that symmetrizes a tridiagonal matrix whose paired
// off-diagonal products are real and nonnegative, as happens for thermal
// ladder couplings. Returns the balanced matrix; eigenvalues are unchanged
// but far better conditioned. Falls back to a copy when not applicable.
Eigen::MatrixXcd balance_tridiagonal(const Eigen::MatrixXcd& a);

bool is_tridiagonal(const Eigen::MatrixXcd& a, double tol = 0.0);

}  // namespace liouspec::detail
