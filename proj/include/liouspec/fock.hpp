// fock.hpp — Truncated Fock space and the bosonic operator algebra on it
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace liouspec::fock {

// Fock space truncated at occupation n_max; states |0>, ..., |n_max>.
struct FockSpace {
    int n_max = 0;

    explicit FockSpace(int n_max_);
    int dim() const { return n_max + 1; }

    friend bool operator==(const FockSpace& a, const FockSpace& b) { return a.n_max == b.n_max; }
};

// A dense operator tied to the space it acts on.
struct OperatorMatrix {
    FockSpace space;
    Eigen::MatrixXcd mat;

    OperatorMatrix(FockSpace space_, Eigen::MatrixXcd mat_);
};

// Lowering operator: <n-1| a |n> = sqrt(n).
OperatorMatrix annihilation(FockSpace space);

// Raising operator, the adjoint of annihilation. The top entry is lost to truncation.
OperatorMatrix creation(FockSpace space);

// Occupation operator diag(0, ..., n_max), assembled exactly.
OperatorMatrix number(FockSpace space);

// Pairing drive of given order: (a^dag)^k + a^k. For order > n_max the
// truncated operator is identically zero; that is allowed and returned as is.
OperatorMatrix pairing(FockSpace space, int order);

OperatorMatrix identity(FockSpace space);

OperatorMatrix dagger(const OperatorMatrix& a);

// [A, B] = AB - BA. Note the truncation artifact: [a, a^dag] has the final
// diagonal entry -n_max instead of +1.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// Hilbert-Schmidt inner product Tr[A^dag B].
std::complex<double> hs_inner(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace liouspec::fock
