// fock.cpp — Truncated bosonic operator construction
#include "liouspec/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace liouspec::fock {

FockSpace::FockSpace(int n_max_) : n_max(n_max_) {
    if (n_max < 0) throw std::invalid_argument("FockSpace: n_max must be >= 0");
}

OperatorMatrix::OperatorMatrix(FockSpace space_, Eigen::MatrixXcd mat_)
    : space(space_), mat(std::move(mat_)) {
    if (mat.rows() != space.dim() || mat.cols() != space.dim())
        throw std::invalid_argument("OperatorMatrix: matrix shape does not match space dimension");
}

OperatorMatrix annihilation(FockSpace space) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int n = 1; n <= space.n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
    return {space, std::move(a)};
}

OperatorMatrix creation(FockSpace space) { return dagger(annihilation(space)); }

OperatorMatrix number(FockSpace space) {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int k = 0; k <= space.n_max; ++k) n(k, k) = double(k);
    return {space, std::move(n)};
}

OperatorMatrix pairing(FockSpace space, int order) {
    if (order < 1) throw std::invalid_argument("pairing: order must be >= 1");
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int n = 0; n + order <= space.n_max; ++n) {
        double amp = 1.0;
        for (int j = 1; j <= order; ++j) amp *= double(n + j);
        amp = std::sqrt(amp);  // <n+k| (a^dag)^k |n>
        p(n + order, n) += amp;
        p(n, n + order) += amp;
    }
    return {space, std::move(p)};
}

OperatorMatrix identity(FockSpace space) {
    return {space, Eigen::MatrixXcd::Identity(space.dim(), space.dim())};
}

OperatorMatrix dagger(const OperatorMatrix& a) { return {a.space, a.mat.adjoint()}; }

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!(a.space == b.space)) throw std::invalid_argument("commutator: operators live on different spaces");
    return {a.space, a.mat * b.mat - b.mat * a.mat};
}

std::complex<double> hs_inner(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!(a.space == b.space)) throw std::invalid_argument("hs_inner: operators live on different spaces");
    return (a.mat.array().conjugate() * b.mat.array()).sum();
}

}  // namespace liouspec::fock
