// dense_eig.cpp — LAPACK geev wrappers and structure-exploiting reductions
#include "liouspec/dense_eig.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <lapacke.h>

namespace liouspec::detail {

namespace {

using cd = std::complex<double>;

lapack_complex_double* lp(cd* p) { return reinterpret_cast<lapack_complex_double*>(p); }

void check_info(int info, const char* what) {
    if (info != 0) throw std::runtime_error(std::string(what) + ": LAPACK failed to converge");
}

}  // namespace

Eigen::VectorXcd complex_eigenvalues(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("complex_eigenvalues: matrix must be square");
    const lapack_int n = lapack_int(a.rows());
    if (n == 0) return {};
    Eigen::MatrixXcd work = a;
    Eigen::VectorXcd w(n);
    check_info(LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, lp(work.data()), n, lp(w.data()),
                             nullptr, 1, nullptr, 1),
               "zgeev");
    return w;
}

Eigen::VectorXcd real_eigenvalues(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("real_eigenvalues: matrix must be square");
    const lapack_int n = lapack_int(a.rows());
    if (n == 0) return {};
    Eigen::MatrixXd work = a;
    Eigen::VectorXd wr(n), wi(n);
    check_info(LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, wr.data(), wi.data(),
                             nullptr, 1, nullptr, 1),
               "dgeev");
    Eigen::VectorXcd w(n);
    for (lapack_int k = 0; k < n; ++k) w(k) = cd(wr(k), wi(k));
    return w;
}

ComplexEigensystem complex_eigensystem(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("complex_eigensystem: matrix must be square");
    const lapack_int n = lapack_int(a.rows());
    ComplexEigensystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    if (n == 0) return out;
    Eigen::MatrixXcd work = a;
    check_info(LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, lp(work.data()), n, lp(out.values.data()),
                             nullptr, 1, lp(out.vectors.data()), n),
               "zgeev");
    return out;
}

Eigen::VectorXcd conjugation_symmetric_eigenvalues(const Eigen::MatrixXcd& a,
                                                   const std::vector<int>& sigma) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("conjugation_symmetric_eigenvalues: matrix must be square");
    if (Eigen::Index(sigma.size()) != n)
        throw std::invalid_argument("conjugation_symmetric_eigenvalues: permutation length mismatch");
    const double scale = 1.0 + a.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < n; ++k)
        if (sigma[k] < 0 || sigma[k] >= n || sigma[sigma[k]] != k)
            throw std::invalid_argument("conjugation_symmetric_eigenvalues: sigma is not an involution");

    // Real basis: fixed indices keep e_p; each 2-cycle {p, q} contributes
    // (e_p + e_q)/sqrt(2) and i (e_p - e_q)/sqrt(2). Columns are described by
    // (p, q, type) with type 0 = fixed, 1 = symmetric, 2 = antisymmetric.
    struct Col { int p, q, type; };
    std::vector<Col> cols;
    cols.reserve(n);
    for (int k = 0; k < int(n); ++k) {
        if (sigma[k] == k) cols.push_back({k, k, 0});
        else if (k < sigma[k]) {
            cols.push_back({k, sigma[k], 1});
            cols.push_back({k, sigma[k], 2});
        }
    }
    const double rt = 1.0 / std::sqrt(2.0);
    const cd i_rt{0.0, rt};
    auto entry = [&](const Col& c, int row, bool conjugated) -> cd {
        cd v{0.0, 0.0};
        if (c.type == 0) {
            if (row == c.p) v = 1.0;
        } else if (c.type == 1) {
            if (row == c.p || row == c.q) v = rt;
        } else {
            if (row == c.p) v = i_rt;
            else if (row == c.q) v = -i_rt;
        }
        return conjugated ? std::conj(v) : v;
    };

    Eigen::MatrixXd r(n, n);
    double max_imag = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Col& cj = cols[j];
        const int src[2] = {cj.p, cj.q};
        const int nsrc = cj.type == 0 ? 1 : 2;
        for (Eigen::Index i = 0; i < n; ++i) {
            const Col& ci = cols[i];
            const int dst[2] = {ci.p, ci.q};
            const int ndst = ci.type == 0 ? 1 : 2;
            cd sum{0.0, 0.0};
            for (int s = 0; s < nsrc; ++s)
                for (int d = 0; d < ndst; ++d)
                    sum += entry(ci, dst[d], true) * a(dst[d], src[s]) * entry(cj, src[s], false);
            max_imag = std::max(max_imag, std::abs(sum.imag()));
            r(i, j) = sum.real();
        }
    }
    if (max_imag > 1e-10 * scale)
        throw std::runtime_error("conjugation_symmetric_eigenvalues: matrix lacks the claimed symmetry");
    return real_eigenvalues(r);
}

bool is_tridiagonal(const Eigen::MatrixXcd& a, double tol) {
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            if (std::abs(r - c) > 1 && std::abs(a(r, c)) > tol) return false;
    return true;
}

Eigen::MatrixXcd balance_tridiagonal(const Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXcd out = a;
    if (n < 2 || !is_tridiagonal(a)) return out;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const cd b = a(k, k + 1), c = a(k + 1, k);
        const double ib = std::abs(b.imag()), ic = std::abs(c.imag());
        if (ib > 0.0 || ic > 0.0) return a;                    // complex couplings: leave alone
        if (b.real() * c.real() < 0.0) return a;               // opposite signs: not applicable
    }
    // Running diagonal similarity: scale row/col k+1 so both couplings of the
    // link become sqrt(b*c). Links with a vanishing coupling are left as is.
    std::vector<double> d(n, 1.0);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const double b = a(k, k + 1).real(), c = a(k + 1, k).real();
        d[k + 1] = (b > 0.0 && c > 0.0) ? d[k] * std::sqrt(c / b) : d[k];
    }
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        out(k, k + 1) = a(k, k + 1) * (d[k + 1] / d[k]);
        out(k + 1, k) = a(k + 1, k) * (d[k] / d[k + 1]);
    }
    return out;
}

}  // namespace liouspec::detail
