// spectra.cpp — Spectral analysis over assembled generators
#include "liouspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "liouspec/dense_eig.hpp"

namespace liouspec::spectra {

namespace {

using cd = std::complex<double>;

constexpr Eigen::Index kDenseBlockThreshold = 400;  // above this, prefer sector blocks
constexpr double kGaplessTol = 1e-12;

// Dyad transpose (n, m) -> (m, n) as a permutation of vectorized indices.
std::vector<int> dyad_swap(int d) {
    std::vector<int> sigma(std::size_t(d) * d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) sigma[std::size_t(n) * d + m] = m * d + n;
    return sigma;
}

bool has_conjugation_symmetry(const Eigen::MatrixXcd& a, const std::vector<int>& sigma) {
    const double tol = 1e-12 * (1.0 + a.cwiseAbs().maxCoeff());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            if (std::abs(std::conj(a(sigma[r], sigma[c])) - a(r, c)) > tol) return false;
    return true;
}

std::vector<SpectrumPoint> to_points(const Eigen::VectorXcd& w) {
    std::vector<SpectrumPoint> points(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) points[k].lambda = w(k);
    return points;
}

// Eigenvalues of one sector block, exploiting what structure it has.
Eigen::VectorXcd block_eigenvalues(const Eigen::MatrixXcd& mat, const std::vector<int>& local_sigma) {
    if (!local_sigma.empty() && has_conjugation_symmetry(mat, local_sigma))
        return detail::conjugation_symmetric_eigenvalues(mat, local_sigma);
    return detail::complex_eigenvalues(detail::balance_tridiagonal(mat));
}

struct KernelResult {
    Eigen::VectorXcd vec;
};

// Kernel vector of a (sub)generator by shift-inverted subspace iteration.
// Also establishes that the zero eigenvalue is simple within tolerance.
Eigen::VectorXcd kernel_vector(const Eigen::MatrixXcd& b) {
    const Eigen::Index n = b.rows();
    if (n == 0) throw std::invalid_argument("steady_state: empty generator");
    const double norm = b.cwiseAbs().rowwise().sum().maxCoeff();
    const double zero_tol = 1e-9 * (1.0 + norm);

    Eigen::MatrixXcd shifted = b;
    shifted.diagonal().array() -= cd(zero_tol, 0.0);  // shift into the empty right half plane
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);

    std::mt19937 rng(0x5eed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd x(n, 2);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < 2; ++j) x(i, j) = cd(gauss(rng), gauss(rng));

    Eigen::MatrixXcd q;
    for (int it = 0; it < 8; ++it) {
        x = lu.solve(x);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
        q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, 2);
        x = q;
    }
    const Eigen::MatrixXcd ritz = q.adjoint() * (b * q);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ritz);
    int i0 = std::abs(es.eigenvalues()(0)) <= std::abs(es.eigenvalues()(1)) ? 0 : 1;
    const cd mu0 = es.eigenvalues()(i0), mu1 = es.eigenvalues()(1 - i0);
    if (std::abs(mu0) > 10.0 * zero_tol)
        throw std::runtime_error("steady_state: no zero eigenvalue found within tolerance");
    if (std::abs(mu1) <= zero_tol)
        throw std::runtime_error("steady_state: zero eigenvalue is degenerate, steady state not unique");
    return q * es.eigenvectors().col(i0);
}

// Shared tail of both steady-state routes: embed the kernel vector at the
// given dyad indices, normalize, and verify the state's invariants.
fock::OperatorMatrix finish_steady_state(const Eigen::VectorXcd& kernel,
                                         const std::vector<int>& indices,
                                         const Eigen::MatrixXcd& block, fock::FockSpace space) {
    const int d = space.dim();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t k = 0; k < indices.size(); ++k)
        rho(indices[k] / d, indices[k] % d) += kernel(Eigen::Index(k));

    const cd tr = rho.trace();
    if (std::abs(tr) < 1e-10 * kernel.norm())
        throw std::runtime_error("steady_state: kernel vector is traceless, steady state not unique");
    rho /= tr;
    rho = ((rho + rho.adjoint()) / 2.0).eval();

    // Residual of the trace-normalized state against the block it lives in.
    Eigen::VectorXcd v(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k)
        v(Eigen::Index(k)) = rho(indices[k] / d, indices[k] % d);
    const double residual = (block * v).cwiseAbs().maxCoeff();
    if (residual > 1e-8)
        throw std::runtime_error("steady_state: residual exceeds tolerance");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw std::runtime_error("steady_state: state is not positive semidefinite");
    return {space, std::move(rho)};
}

}  // namespace

std::vector<SpectrumPoint> eigendecompose(const liou::LiouvillianMatrix& liouvillian) {
    const std::vector<int> sigma = dyad_swap(liouvillian.space.dim());
    if (has_conjugation_symmetry(liouvillian.mat, sigma))
        return to_points(detail::conjugation_symmetric_eigenvalues(liouvillian.mat, sigma));
    return to_points(detail::complex_eigenvalues(liouvillian.mat));
}

std::vector<SpectrumPoint> eigendecompose_blocks(const liou::BlockDecomposition& decomposition) {
    const int d = decomposition.space.dim();
    std::vector<SpectrumPoint> out;
    out.reserve(std::size_t(d) * d);

    // Locate blocks by label so u1 mirror pairs (c, -c) can share one solve.
    std::unordered_map<int, const liou::Block*> by_label;
    for (const auto& b : decomposition.blocks) by_label[b.label] = &b;

    std::unordered_map<int, Eigen::VectorXcd> solved;
    for (const auto& b : decomposition.blocks) {
        Eigen::VectorXcd w;
        const bool u1 = decomposition.rule == liou::SectorRule::u1_coherence;
        if (u1 && b.label < 0 && by_label.count(-b.label)) {
            const liou::Block& partner = *by_label.at(-b.label);
            const double scale = 1.0 + partner.mat.cwiseAbs().maxCoeff();
            // The dyad transpose sends this block to its partner entry by
            // entry, so its spectrum is the conjugate of the partner's.
            if (partner.mat.rows() == b.mat.rows() &&
                (partner.mat.conjugate() - b.mat).cwiseAbs().maxCoeff() <= 1e-14 * scale) {
                const Eigen::VectorXcd& wp = solved.count(-b.label)
                                                 ? solved.at(-b.label)
                                                 : (solved[-b.label] = block_eigenvalues(
                                                        partner.mat, {}));
                w = wp.conjugate();
            }
        }
        if (w.size() == 0) {
            std::vector<int> local_sigma;
            if (!u1 || b.label == 0) {
                // Build the dyad transpose restricted to this block; it stays
                // inside for the c = 0 and parity sectors.
                std::unordered_map<int, int> local_of;
                for (std::size_t k = 0; k < b.indices.size(); ++k) local_of[b.indices[k]] = int(k);
                local_sigma.resize(b.indices.size());
                bool closed = true;
                for (std::size_t k = 0; k < b.indices.size(); ++k) {
                    const int n = b.indices[k] / d, m = b.indices[k] % d;
                    auto it = local_of.find(m * d + n);
                    if (it == local_of.end()) { closed = false; break; }
                    local_sigma[k] = it->second;
                }
                if (!closed) local_sigma.clear();
            }
            if (solved.count(b.label)) w = solved.at(b.label);
            else w = solved[b.label] = block_eigenvalues(b.mat, local_sigma);
        }
        for (Eigen::Index k = 0; k < w.size(); ++k) out.push_back({w(k), 1, std::nullopt});
    }
    return out;
}

EigenSystem eigendecompose_full(const liou::LiouvillianMatrix& liouvillian) {
    detail::ComplexEigensystem sys = detail::complex_eigensystem(liouvillian.mat);
    return {to_points(sys.values), std::move(sys.vectors)};
}

namespace {

bool spectral_less(const SpectrumPoint& a, const SpectrumPoint& b) {
    const double ra = std::abs(a.lambda.real()), rb = std::abs(b.lambda.real());
    if (ra != rb) return ra < rb;
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() > b.lambda.imag();
    return a.lambda.real() < b.lambda.real();
}

}  // namespace

void sort_spectrum(std::vector<SpectrumPoint>& points) {
    std::stable_sort(points.begin(), points.end(), spectral_less);
}

std::vector<SpectrumPoint> sorted_spectrum(std::vector<SpectrumPoint> points) {
    sort_spectrum(points);
    return points;
}

std::vector<SpectrumPoint> cluster(const std::vector<SpectrumPoint>& points, double radius_scale) {
    std::vector<SpectrumPoint> work = points;
    std::stable_sort(work.begin(), work.end(), [](const SpectrumPoint& a, const SpectrumPoint& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
    std::vector<SpectrumPoint> out;
    std::size_t k = 0;
    while (k < work.size()) {
        const cd seed = work[k].lambda;
        const double radius = radius_scale * (1.0 + std::abs(seed));
        cd sum{0.0, 0.0};
        int mult = 0;
        std::size_t j = k;
        for (; j < work.size() && std::abs(work[j].lambda - seed) <= radius; ++j) {
            sum += work[j].lambda * double(work[j].multiplicity);
            mult += work[j].multiplicity;
        }
        out.push_back({sum / double(mult), mult, work[k].dyad});
        k = j;
    }
    sort_spectrum(out);
    return out;
}

SpectralGaps gaps(const std::vector<SpectrumPoint>& sorted) {
    if (sorted.size() < 2) throw std::invalid_argument("gaps: need at least two eigenvalues");
    if (std::abs(sorted.front().lambda) > 1e-6)
        throw std::invalid_argument("gaps: leading eigenvalue is not the zero mode");
    const cd l1 = sorted[1].lambda;
    return {std::max(0.0, -l1.real()), std::abs(l1.imag())};
}

double second_gap(const std::vector<SpectrumPoint>& sorted) {
    if (sorted.size() < 3) throw std::invalid_argument("second_gap: need at least three eigenvalues");
    return std::max(0.0, -sorted[2].lambda.real());
}

double relaxation_time(const std::vector<SpectrumPoint>& sorted) {
    const double gap = gaps(sorted).gap;
    if (gap < kGaplessTol)
        throw std::domain_error("relaxation_time: spectrum is gapless, relaxation time diverges");
    return 1.0 / gap;
}

fock::OperatorMatrix steady_state(const liou::LiouvillianMatrix& liouvillian) {
    std::vector<int> all(liouvillian.dim());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = int(k);
    const Eigen::VectorXcd v = kernel_vector(liouvillian.mat);
    return finish_steady_state(v, all, liouvillian.mat, liouvillian.space);
}

fock::OperatorMatrix steady_state(const models::HamiltonianParams& params,
                                  const std::vector<models::DissipationChannel>& channels,
                                  fock::FockSpace space) {
    liou::SectorRule rule;
    if (!params.has_squeeze()) rule = liou::SectorRule::u1_coherence;
    else if (params.squeeze_all_even()) rule = liou::SectorRule::z2_parity;
    else return steady_state(liou::assemble(params, channels, space));

    const liou::BlockDecomposition decomp = liou::assemble_blocks(params, channels, space, rule);
    // The populations (n, n) all live in the c = 0 or even-parity block.
    const int want = 0;
    for (const auto& b : decomp.blocks)
        if (b.label == want) {
            const Eigen::VectorXcd v = kernel_vector(b.mat);
            return finish_steady_state(v, b.indices, b.mat, space);
        }
    throw std::logic_error("steady_state: population block missing from decomposition");
}

double occupation(const fock::OperatorMatrix& rho) {
    double occ = 0.0;
    for (int n = 0; n <= rho.space.n_max; ++n) occ += double(n) * rho.mat(n, n).real();
    return occ;
}

std::vector<int> match_pairing(const std::vector<cd>& a, const std::vector<cd>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("match_spectra: multisets must have equal cardinality");
    const std::size_t n = a.size();
    // Rank on a grid much coarser than solver jitter, else degenerate real
    // parts get ordered by noise and the two sides disagree on who is "first".
    double scale = 0.0;
    for (const cd& z : a) scale = std::max(scale, std::abs(z));
    for (const cd& z : b) scale = std::max(scale, std::abs(z));
    const double h = 1e-6 * (1.0 + scale);
    auto rank = [h](const std::vector<cd>& v) {
        std::vector<int> idx(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) idx[k] = int(k);
        auto cell = [h](double x) { return std::nearbyint(x / h); };
        std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
            const double ri = cell(v[i].real()), rj = cell(v[j].real());
            if (ri != rj) return ri < rj;
            const double qi = cell(v[i].imag()), qj = cell(v[j].imag());
            if (qi != qj) return qi < qj;
            if (v[i].real() != v[j].real()) return v[i].real() < v[j].real();
            return v[i].imag() < v[j].imag();
        });
        return idx;
    };
    const std::vector<int> ia = rank(a), ib = rank(b);
    std::vector<int> match(n);
    for (std::size_t k = 0; k < n; ++k) match[ia[k]] = ib[k];

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double keep = std::norm(a[i] - b[match[i]]) + std::norm(a[j] - b[match[j]]);
                const double swap = std::norm(a[i] - b[match[j]]) + std::norm(a[j] - b[match[i]]);
                if (swap < keep * (1.0 - 1e-15)) {
                    std::swap(match[i], match[j]);
                    improved = true;
                }
            }
        if (!improved) break;
    }
    return match;
}

double match_spectra(const std::vector<cd>& a, const std::vector<cd>& b) {
    const std::vector<int> match = match_pairing(a, b);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(a[k] - b[match[k]]));
    return worst;
}

std::vector<cd> values_of(const std::vector<SpectrumPoint>& points) {
    std::vector<cd> v;
    v.reserve(points.size());
    for (const auto& p : points)
        for (int k = 0; k < p.multiplicity; ++k) v.push_back(p.lambda);
    return v;
}

std::vector<SpectrumPoint> liouvillian_spectrum(const models::HamiltonianParams& params,
                                                const std::vector<models::DissipationChannel>& channels,
                                                fock::FockSpace space) {
    const Eigen::Index dim = Eigen::Index(space.dim()) * space.dim();
    liou::SectorRule rule = liou::SectorRule::u1_coherence;
    bool use_blocks = false;
    if (dim > kDenseBlockThreshold) {
        if (liou::rule_applies(params, liou::SectorRule::u1_coherence)) use_blocks = true;
        else if (liou::rule_applies(params, liou::SectorRule::z2_parity)) {
            rule = liou::SectorRule::z2_parity;
            use_blocks = true;
        }
    }
    std::vector<SpectrumPoint> points =
        use_blocks ? eigendecompose_blocks(liou::assemble_blocks(params, channels, space, rule))
                   : eigendecompose(liou::assemble(params, channels, space));
    sort_spectrum(points);
    return points;
}

}  // namespace liouspec::spectra
