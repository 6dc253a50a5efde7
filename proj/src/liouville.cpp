// liouville.cpp — Generator assembly via Kronecker products and via sector stencils
#include "liouspec/liouville.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace liouspec::liou {

namespace {

constexpr double kSectorCouplingTol = 1e-12;
const std::complex<double> kI{0.0, 1.0};

// <n-k| a^k |n>, zero when n < k. Shared by both assembly routes so that
// they produce identical floating-point entries.
double lowering_amp(int n, int k) {
    if (n < k) return 0.0;
    double prod = 1.0;
    for (int j = 0; j < k; ++j) prod *= double(n - j);
    return std::sqrt(prod);
}

// <n+1| a^dag |n>, zero at the truncation edge.
double raising_amp(int n, int n_max) { return n < n_max ? std::sqrt(double(n + 1)) : 0.0; }

Eigen::MatrixXcd jump_operator(fock::FockSpace space, int order) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int n = order; n <= space.n_max; ++n) g(n - order, n) = lowering_amp(n, order);
    return g;
}

Eigen::MatrixXcd dissipator_super(const Eigen::MatrixXcd& g) {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(g.rows(), g.cols());
    const Eigen::MatrixXcd gdg = g.adjoint() * g;
    Eigen::MatrixXcd w = Eigen::kroneckerProduct(g, g.conjugate());
    w -= 0.5 * Eigen::kroneckerProduct(gdg, id);
    w -= 0.5 * Eigen::kroneckerProduct(id, gdg.transpose());
    return w;
}

int sector_of(int n, int m, SectorRule rule) {
    const int c = n - m;
    return rule == SectorRule::u1_coherence ? c : ((c % 2) + 2) % 2;
}

std::vector<int> sector_labels(fock::FockSpace space, SectorRule rule) {
    if (rule == SectorRule::u1_coherence) {
        std::vector<int> labels;
        for (int c = -space.n_max; c <= space.n_max; ++c) labels.push_back(c);
        return labels;
    }
    return {0, 1};
}

}  // namespace

LiouvillianMatrix::LiouvillianMatrix(fock::FockSpace space_, Eigen::MatrixXcd mat_)
    : space(space_), mat(std::move(mat_)) {
    const Eigen::Index d2 = Eigen::Index(space.dim()) * space.dim();
    if (mat.rows() != d2 || mat.cols() != d2)
        throw std::invalid_argument("LiouvillianMatrix: matrix shape does not match dim^2");
}

int LiouvillianMatrix::index_of(int n, int m) const {
    if (n < 0 || m < 0 || n > space.n_max || m > space.n_max)
        throw std::invalid_argument("LiouvillianMatrix: dyad label out of range");
    return n * space.dim() + m;
}

std::pair<int, int> LiouvillianMatrix::dyad_of(int index) const {
    if (index < 0 || index >= dim())
        throw std::invalid_argument("LiouvillianMatrix: index out of range");
    return {index / space.dim(), index % space.dim()};
}

Eigen::VectorXcd vectorize(const fock::OperatorMatrix& a) {
    const int d = a.space.dim();
    Eigen::VectorXcd v(Eigen::Index(d) * d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) v(Eigen::Index(n) * d + m) = a.mat(n, m);
    return v;
}

fock::OperatorMatrix devectorize(const Eigen::VectorXcd& v, fock::FockSpace space) {
    const int d = space.dim();
    if (v.size() != Eigen::Index(d) * d)
        throw std::invalid_argument("devectorize: vector length does not match dim^2");
    Eigen::MatrixXcd a(d, d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) a(n, m) = v(Eigen::Index(n) * d + m);
    return {space, std::move(a)};
}

LiouvillianMatrix left_super(const fock::OperatorMatrix& op) {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(op.space.dim(), op.space.dim());
    return {op.space, Eigen::kroneckerProduct(op.mat, id)};
}

LiouvillianMatrix right_super(const fock::OperatorMatrix& op) {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(op.space.dim(), op.space.dim());
    return {op.space, Eigen::kroneckerProduct(id, op.mat.transpose())};
}

LiouvillianMatrix assemble(const models::HamiltonianParams& params,
                           const std::vector<models::DissipationChannel>& channels,
                           fock::FockSpace space) {
    for (const auto& ch : channels) models::validate(ch);
    const Eigen::MatrixXcd h = models::build_hamiltonian(params, space).mat;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(space.dim(), space.dim());

    Eigen::MatrixXcd l = -kI * (Eigen::kroneckerProduct(h, id).eval() -
                                Eigen::kroneckerProduct(id, h.transpose()).eval());
    for (const auto& ch : channels) {
        if (ch.kappa == 0.0) continue;
        l += (ch.kappa * (1.0 + ch.n_th)) * dissipator_super(jump_operator(space, ch.order));
        if (ch.n_th > 0.0) {
            Eigen::MatrixXcd up = jump_operator(space, 1).adjoint();
            l += (ch.kappa * ch.n_th) * dissipator_super(up);
        }
    }
    return {space, std::move(l)};
}

BlockDecomposition block_decompose(const LiouvillianMatrix& liouvillian, SectorRule rule) {
    const int d = liouvillian.space.dim();
    std::vector<int> sector(liouvillian.dim());
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) sector[Eigen::Index(n) * d + m] = sector_of(n, m, rule);

    for (Eigen::Index r = 0; r < liouvillian.dim(); ++r)
        for (Eigen::Index c = 0; c < liouvillian.dim(); ++c)
            if (sector[r] != sector[c] && std::abs(liouvillian.mat(r, c)) > kSectorCouplingTol)
                throw std::runtime_error("block_decompose: sector rule inapplicable, model couples sectors");

    BlockDecomposition out{liouvillian.space, rule, {}};
    for (int label : sector_labels(liouvillian.space, rule)) {
        Block b;
        b.label = label;
        for (Eigen::Index k = 0; k < liouvillian.dim(); ++k)
            if (sector[k] == label) b.indices.push_back(int(k));
        if (b.indices.empty()) continue;
        b.mat.resize(b.indices.size(), b.indices.size());
        for (std::size_t r = 0; r < b.indices.size(); ++r)
            for (std::size_t c = 0; c < b.indices.size(); ++c)
                b.mat(r, c) = liouvillian.mat(b.indices[r], b.indices[c]);
        out.blocks.push_back(std::move(b));
    }
    return out;
}

bool rule_applies(const models::HamiltonianParams& params, SectorRule rule) {
    return rule == SectorRule::u1_coherence ? !params.has_squeeze() : params.squeeze_all_even();
}

BlockDecomposition assemble_blocks(const models::HamiltonianParams& params,
                                   const std::vector<models::DissipationChannel>& channels,
                                   fock::FockSpace space, SectorRule rule) {
    if (!rule_applies(params, rule))
        throw std::runtime_error("assemble_blocks: sector rule inapplicable, model couples sectors");
    for (const auto& ch : channels) models::validate(ch);

    const int d = space.dim();
    const Eigen::MatrixXcd h = models::build_hamiltonian(params, space).mat;

    // Map dyad -> (block number, position inside block), dyads ordered by index.
    std::vector<int> sector(std::size_t(d) * d), pos(std::size_t(d) * d);
    BlockDecomposition out{space, rule, {}};
    std::map<int, std::size_t> block_of_label;
    for (int label : sector_labels(space, rule)) block_of_label[label] = 0;
    {
        std::size_t next = 0;
        for (auto& [label, slot] : block_of_label) slot = next++;
        out.blocks.resize(next);
        for (auto& [label, slot] : block_of_label) out.blocks[slot].label = label;
    }
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) {
            const std::size_t k = std::size_t(n) * d + m;
            const std::size_t slot = block_of_label.at(sector_of(n, m, rule));
            sector[k] = int(slot);
            Block& b = out.blocks[slot];
            pos[k] = int(b.indices.size());
            b.indices.push_back(int(k));
        }
    for (auto& b : out.blocks) b.mat = Eigen::MatrixXcd::Zero(b.indices.size(), b.indices.size());

    auto add = [&](int pn, int pm, int n, int m, std::complex<double> coeff) {
        const std::size_t row = std::size_t(pn) * d + pm, col = std::size_t(n) * d + m;
        if (sector[row] != sector[col])
            throw std::runtime_error("assemble_blocks: sector rule inapplicable, model couples sectors");
        out.blocks[sector[col]].mat(pos[row], pos[col]) += coeff;
    };

    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) {
            // -i (H (x) I - I (x) H^T), column by column over H's sparsity
            for (int p = 0; p < d; ++p)
                if (h(p, n) != 0.0) add(p, m, n, m, -kI * h(p, n));
            for (int q = 0; q < d; ++q)
                if (h(m, q) != 0.0) add(n, q, n, m, kI * h(m, q));

            for (const auto& ch : channels) {
                if (ch.kappa == 0.0) continue;
                const double down = ch.kappa * (1.0 + ch.n_th);
                const double gn = lowering_amp(n, ch.order), gm = lowering_amp(m, ch.order);
                if (n >= ch.order && m >= ch.order)
                    add(n - ch.order, m - ch.order, n, m, down * gn * gm);
                add(n, m, n, m, -0.5 * down * (gn * gn + gm * gm));
                if (ch.n_th > 0.0) {
                    const double up = ch.kappa * ch.n_th;
                    const double rn = raising_amp(n, space.n_max), rm = raising_amp(m, space.n_max);
                    if (n < space.n_max && m < space.n_max) add(n + 1, m + 1, n, m, up * rn * rm);
                    add(n, m, n, m, -0.5 * up * (rn * rn + rm * rm));
                }
            }
        }
    return out;
}

}  // namespace liouspec::liou
