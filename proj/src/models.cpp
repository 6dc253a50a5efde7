// models.cpp — Hamiltonian assembly and closed-system diagnostics
#include "liouspec/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liouspec::models {

namespace {

constexpr double kPairTol = 1e-8;  // relative degeneracy threshold for phase tagging

const SqueezeTerm* find_order2(const HamiltonianParams& p) {
    for (const auto& s : p.squeeze)
        if (s.order == 2) return &s;
    return nullptr;
}

}  // namespace

double HamiltonianParams::eta() const {
    if (kerr == 0.0) throw std::domain_error("eta: undefined for kerr == 0");
    return omega / kerr;
}

double HamiltonianParams::eta_prime() const { return eta() + 1.0; }

double HamiltonianParams::xi() const {
    const SqueezeTerm* s = find_order2(*this);
    if (kerr == 0.0) throw std::domain_error("xi: undefined for kerr == 0");
    const double stored = (s ? s->amplitude : 0.0) / kerr;
    // Scaled models store the intensive drive chi; xi is its extensive form.
    return scaled ? stored * double(scale_N) : stored;
}

double HamiltonianParams::chi() const {
    if (!scaled) throw std::domain_error("chi: defined for scaled models only");
    return xi() / double(scale_N);
}

bool HamiltonianParams::has_squeeze() const {
    for (const auto& s : squeeze)
        if (s.amplitude != 0.0) return true;
    return false;
}

bool HamiltonianParams::squeeze_all_even() const {
    for (const auto& s : squeeze)
        if (s.amplitude != 0.0 && s.order % 2 != 0) return false;
    return true;
}

HamiltonianParams HamiltonianParams::harmonic(double omega) {
    HamiltonianParams p;
    p.omega = omega;
    return p;
}

HamiltonianParams HamiltonianParams::squeezed_harmonic(double omega, double eps2) {
    HamiltonianParams p;
    p.omega = omega;
    p.squeeze = {{2, eps2}};
    return p;
}

HamiltonianParams HamiltonianParams::dimensionless(double eta, double xi) {
    HamiltonianParams p;
    p.omega = eta;
    p.kerr = 1.0;
    if (xi != 0.0) p.squeeze = {{2, xi}};
    return p;
}

HamiltonianParams HamiltonianParams::scaled_model(double eta, double chi, int big_n) {
    HamiltonianParams p;
    p.omega = eta;
    p.kerr = 1.0;
    p.squeeze = {{2, chi}};
    p.scaled = true;
    p.scale_N = big_n;
    return p;
}

void validate(const HamiltonianParams& params) {
    if (params.scaled && params.scale_N < 1)
        throw std::invalid_argument("HamiltonianParams: scaled model requires scale_N >= 1");
    for (const auto& s : params.squeeze)
        if (s.order < 1) throw std::invalid_argument("HamiltonianParams: squeeze order must be >= 1");
}

void validate(const DissipationChannel& channel) {
    if (channel.order < 1) throw std::invalid_argument("DissipationChannel: order must be >= 1");
    if (channel.kappa < 0.0) throw std::invalid_argument("DissipationChannel: kappa must be >= 0");
    if (channel.n_th < 0.0) throw std::invalid_argument("DissipationChannel: n_th must be >= 0");
    if (channel.n_th > 0.0 && channel.order != 1)
        throw std::invalid_argument("DissipationChannel: thermal occupation is supported for order 1 only");
}

fock::OperatorMatrix build_hamiltonian(const HamiltonianParams& params, fock::FockSpace space) {
    validate(params);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    const double linear = (params.kerr == 0.0) ? params.omega : -params.omega;
    const double quartic = params.scaled ? params.kerr / double(params.scale_N) : params.kerr;
    for (int n = 0; n <= space.n_max; ++n)
        h(n, n) = linear * double(n) + quartic * double(n) * double(n - 1);
    for (const auto& s : params.squeeze)
        if (s.amplitude != 0.0) h -= s.amplitude * pairing(space, s.order).mat;
    return {space, std::move(h)};
}

namespace {

// Solve one parity block and append (energy, parity) pairs.
void solve_block(const Eigen::MatrixXd& h, int parity_of_block, int first_index,
                 std::vector<std::pair<double, int>>& out) {
    const auto dim = h.rows();
    std::vector<Eigen::Index> idx;
    for (Eigen::Index k = first_index; k < dim; k += 2) idx.push_back(k);
    if (idx.empty()) return;
    Eigen::MatrixXd block(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) block(r, c) = h(idx[r], idx[c]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
        out.emplace_back(solver.eigenvalues()(k), parity_of_block);
}

}  // namespace

std::vector<HamiltonianLevel> closed_spectrum(const HamiltonianParams& params, fock::FockSpace space) {
    const Eigen::MatrixXcd hc = build_hamiltonian(params, space).mat;
    const Eigen::MatrixXd h = hc.real();  // all supported models are real symmetric

    std::vector<std::pair<double, int>> levels;
    levels.reserve(space.dim());
    if (params.squeeze_all_even()) {
        solve_block(h, +1, 0, levels);
        solve_block(h, -1, 1, levels);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
        for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
            double even = 0.0, odd = 0.0;
            for (Eigen::Index n = 0; n < h.rows(); ++n) {
                const double w = solver.eigenvectors()(n, k) * solver.eigenvectors()(n, k);
                (n % 2 == 0 ? even : odd) += w;
            }
            levels.emplace_back(solver.eigenvalues()(k), even >= odd ? +1 : -1);
        }
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<HamiltonianLevel> out(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k)
        out[k] = {int(k), levels[k].first, levels[k].second, Phase::one};

    // Doubled levels mark the phase. Under squeezing the pairs straddle the
    // parity blocks (split cat states); at zero drive the Kerr pairs
    // (n, eta'-n) with even eta' share a block, so parity says nothing and
    // degeneracy alone decides.
    for (std::size_t k = 0; k + 1 < out.size(); ++k) {
        const double scale = std::max(1.0, std::abs(out[k].energy));
        if (std::abs(out[k + 1].energy - out[k].energy) <= kPairTol * scale) {
            out[k].phase = Phase::two;
            out[k + 1].phase = Phase::two;
        }
    }
    return out;
}

double ground_state_occupation(const HamiltonianParams& params, fock::FockSpace space) {
    const Eigen::MatrixXcd hc = build_hamiltonian(params, space).mat;
    const Eigen::MatrixXd h = hc.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const Eigen::VectorXd ground = solver.eigenvectors().col(0);
    double occ = 0.0;
    for (Eigen::Index n = 0; n < ground.size(); ++n) occ += double(n) * ground(n) * ground(n);
    const double big_n = params.scaled ? double(params.scale_N) : double(space.n_max);
    if (big_n < 1.0) throw std::domain_error("ground_state_occupation: needs scale_N or n_max >= 1");
    return occ / big_n;
}

double separatrix_energy(double eta) { return eta / 2.0 + eta * eta / 4.0; }

double kissing_point(double eta) {
    if (eta > 0.0)
        throw std::domain_error("kissing_point: closed form not established for eta > 0");
    return -2.0 * eta;
}

}  // namespace liouspec::models
