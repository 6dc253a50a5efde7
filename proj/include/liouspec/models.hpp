// models.hpp — Parametric oscillator Hamiltonians, dissipation channels, closed-system spectra
#pragma once

#include <vector>

#include "liouspec/fock.hpp"

namespace liouspec::models {

struct SqueezeTerm {
    int order = 2;       // k: drive couples through (a^dag)^k + a^k
    double amplitude = 0.0;
};

// Hamiltonian family
//
//   kerr == 0:  H = omega * n                                   (harmonic line)
//   kerr != 0:  H = -omega * n + kerr * n(n-1) - sum eps_k P_k  (Kerr line)
//
// where P_k = (a^dag)^k + a^k. The linear term changes sign between the two
// lines so that reported level energies follow the conventional form of each
// family: E_n = omega*n on the harmonic line and E_n = -omega*n + kerr*n(n-1)
// on the Kerr line. Squeezing enters with a minus sign on both lines.
//
// With scaled set, the Kerr term is divided by scale_N and squeeze amplitudes
// are read as the intensive drive chi:  H/K = -eta*n + n(n-1)/N - chi*P_2.
struct HamiltonianParams {
    double omega = 0.0;
    double kerr = 0.0;
    std::vector<SqueezeTerm> squeeze;
    bool scaled = false;
    int scale_N = 0;

    double eta() const;        // omega / kerr
    double eta_prime() const;  // eta + 1
    double xi() const;         // order-2 amplitude / kerr
    double chi() const;        // xi / scale_N

    bool has_squeeze() const;
    bool squeeze_all_even() const;

    // Common configurations. The dimensionless forms fix kerr = 1.
    static HamiltonianParams harmonic(double omega);
    static HamiltonianParams squeezed_harmonic(double omega, double eps2);
    static HamiltonianParams dimensionless(double eta, double xi);
    static HamiltonianParams scaled_model(double eta, double chi, int big_n);
};

// One Lindblad channel with jump operator a^order at rate kappa (1/us).
// A thermal occupation n_th > 0 adds the matching a^dag channel at rate
// kappa * n_th and rescales the lowering channel to kappa * (1 + n_th);
// it is supported for order 1 only.
struct DissipationChannel {
    int order = 1;
    double kappa = 0.0;
    double n_th = 0.0;
};

void validate(const HamiltonianParams& params);
void validate(const DissipationChannel& channel);

fock::OperatorMatrix build_hamiltonian(const HamiltonianParams& params, fock::FockSpace space);

enum class Phase { one, two };

struct HamiltonianLevel {
    int index = 0;      // position in ascending energy order
    double energy = 0.0;
    int parity = +1;    // +1 even, -1 odd occupation sector
    Phase phase = Phase::one;
};

// Exact diagonalization of the closed Hamiltonian. Levels come back sorted
// ascending in energy. Parity is decided by sector membership: when every
// squeeze order is even the Hamiltonian block-diagonalizes over even and odd
// occupations and each level belongs to exactly one block; otherwise the
// label follows the dominant component of the eigenvector. A level is tagged
// Phase::two when it is one member of a degenerate pair (these are the pairs
// that sit at or below the separatrix energy at xi = 0).
std::vector<HamiltonianLevel> closed_spectrum(const HamiltonianParams& params, fock::FockSpace space);

// Ground-state occupation fraction <0|n|0> / N of the scaled Hamiltonian,
// the closed-system order parameter. N is scale_N when set, n_max otherwise.
double ground_state_occupation(const HamiltonianParams& params, fock::FockSpace space);

// Separatrix excitation energy E_s/K = eta/2 + eta^2/4 dividing singly
// degenerate levels from doubly degenerate ones at integer eta.
double separatrix_energy(double eta);

// Drive strength xi_k = -2 eta at which the two lowest levels touch.
// Established for eta <= 0 only; larger eta raises a domain error.
double kissing_point(double eta);

}  // namespace liouspec::models
