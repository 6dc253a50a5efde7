// quasispin.hpp — Closed-form reference spectra and su(2) ladder classification
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace liouspec::quasispin {

// Exact half-integer, stored as twice its value. Spin labels like j = 5/2
// stay exact through every arithmetic step taken here.
struct HalfInt {
    int twice = 0;

    HalfInt() = default;
    explicit HalfInt(int twice_) : twice(twice_) {}
    static HalfInt of_int(int v) { return HalfInt(2 * v); }

    double value() const { return twice / 2.0; }
    bool is_integer() const { return twice % 2 == 0; }
    std::string str() const;  // "2" or "5/2"

    friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
};

using Complex = std::complex<double>;

// Damped harmonic line at rate kappa: lambda(n, m) = -i omega (n - m)
// - kappa (n + m) / 2 over all dyads of an n_fock-dimensional space.
std::vector<Complex> oracle_harmonic(double omega, double kappa, int n_fock);

// Kerr line with linear dissipation. Level energies E_n = -eta' n + n^2 give
// lambda(n, m) = -i (E_n - E_m) - kappa (n + m) / 2.
std::vector<Complex> oracle_kerr(double eta_prime, double kappa, int n_fock);

// Kerr line with two-boson dissipation at rate kappa2:
// lambda(n, m) = -i (E_n - E_m) - kappa2 (n(n-1) + m(m-1)) / 2.
std::vector<Complex> oracle_quadratic_dissipation(double eta_prime, double kappa2, int n_fock);

// Ladder labels of one dyad: m_j = j - n, m_j' = j - m.
struct Su2Point {
    int n = 0, m = 0;
    HalfInt m_j, m_j_prime;
    Complex lambda;
};

// The (2j+1)^2 ladder eigenvalues
// lambda = -i (m_j^2 - m_j'^2) - kappa (j - (m_j + m_j')/2),
// matching oracle_kerr with eta' = 2j restricted to n, m <= 2j.
std::vector<Su2Point> oracle_su2(HalfInt j, double kappa);

// Representation labels of a dyad under the ladder classification. Dyads
// with n + m <= 2j sit on the right branch with J = (n+m)/2, M = (n-m)/2;
// the rest sit on the left branch with J = 2j - (n+m)/2, M = -(n-m)/2.
struct JMLabel {
    bool left_branch = false;
    HalfInt big_j, big_m;
};

JMLabel classify_jm(int n, int m, HalfInt j);

// Eigenvalue from the representation labels alone:
// right branch  4i (j - J) M - kappa J,
// left branch   4i (j - J) M - kappa (2j - J).
Complex jm_eigenvalue(const JMLabel& label, HalfInt j, double kappa);

struct JMPoint {
    int n = 0, m = 0;
    JMLabel label;
    Complex lambda;
};

// Every dyad of the (2j+1)-level ladder with its branch labels; the lambda
// values agree with oracle_su2 exactly, member by member.
std::vector<JMPoint> enumerate_jm(HalfInt j, double kappa);

// True for dyads on the accumulation line Re = -kappa j, Im = 0 (the
// boundary representation J = j, reached by n + m = 2j).
bool is_accumulation(int n, int m, HalfInt j);

// Squeeze-renormalized harmonic line, valid in the stable regime
// 2 |eps2| <= |omega|:
// lambda = -i sqrt(omega^2 - 4 eps2^2) (n1 - n2) - kappa (n1 + n2) / 2.
// Returns the `count` slowest-decaying points, ordered by (n1 + n2, n1).
std::vector<Complex> oracle_squeezed_harmonic(double omega, double eps2, double kappa, int count);

// Drive amplitude at which the squeezed harmonic line destabilizes once
// dissipation is included: eps2* = sqrt(omega^2 + kappa^2 / 4) / 2.
double stability_boundary(double omega, double kappa);

// Deep-well approximation of the strongly driven line. Effective levels
// E_nu = 4 xi nu (1 - nu / n_eff) give
// lambda = -i (E_nu - E_nu') - kappa (nu + nu') / 2,
// each point doubly degenerate in the well parity.
struct AnharmonicPoint {
    int nu = 0, nu_prime = 0;
    Complex lambda;
    int multiplicity = 2;
};
std::vector<AnharmonicPoint> oracle_anharmonic_phase2(double xi, double n_eff, double kappa,
                                                      int nu_max);

// Closed-system ladder energies: excitation m_j^2 (integer j) or
// m_j^2 - 1/4 (half-integer j) above the bottom of the well at -j^2.
struct LadderLevel {
    HalfInt m_j;
    double excitation = 0.0;
    double total = 0.0;
};
std::vector<LadderLevel> quasispin_energies(HalfInt j);

}  // namespace liouspec::quasispin
