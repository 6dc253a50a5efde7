// quasispin.cpp — Closed-form spectra; all label arithmetic is exact
#include "liouspec/quasispin.hpp"

#include <cmath>
#include <stdexcept>

namespace liouspec::quasispin {

namespace {

void require_space(int n_fock, const char* what) {
    if (n_fock < 1) throw std::invalid_argument(std::string(what) + ": n_fock must be >= 1");
}

}  // namespace

std::string HalfInt::str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

std::vector<Complex> oracle_harmonic(double omega, double kappa, int n_fock) {
    require_space(n_fock, "oracle_harmonic");
    std::vector<Complex> out;
    out.reserve(std::size_t(n_fock) * n_fock);
    for (int n = 0; n < n_fock; ++n)
        for (int m = 0; m < n_fock; ++m)
            out.emplace_back(-kappa * (double(n + m) / 2.0), -omega * double(n - m));
    return out;
}

std::vector<Complex> oracle_kerr(double eta_prime, double kappa, int n_fock) {
    require_space(n_fock, "oracle_kerr");
    std::vector<Complex> out;
    out.reserve(std::size_t(n_fock) * n_fock);
    for (int n = 0; n < n_fock; ++n)
        for (int m = 0; m < n_fock; ++m) {
            const double de = double(n * n - m * m) - eta_prime * double(n - m);
            out.emplace_back(-kappa * (double(n + m) / 2.0), -de);
        }
    return out;
}

std::vector<Complex> oracle_quadratic_dissipation(double eta_prime, double kappa2, int n_fock) {
    require_space(n_fock, "oracle_quadratic_dissipation");
    std::vector<Complex> out;
    out.reserve(std::size_t(n_fock) * n_fock);
    for (int n = 0; n < n_fock; ++n)
        for (int m = 0; m < n_fock; ++m) {
            const double de = double(n * n - m * m) - eta_prime * double(n - m);
            const double decay = double(n * (n - 1) + m * (m - 1)) / 2.0;
            out.emplace_back(-kappa2 * decay, -de);
        }
    return out;
}

std::vector<Su2Point> oracle_su2(HalfInt j, double kappa) {
    if (j.twice < 0) throw std::invalid_argument("oracle_su2: j must be >= 0");
    std::vector<Su2Point> out;
    const int levels = j.twice + 1;  // 2j + 1 rungs, n = 0 .. 2j
    out.reserve(std::size_t(levels) * levels);
    for (int n = 0; n < levels; ++n)
        for (int m = 0; m < levels; ++m) {
            Su2Point p;
            p.n = n;
            p.m = m;
            p.m_j = HalfInt(j.twice - 2 * n);
            p.m_j_prime = HalfInt(j.twice - 2 * m);
            // (m_j^2 - m_j'^2) through doubled labels: the difference of
            // squares is a multiple of four, so the division is exact.
            const long long num = (long long)(p.m_j.twice) * p.m_j.twice -
                                  (long long)(p.m_j_prime.twice) * p.m_j_prime.twice;
            const double im = -double(num) / 4.0;
            const double re = -kappa * (double(n + m) / 2.0);
            p.lambda = Complex(re, im);
            out.push_back(p);
        }
    return out;
}

JMLabel classify_jm(int n, int m, HalfInt j) {
    if (n < 0 || m < 0 || n > j.twice || m > j.twice)
        throw std::invalid_argument("classify_jm: dyad outside the ladder, need 0 <= n, m <= 2j");
    JMLabel label;
    if (n + m <= j.twice) {
        label.left_branch = false;
        label.big_j = HalfInt(n + m);        // J = (n + m) / 2
        label.big_m = HalfInt(n - m);        // M = (n - m) / 2
    } else {
        label.left_branch = true;
        label.big_j = HalfInt(2 * j.twice - (n + m));  // J = 2j - (n + m) / 2
        label.big_m = HalfInt(m - n);                  // M = -(n - m) / 2
    }
    return label;
}

Complex jm_eigenvalue(const JMLabel& label, HalfInt j, double kappa) {
    // 4 (j - J) M = (2j - 2J)(2M) is exact integer arithmetic.
    const long long im = (long long)(j.twice - label.big_j.twice) * label.big_m.twice;
    const double decay_twice =
        label.left_branch ? double(2 * j.twice - label.big_j.twice) : double(label.big_j.twice);
    return Complex(-kappa * (decay_twice / 2.0), double(im));
}

std::vector<JMPoint> enumerate_jm(HalfInt j, double kappa) {
    if (j.twice < 0) throw std::invalid_argument("enumerate_jm: j must be >= 0");
    std::vector<JMPoint> out;
    const int levels = j.twice + 1;
    out.reserve(std::size_t(levels) * levels);
    for (int n = 0; n < levels; ++n)
        for (int m = 0; m < levels; ++m) {
            JMPoint p;
            p.n = n;
            p.m = m;
            p.label = classify_jm(n, m, j);
            p.lambda = jm_eigenvalue(p.label, j, kappa);
            out.push_back(p);
        }
    return out;
}

bool is_accumulation(int n, int m, HalfInt j) { return n + m == j.twice; }

std::vector<Complex> oracle_squeezed_harmonic(double omega, double eps2, double kappa, int count) {
    if (count < 1) throw std::invalid_argument("oracle_squeezed_harmonic: count must be >= 1");
    if (2.0 * std::abs(eps2) > std::abs(omega))
        throw std::domain_error(
            "oracle_squeezed_harmonic: outside the stable regime, need 2 |eps2| <= |omega|");
    const double renorm = std::sqrt(omega * omega - 4.0 * eps2 * eps2);
    std::vector<Complex> out;
    out.reserve(std::size_t(count));
    for (int s = 0; int(out.size()) < count; ++s)
        for (int n1 = 0; n1 <= s && int(out.size()) < count; ++n1)
            out.emplace_back(-kappa * (double(s) / 2.0), -renorm * double(2 * n1 - s));
    return out;
}

double stability_boundary(double omega, double kappa) {
    return 0.5 * std::sqrt(omega * omega + kappa * kappa / 4.0);
}

std::vector<AnharmonicPoint> oracle_anharmonic_phase2(double xi, double n_eff, double kappa,
                                                      int nu_max) {
    if (n_eff <= 0.0) throw std::invalid_argument("oracle_anharmonic_phase2: n_eff must be > 0");
    if (nu_max < 0 || double(nu_max) > n_eff)
        throw std::invalid_argument("oracle_anharmonic_phase2: need 0 <= nu_max <= n_eff");
    auto energy = [&](int nu) { return 4.0 * xi * double(nu) * (1.0 - double(nu) / n_eff); };
    std::vector<AnharmonicPoint> out;
    out.reserve(std::size_t(nu_max + 1) * (nu_max + 1));
    for (int nu = 0; nu <= nu_max; ++nu)
        for (int nup = 0; nup <= nu_max; ++nup) {
            AnharmonicPoint p;
            p.nu = nu;
            p.nu_prime = nup;
            p.lambda = Complex(-kappa * (double(nu + nup) / 2.0), -(energy(nu) - energy(nup)));
            out.push_back(p);
        }
    return out;
}

std::vector<LadderLevel> quasispin_energies(HalfInt j) {
    if (j.twice < 0) throw std::invalid_argument("quasispin_energies: j must be >= 0");
    std::vector<LadderLevel> out;
    const double j_sq = double(j.twice) * j.twice / 4.0;
    const double floor_shift = j.is_integer() ? 0.0 : 0.25;
    for (int tw = -j.twice; tw <= j.twice; tw += 2) {
        LadderLevel level;
        level.m_j = HalfInt(tw);
        const double m_sq = double(tw) * tw / 4.0;
        level.excitation = m_sq - floor_shift;
        level.total = m_sq - j_sq;
        out.push_back(level);
    }
    return out;
}

}  // namespace liouspec::quasispin
