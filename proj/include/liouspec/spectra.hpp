// spectra.hpp — Liouvillian eigenvalue analysis: spectra, steady states, gaps, matching
#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "liouspec/liouville.hpp"

namespace liouspec::spectra {

struct SpectrumPoint {
    std::complex<double> lambda;
    int multiplicity = 1;
    std::optional<std::pair<int, int>> dyad;  // (n, m) label when one is known
};

// All eigenvalues of the assembled generator, one point per eigenvalue.
// Assembled Lindblad generators satisfy conj(L(i,j)) == L(swap(i), swap(j))
// with swap the dyad transpose (n,m) -> (m,n); when that structure is
// detected the solve runs on an exactly equivalent real matrix, which keeps
// the returned multiset exactly closed under complex conjugation.
std::vector<SpectrumPoint> eigendecompose(const liou::LiouvillianMatrix& liouvillian);

// Same spectrum through the sector blocks. Blocks related by the dyad
// transpose are solved once and mirrored; self-paired blocks go through the
// real form. Order of the result is by block, then by the solver's order.
std::vector<SpectrumPoint> eigendecompose_blocks(const liou::BlockDecomposition& decomposition);

// Eigenvalues plus right eigenvectors; small systems only, no symmetry tricks.
struct EigenSystem {
    std::vector<SpectrumPoint> points;
    Eigen::MatrixXcd vectors;
};
EigenSystem eigendecompose_full(const liou::LiouvillianMatrix& liouvillian);

// Deterministic spectral order: ascending |Re|, ties by descending Im (so a
// conjugate pair lists +Im first), final tie by ascending Re.
void sort_spectrum(std::vector<SpectrumPoint>& points);
std::vector<SpectrumPoint> sorted_spectrum(std::vector<SpectrumPoint> points);

// Merge numerically coincident eigenvalues. Two points join the same cluster
// when they lie within radius_scale * (1 + |lambda|) of the cluster seed;
// the result carries summed multiplicities and the cluster mean.
std::vector<SpectrumPoint> cluster(const std::vector<SpectrumPoint>& points,
                                   double radius_scale = 1e-6);

struct SpectralGaps {
    double gap = 0.0;              // -Re(lambda_1)
    double hamiltonian_gap = 0.0;  // |Im(lambda_1)|
};

// Both gaps from a sorted spectrum whose leading point is the zero mode.
SpectralGaps gaps(const std::vector<SpectrumPoint>& sorted);

// Second dissipative gap -Re(lambda_2) from a sorted spectrum.
double second_gap(const std::vector<SpectrumPoint>& sorted);

// T = -1 / Re(lambda_1), in us when rates are in 1/us. Raises when the
// spectrum is gapless within 1e-12.
double relaxation_time(const std::vector<SpectrumPoint>& sorted);

// Steady state of the generator: the kernel vector, hermitized and trace
// normalized. Verifies the zero eigenvalue is unique within
// 1e-9 * (1 + ||L||_inf) and that the residual, trace, hermiticity, and
// positivity invariants hold.
fock::OperatorMatrix steady_state(const liou::LiouvillianMatrix& liouvillian);

// Steady state through the sector block containing the populations; avoids
// ever forming the full generator. Uniqueness is checked within that block.
fock::OperatorMatrix steady_state(const models::HamiltonianParams& params,
                                  const std::vector<models::DissipationChannel>& channels,
                                  fock::FockSpace space);

double occupation(const fock::OperatorMatrix& rho);  // Tr[rho n]

// Greatest pairing distance of a minimum-cost matching between two equal-size
// eigenvalue multisets: both sides are sorted lexicographically by (Re, Im),
// paired by rank, then improved by pair swaps until no swap lowers the cost.
double match_spectra(const std::vector<std::complex<double>>& a,
                     const std::vector<std::complex<double>>& b);

// The pairing itself: result[i] is the index in b matched to a[i].
std::vector<int> match_pairing(const std::vector<std::complex<double>>& a,
                               const std::vector<std::complex<double>>& b);

std::vector<std::complex<double>> values_of(const std::vector<SpectrumPoint>& points);

// Spectrum of the model by the cheapest correct route: sector blocks when a
// rule applies and the space is large, dense otherwise. Result is sorted.
std::vector<SpectrumPoint> liouvillian_spectrum(const models::HamiltonianParams& params,
                                                const std::vector<models::DissipationChannel>& channels,
                                                fock::FockSpace space);

}  // namespace liouspec::spectra
