// liouville.hpp — Vectorized Lindblad generators and weak-symmetry block structure
#pragma once

#include <utility>
#include <vector>

#include "liouspec/fock.hpp"
#include "liouspec/models.hpp"

namespace liouspec::liou {

// Vectorization convention, used consistently everywhere:
//
//   an operator A on a d-dimensional Fock space becomes a d^2 vector by
//   row-major stacking, component index(n, m) = n*d + m holding A(n, m).
//
// Under this stacking, left multiplication A -> O A is the matrix O (x) I,
// right multiplication A -> A O is I (x) O^T, and the generator of
//
//   d rho / dt = -i [H, rho]
//                + sum_i kappa_i ( G_i rho G_i^dag
//                                  - (G_i^dag G_i rho + rho G_i^dag G_i) / 2 )
//
// becomes the dense matrix
//
//   L = -i (H (x) I - I (x) H^T)
//       + sum_i kappa_i ( G_i (x) G_i^*
//                         - (G_i^dag G_i (x) I + I (x) G_i^T G_i^*) / 2 ).
struct LiouvillianMatrix {
    fock::FockSpace space;
    Eigen::MatrixXcd mat;  // dim() x dim()

    LiouvillianMatrix(fock::FockSpace space_, Eigen::MatrixXcd mat_);

    Eigen::Index dim() const { return mat.rows(); }
    int index_of(int n, int m) const;
    std::pair<int, int> dyad_of(int index) const;
};

Eigen::VectorXcd vectorize(const fock::OperatorMatrix& a);
fock::OperatorMatrix devectorize(const Eigen::VectorXcd& v, fock::FockSpace space);

LiouvillianMatrix left_super(const fock::OperatorMatrix& op);
LiouvillianMatrix right_super(const fock::OperatorMatrix& op);

// Full dense generator for the given model. Channels of order k use the jump
// operator a^k; a channel with n_th > 0 contributes the pair of rates
// kappa (1 + n_th) on a and kappa n_th on a^dag.
LiouvillianMatrix assemble(const models::HamiltonianParams& params,
                           const std::vector<models::DissipationChannel>& channels,
                           fock::FockSpace space);

// Weak-symmetry sector rules. u1_coherence groups dyads by the coherence
// index c = n - m and applies whenever no squeeze drive is present (every
// supported channel shifts n and m together). z2_parity groups by (n - m)
// mod 2 and additionally tolerates even-order squeezing.
enum class SectorRule { u1_coherence, z2_parity };

struct Block {
    int label = 0;                  // c for u1_coherence; 0 even / 1 odd for z2_parity
    std::vector<int> indices;       // dyad indices in full-space numbering
    Eigen::MatrixXcd mat;
};

struct BlockDecomposition {
    fock::FockSpace space;
    SectorRule rule;
    std::vector<Block> blocks;
};

// Split an assembled generator into sector blocks. Any coupling between
// different sectors above 1e-12 means the rule does not apply to the model
// and raises an error rather than silently dropping entries.
BlockDecomposition block_decompose(const LiouvillianMatrix& liouvillian, SectorRule rule);

// Assemble the sector blocks directly from the model without materializing
// the full dim^2 x dim^2 matrix. This is the only route that scales to
// large spaces; it agrees entry by entry with block_decompose(assemble(...)).
BlockDecomposition assemble_blocks(const models::HamiltonianParams& params,
                                   const std::vector<models::DissipationChannel>& channels,
                                   fock::FockSpace space, SectorRule rule);

// True when the rule's preconditions hold for the model.
bool rule_applies(const models::HamiltonianParams& params, SectorRule rule);

}  // namespace liouspec::liou
