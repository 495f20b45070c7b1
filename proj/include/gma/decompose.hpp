#pragma once

#include <cstdint>
#include <vector>

#include "gma/net.hpp"
#include "gma/report.hpp"

namespace gma {

/// Splitting of a net along the minimal central projections of its global
/// algebra.
struct BlockDecomposition {
  std::vector<ComplexMatrix> projections;
  std::vector<Eigen::Index> block_dims;
  std::vector<double> weights; ///< |E Omega0|^2
  /// n x d isometries onto the block subspaces
  std::vector<ComplexMatrix> isometries;

  std::size_t size() const { return projections.size(); }
};

/// Blocks ordered by descending weight, then dimension, then the entries of
/// the projections. PreconditionError when omega0 vanishes on a block.
BlockDecomposition central_decomposition(const ToyNet& net);

/// The net restricted to block `z`: algebras V^dag R(W) V, normalised
/// omega0, translation generators, and the symmetries commuting with E.
ToyNet restrict_net(const ToyNet& net, const BlockDecomposition& bd, std::size_t z);

/// Weights, orthogonality and completeness of the projections, factor and
/// irreducibility of every block.
CheckResult decomposition_check(const ToyNet& net, const BlockDecomposition& bd);

/// Per wedge and block: [J_W, E], restriction of J_W and Delta_W^{it}
/// against the block's own modular data, reconstruction from the blocks,
/// conditions (a)-(c) per block, and a one-dimensional E0 per block when the
/// net has translations.
std::vector<CheckResult> blockwise_modular_check(const ToyNet& net, const NetModular& mod,
                                                 const BlockDecomposition& bd, double tol = 1e-8);

/// Global cone membership against blockwise membership on sampled vectors,
/// and per-block intersection cone on the ray of Omega0(z).
CheckResult blockwise_cone_check(const ToyNet& net, const NetModular& mod, const BlockDecomposition& bd,
                                 int samples, std::uint64_t seed);

/// Block indices z with E_z v outside the block cone of wedge `w`.
std::vector<std::size_t> failing_blocks(const ToyNet& net, const NetModular& mod, const BlockDecomposition& bd,
                                        std::size_t w, const ComplexVector& v);

struct SymmetryBlocks {
  bool broken = false;
  std::vector<std::size_t> permutation; ///< V E_z V^dag = E_{permutation[z]}
  double restriction_residual = 0.0;    ///< unbroken: preservation and [V, J] per block
};

/// ValidationError when v is not unitary or does not preserve the net.
SymmetryBlocks analyse_symmetry(const ToyNet& net, const NetModular& mod, const BlockDecomposition& bd,
                                const ComplexMatrix& v);
std::string cycle_notation(const std::vector<std::size_t>& permutation);

CheckResult symmetry_decomposition(const ToyNet& net, const NetModular& mod, const BlockDecomposition& bd,
                                   const std::vector<ComplexMatrix>& elements);

} // namespace gma
