#ifndef HOMLAB_OPERATORS_HPP
#define HOMLAB_OPERATORS_HPP

#include <cstddef>
#include <vector>

#include "homlab/complex.hpp"
#include "homlab/sparse.hpp"

namespace homlab {

/// Signed boundary ∂_r : C_r → C_{r-1}, shape |S_{r-1}| × |S_r|.
struct BoundaryMatrix {
    int r = 0;
    IntSparse entries;
};

/// Signed boundary matrix. Throws EmptyLayer unless r >= 1 and layers r, r-1 are nonempty.
BoundaryMatrix boundary_matrix(const SimplicialComplex& k, int r);

/**
 * ∂_r with the empty-layer conventions used by the Laplacians: ∂_0 and any
 * map out of an empty layer are zero maps of the right shape.
 */
IntSparse boundary_or_zero(const SimplicialComplex& k, int r);

/// Coboundary δ^r = ∂_{r+1}ᵀ, shape |S_{r+1}| × |S_r| (zero rows when layer r+1 is empty).
IntSparse coboundary(const SimplicialComplex& k, int r);

/// Combinatorial Laplacian ∂_{r+1}∂_{r+1}ᵀ + ∂_rᵀ∂_r as an exact integer matrix.
IntSparse laplacian(const SimplicialComplex& k, int r);

/// 2(r+1)(r+2)|S_r||S_{r+1}|, with |S_{r+1}| taken as 1 when that layer is empty.
double laplacian_normalizer(const SimplicialComplex& k, int r);

RealSparse normalized_laplacian(const SimplicialComplex& k, int r);

/// Block split of ∂_{r+1}^{K2} under the prefix ordering of a filtration.
struct PersistentBlocks {
    int r = 0;
    IntSparse b;  // old r-simplices × old (r+1)-simplices
    IntSparse rb; // old r-simplices × new (r+1)-simplices
    IntSparse g;  // new r-simplices × new (r+1)-simplices
};

PersistentBlocks persistent_blocks(const FiltrationPair& f, int r);

/// Default relative cutoff for pseudoinverses.
inline constexpr double kPinvTolerance = 1e-10;

/// Moore-Penrose pseudoinverse of a symmetric matrix; eigenvalues with |λ| <= tol·max|λ| are dropped.
RealMatrix symmetric_pinv(const RealMatrix& m, double tol = kPinvTolerance);

/// M(Ī,Ī) − M(Ī,I) M(I,I)⁺ M(I,Ī) for 0-based `eliminated` = I. Empty I returns M.
RealMatrix schur_complement(const RealMatrix& m, const std::vector<std::size_t>& eliminated,
                            double tol = kPinvTolerance);

/// Orthogonal projection of w onto ker d: w − dᵀ(d dᵀ)⁺ d w.
RealVector project_to_kernel(const RealMatrix& d, const RealVector& w, double tol = kPinvTolerance);

struct PersistentLaplacian {
    RealMatrix up;    // ∂^{K1,K2}_{r+1} (∂^{K1,K2}_{r+1})ᵀ from the block formula
    RealMatrix down;  // (∂_r^{K1})ᵀ ∂_r^{K1}
    RealMatrix total; // up + down, size |S_r^{K1}|

    /// Ratio of extreme nonzero eigenvalues of GGᵀ (1 when G is empty).
    double gram_condition = 1.0;
};

PersistentLaplacian persistent_laplacian(const FiltrationPair& f, int r, double tol = kPinvTolerance);

/// Up-Laplacian of K2 restricted by Schur complement onto the K1 prefix (the independent route).
RealMatrix persistent_up_via_schur(const FiltrationPair& f, int r, double tol = kPinvTolerance);

} // namespace homlab

#endif
