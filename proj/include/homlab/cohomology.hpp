#ifndef HOMLAB_COHOMOLOGY_HPP
#define HOMLAB_COHOMOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>

#include "homlab/chain.hpp"
#include "homlab/complex.hpp"
#include "homlab/operators.hpp"

namespace homlab {

/// Real r-cochain: values[i] is its value on simplex i of layer r.
struct Cochain {
    int r = 0;
    RealVector values;
    bool cocycle = false;    // ‖δ^r ω‖ <= 1e-8 ‖ω‖ was checked
    bool degenerate = false; // random_cocycle: the projected draw was almost entirely a coboundary
};

/// ω(c) = Σ ω_i c_i. Throws DimensionMismatch.
double evaluate(const SimplicialComplex& k, const Cochain& w, const Chain& c);

/// ‖δ^r ω‖ <= 1e-8 ‖ω‖.
bool is_cocycle(const SimplicialComplex& k, const Cochain& w);

/// Orthogonal projection onto ker δ^r through a thresholded pseudoinverse of δ^r(δ^r)ᵀ.
Cochain project_to_cocycle(const SimplicialComplex& k, int r, const Cochain& w, double tol = kPinvTolerance);

/**
 * Unit-norm random cocycle: a Gaussian cochain, normalized, projected onto
 * ker δ^r and normalized again. Throws EmptyLayer, TrivialCocycleSpace.
 */
Cochain random_cocycle(const SimplicialComplex& k, int r, std::uint64_t seed);

/**
 * Greedy cocycle construction over the (r+1)-simplices in index order, in
 * exact rationals: faces still unassigned get random integers in [−9, 9]
 * except the last, which is solved from ω(∂σ) = 0. A simplex whose faces
 * were all assigned earlier is checked instead, and a violation throws
 * ConstructionFailed naming it. Throws EmptyLayer unless layers r, r+1 exist.
 */
Cochain manual_cocycle(const SimplicialComplex& k, int r, std::uint64_t seed);

/**
 * Cocycle supported on two r-simplices p < q whose rows of ∂_{r+1} each hold a
 * single nonzero, in the same column: ω(σ_p) = 1, ω(σ_q) = −sign_p·sign_q.
 * Throws EmptyLayer, NotFound.
 */
Cochain pair_cocycle(const SimplicialComplex& k, int r);

struct CohomologyTest {
    bool equivalent = true;
    std::size_t witnesses_drawn = 0;
    std::optional<std::size_t> distinguishing_index;
    std::optional<Cochain> witness;
    double gap = 0.0; // |ω(c1) − ω(c2)| of the distinguishing witness
};

inline constexpr double kEvaluationTolerance = 1e-8;

/**
 * Draws `witnesses` random cocycles (witness i from sub-seed i). The cycles are
 * distinguished by the first witness with |ω(c1) − ω(c2)| > tol·(1 + ‖c1‖ + ‖c2‖).
 * An empty cocycle space distinguishes nothing. Throws NotACycle, DimensionMismatch.
 */
CohomologyTest test_equivalent_cohomological(const SimplicialComplex& k, const Chain& c1, const Chain& c2,
                                             std::size_t witnesses = 8, double tol = kEvaluationTolerance,
                                             std::uint64_t seed = 0);

} // namespace homlab

#endif
