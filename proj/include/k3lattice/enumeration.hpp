#pragma once

#include <optional>
#include <vector>

#include "k3lattice/lattice.hpp"

namespace k3lattice {

struct VectorSet {
    Integer norm;
    // Sorted: by sign-normalized representative (first nonzero coordinate
    // positive), lexicographically, each x immediately followed by -x.
    std::vector<IntVector> vectors;
};

// All x with x^2 = m on a definite lattice (complete: the definite bound is
// intrinsic). Throws DomainError on indefinite input.
VectorSet vectors_of_norm(const QuadLattice& lattice, const Integer& m);

// All nonzero x with 0 < |x^2| <= |bound| on a definite lattice.
std::vector<IntVector> short_vectors(const QuadLattice& lattice, const Integer& bound);

// Some g with g^T * gram(b) * g == gram(a), or nullopt when none exists.
// Both lattices must be definite of equal rank <= max_rank.
std::optional<IntMatrix> is_isometric_definite(const QuadLattice& a, const QuadLattice& b, std::size_t max_rank = 8);

struct PrimeToPSearch {
    std::optional<IntVector> witness;
    // True when absence is proven (every norm in the lattice is divisible by p).
    bool definitive = false;
};

// Vector w with p not dividing w^2, searched over coefficients in [-bound, bound].
PrimeToPSearch find_vector_norm_prime_to_p(const QuadLattice& lattice, const Integer& p, unsigned long search_bound = 1);

// Pairwise size reduction (b_i <- b_i - round(<b_i,b_j>/<b_j,b_j>) b_j) on a
// positive definite Gram; returns g with g^T G g reduced.
IntMatrix pair_reduce(const IntMatrix& positive_gram);

} // namespace k3lattice
