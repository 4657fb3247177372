#pragma once

#include <cstddef>
#include <vector>

#include "k3lattice/lattice.hpp"

namespace k3lattice {

// Elements are coordinate vectors (a_1, ..., a_k) with 0 <= a_i < d_i against the
// stored generators.
using DiscElement = IntVector;

inline constexpr std::size_t kDefaultEnumerationBound = 10000;

// The discriminant group L^v / L = (+) Z/d_i with its induced quadratic form,
// valued in Q/2Z when the ambient lattice is even and in Q/Z otherwise.
class FiniteQuadraticForm {
public:
    // generators: columns are lifts in L (x) Q, one per invariant factor.
    FiniteQuadraticForm(IntVector invariant_factors, RatMatrix generators, IntMatrix ambient_gram, bool even);

    const IntVector& invariant_factors() const { return invariant_factors_; }
    const RatMatrix& generators() const { return generators_; }
    const IntMatrix& ambient_gram() const { return ambient_gram_; }
    bool even() const { return even_; }
    std::size_t length() const { return invariant_factors_.size(); }
    Integer order() const;
    Integer exponent() const;
    // 2 for even ambient lattices, 1 otherwise.
    Rational value_modulus() const { return even_ ? 2 : 1; }

    // Canonical q of each generator and pairwise b(g_i, g_j) in [0, 1).
    const RatVector& generator_values() const { return generator_values_; }
    const RatMatrix& generator_pairings() const { return generator_pairings_; }

    DiscElement normalize(const DiscElement& x) const;
    DiscElement add(const DiscElement& x, const DiscElement& y) const;
    DiscElement scale(const DiscElement& x, const Integer& a) const;
    RatVector lift(const DiscElement& x) const;
    Rational value(const DiscElement& x) const;
    Rational pairing(const DiscElement& x, const DiscElement& y) const;

    // Every element in lexicographic coordinate order; throws CapacityError when
    // the order exceeds max_order.
    std::vector<DiscElement> elements(std::size_t max_order = kDefaultEnumerationBound) const;

private:
    IntVector invariant_factors_;
    RatMatrix generators_;
    IntMatrix ambient_gram_;
    bool even_;
    RatVector generator_values_;
    RatMatrix generator_pairings_;
};

struct IsotropicSubgroup {
    std::vector<DiscElement> generators; // canonical: greedy over elements in lexicographic order
    std::vector<DiscElement> elements;   // sorted lexicographically
    std::size_t order() const { return elements.size(); }
};

struct Overlattice {
    QuadLattice lattice;
    RatMatrix basis; // columns in the coordinates of the original lattice
};

FiniteQuadraticForm discriminant_group(const QuadLattice& lattice);
Rational disc_quadratic_value(const FiniteQuadraticForm& form, const DiscElement& x);

// All isotropic subgroups (including the trivial one), sorted by generator tuple.
std::vector<IsotropicSubgroup> isotropic_subgroups(const FiniteQuadraticForm& form,
                                                   std::size_t max_order = kDefaultEnumerationBound);

// Throws InconsistentData when the subgroup is not isotropic.
Overlattice overlattice_from_isotropic(const QuadLattice& lattice, const FiniteQuadraticForm& form,
                                       const IsotropicSubgroup& subgroup);

// Requires g^T G g = G and m L^v in L; throws DomainError otherwise.
bool acts_trivially_on_disc(const QuadLattice& lattice, const IntMatrix& g, const Integer& m);

FiniteQuadraticForm disc_local_part(const FiniteQuadraticForm& form, const Integer& prime);

// Brute-force isomorphism of finite quadratic forms (same value group assumed).
bool are_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                    std::size_t max_order = kDefaultEnumerationBound);

} // namespace k3lattice
