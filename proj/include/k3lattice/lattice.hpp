#pragma once

#include <cstddef>
#include <utility>

#include "k3lattice/matrix.hpp"

namespace k3lattice {

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

// A nondegenerate integral quadratic lattice, given by its Gram matrix in a
// fixed basis. Equality compares Gram matrices only.
class QuadLattice {
public:
    // Throws InputError if gram is not square/symmetric, DegenerateLattice if det = 0.
    explicit QuadLattice(IntMatrix gram);

    const IntMatrix& gram() const { return gram_; }
    std::size_t rank() const { return gram_.rows(); }
    const Integer& det() const { return det_; }

    // Number of orthogonal hyperbolic-plane summands known from construction
    // (make_U, direct sums, and the named lattices). Zero when unknown.
    std::size_t hyperbolic_summands() const { return hyperbolic_summands_; }
    QuadLattice with_hyperbolic_summands(std::size_t count) const;

    // Gram of g^T * gram * g for a change of basis g in GL(rank, Z).
    QuadLattice base_change(const IntMatrix& g) const;

    friend bool operator==(const QuadLattice& a, const QuadLattice& b) { return a.gram_ == b.gram_; }

private:
    IntMatrix gram_;
    Integer det_;
    std::size_t hyperbolic_summands_ = 0;
};

struct PointedLattice {
    QuadLattice lattice;
    IntVector point;

    PointedLattice(QuadLattice l, IntVector p);
};

struct OrthogonalComplement {
    QuadLattice lattice;
    IntMatrix embedding; // columns: basis of the complement in ambient coordinates
};

QuadLattice make_U();
// Negative of the E8 Cartan matrix (Bourbaki labelling: chain 1-3-4-5-6-7-8, node 2 on node 4).
QuadLattice make_E8();
QuadLattice make_rank1(const Integer& m);
QuadLattice direct_sum(const QuadLattice& a, const QuadLattice& b);
QuadLattice direct_sum_power(const QuadLattice& a, std::size_t copies);
// U^3 + E8^2 (n = 1), U^3 + E8^2 + <2 - 2n> (n > 1).
QuadLattice lambda_lattice(long n);
// The lattice with Gram scale * gram(L).
QuadLattice scaled(const QuadLattice& lattice, const Integer& scale);

Integer inner_product(const QuadLattice& lattice, const IntVector& x, const IntVector& y);
Integer norm(const QuadLattice& lattice, const IntVector& x);
Integer content(const IntVector& v);
bool is_primitive(const QuadLattice& lattice, const IntVector& v);
OrthogonalComplement orthogonal_complement(const QuadLattice& lattice, const IntVector& v);
Signature signature(const QuadLattice& lattice);
Signature signature(const RatMatrix& symmetric);
bool is_even(const QuadLattice& lattice);
bool is_positive_definite(const QuadLattice& lattice);
bool is_negative_definite(const QuadLattice& lattice);
bool is_unimodular_basis_change(const IntMatrix& g);

} // namespace k3lattice
