#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3lattice/disc_form.hpp"
#include "k3lattice/lattice.hpp"

namespace k3lattice {

struct JordanBlock {
    unsigned long scale = 0; // block is p^scale times a unimodular form
    std::size_t rank = 0;
    int det_class = 1;       // Legendre symbol of the unit part of the block determinant
    friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

struct JordanDecomposition {
    Integer prime;
    std::vector<JordanBlock> blocks; // ascending scale
    unsigned long precision = 0;
    // transform^T * gram * transform == diag(diagonal) mod p^precision; columns
    // are grouped block by block in the order of `blocks`.
    IntMatrix transform;
    IntVector diagonal;

    // Equality of the local invariants only.
    friend bool operator==(const JordanDecomposition& a, const JordanDecomposition& b)
    {
        return a.prime == b.prime && a.blocks == b.blocks;
    }
};

// Odd p only. precision defaults to v_p(det) + 4 and must be at least v_p(det) + 2.
JordanDecomposition jordan_decomposition(const QuadLattice& lattice, const Integer& p,
                                         std::optional<unsigned long> precision = std::nullopt);

bool is_selfdual_at_p(const QuadLattice& lattice, const Integer& p);

enum class HypothesisStatus {
    Certified,  // U_p^2 summand proven (Jordan data for odd p, construction lineage otherwise)
    Unverified, // could not be certified; the answer relies on the caller's assertion
};

struct ZpEquivalence {
    bool equivalent = false;
    HypothesisStatus hypothesis = HypothesisStatus::Unverified;
    std::string note;
};

// True iff the unimodular Jordan component over Z_p (p odd) has U_p^2 as an orthogonal summand.
bool has_hyperbolic_square_at_p(const QuadLattice& lattice, const Integer& p);

ZpEquivalence zp_pointed_equivalent(const QuadLattice& lattice, const IntVector& point, const IntVector& other,
                                    const Integer& p);

struct PointedInvariants {
    Signature signature;
    Integer point_norm;
    Integer point_divisor; // generator of <point, lattice>
    bool ambient_even = false;
    Integer ambient_det;
    std::map<Integer, JordanDecomposition> ambient_local; // odd p | det
    FiniteQuadraticForm ambient_two_part;
    Integer complement_det;
    std::map<Integer, JordanDecomposition> local_data; // odd p | det(point^perp)
    FiniteQuadraticForm complement_two_part;
    bool hyperbolic_certified = false; // U^2 summand known from construction
};

PointedInvariants pointed_invariants(const QuadLattice& lattice, const IntVector& point);

// Equal invariant tuples; 2-parts compared up to isomorphism of finite quadratic forms.
bool same_invariants(const PointedInvariants& a, const PointedInvariants& b);

struct ArtinResult {
    Integer prime;
    unsigned long sigma = 0;
    bool superspecial = false;
    bool within_k3_bound = true; // sigma <= 11
    // Columns spanning T1 (unimodular part) and T0 (so that p T0 is the p-scaled part),
    // valid modulo p^precision; empty for p = 2.
    IntMatrix t1_basis;
    IntMatrix t0_basis;
    unsigned long precision = 0;
};

ArtinResult artin_invariant(const QuadLattice& lattice, const Integer& p);

} // namespace k3lattice
