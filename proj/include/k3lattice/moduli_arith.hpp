#pragma once

#include <optional>
#include <vector>

#include "k3lattice/disc_form.hpp"
#include "k3lattice/lattice.hpp"

namespace k3lattice {

// (r, c1, s) in Z + NS + Z.
struct MukaiVector {
    Integer r;
    IntVector c1;
    Integer s;
};

// c1.c1' - r s' - r' s, with c1 paired through ns.
Integer mukai_pairing(const MukaiVector& v, const MukaiVector& w, const QuadLattice& ns);

// Gram in the basis (r, ns basis, s); the (r, s) plane carries [[0,-1],[-1,0]].
QuadLattice mukai_lattice(const QuadLattice& ns);

// Coordinates of v in the basis of mukai_lattice(ns).
IntVector mukai_coordinates(const MukaiVector& v, const QuadLattice& ns);

// (1, 0, 1 - n).
MukaiVector hilbert_scheme_vector(long n, std::size_t ns_rank);

struct MukaiPerpReport {
    Integer prime;
    Integer v_square;
    std::size_t perp_rank = 0;
    IntVector perp_local_factors; // invariant factors of disc(v^perp) at p
    IntVector ns_local_factors;   // invariant factors of disc(ns) at p
    Integer perp_local_order;
    Integer ns_local_order;
    bool orders_match = false;
    bool forms_isomorphic = false;
    // Only for a Mukai lattice of rank 24: |disc((v^perp)_p)| <= p^20.
    std::optional<bool> within_p20_bound;
};

// Throws DomainError when p divides v^2.
MukaiPerpReport mukai_perp_disc_check(const MukaiVector& v, const QuadLattice& ns, const Integer& p);

// U^2 + E8^2 + A2(-1), even of signature (2, 20).
QuadLattice cubic_primitive_lattice();

// -[[6, 3], [3, 6]].
QuadLattice fermat_transcendental_lattice();

struct AbelJacobiConstants {
    Integer h4;   // h^4 on the cubic fourfold
    Integer g_bb; // q(g) on the Fano variety of lines
    Integer g4;   // g^4 = lambda_2 q(g)^2
    bool consistent = false;
};

AbelJacobiConstants abel_jacobi_constants();

// The Pluecker-type point g = 2(e + f) + delta in lambda_lattice(2): g^2 = 6, divisibility 2.
struct PlueckerComplementReport {
    IntVector point;
    Integer point_norm;
    Integer divisibility;
    Signature complement_signature;
    IntVector complement_invariant_factors;
    Signature cubic_signature;
    IntVector cubic_invariant_factors;
    bool discriminant_forms_isomorphic = false;
};

PlueckerComplementReport pluecker_complement_report();

struct NewtonSlope {
    Rational slope; // p-adic valuation of the roots
    unsigned long multiplicity = 0;
    friend bool operator==(const NewtonSlope&, const NewtonSlope&) = default;
};

struct NewtonPolygon {
    Integer prime;
    std::vector<NewtonSlope> slopes; // ascending
    unsigned long degree() const;
};

// coeffs ascending (a_0, ..., a_d). Throws InputError on the zero polynomial or a
// zero leading coefficient and DomainError on a zero constant term.
NewtonPolygon newton_polygon(const IntVector& coeffs, const Integer& p);

bool is_supersingular_newton(const NewtonPolygon& np, unsigned long weight);

// F^T G F == p^2 G over F_p (Frobenius twist trivial).
bool check_k3_crystal_pairing(const IntMatrix& frobenius, const IntMatrix& gram, const Integer& p);

} // namespace k3lattice
