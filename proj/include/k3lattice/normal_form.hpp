#pragma once

#include "k3lattice/matrix.hpp"

namespace k3lattice {

// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

// Exact inverse; throws DegenerateLattice when singular.
RatMatrix inverse(const RatMatrix& m);

// left * A * right = diag(d_1, ..., d_r, 0, ..., 0) with d_i > 0, d_i | d_{i+1},
// left and right unimodular.
struct SmithForm {
    IntMatrix diagonal;
    IntMatrix left;
    IntMatrix right;
    IntVector invariant_factors; // the nonzero d_i, including units
};

SmithForm smith_form(const IntMatrix& a);

// transform * A = hermite, hermite in row echelon form with positive pivots and
// entries above each pivot reduced into [0, pivot). transform is unimodular.
struct HermiteForm {
    IntMatrix hermite;
    IntMatrix transform;
    std::size_t rank = 0;
};

HermiteForm hermite_form_rows(const IntMatrix& a);

// Columns form a basis of the saturated integer kernel {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

// Columns form a basis of the Z-span of the columns of a rational matrix,
// in a canonical (Hermite) shape; two spans are equal iff the results are equal.
RatMatrix canonical_column_basis(const RatMatrix& generators);

Integer common_denominator(const RatMatrix& m);
Integer common_denominator(const RatVector& v);

} // namespace k3lattice
