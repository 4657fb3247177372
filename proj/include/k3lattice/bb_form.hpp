#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "k3lattice/matrix.hpp"

namespace k3lattice {

// A symmetric 2n-linear form evaluated on rational vectors.
using MultilinearForm = std::function<Rational(std::span<const RatVector>)>;

// (2n)! / (2^n n!), the number of perfect matchings on 2n points.
Integer lambda_n(long n);

// w(a_1, ..., a_2n) as the sum over perfect matchings of the products of q
// over matched pairs.
Rational w_from_q(const RatMatrix& q, long n, std::span<const RatVector> args);

// Convenience wrapper binding q and n.
MultilinearForm make_w(const RatMatrix& q, long n);

// Recovers the symmetric form q (as a Gram matrix on `basis`) from w and the
// normalization q(xi, xi) = q_xi. Throws DomainError when q_xi = 0 and
// InconsistentData when the recovered q does not reproduce w.
RatMatrix q_from_w(const MultilinearForm& w, long n, const RatVector& xi, const Rational& q_xi,
                   const std::vector<RatVector>& basis);

// Same, with the standard basis of Q^rank.
RatMatrix q_from_w(const MultilinearForm& w, long n, const RatVector& xi, const Rational& q_xi);

// Positive real root x of lambda_n x^n = d.
struct BBNorm {
    std::optional<Rational> exact; // set when the root is rational
    bool integral = false;
    // Isolating interval [lower, upper]; lower == upper == root when exact.
    Rational lower;
    Rational upper;
};

BBNorm degree_to_bb(const Integer& degree, long n, unsigned long interval_bits = 64);

} // namespace k3lattice
