#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "k3lattice/matrix.hpp"

namespace k3lattice {

// Kronecker symbol (a | n); throws DomainError for n = 0.
int kronecker_symbol(std::int64_t a, std::int64_t n);

// Discriminant of Q(sqrt(-d)) for d > 0.
std::int64_t imaginary_quadratic_discriminant(std::int64_t d);

struct Inertness {
    bool inert = false;
    bool ramified = false;
};

// Splitting type of the prime p in Q(sqrt(-d)).
Inertness is_inert(std::int64_t p, std::int64_t d);

// x^3 + y^3 + z^3 + w^3 reduces to a supersingular cubic iff p = 2 mod 3.
bool fermat_cubic_supersingular(std::int64_t p);

// Density of primes inert in at least one of Q(sqrt(-p_i)): 1 - 2^-r.
Rational union_inert_density(const std::vector<std::int64_t>& primes);

// Density of primes inert in at least one Q(sqrt(-d_i)): 1 - 2^-k, k the rank of
// the classes of -d_i in Q*/Q*^2 (the compositum has Galois group (Z/2)^k).
Rational inert_in_any_density(const std::vector<std::int64_t>& ds);

struct PrimePredicateReport {
    std::uint64_t bound = 0;
    std::uint64_t total_primes = 0;
    std::uint64_t hits = 0;
    Rational empirical_density;
    std::optional<Rational> theoretical_density;
};

// Primes up to bound (inclusive), ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

// Counts primes p <= bound with predicate(p). The predicate must be thread-safe;
// counting uses up to K3LATTICE_THREADS threads (default: hardware concurrency).
PrimePredicateReport empirical_density(const std::function<bool(std::uint64_t)>& predicate, std::uint64_t bound,
                                       std::optional<Rational> theoretical = std::nullopt);

} // namespace k3lattice
