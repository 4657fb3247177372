#pragma once

#include <map>

#include "k3lattice/matrix.hpp"

namespace k3lattice {

// p-adic valuation of a nonzero integer.
unsigned long valuation(const Integer& x, const Integer& p);
bool is_prime(const Integer& n);
// Prime factorization of |n| (n != 0), by trial division plus a primality test
// on the cofactor. Throws CapacityError if a composite cofactor survives.
std::map<Integer, unsigned long> factorize(const Integer& n);
int legendre(const Integer& a, const Integer& p);
Integer power(const Integer& base, unsigned long exponent);
Rational power(const Rational& base, unsigned long exponent);
// Canonical representative of x modulo m in [0, m).
Rational mod_rational(const Rational& x, const Rational& m);

} // namespace k3lattice
