#include "k3lattice/arith.hpp"

namespace k3lattice {

unsigned long valuation(const Integer& x, const Integer& p)
{
    if (x == 0) throw DomainError("valuation of zero is infinite");
    if (p < 2) throw DomainError("valuation base must be at least 2");
    Integer rest = abs(x);
    return mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
}

bool is_prime(const Integer& n)
{
    return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::map<Integer, unsigned long> factorize(const Integer& n)
{
    if (n == 0) throw DomainError("cannot factor zero");
    std::map<Integer, unsigned long> out;
    Integer rest = abs(n);
    for (unsigned long d = 2; d < 2000000 && rest > 1; d += (d == 2 ? 1 : 2)) {
        if (Integer(d) * d > rest) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
            unsigned long e = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
                ++e;
            }
            out[Integer(d)] = e;
        }
    }
    if (rest > 1) {
        if (!is_prime(rest)) throw CapacityError("integer too hard to factor by trial division: " + n.get_str());
        out[rest] += 1;
    }
    return out;
}

int legendre(const Integer& a, const Integer& p)
{
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

Integer power(const Integer& base, unsigned long exponent)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Rational power(const Rational& base, unsigned long exponent)
{
    Rational r(power(base.get_num(), exponent), power(base.get_den(), exponent));
    r.canonicalize();
    return r;
}

Rational mod_rational(const Rational& x, const Rational& m)
{
    Rational q = x / m;
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = x - m * Rational(f);
    r.canonicalize();
    return r;
}

} // namespace k3lattice
