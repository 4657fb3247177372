#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "k3lattice/arith.hpp"
#include "k3lattice/moduli_arith.hpp"
#include "k3lattice/normal_form.hpp"
#include "oracles.hpp"

using namespace k3lattice;

namespace {

std::multiset<Rational> value_multiset(const QuadLattice& l)
{
    const Rational modulus = is_even(l) ? 2 : 1;
    std::multiset<Rational> out;
    for (const auto& y : oracle::dual_quotient(l.gram())) {
        Rational v = oracle::pair(to_rational(l.gram()), y, y);
        const Rational q = v / modulus;
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        v -= modulus * fl;
        out.insert(v);
    }
    return out;
}

Integer p_part(Integer x, const Integer& p)
{
    Integer out = 1;
    for (unsigned long k = oracle::valuation(abs(x), p); k > 0; --k) out *= p;
    return out;
}

std::vector<Rational> expanded_slopes(const NewtonPolygon& np)
{
    std::vector<Rational> out;
    for (const auto& s : np.slopes)
        for (unsigned long k = 0; k < s.multiplicity; ++k) out.push_back(s.slope);
    return out;
}

} // namespace

TEST_CASE("Mukai lattice and pairing")
{
    const QuadLattice ns = make_rank1(2);
    const QuadLattice m = mukai_lattice(ns);
    CHECK(m.rank() == 3);
    CHECK(m.det() == -2);
    CHECK(signature(m) == Signature{2, 1});
    CHECK(is_even(m));

    for (long n = 1; n <= 9; ++n) {
        const MukaiVector v = hilbert_scheme_vector(n, 1);
        CHECK(v.r == 1);
        CHECK(v.s == 1 - n);
        CHECK(mukai_pairing(v, v, ns) == 2 * n - 2);
    }
    CHECK_THROWS_AS(hilbert_scheme_vector(0, 1), DomainError);

    std::mt19937_64 rng(401);
    std::uniform_int_distribution<int> c(-5, 5);
    const QuadLattice ns2(IntMatrix{{2, 1}, {1, -4}});
    const QuadLattice m2 = mukai_lattice(ns2);
    for (int t = 0; t < 50; ++t) {
        const MukaiVector v{c(rng), {c(rng), c(rng)}, c(rng)};
        const MukaiVector w{c(rng), {c(rng), c(rng)}, c(rng)};
        const IntVector cv = mukai_coordinates(v, ns2), cw = mukai_coordinates(w, ns2);
        CHECK(inner_product(m2, cv, cw) == mukai_pairing(v, w, ns2));
        CHECK(mukai_pairing(v, w, ns2) == mukai_pairing(w, v, ns2));
        // Direct expansion of c1.c1' - r s' - r' s.
        const Integer direct = inner_product(ns2, v.c1, w.c1) - v.r * w.s - w.r * v.s;
        CHECK(mukai_pairing(v, w, ns2) == direct);
    }
    CHECK_THROWS_AS(mukai_pairing(MukaiVector{1, {0}, 1}, MukaiVector{1, {0, 0}, 1}, ns), DimensionMismatch);
}

TEST_CASE("discriminant of v-perp at p")
{
    const QuadLattice ns = make_rank1(2);
    const MukaiVector v{1, {0}, -1};
    const MukaiPerpReport r = mukai_perp_disc_check(v, ns, 5);
    CHECK(r.v_square == 2);
    CHECK(r.perp_rank == 2);
    CHECK(r.orders_match);
    CHECK(r.forms_isomorphic);
    CHECK_FALSE(r.within_p20_bound);

    // Independent: the p-part of |det(v^perp)| equals the computed local order.
    std::mt19937_64 rng(403);
    std::uniform_int_distribution<int> c(-4, 4);
    const QuadLattice ns2(IntMatrix{{2, 1}, {1, -4}});
    const QuadLattice m2 = mukai_lattice(ns2);
    int checked = 0;
    while (checked < 30) {
        const MukaiVector w{c(rng), {c(rng), c(rng)}, c(rng)};
        const Integer w2 = mukai_pairing(w, w, ns2);
        const IntVector cw = mukai_coordinates(w, ns2);
        if (w2 == 0 || !is_primitive(m2, cw)) continue;
        for (long p : {3, 5, 7}) {
            if (w2 % p == 0) {
                CHECK_THROWS_AS(mukai_perp_disc_check(w, ns2, p), DomainError);
                continue;
            }
            const MukaiPerpReport rep = mukai_perp_disc_check(w, ns2, p);
            const QuadLattice perp = orthogonal_complement(m2, cw).lattice;
            CHECK(rep.perp_local_order == p_part(perp.det(), p));
            CHECK(rep.ns_local_order == p_part(ns2.det(), p));
            CHECK(rep.orders_match == (rep.perp_local_order == rep.ns_local_order));
            if (!rep.orders_match) CHECK_FALSE(rep.forms_isomorphic);
        }
        ++checked;
    }

    CHECK_THROWS_AS(mukai_perp_disc_check(v, ns, 2), DomainError);
    CHECK_THROWS_AS(mukai_perp_disc_check(hilbert_scheme_vector(6, 1), ns, 5), DomainError);
    CHECK_THROWS_AS(mukai_perp_disc_check(v, ns, 9), DomainError);
}

TEST_CASE("rank 24 Mukai lattices report the p^20 bound")
{
    const QuadLattice k3 = direct_sum(direct_sum_power(make_U(), 3), direct_sum_power(make_E8(), 2));
    MukaiVector v{1, IntVector(22, Integer(0)), -2};
    const MukaiPerpReport r = mukai_perp_disc_check(v, k3, 5);
    CHECK(r.v_square == 4);
    CHECK(r.perp_rank == 23);
    REQUIRE(r.within_p20_bound);
    CHECK(*r.within_p20_bound);
    CHECK(r.orders_match);
}

TEST_CASE("cubic and Fermat lattices")
{
    const QuadLattice c = cubic_primitive_lattice();
    CHECK(c.rank() == 22);
    CHECK(signature(c) == Signature{2, 20});
    CHECK(is_even(c));
    CHECK(abs(c.det()) == 3);
    CHECK(smith_form(c.gram()).invariant_factors.back() == 3);

    const QuadLattice f = fermat_transcendental_lattice();
    CHECK(f.gram() == IntMatrix{{-6, -3}, {-3, -6}});
    CHECK(f.det() == 27);
    CHECK(is_negative_definite(f));
    CHECK(smith_form(f.gram()).invariant_factors == IntVector{3, 9});
}

TEST_CASE("Abel-Jacobi constants")
{
    const AbelJacobiConstants a = abel_jacobi_constants();
    CHECK(a.h4 == 3);
    CHECK(a.g_bb == 6);
    CHECK(a.g4 == 108);
    CHECK(a.consistent);
    CHECK(3 * a.g_bb * a.g_bb == a.g4);
}

TEST_CASE("Pluecker-type complement")
{
    const PlueckerComplementReport r = pluecker_complement_report();
    CHECK(r.point_norm == 6);
    CHECK(r.divisibility == 2);
    CHECK(r.complement_signature == Signature{2, 20});
    CHECK(r.cubic_signature == Signature{2, 20});
    CHECK(r.complement_invariant_factors.back() == 3);
    CHECK(r.cubic_invariant_factors.back() == 3);

    const QuadLattice l2 = lambda_lattice(2);
    CHECK(norm(l2, r.point) == 6);
    const QuadLattice perp = orthogonal_complement(l2, r.point).lattice;
    CHECK(abs(perp.det()) == 3);
    // Cyclic of order 3: isomorphic iff the value multisets agree.
    CHECK(r.discriminant_forms_isomorphic == (value_multiset(perp) == value_multiset(cubic_primitive_lattice())));
}

TEST_CASE("Newton polygons from roots of known valuation")
{
    std::mt19937_64 rng(409);
    for (long p : {2, 3, 5}) {
        for (int t = 0; t < 25; ++t) {
            const std::size_t d = 1 + t % 5;
            std::vector<Integer> roots;
            std::vector<Rational> expected;
            for (std::size_t i = 0; i < d; ++i) {
                const unsigned long k = rng() % 4;
                Integer unit = 1 + 2 * p * static_cast<long>(rng() % 5);
                if (rng() % 2) unit = -unit;
                roots.push_back(unit * power(Integer(p), k));
                expected.push_back(Rational(k));
            }
            std::sort(expected.begin(), expected.end());
            const NewtonPolygon np = newton_polygon(oracle::expand_roots(roots), p);
            CHECK(np.degree() == d);
            CHECK(expanded_slopes(np) == expected);
            for (std::size_t i = 1; i < np.slopes.size(); ++i) CHECK(np.slopes[i - 1].slope < np.slopes[i].slope);
        }
    }
    // t^2 - p: both roots have valuation 1/2.
    const NewtonPolygon half = newton_polygon(IntVector{-7, 0, 1}, 7);
    REQUIRE(half.slopes.size() == 1);
    CHECK(half.slopes[0] == NewtonSlope{Rational(1, 2), 2});
    CHECK(is_supersingular_newton(half, 1));
    CHECK_FALSE(is_supersingular_newton(half, 2));
}

TEST_CASE("Newton polygon of a product is the union of slopes")
{
    std::mt19937_64 rng(411);
    std::uniform_int_distribution<int> c(-30, 30);
    for (int t = 0; t < 40; ++t) {
        IntVector a(2 + t % 3), b(2 + t % 4);
        for (auto& x : a) x = c(rng);
        for (auto& x : b) x = c(rng);
        if (a.front() == 0) a.front() = 9;
        if (b.front() == 0) b.front() = 25;
        if (a.back() == 0) a.back() = 1;
        if (b.back() == 0) b.back() = 1;
        for (long p : {3, 5}) {
            std::vector<Rational> u = expanded_slopes(newton_polygon(a, p));
            const std::vector<Rational> ub = expanded_slopes(newton_polygon(b, p));
            u.insert(u.end(), ub.begin(), ub.end());
            std::sort(u.begin(), u.end());
            CHECK(expanded_slopes(newton_polygon(oracle::multiply(a, b), p)) == u);
        }
    }
}

TEST_CASE("supersingularity and errors")
{
    // (t - p)^22: every slope 1 at weight 2.
    std::vector<Integer> ss(22, Integer(5));
    CHECK(is_supersingular_newton(newton_polygon(oracle::expand_roots(ss), 5), 2));
    std::vector<Integer> ord(20, Integer(5));
    ord.push_back(1);
    ord.push_back(25);
    CHECK_FALSE(is_supersingular_newton(newton_polygon(oracle::expand_roots(ord), 5), 2));

    CHECK_THROWS_AS(newton_polygon(IntVector{0, 0}, 5), InputError);
    CHECK_THROWS_AS(newton_polygon(IntVector{1, 2, 0}, 5), InputError);
    CHECK_THROWS_AS(newton_polygon(IntVector{0, 1}, 5), DomainError);
    CHECK_THROWS_AS(newton_polygon(IntVector{1, 1}, 6), DomainError);
}

TEST_CASE("crystal pairing")
{
    for (long p : {2, 3, 5, 7}) {
        const IntMatrix u = make_U().gram();
        const IntMatrix f{{0, p * p}, {1, 0}};
        CHECK(check_k3_crystal_pairing(f, u, p));
        CHECK(check_k3_crystal_pairing(Integer(p) * IntMatrix::identity(2), u, p));
        CHECK_FALSE(check_k3_crystal_pairing(IntMatrix::identity(2), u, p));
        CHECK_FALSE(check_k3_crystal_pairing(IntMatrix{{p, 0}, {0, p * p}}, u, p));
    }
    // p times an isometry.
    std::mt19937_64 rng(413);
    for (int t = 0; t < 15; ++t) {
        const oracle::CongruenceInstance c = oracle::random_congruence_isometry(rng);
        CHECK(check_k3_crystal_pairing(Integer(3) * c.isometry, c.gram, 3));
    }
    CHECK_THROWS_AS(check_k3_crystal_pairing(IntMatrix::identity(3), make_U().gram(), 3), DimensionMismatch);
    CHECK_THROWS_AS(check_k3_crystal_pairing(IntMatrix::identity(2), make_U().gram(), 1), DomainError);
}
