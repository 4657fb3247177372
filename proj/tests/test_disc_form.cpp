#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "k3lattice/arith.hpp"
#include "k3lattice/disc_form.hpp"
#include "k3lattice/lattice.hpp"
#include "oracles.hpp"

using namespace k3lattice;

namespace {

QuadLattice diag(std::initializer_list<long> entries)
{
    IntMatrix g(entries.size(), entries.size());
    std::size_t i = 0;
    for (long e : entries) {
        g(i, i) = e;
        ++i;
    }
    return QuadLattice(g);
}

std::multiset<Rational> value_multiset(const FiniteQuadraticForm& form)
{
    std::multiset<Rational> out;
    for (const auto& x : form.elements()) out.insert(form.value(x));
    return out;
}

// Values y^T G y mod 2Z (or Z) over the oracle's representatives of L^v / L.
std::multiset<Rational> oracle_values(const QuadLattice& l)
{
    const Rational modulus = is_even(l) ? 2 : 1;
    std::multiset<Rational> out;
    for (const auto& y : oracle::dual_quotient(l.gram())) {
        Rational v = oracle::pair(to_rational(l.gram()), y, y);
        Rational q = v / modulus;
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        v -= modulus * fl;
        out.insert(v);
    }
    return out;
}

// Brute-force count of even overlattices: subgroups H of L^v / L (as sets of
// representatives) on which every pairing is integral and every norm even.
std::size_t oracle_even_overlattices(const QuadLattice& l)
{
    const auto reps = oracle::dual_quotient(l.gram());
    const RatMatrix g = to_rational(l.gram());
    auto reduce = [](RatVector v) {
        for (auto& x : v) {
            Integer fl;
            mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
            x -= fl;
        }
        return v;
    };
    auto closure = [&](std::set<RatVector> s) {
        bool grew = true;
        while (grew) {
            grew = false;
            const std::vector<RatVector> cur(s.begin(), s.end());
            for (const auto& a : cur)
                for (const auto& b : cur) {
                    RatVector c(a.size());
                    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
                    if (s.insert(reduce(c)).second) grew = true;
                }
        }
        return s;
    };
    const RatVector zero(l.rank(), Rational(0));
    std::set<std::set<RatVector>> subgroups{{zero}};
    std::vector<std::set<RatVector>> frontier{{zero}};
    while (!frontier.empty()) {
        std::vector<std::set<RatVector>> next;
        for (const auto& s : frontier)
            for (const auto& x : reps) {
                if (s.count(x)) continue;
                std::set<RatVector> t = s;
                t.insert(x);
                t = closure(t);
                if (subgroups.insert(t).second) next.push_back(t);
            }
        frontier = std::move(next);
    }
    std::size_t count = 0;
    for (const auto& s : subgroups) {
        bool ok = true;
        for (const auto& a : s)
            for (const auto& b : s) {
                const Rational v = oracle::pair(g, a, b);
                if (v.get_den() != 1) ok = false;
                if (a == b && v.get_den() == 1 && v.get_num() % 2 != 0) ok = false;
            }
        if (ok) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("discriminant groups of named lattices")
{
    CHECK(discriminant_group(make_E8()).length() == 0);
    CHECK(discriminant_group(lambda_lattice(2)).invariant_factors() == IntVector{2});
    CHECK(discriminant_group(lambda_lattice(4)).invariant_factors() == IntVector{6});
    CHECK(discriminant_group(lambda_lattice(1)).order() == 1);
    CHECK(discriminant_group(QuadLattice(IntMatrix{{-6, -3}, {-3, -6}})).invariant_factors() == IntVector{3, 9});
}

TEST_CASE("quadratic values")
{
    const FiniteQuadraticForm d2 = discriminant_group(make_rank1(-2));
    CHECK(d2.value({1}) == Rational(3, 2));
    CHECK(disc_quadratic_value(d2, {0}) == 0);
    const FiniteQuadraticForm d6 = discriminant_group(make_rank1(-6));
    CHECK(d6.value({1}) == Rational(11, 6));
    CHECK(d6.value_modulus() == 2);
    CHECK(discriminant_group(QuadLattice(IntMatrix{{3}})).value_modulus() == 1);
}

TEST_CASE("values agree with brute-force dual quotient")
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 25; ++t) {
        const std::size_t n = 1 + t % 3;
        IntMatrix g = oracle::random_even_gram(n, rng);
        if (t % 4 == 3) g(0, 0) += 1; // odd lattice
        if (oracle::det(to_rational(g)) == 0) continue;
        const QuadLattice l(g);
        const FiniteQuadraticForm form = discriminant_group(l);
        CHECK(form.order() == abs(l.det()));
        CHECK(value_multiset(form) == oracle_values(l));
    }
}

TEST_CASE("q(a x) = a^2 q(x)")
{
    std::mt19937_64 rng(29);
    for (int t = 0; t < 15; ++t) {
        const QuadLattice l(oracle::random_even_gram(2, rng));
        const FiniteQuadraticForm form = discriminant_group(l);
        for (const auto& x : form.elements())
            for (long a = -3; a <= 3; ++a) {
                const Rational lhs = form.value(form.scale(x, a));
                const Rational rhs = mod_rational(Rational(a * a) * form.value(x), form.value_modulus());
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("orthogonal sums multiply orders")
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        const QuadLattice a(oracle::random_even_gram(2, rng));
        const QuadLattice b(oracle::random_even_gram(1, rng));
        CHECK(discriminant_group(direct_sum(a, b)).order() ==
              discriminant_group(a).order() * discriminant_group(b).order());
        CHECK(are_isomorphic(discriminant_group(direct_sum(a, make_U())), discriminant_group(a)));
    }
}

TEST_CASE("isotropic subgroups")
{
    CHECK(isotropic_subgroups(discriminant_group(diag({2, 2}))).size() == 1);
    const FiniteQuadraticForm hyp = discriminant_group(diag({2, -2}));
    const auto subs = isotropic_subgroups(hyp);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0].order() == 1);
    CHECK(subs[1].order() == 2);
    CHECK(isotropic_subgroups(discriminant_group(make_E8())).size() == 1);
}

TEST_CASE("gluing <2> + <-2> gives the invariants of U")
{
    const QuadLattice l = diag({2, -2});
    const FiniteQuadraticForm form = discriminant_group(l);
    const auto subs = isotropic_subgroups(form);
    const Overlattice m = overlattice_from_isotropic(l, form, subs[1]);
    CHECK(m.lattice.rank() == 2);
    CHECK(is_even(m.lattice));
    CHECK(m.lattice.det() == -1);
    CHECK(signature(m.lattice) == Signature{1, 1});
    CHECK(overlattice_from_isotropic(l, form, subs[0]).lattice.det() == l.det());

    const QuadLattice e8e8 = direct_sum(make_E8(), make_E8());
    const FiniteQuadraticForm trivial = discriminant_group(e8e8);
    CHECK(overlattice_from_isotropic(e8e8, trivial, isotropic_subgroups(trivial)[0]).lattice == e8e8);
}

TEST_CASE("non-isotropic subgroups are rejected")
{
    const QuadLattice l = diag({2, 2});
    const FiniteQuadraticForm form = discriminant_group(l);
    IsotropicSubgroup bogus{{{1, 1}}, {{0, 0}, {1, 1}}};
    CHECK_THROWS_AS(overlattice_from_isotropic(l, form, bogus), InconsistentData);
}

TEST_CASE("overlattice correspondence is a bijection on small instances")
{
    std::mt19937_64 rng(37);
    int checked = 0;
    for (int t = 0; t < 200 && checked < 25; ++t) {
        const std::size_t n = 1 + t % 3;
        const QuadLattice l(oracle::random_even_gram(n, rng, 4));
        if (abs(l.det()) > 100) continue;
        ++checked;
        const FiniteQuadraticForm form = discriminant_group(l);
        const auto subs = isotropic_subgroups(form);
        CHECK(subs.size() == oracle_even_overlattices(l));
        std::set<std::vector<Rational>> bases;
        for (const auto& s : subs) {
            const Overlattice m = overlattice_from_isotropic(l, form, s);
            CHECK(is_even(m.lattice));
            const Integer expected = abs(l.det()) / Integer(s.order() * s.order());
            CHECK(discriminant_group(m.lattice).order() == expected);
            std::vector<Rational> key;
            for (std::size_t i = 0; i < m.basis.rows(); ++i)
                for (std::size_t j = 0; j < m.basis.cols(); ++j) key.push_back(m.basis(i, j));
            bases.insert(key);
        }
        CHECK(bases.size() == subs.size());
    }
    CHECK(checked >= 20);
}

TEST_CASE("action on the discriminant")
{
    const QuadLattice l = diag({2, 2});
    CHECK(acts_trivially_on_disc(l, IntMatrix::identity(2), 2));
    CHECK_FALSE(acts_trivially_on_disc(l, IntMatrix{{0, 1}, {1, 0}}, 2));
    CHECK_FALSE(acts_trivially_on_disc(make_rank1(6), IntMatrix{{-1}}, 6));
    CHECK_THROWS_AS(acts_trivially_on_disc(l, IntMatrix{{1, 1}, {0, 1}}, 2), DomainError);
    CHECK_THROWS_AS(acts_trivially_on_disc(make_rank1(6), IntMatrix{{1}}, 4), DomainError);
}

TEST_CASE("congruence isometries act trivially")
{
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
        const oracle::CongruenceInstance c = oracle::random_congruence_isometry(rng);
        const QuadLattice l(c.gram);
        REQUIRE(c.isometry.transpose() * c.gram * c.isometry == c.gram);
        CHECK(acts_trivially_on_disc(l, c.isometry, c.m));
        // Brute-force: g y - y integral for every representative y of L^v / L.
        for (const auto& y : oracle::dual_quotient(c.gram)) {
            const RatVector gy = to_rational(c.isometry) * y;
            for (std::size_t i = 0; i < y.size(); ++i) CHECK(Rational(gy[i] - y[i]).get_den() == 1);
        }
    }
}

TEST_CASE("local parts")
{
    const FiniteQuadraticForm f = discriminant_group(QuadLattice(IntMatrix{{-6, -3}, {-3, -6}}));
    CHECK(disc_local_part(f, 3).invariant_factors() == IntVector{3, 9});
    CHECK(disc_local_part(f, 2).length() == 0);
    const FiniteQuadraticForm l4 = discriminant_group(lambda_lattice(4));
    CHECK(disc_local_part(l4, 2).invariant_factors() == IntVector{2});
    CHECK(disc_local_part(l4, 3).invariant_factors() == IntVector{3});
}

TEST_CASE("isomorphism of finite quadratic forms")
{
    CHECK(are_isomorphic(discriminant_group(diag({2})), discriminant_group(direct_sum(make_U(), diag({2})))));
    CHECK_FALSE(are_isomorphic(discriminant_group(diag({2})), discriminant_group(diag({-2}))));
    // <2> + <2> and <-2> + <-2>: values {1/2, 1/2, 1} vs {3/2, 3/2, 1}.
    CHECK_FALSE(are_isomorphic(discriminant_group(diag({2, 2})), discriminant_group(diag({-2, -2}))));
    std::mt19937_64 rng(43);
    for (int t = 0; t < 10; ++t) {
        const QuadLattice l(oracle::random_even_gram(3, rng));
        const QuadLattice m = l.base_change(oracle::random_unimodular(3, rng));
        CHECK(are_isomorphic(discriminant_group(l), discriminant_group(m)));
    }
}
