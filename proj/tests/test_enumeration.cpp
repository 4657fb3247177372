#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "k3lattice/enumeration.hpp"
#include "k3lattice/normal_form.hpp"
#include "oracles.hpp"

using namespace k3lattice;

namespace {

// Diagonally dominant, hence positive definite.
IntMatrix random_positive_gram(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> off(-3, 3), extra(1, 5);
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
    for (std::size_t i = 0; i < n; ++i) {
        Integer s = extra(rng);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) s += abs(g(i, j));
        g(i, i) = s;
    }
    return g;
}

std::vector<IntVector> sorted(std::vector<IntVector> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("E8 roots and the theta series")
{
    const QuadLattice e8 = make_E8();
    const VectorSet roots = vectors_of_norm(e8, -2);
    CHECK(roots.vectors.size() == 240);
    for (const auto& v : roots.vectors) CHECK(norm(e8, v) == -2);
    CHECK(std::set<IntVector>(roots.vectors.begin(), roots.vectors.end()).size() == 240);
    CHECK(oracle::e8_theta_coefficient(1) == 240);
    CHECK(vectors_of_norm(e8, -4).vectors.size() == oracle::e8_theta_coefficient(2));
    CHECK(vectors_of_norm(e8, 2).vectors.empty());
    CHECK(vectors_of_norm(e8, -3).vectors.empty());
    CHECK(short_vectors(e8, -4).size() == 240 + 2160);
}

TEST_CASE("ordering and sign pairing")
{
    const VectorSet s = vectors_of_norm(QuadLattice(IntMatrix{{2, 1}, {1, 2}}), 2);
    REQUIRE(s.vectors.size() == 6);
    for (std::size_t i = 0; i < s.vectors.size(); i += 2) {
        const IntVector& x = s.vectors[i];
        const IntVector& y = s.vectors[i + 1];
        CHECK(y == IntVector{-x[0], -x[1]});
        const auto lead = std::find_if(x.begin(), x.end(), [](const Integer& c) { return c != 0; });
        CHECK(*lead > 0);
        if (i >= 2) CHECK(s.vectors[i - 2] < x);
    }
    const VectorSet zero = vectors_of_norm(make_rank1(2), 0);
    REQUIRE(zero.vectors.size() == 1);
    CHECK(zero.vectors[0] == IntVector{0});
    CHECK(vectors_of_norm(make_rank1(2), 8).vectors == std::vector<IntVector>{{2}, {-2}});
    CHECK(vectors_of_norm(make_rank1(2), 6).vectors.empty());
}

TEST_CASE("enumeration agrees with a box scan")
{
    std::mt19937_64 rng(301);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + t % 4;
        const IntMatrix g = random_positive_gram(n, rng);
        const QuadLattice l(g);
        for (long m = 1; m <= 14; ++m) {
            const auto got = sorted(vectors_of_norm(l, m).vectors);
            CHECK(got == oracle::box_enumerate(g, m));
        }
        // Negating the form negates the norms.
        const QuadLattice neg(Integer(-1) * g);
        CHECK(sorted(vectors_of_norm(neg, -9).vectors) == oracle::box_enumerate(g, 9));
    }
}

TEST_CASE("indefinite input is rejected")
{
    CHECK_THROWS_AS(vectors_of_norm(make_U(), 2), DomainError);
    CHECK_THROWS_AS(short_vectors(lambda_lattice(2), 2), DomainError);
    CHECK_THROWS_AS(is_isometric_definite(make_U(), make_U()), DomainError);
}

TEST_CASE("pair reduction is a unimodular base change")
{
    std::mt19937_64 rng(303);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + t % 4;
        const IntMatrix g = random_positive_gram(n, rng);
        const IntMatrix h = oracle::random_unimodular(n, rng);
        const IntMatrix skew = h.transpose() * g * h;
        const IntMatrix r = pair_reduce(skew);
        CHECK(abs(determinant(r)) == 1);
        const IntMatrix red = r.transpose() * skew * r;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) CHECK(2 * abs(red(i, j)) <= std::min(red(i, i), red(j, j)));
    }
}

TEST_CASE("definite isometry testing")
{
    std::mt19937_64 rng(307);
    const QuadLattice e8 = make_E8();
    for (int t = 0; t < 3; ++t) {
        const QuadLattice b = e8.base_change(oracle::random_unimodular(8, rng, 20));
        const auto g = is_isometric_definite(e8, b);
        REQUIRE(g);
        CHECK(g->transpose() * b.gram() * *g == e8.gram());
    }
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + t % 3;
        const QuadLattice a(random_positive_gram(n, rng));
        const QuadLattice b = a.base_change(oracle::random_unimodular(n, rng));
        const auto g = is_isometric_definite(a, b);
        REQUIRE(g);
        CHECK(g->transpose() * b.gram() * *g == a.gram());
        CHECK(abs(determinant(*g)) == 1);
    }

    // Same rank, different determinants.
    CHECK_FALSE(is_isometric_definite(QuadLattice(IntMatrix{{2, 0}, {0, 2}}), QuadLattice(IntMatrix{{2, 0}, {0, 8}})));
    // Same determinant 16, different minima (2 vs 4).
    CHECK_FALSE(is_isometric_definite(QuadLattice(IntMatrix{{2, 0}, {0, 8}}), QuadLattice(IntMatrix{{4, 0}, {0, 4}})));
    // Same determinant 16, same minimum 4, but [[4,2],[2,5]] has one pair of minimal vectors.
    CHECK_FALSE(is_isometric_definite(QuadLattice(IntMatrix{{4, 0}, {0, 4}}), QuadLattice(IntMatrix{{4, 2}, {2, 5}})));
    CHECK_FALSE(is_isometric_definite(make_rank1(2), make_rank1(-2)));
    CHECK_THROWS_AS(is_isometric_definite(make_rank1(2), QuadLattice(IntMatrix{{2, 0}, {0, 2}})), DimensionMismatch);
    CHECK_THROWS_AS(is_isometric_definite(direct_sum(e8, make_rank1(-2)), direct_sum(e8, make_rank1(-2))),
                    CapacityError);
}

TEST_CASE("vectors with norm prime to p")
{
    const PrimeToPSearch u = find_vector_norm_prime_to_p(make_U(), 3);
    REQUIRE(u.witness);
    CHECK(norm(make_U(), *u.witness) % 3 != 0);

    const PrimeToPSearch none = find_vector_norm_prime_to_p(scaled(make_U(), 5), 5);
    CHECK_FALSE(none.witness);
    CHECK(none.definitive);
    CHECK_FALSE(find_vector_norm_prime_to_p(make_rank1(14), 7).witness);
    CHECK(find_vector_norm_prime_to_p(make_rank1(14), 7).definitive);

    // A2 is even, so no norm is odd.
    const QuadLattice a2(IntMatrix{{2, -1}, {-1, 2}});
    const PrimeToPSearch w = find_vector_norm_prime_to_p(a2, 2);
    CHECK_FALSE(w.witness);
    CHECK(w.definitive);
    const PrimeToPSearch w3 = find_vector_norm_prime_to_p(a2, 3);
    REQUIRE(w3.witness);
    CHECK(norm(a2, *w3.witness) % 3 != 0);

    std::mt19937_64 rng(311);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + t % 4;
        const QuadLattice l(oracle::random_even_gram(n, rng, 6));
        for (long p : {3, 5, 7}) {
            const PrimeToPSearch r = find_vector_norm_prime_to_p(l, p);
            if (r.witness) {
                CHECK(norm(l, *r.witness) % p != 0);
            } else {
                // Absence claim: every norm of a small box vector is divisible by p.
                CHECK(r.definitive);
                IntVector x(n, Integer(0));
                for (int k = 0; k < 50; ++k) {
                    for (auto& c : x) c = int(rng() % 7) - 3;
                    CHECK(norm(l, x) % p == 0);
                }
            }
        }
    }
    CHECK_THROWS_AS(find_vector_norm_prime_to_p(make_U(), 4), DomainError);
    CHECK_THROWS_AS(find_vector_norm_prime_to_p(make_U(), 3, 0), InputError);
}
