#include "k3lattice/lattice.hpp"

#include "k3lattice/normal_form.hpp"

namespace k3lattice {

QuadLattice::QuadLattice(IntMatrix gram) : gram_(std::move(gram))
{
    if (gram_.rows() == 0) throw InputError("empty Gram matrix");
    if (!gram_.is_square()) throw InputError("Gram matrix is not square");
    if (!gram_.is_symmetric()) throw InputError("Gram matrix is not symmetric");
    det_ = determinant(gram_);
    if (det_ == 0) throw DegenerateLattice("Gram matrix is degenerate (det = 0)");
}

QuadLattice QuadLattice::with_hyperbolic_summands(std::size_t count) const
{
    QuadLattice copy = *this;
    copy.hyperbolic_summands_ = count;
    return copy;
}

QuadLattice QuadLattice::base_change(const IntMatrix& g) const
{
    if (g.rows() != rank() || g.cols() != rank()) throw DimensionMismatch("base change has wrong shape");
    if (!is_unimodular_basis_change(g)) throw DomainError("base change is not in GL(n, Z)");
    return QuadLattice(g.transpose() * gram_ * g);
}

PointedLattice::PointedLattice(QuadLattice l, IntVector p) : lattice(std::move(l)), point(std::move(p))
{
    if (point.size() != lattice.rank()) throw DimensionMismatch("point has wrong length");
    if (content(point) == 0) throw InputError("point of a pointed lattice must be nonzero");
}

QuadLattice make_U()
{
    return QuadLattice(IntMatrix{{0, 1}, {1, 0}}).with_hyperbolic_summands(1);
}

QuadLattice make_E8()
{
    static const int edges[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    IntMatrix g(8, 8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
    for (const auto& e : edges) {
        g(e[0], e[1]) = 1;
        g(e[1], e[0]) = 1;
    }
    return QuadLattice(g);
}

QuadLattice make_rank1(const Integer& m)
{
    if (m == 0) throw DegenerateLattice("rank-one lattice <0> is degenerate");
    IntMatrix g(1, 1);
    g(0, 0) = m;
    return QuadLattice(g);
}

QuadLattice direct_sum(const QuadLattice& a, const QuadLattice& b)
{
    return QuadLattice(block_diagonal(a.gram(), b.gram()))
        .with_hyperbolic_summands(a.hyperbolic_summands() + b.hyperbolic_summands());
}

QuadLattice direct_sum_power(const QuadLattice& a, std::size_t copies)
{
    if (copies == 0) throw InputError("direct sum of zero copies");
    QuadLattice out = a;
    for (std::size_t i = 1; i < copies; ++i) out = direct_sum(out, a);
    return out;
}

QuadLattice lambda_lattice(long n)
{
    if (n < 1) throw DomainError("Lambda_n requires n >= 1");
    QuadLattice base = direct_sum(direct_sum_power(make_U(), 3), direct_sum_power(make_E8(), 2));
    if (n == 1) return base;
    return direct_sum(base, make_rank1(Integer(2 - 2 * n)));
}

QuadLattice scaled(const QuadLattice& lattice, const Integer& scale)
{
    return QuadLattice(scale * lattice.gram());
}

Integer inner_product(const QuadLattice& lattice, const IntVector& x, const IntVector& y)
{
    if (x.size() != lattice.rank() || y.size() != lattice.rank())
        throw DimensionMismatch("vector length does not match lattice rank");
    return bilinear(lattice.gram(), x, y);
}

Integer norm(const QuadLattice& lattice, const IntVector& x)
{
    return inner_product(lattice, x, x);
}

Integer content(const IntVector& v)
{
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

bool is_primitive(const QuadLattice& lattice, const IntVector& v)
{
    if (v.size() != lattice.rank()) throw DimensionMismatch("vector length does not match lattice rank");
    Integer g = content(v);
    if (g == 0) throw InputError("primitivity of the zero vector is undefined");
    return g == 1;
}

OrthogonalComplement orthogonal_complement(const QuadLattice& lattice, const IntVector& v)
{
    if (v.size() != lattice.rank()) throw DimensionMismatch("vector length does not match lattice rank");
    if (content(v) == 0) throw InputError("orthogonal complement of the zero vector");
    if (lattice.rank() == 1) throw DegenerateLattice("orthogonal complement in a rank-one lattice is zero");
    IntVector form = lattice.gram() * v;
    IntMatrix row(1, form.size());
    for (std::size_t j = 0; j < form.size(); ++j) row(0, j) = form[j];
    IntMatrix basis = integer_kernel(row);
    IntMatrix gram = basis.transpose() * lattice.gram() * basis;
    if (determinant(gram) == 0) throw DegenerateLattice("orthogonal complement is degenerate");
    return {QuadLattice(gram), basis};
}

Signature signature(const RatMatrix& symmetric)
{
    // Congruence diagonalization over Q; Sylvester's law makes the sign count basis-free.
    RatMatrix m = symmetric;
    const std::size_t n = m.rows();
    Signature sig;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && m(i, i) != 0) {
                piv = i;
                break;
            }
        if (piv == n) {
            // All remaining diagonal entries vanish: e_i <- e_i + e_j makes a_ii = 2 a_ij.
            std::size_t a = n, b = n;
            for (std::size_t i = 0; i < n && a == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && m(i, j) != 0) {
                        a = i;
                        b = j;
                        break;
                    }
            if (a == n) break; // degenerate remainder
            m.add_row(a, b, 1);
            m.add_col(a, b, 1);
            piv = a;
        }
        const Rational p = m(piv, piv);
        if (p > 0)
            ++sig.positive;
        else
            ++sig.negative;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || i == piv || m(i, piv) == 0) continue;
            Rational f = -m(i, piv) / p;
            m.add_row(i, piv, f);
            m.add_col(i, piv, f);
        }
        done[piv] = true;
    }
    return sig;
}

Signature signature(const QuadLattice& lattice)
{
    return signature(to_rational(lattice.gram()));
}

bool is_even(const QuadLattice& lattice)
{
    for (std::size_t i = 0; i < lattice.rank(); ++i)
        if (mpz_odd_p(lattice.gram()(i, i).get_mpz_t())) return false;
    return true;
}

bool is_positive_definite(const QuadLattice& lattice)
{
    return signature(lattice).positive == lattice.rank();
}

bool is_negative_definite(const QuadLattice& lattice)
{
    return signature(lattice).negative == lattice.rank();
}

bool is_unimodular_basis_change(const IntMatrix& g)
{
    if (!g.is_square()) return false;
    Integer d = determinant(g);
    return d == 1 || d == -1;
}

} // namespace k3lattice
