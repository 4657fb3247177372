#include "k3lattice/normal_form.hpp"

#include <utility>

namespace k3lattice {

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

RatVector to_rational(const IntVector& v)
{
    RatVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

std::string to_string(const IntVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

std::string to_string(const IntMatrix& m)
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += ", ";
        s += "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ", ";
            s += m(i, j).get_str();
        }
        s += "]";
    }
    return s + "]";
}

Integer determinant(const IntMatrix& input)
{
    if (!input.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return 1;
    IntMatrix m = input;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Rational determinant(const RatMatrix& input)
{
    if (!input.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    RatMatrix m = input;
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            m.swap_rows(piv, k);
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

RatMatrix inverse(const RatMatrix& input)
{
    if (!input.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = input.rows();
    RatMatrix m = input;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k) == 0) ++piv;
        if (piv == n) throw DegenerateLattice("matrix is singular");
        m.swap_rows(piv, k);
        inv.swap_rows(piv, k);
        Rational s = 1 / m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) *= s;
            inv(k, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0) continue;
            Rational f = -m(i, k);
            m.add_row(i, k, f);
            inv.add_row(i, k, f);
        }
    }
    return inv;
}

namespace {

// Extended gcd with g = s*a + t*b and g >= 0.
void xgcd(Integer& g, Integer& s, Integer& t, const Integer& a, const Integer& b)
{
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

SmithForm smith_form(const IntMatrix& a)
{
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    IntMatrix d = a;
    IntMatrix left = IntMatrix::identity(rows);
    IntMatrix right = IntMatrix::identity(cols);

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                Integer q = floor_div(d(i, t), d(t, t));
                d.add_row(i, t, -q);
                left.add_row(i, t, -q);
                if (d(i, t) != 0) {
                    d.swap_rows(t, i);
                    left.swap_rows(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                Integer q = floor_div(d(t, j), d(t, t));
                d.add_col(j, t, -q);
                right.add_col(j, t, -q);
                if (d(t, j) != 0) {
                    d.swap_cols(t, j);
                    right.swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Divisibility: fold an offending row into the pivot row and retry.
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        d.add_row(t, i, 1);
                        left.add_row(t, i, 1);
                        clean = false;
                        break;
                    }
        }
        if (d(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < rows; ++j) left(t, j) = -left(t, j);
        }
        ++t;
    }

    SmithForm out{d, left, right, {}};
    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        if (d(i, i) != 0) out.invariant_factors.push_back(d(i, i));
    return out;
}

HermiteForm hermite_form_rows(const IntMatrix& a)
{
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    IntMatrix h = a;
    IntMatrix u = IntMatrix::identity(rows);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Combine every row below r into row r by unimodular 2x2 gcd steps.
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (h(i, c) == 0) continue;
            if (h(r, c) == 0) {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            Integer g, s, t;
            xgcd(g, s, t, h(r, c), h(i, c));
            Integer x = h(r, c) / g;
            Integer y = h(i, c) / g;
            // [s t; -y x] has determinant s*x + t*y = 1.
            for (std::size_t j = 0; j < cols; ++j) {
                Integer top = s * h(r, j) + t * h(i, j);
                Integer bot = -y * h(r, j) + x * h(i, j);
                h(r, j) = top;
                h(i, j) = bot;
            }
            for (std::size_t j = 0; j < rows; ++j) {
                Integer top = s * u(r, j) + t * u(i, j);
                Integer bot = -y * u(r, j) + x * u(i, j);
                u(r, j) = top;
                u(i, j) = bot;
            }
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) {
            for (std::size_t j = 0; j < cols; ++j) h(r, j) = -h(r, j);
            for (std::size_t j = 0; j < rows; ++j) u(r, j) = -u(r, j);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(h(i, c), h(r, c));
            if (q == 0) continue;
            h.add_row(i, r, -q);
            u.add_row(i, r, -q);
        }
        ++r;
    }
    return {h, u, r};
}

IntMatrix integer_kernel(const IntMatrix& a)
{
    const std::size_t n = a.cols();
    HermiteForm hf = hermite_form_rows(a.transpose());
    IntMatrix kernel(n, n - hf.rank);
    for (std::size_t k = hf.rank; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) kernel(j, k - hf.rank) = hf.transform(k, j);
    return kernel;
}

Integer common_denominator(const RatVector& v)
{
    Integer den = 1;
    for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    return den;
}

Integer common_denominator(const RatMatrix& m)
{
    return common_denominator(m.data());
}

RatMatrix canonical_column_basis(const RatMatrix& generators)
{
    const Integer den = common_denominator(generators);
    IntMatrix scaled(generators.cols(), generators.rows());
    for (std::size_t i = 0; i < generators.rows(); ++i)
        for (std::size_t j = 0; j < generators.cols(); ++j) {
            Rational x = generators(i, j) * den;
            scaled(j, i) = x.get_num();
        }
    HermiteForm hf = hermite_form_rows(scaled);
    RatMatrix basis(generators.rows(), hf.rank);
    for (std::size_t k = 0; k < hf.rank; ++k)
        for (std::size_t i = 0; i < generators.rows(); ++i) {
            Rational x(hf.hermite(k, i), den);
            x.canonicalize();
            basis(i, k) = x;
        }
    return basis;
}

} // namespace k3lattice
