#include "k3lattice/enumeration.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "k3lattice/normal_form.hpp"

namespace k3lattice {

namespace {

// Q(x) = sum_i d_i (x_i + sum_{j>i} r_ij x_j)^2 for a positive definite Gram.
struct Decomposition {
    RatVector d;
    RatMatrix r;
};

Decomposition decompose(const IntMatrix& gram)
{
    const std::size_t n = gram.rows();
    Decomposition dec{RatVector(n), RatMatrix::identity(n)};
    for (std::size_t i = 0; i < n; ++i) {
        Rational di = gram(i, i);
        for (std::size_t k = 0; k < i; ++k) di -= dec.r(k, i) * dec.r(k, i) * dec.d[k];
        dec.d[i] = di;
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational v = gram(i, j);
            for (std::size_t k = 0; k < i; ++k) v -= dec.r(k, i) * dec.r(k, j) * dec.d[k];
            dec.r(i, j) = v / di;
        }
    }
    return dec;
}

Integer floor_of(const Rational& x)
{
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
}

Integer floor_sqrt(const Rational& x)
{
    if (x <= 0) return 0;
    Integer prod = x.get_num() * x.get_den();
    Integer s;
    mpz_sqrt(s.get_mpz_t(), prod.get_mpz_t());
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), s.get_mpz_t(), x.get_den_mpz_t());
    return out;
}

void enumerate(const Decomposition& dec, const Rational& bound, std::size_t level, IntVector& x, const Rational& used,
               std::vector<IntVector>& out)
{
    const std::size_t n = x.size();
    Rational center = 0;
    for (std::size_t j = level + 1; j < n; ++j) center += dec.r(level, j) * x[j];
    const Rational room = bound - used;
    const Integer s = floor_sqrt(room / dec.d[level]);
    const Integer lo = floor_of(-center) - s - 1;
    const Integer hi = floor_of(-center) + s + 2;
    for (Integer xi = lo; xi <= hi; ++xi) {
        Rational t = xi + center;
        Rational term = dec.d[level] * t * t;
        if (used + term > bound) continue;
        x[level] = xi;
        if (level == 0)
            out.push_back(x);
        else
            enumerate(dec, bound, level - 1, x, used + term, out);
    }
    x[level] = 0;
}

// Gram of the positive definite lattice in the same class (negated if negative definite).
IntMatrix positive_gram(const QuadLattice& lattice, int& sign)
{
    if (is_positive_definite(lattice)) {
        sign = 1;
        return lattice.gram();
    }
    if (is_negative_definite(lattice)) {
        sign = -1;
        return -lattice.gram();
    }
    throw DomainError("enumeration requires a definite lattice");
}

IntVector negate(IntVector v)
{
    for (auto& c : v) c = -c;
    return v;
}

bool positive_leading(const IntVector& v)
{
    for (const auto& c : v)
        if (c != 0) return c > 0;
    return true;
}

std::vector<IntVector> all_within(const IntMatrix& pos_gram, const Integer& bound)
{
    std::vector<IntVector> out;
    if (bound < 0) return out;
    const Decomposition dec = decompose(pos_gram);
    IntVector x(pos_gram.rows(), Integer(0));
    enumerate(dec, Rational(bound), pos_gram.rows() - 1, x, Rational(0), out);
    return out;
}

} // namespace

std::vector<IntVector> short_vectors(const QuadLattice& lattice, const Integer& bound)
{
    int sign = 1;
    const IntMatrix pos = positive_gram(lattice, sign);
    std::vector<IntVector> all = all_within(pos, abs(bound));
    std::vector<IntVector> out;
    for (auto& v : all)
        if (content(v) != 0) out.push_back(std::move(v));
    return out;
}

VectorSet vectors_of_norm(const QuadLattice& lattice, const Integer& m)
{
    int sign = 1;
    const IntMatrix pos = positive_gram(lattice, sign);
    VectorSet out{m, {}};
    const Integer target = sign * m;
    if (target < 0) return out;
    std::vector<IntVector> reps;
    for (auto& v : all_within(pos, target)) {
        if (bilinear(pos, v, v) != target) continue;
        if (positive_leading(v)) reps.push_back(std::move(v));
    }
    std::sort(reps.begin(), reps.end());
    for (auto& v : reps) {
        const bool zero = content(v) == 0;
        out.vectors.push_back(v);
        if (!zero) out.vectors.push_back(negate(v));
    }
    return out;
}

IntMatrix pair_reduce(const IntMatrix& positive_gram_in)
{
    const std::size_t n = positive_gram_in.rows();
    IntMatrix g = IntMatrix::identity(n);
    IntMatrix gram = positive_gram_in;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                if (2 * abs(gram(i, j)) <= gram(j, j)) continue;
                // nearest integer to gram(i,j) / gram(j,j)
                Integer q;
                Integer num = 2 * gram(i, j) + gram(j, j);
                Integer den = 2 * gram(j, j);
                mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                gram.add_col(i, j, -q);
                gram.add_row(i, j, -q);
                g.add_col(i, j, -q);
                changed = true;
            }
    }
    // Order basis by norm.
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return gram(a, a) < gram(b, b); });
    IntMatrix sorted(n, n);
    for (std::size_t k = 0; k < n; ++k) sorted.set_col(k, g.col(perm[k]));
    return sorted;
}

namespace {

bool extend_isometry(const IntMatrix& target, const IntMatrix& source,
                     const std::map<Integer, std::vector<IntVector>>& by_norm, std::vector<IntVector>& cols)
{
    const std::size_t i = cols.size();
    if (i == target.rows()) return true;
    auto it = by_norm.find(target(i, i));
    if (it == by_norm.end()) return false;
    for (const auto& v : it->second) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) ok = bilinear(source, v, cols[j]) == target(j, i);
        if (!ok) continue;
        cols.push_back(v);
        if (extend_isometry(target, source, by_norm, cols)) return true;
        cols.pop_back();
    }
    return false;
}

IntMatrix integer_inverse(const IntMatrix& g)
{
    RatMatrix inv = inverse(to_rational(g));
    IntMatrix out(g.rows(), g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            if (inv(i, j).get_den() != 1) throw std::logic_error("unimodular matrix with non-integral inverse");
            out(i, j) = inv(i, j).get_num();
        }
    return out;
}

} // namespace

std::optional<IntMatrix> is_isometric_definite(const QuadLattice& a, const QuadLattice& b, std::size_t max_rank)
{
    if (a.rank() != b.rank()) throw DimensionMismatch("isometry test requires equal ranks");
    if (a.rank() > max_rank) throw CapacityError("isometry search is limited to rank " + std::to_string(max_rank));
    int sign_a = 1, sign_b = 1;
    const IntMatrix pa = positive_gram(a, sign_a);
    const IntMatrix pb = positive_gram(b, sign_b);
    if (sign_a != sign_b || a.det() != b.det()) return std::nullopt;

    const IntMatrix ga = pair_reduce(pa);
    const IntMatrix gb = pair_reduce(pb);
    const IntMatrix ra = ga.transpose() * pa * ga;
    const IntMatrix rb = gb.transpose() * pb * gb;

    Integer max_norm = 0;
    for (std::size_t i = 0; i < ra.rows(); ++i) max_norm = std::max(max_norm, ra(i, i));
    std::map<Integer, std::vector<IntVector>> by_norm;
    for (auto& v : all_within(rb, max_norm)) {
        Integer nv = bilinear(rb, v, v);
        if (nv > 0) by_norm[nv].push_back(std::move(v));
    }
    std::vector<IntVector> cols;
    if (!extend_isometry(ra, rb, by_norm, cols)) return std::nullopt;
    const IntMatrix h = IntMatrix::from_cols(cols, a.rank());
    const IntMatrix g = gb * h * integer_inverse(ga);
    if (g.transpose() * b.gram() * g != a.gram()) throw std::logic_error("isometry search returned a non-isometry");
    return g;
}

PrimeToPSearch find_vector_norm_prime_to_p(const QuadLattice& lattice, const Integer& p, unsigned long search_bound)
{
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw DomainError("p must be a prime");
    if (search_bound == 0) throw InputError("search bound must be positive");
    const std::size_t n = lattice.rank();
    const IntMatrix& g = lattice.gram();
    auto coprime = [&](const Integer& x) { return !mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t()); };
    PrimeToPSearch out;
    for (std::size_t i = 0; i < n; ++i)
        if (coprime(g(i, i))) {
            IntVector w(n, Integer(0));
            w[i] = 1;
            out.witness = w;
            return out;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coprime(g(i, i) + g(j, j) + 2 * g(i, j))) {
                IntVector w(n, Integer(0));
                w[i] = 1;
                w[j] = 1;
                out.witness = w;
                return out;
            }
    // x^2 = sum g_ii x_i^2 + 2 sum g_ij x_i x_j: with every g_ii and every
    // (e_i + e_j)^2 divisible by p, every 2 g_ij is too, hence every norm.
    out.definitive = true;
    return out;
}

} // namespace k3lattice
