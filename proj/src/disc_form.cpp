#include "k3lattice/disc_form.hpp"

#include <algorithm>
#include <set>

#include "k3lattice/arith.hpp"
#include "k3lattice/normal_form.hpp"

namespace k3lattice {

FiniteQuadraticForm::FiniteQuadraticForm(IntVector invariant_factors, RatMatrix generators, IntMatrix ambient_gram,
                                         bool even)
    : invariant_factors_(std::move(invariant_factors)),
      generators_(std::move(generators)),
      ambient_gram_(std::move(ambient_gram)),
      even_(even)
{
    const std::size_t k = invariant_factors_.size();
    if (generators_.cols() != k) throw DimensionMismatch("one generator per invariant factor required");
    if (generators_.rows() != ambient_gram_.rows()) throw DimensionMismatch("generator lifts have wrong length");
    const RatMatrix gram = to_rational(ambient_gram_);
    generator_values_.resize(k);
    generator_pairings_ = RatMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        const RatVector gi = generators_.col(i);
        for (std::size_t j = i; j < k; ++j) {
            Rational b = bilinear(gram, gi, generators_.col(j));
            if (i == j) generator_values_[i] = mod_rational(b, value_modulus());
            generator_pairings_(i, j) = mod_rational(b, 1);
            generator_pairings_(j, i) = generator_pairings_(i, j);
        }
    }
}

Integer FiniteQuadraticForm::order() const
{
    Integer n = 1;
    for (const auto& d : invariant_factors_) n *= d;
    return n;
}

Integer FiniteQuadraticForm::exponent() const
{
    return invariant_factors_.empty() ? Integer(1) : invariant_factors_.back();
}

DiscElement FiniteQuadraticForm::normalize(const DiscElement& x) const
{
    if (x.size() != length()) throw DimensionMismatch("element has wrong number of coordinates");
    DiscElement out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        mpz_fdiv_r(out[i].get_mpz_t(), x[i].get_mpz_t(), invariant_factors_[i].get_mpz_t());
    return out;
}

DiscElement FiniteQuadraticForm::add(const DiscElement& x, const DiscElement& y) const
{
    if (x.size() != length() || y.size() != length()) throw DimensionMismatch("element has wrong number of coordinates");
    DiscElement s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
    return normalize(s);
}

DiscElement FiniteQuadraticForm::scale(const DiscElement& x, const Integer& a) const
{
    DiscElement s = x;
    for (auto& c : s) c *= a;
    return normalize(s);
}

RatVector FiniteQuadraticForm::lift(const DiscElement& x) const
{
    if (x.size() != length()) throw DimensionMismatch("element has wrong number of coordinates");
    RatVector v(generators_.rows());
    for (std::size_t j = 0; j < length(); ++j) {
        if (x[j] == 0) continue;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += Rational(x[j]) * generators_(i, j);
    }
    return v;
}

Rational FiniteQuadraticForm::value(const DiscElement& x) const
{
    if (x.size() != length()) throw DimensionMismatch("element has wrong number of coordinates");
    Rational q = 0;
    for (std::size_t i = 0; i < length(); ++i) {
        if (x[i] == 0) continue;
        q += Rational(x[i] * x[i]) * generator_values_[i];
        for (std::size_t j = i + 1; j < length(); ++j)
            if (x[j] != 0) q += 2 * Rational(x[i] * x[j]) * generator_pairings_(i, j);
    }
    return mod_rational(q, value_modulus());
}

Rational FiniteQuadraticForm::pairing(const DiscElement& x, const DiscElement& y) const
{
    if (x.size() != length() || y.size() != length()) throw DimensionMismatch("element has wrong number of coordinates");
    Rational b = 0;
    for (std::size_t i = 0; i < length(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < length(); ++j)
            if (y[j] != 0) b += Rational(x[i] * y[j]) * generator_pairings_(i, j);
    }
    return mod_rational(b, 1);
}

std::vector<DiscElement> FiniteQuadraticForm::elements(std::size_t max_order) const
{
    if (order() > Integer(static_cast<unsigned long>(max_order)))
        throw CapacityError("discriminant group of order " + order().get_str() + " exceeds enumeration bound " +
                            std::to_string(max_order));
    std::vector<DiscElement> out;
    DiscElement cur(length(), Integer(0));
    out.push_back(cur);
    if (length() == 0) return out;
    for (;;) {
        std::size_t i = length();
        while (i > 0) {
            --i;
            cur[i] += 1;
            if (cur[i] < invariant_factors_[i]) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        out.push_back(cur);
    }
}

FiniteQuadraticForm discriminant_group(const QuadLattice& lattice)
{
    const SmithForm snf = smith_form(lattice.gram());
    const std::size_t n = lattice.rank();
    IntVector factors;
    std::vector<RatVector> lifts;
    for (std::size_t i = 0; i < n; ++i) {
        const Integer& d = snf.diagonal(i, i);
        if (d == 1) continue;
        factors.push_back(d);
        // left * G * right = D, so G * (right e_i / d_i) = left^{-1} e_i is integral.
        RatVector g(n);
        for (std::size_t r = 0; r < n; ++r) {
            g[r] = Rational(snf.right(r, i), d);
            g[r].canonicalize();
        }
        lifts.push_back(std::move(g));
    }
    RatMatrix gens = RatMatrix::from_cols(lifts, n);
    return FiniteQuadraticForm(factors, gens, lattice.gram(), is_even(lattice));
}

Rational disc_quadratic_value(const FiniteQuadraticForm& form, const DiscElement& x)
{
    return form.value(form.normalize(x));
}

namespace {

std::vector<DiscElement> span_closure(const FiniteQuadraticForm& form, const std::vector<DiscElement>& gens)
{
    std::set<DiscElement> seen;
    std::vector<DiscElement> frontier{DiscElement(form.length(), Integer(0))};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<DiscElement> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                DiscElement y = form.add(x, g);
                if (seen.insert(y).second) next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::vector<DiscElement> canonical_generators(const FiniteQuadraticForm& form, const std::vector<DiscElement>& sorted)
{
    std::vector<DiscElement> gens;
    std::set<DiscElement> span{DiscElement(form.length(), Integer(0))};
    for (const auto& x : sorted) {
        if (span.count(x)) continue;
        gens.push_back(x);
        auto closure = span_closure(form, gens);
        span = std::set<DiscElement>(closure.begin(), closure.end());
    }
    return gens;
}

} // namespace

std::vector<IsotropicSubgroup> isotropic_subgroups(const FiniteQuadraticForm& form, std::size_t max_order)
{
    const std::vector<DiscElement> all = form.elements(max_order);
    std::vector<DiscElement> isotropic;
    for (std::size_t i = 1; i < all.size(); ++i)
        if (form.value(all[i]) == 0) isotropic.push_back(all[i]);

    std::set<std::vector<DiscElement>> found;
    std::vector<std::vector<DiscElement>> queue{{all.front()}};
    found.insert(queue.front());
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::vector<DiscElement> current = queue[head];
        const std::set<DiscElement> members(current.begin(), current.end());
        const std::vector<DiscElement> gens = canonical_generators(form, current);
        for (const auto& x : isotropic) {
            if (members.count(x)) continue;
            bool orthogonal = std::all_of(gens.begin(), gens.end(),
                                          [&](const DiscElement& g) { return form.pairing(x, g) == 0; });
            if (!orthogonal) continue;
            std::vector<DiscElement> extended = gens;
            extended.push_back(x);
            std::vector<DiscElement> closure = span_closure(form, extended);
            if (found.insert(closure).second) queue.push_back(std::move(closure));
        }
    }

    std::vector<IsotropicSubgroup> out;
    for (const auto& elems : queue) out.push_back({canonical_generators(form, elems), elems});
    std::sort(out.begin(), out.end(),
              [](const IsotropicSubgroup& a, const IsotropicSubgroup& b) { return a.generators < b.generators; });
    return out;
}

Overlattice overlattice_from_isotropic(const QuadLattice& lattice, const FiniteQuadraticForm& form,
                                       const IsotropicSubgroup& subgroup)
{
    if (form.ambient_gram() != lattice.gram()) throw InputError("discriminant form does not belong to this lattice");
    for (std::size_t i = 0; i < subgroup.generators.size(); ++i) {
        if (form.value(subgroup.generators[i]) != 0)
            throw InconsistentData("subgroup is not isotropic: generator with nonzero q");
        for (std::size_t j = i + 1; j < subgroup.generators.size(); ++j)
            if (form.pairing(subgroup.generators[i], subgroup.generators[j]) != 0)
                throw InconsistentData("subgroup is not isotropic: generators pair nontrivially");
    }
    const std::size_t n = lattice.rank();
    RatMatrix gens(n, n + subgroup.generators.size());
    for (std::size_t i = 0; i < n; ++i) gens(i, i) = 1;
    for (std::size_t k = 0; k < subgroup.generators.size(); ++k) {
        RatVector l = form.lift(subgroup.generators[k]);
        for (std::size_t i = 0; i < n; ++i) gens(i, n + k) = l[i];
    }
    RatMatrix basis = canonical_column_basis(gens);
    RatMatrix gram_q = basis.transpose() * to_rational(lattice.gram()) * basis;
    IntMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (gram_q(i, j).get_den() != 1) throw InconsistentData("overlattice is not integral");
            gram(i, j) = gram_q(i, j).get_num();
        }
    return {QuadLattice(gram), basis};
}

bool acts_trivially_on_disc(const QuadLattice& lattice, const IntMatrix& g, const Integer& m)
{
    if (g.rows() != lattice.rank() || g.cols() != lattice.rank()) throw DimensionMismatch("isometry has wrong shape");
    if (g.transpose() * lattice.gram() * g != lattice.gram()) throw DomainError("matrix is not an isometry of the lattice");
    const FiniteQuadraticForm form = discriminant_group(lattice);
    if (m == 0 || m % form.exponent() != 0)
        throw DomainError("m = " + m.get_str() + " does not annihilate the discriminant group");
    const RatMatrix gq = to_rational(g);
    for (std::size_t k = 0; k < form.length(); ++k) {
        RatVector y = form.generators().col(k);
        RatVector gy = gq * y;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (Rational(gy[i] - y[i]).get_den() != 1) return false;
    }
    return true;
}

FiniteQuadraticForm disc_local_part(const FiniteQuadraticForm& form, const Integer& prime)
{
    if (!is_prime(prime)) throw DomainError("local part requires a prime, got " + prime.get_str());
    IntVector factors;
    std::vector<RatVector> lifts;
    for (std::size_t i = 0; i < form.length(); ++i) {
        const Integer& d = form.invariant_factors()[i];
        const unsigned long v = valuation(d, prime);
        if (v == 0) continue;
        const Integer local = power(prime, v);
        const Rational cofactor(d / local);
        RatVector g = form.generators().col(i);
        for (auto& x : g) x *= cofactor;
        factors.push_back(local);
        lifts.push_back(std::move(g));
    }
    return FiniteQuadraticForm(factors, RatMatrix::from_cols(lifts, form.generators().rows()), form.ambient_gram(),
                               form.even());
}

namespace {

Integer element_order(const FiniteQuadraticForm& form, const DiscElement& x)
{
    Integer ord = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), x[i].get_mpz_t(), form.invariant_factors()[i].get_mpz_t());
        Integer o = form.invariant_factors()[i] / g;
        mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), o.get_mpz_t());
    }
    return ord;
}

bool extend_isomorphism(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                        const std::vector<std::vector<DiscElement>>& candidates, std::vector<DiscElement>& images)
{
    const std::size_t i = images.size();
    if (i == a.length()) {
        return Integer(static_cast<unsigned long>(span_closure(b, images).size())) == b.order();
    }
    for (const auto& y : candidates[i]) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) ok = b.pairing(y, images[j]) == a.generator_pairings()(j, i);
        if (!ok) continue;
        images.push_back(y);
        if (extend_isomorphism(a, b, candidates, images)) return true;
        images.pop_back();
    }
    return false;
}

} // namespace

bool are_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, std::size_t max_order)
{
    if (a.even() != b.even()) return false;
    if (a.invariant_factors() != b.invariant_factors()) return false;
    const std::vector<DiscElement> elems = b.elements(max_order);
    std::vector<std::vector<DiscElement>> candidates(a.length());
    for (std::size_t i = 0; i < a.length(); ++i)
        for (const auto& y : elems)
            if (element_order(b, y) == a.invariant_factors()[i] && b.value(y) == a.generator_values()[i])
                candidates[i].push_back(y);
    std::vector<DiscElement> images;
    return extend_isomorphism(a, b, candidates, images);
}

} // namespace k3lattice
