#include "k3lattice/moduli_arith.hpp"

#include <algorithm>

#include "k3lattice/arith.hpp"
#include "k3lattice/bb_form.hpp"

namespace k3lattice {

namespace {

void check_shape(const MukaiVector& v, const QuadLattice& ns)
{
    if (v.c1.size() != ns.rank())
        throw DimensionMismatch("Mukai vector has c1 of length " + std::to_string(v.c1.size()) + ", NS has rank " +
                                std::to_string(ns.rank()));
}

void require_prime(const Integer& p)
{
    if (!is_prime(p)) throw DomainError(p.get_str() + " is not prime");
}

} // namespace

Integer mukai_pairing(const MukaiVector& v, const MukaiVector& w, const QuadLattice& ns)
{
    check_shape(v, ns);
    check_shape(w, ns);
    return inner_product(ns, v.c1, w.c1) - v.r * w.s - w.r * v.s;
}

QuadLattice mukai_lattice(const QuadLattice& ns)
{
    const std::size_t n = ns.rank() + 2;
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < ns.rank(); ++i)
        for (std::size_t j = 0; j < ns.rank(); ++j) g(i + 1, j + 1) = ns.gram()(i, j);
    g(0, n - 1) = -1;
    g(n - 1, 0) = -1;
    return QuadLattice(g).with_hyperbolic_summands(ns.hyperbolic_summands() + 1);
}

IntVector mukai_coordinates(const MukaiVector& v, const QuadLattice& ns)
{
    check_shape(v, ns);
    IntVector x;
    x.reserve(ns.rank() + 2);
    x.push_back(v.r);
    x.insert(x.end(), v.c1.begin(), v.c1.end());
    x.push_back(v.s);
    return x;
}

MukaiVector hilbert_scheme_vector(long n, std::size_t ns_rank)
{
    if (n < 1) throw DomainError("n must be at least 1");
    return MukaiVector{1, IntVector(ns_rank, Integer(0)), Integer(1 - n)};
}

MukaiPerpReport mukai_perp_disc_check(const MukaiVector& v, const QuadLattice& ns, const Integer& p)
{
    require_prime(p);
    MukaiPerpReport out;
    out.prime = p;
    out.v_square = mukai_pairing(v, v, ns);
    if (mpz_divisible_p(out.v_square.get_mpz_t(), p.get_mpz_t()))
        throw DomainError("p = " + p.get_str() + " divides v^2 = " + out.v_square.get_str());

    const QuadLattice mukai = mukai_lattice(ns);
    const OrthogonalComplement perp = orthogonal_complement(mukai, mukai_coordinates(v, ns));
    out.perp_rank = perp.lattice.rank();
    const FiniteQuadraticForm perp_local = disc_local_part(discriminant_group(perp.lattice), p);
    const FiniteQuadraticForm ns_local = disc_local_part(discriminant_group(ns), p);
    out.perp_local_factors = perp_local.invariant_factors();
    out.ns_local_factors = ns_local.invariant_factors();
    out.perp_local_order = perp_local.order();
    out.ns_local_order = ns_local.order();
    out.orders_match = out.perp_local_order == out.ns_local_order;
    if (out.orders_match && perp_local.even() == ns_local.even()) {
        try {
            out.forms_isomorphic = are_isomorphic(perp_local, ns_local);
        } catch (const CapacityError&) {
        }
    }
    if (mukai.rank() == 24) out.within_p20_bound = out.perp_local_order <= power(p, 20);
    return out;
}

QuadLattice cubic_primitive_lattice()
{
    const QuadLattice a2_negative(IntMatrix{{-2, -1}, {-1, -2}});
    const QuadLattice base = direct_sum(direct_sum_power(make_U(), 2), direct_sum_power(make_E8(), 2));
    return direct_sum(base, a2_negative);
}

QuadLattice fermat_transcendental_lattice()
{
    return QuadLattice(IntMatrix{{-6, -3}, {-3, -6}});
}

AbelJacobiConstants abel_jacobi_constants()
{
    AbelJacobiConstants out{3, 6, 108, false};
    const BBNorm root = degree_to_bb(out.g4, 2);
    out.consistent = out.g4 == lambda_n(2) * out.g_bb * out.g_bb && root.exact && *root.exact == Rational(out.g_bb);
    return out;
}

PlueckerComplementReport pluecker_complement_report()
{
    const QuadLattice lambda2 = lambda_lattice(2);
    PlueckerComplementReport out;
    out.point = IntVector(lambda2.rank(), Integer(0));
    out.point[0] = 2;
    out.point[1] = 2;
    out.point[lambda2.rank() - 1] = 1;
    out.point_norm = norm(lambda2, out.point);
    out.divisibility = content(lambda2.gram() * out.point);

    const OrthogonalComplement perp = orthogonal_complement(lambda2, out.point);
    const FiniteQuadraticForm perp_disc = discriminant_group(perp.lattice);
    const QuadLattice cubic = cubic_primitive_lattice();
    const FiniteQuadraticForm cubic_disc = discriminant_group(cubic);
    out.complement_signature = signature(perp.lattice);
    out.complement_invariant_factors = perp_disc.invariant_factors();
    out.cubic_signature = signature(cubic);
    out.cubic_invariant_factors = cubic_disc.invariant_factors();
    out.discriminant_forms_isomorphic =
        perp_disc.invariant_factors() == cubic_disc.invariant_factors() && are_isomorphic(perp_disc, cubic_disc);
    return out;
}

unsigned long NewtonPolygon::degree() const
{
    unsigned long d = 0;
    for (const auto& s : slopes) d += s.multiplicity;
    return d;
}

NewtonPolygon newton_polygon(const IntVector& coeffs, const Integer& p)
{
    require_prime(p);
    if (std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& c) { return c == 0; }))
        throw InputError("zero polynomial has no Newton polygon");
    if (coeffs.back() == 0) throw InputError("leading coefficient must be nonzero");
    if (coeffs.front() == 0) throw DomainError("zero constant term: the root 0 has infinite valuation");

    struct Point {
        long x;
        long y;
    };
    std::vector<Point> hull;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        const Point pt{static_cast<long>(i), static_cast<long>(valuation(coeffs[i], p))};
        // Lower hull: drop the last point while it lies on or above the chord.
        while (hull.size() >= 2) {
            const Point& a = hull[hull.size() - 2];
            const Point& b = hull.back();
            if ((b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x) <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }

    NewtonPolygon np;
    np.prime = p;
    // Segment slopes rise left to right, so root valuations (negated slopes) fall; walk backwards.
    for (std::size_t k = hull.size() - 1; k > 0; --k) {
        const Point& a = hull[k - 1];
        const Point& b = hull[k];
        Rational val(a.y - b.y, b.x - a.x);
        val.canonicalize();
        const auto len = static_cast<unsigned long>(b.x - a.x);
        if (!np.slopes.empty() && np.slopes.back().slope == val)
            np.slopes.back().multiplicity += len;
        else
            np.slopes.push_back({val, len});
    }
    return np;
}

bool is_supersingular_newton(const NewtonPolygon& np, unsigned long weight)
{
    Rational half(weight, 2);
    half.canonicalize();
    return np.slopes.size() == 1 && np.slopes.front().slope == half;
}

bool check_k3_crystal_pairing(const IntMatrix& frobenius, const IntMatrix& gram, const Integer& p)
{
    if (p < 2) throw DomainError("p must be a prime");
    const QuadLattice pairing(gram);
    if (frobenius.rows() != pairing.rank() || frobenius.cols() != pairing.rank())
        throw DimensionMismatch("Frobenius must be square of the same size as the pairing");
    return frobenius.transpose() * gram * frobenius == Integer(p * p) * gram;
}

} // namespace k3lattice
