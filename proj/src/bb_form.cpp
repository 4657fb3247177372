#include "k3lattice/bb_form.hpp"

#include "k3lattice/arith.hpp"
#include "k3lattice/normal_form.hpp"

namespace k3lattice {

Integer lambda_n(long n)
{
    if (n < 0) throw DomainError("lambda_n requires n >= 0");
    // (2n-1)!! = (2n)! / (2^n n!)
    Integer out = 1;
    for (long k = 1; k < 2 * n; k += 2) out *= k;
    return out;
}

namespace {

Rational matching_sum(const RatMatrix& pair_values, std::vector<bool>& used, std::size_t remaining)
{
    if (remaining == 0) return 1;
    std::size_t first = 0;
    while (used[first]) ++first;
    used[first] = true;
    Rational total = 0;
    for (std::size_t j = first + 1; j < used.size(); ++j) {
        if (used[j] || pair_values(first, j) == 0) continue;
        used[j] = true;
        total += pair_values(first, j) * matching_sum(pair_values, used, remaining - 2);
        used[j] = false;
    }
    used[first] = false;
    return total;
}

RatVector unit(std::size_t rank, std::size_t i)
{
    RatVector e(rank);
    e[i] = 1;
    return e;
}

} // namespace

Rational w_from_q(const RatMatrix& q, long n, std::span<const RatVector> args)
{
    if (n < 1) throw DomainError("w requires n >= 1");
    if (args.size() != static_cast<std::size_t>(2 * n))
        throw InputError("w expects exactly 2n = " + std::to_string(2 * n) + " arguments, got " +
                         std::to_string(args.size()));
    const std::size_t m = args.size();
    RatMatrix pair_values(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            pair_values(i, j) = bilinear(q, args[i], args[j]);
            pair_values(j, i) = pair_values(i, j);
        }
    std::vector<bool> used(m, false);
    return matching_sum(pair_values, used, m);
}

MultilinearForm make_w(const RatMatrix& q, long n)
{
    return [q, n](std::span<const RatVector> args) { return w_from_q(q, n, args); };
}

RatMatrix q_from_w(const MultilinearForm& w, long n, const RatVector& xi, const Rational& q_xi,
                   const std::vector<RatVector>& basis)
{
    if (n < 1) throw DomainError("recovery requires n >= 1");
    if (q_xi == 0) throw DomainError("q(xi, xi) must be nonzero");
    const std::size_t rank = xi.size();
    if (rank == 0) throw InputError("xi must be a nonzero-length vector");
    if (basis.size() != rank) throw InputError("basis must have one vector per dimension");
    for (const auto& b : basis)
        if (b.size() != rank) throw DimensionMismatch("basis vector has wrong length");
    if (determinant(RatMatrix::from_cols(basis, rank)) == 0) throw InputError("basis vectors are linearly dependent");

    const std::size_t slots = static_cast<std::size_t>(2 * n);
    std::vector<RatVector> args(slots, xi);
    auto eval = [&](const std::vector<RatVector>& a) { return w(std::span<const RatVector>(a)); };

    const Rational lam_n(lambda_n(n));
    const Rational lam_prev(lambda_n(n - 1));
    const Rational xi_pow_prev = power(q_xi, static_cast<unsigned long>(n - 1));
    if (eval(args) != lam_n * xi_pow_prev * q_xi)
        throw InconsistentData("w(xi, ..., xi) differs from lambda_n q(xi, xi)^n");

    // q(xi, b) from w(xi^{2n-1}, b) = lambda_n q(xi, xi)^{n-1} q(xi, b).
    RatVector cross(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        args.back() = basis[i];
        cross[i] = eval(args) / (lam_n * xi_pow_prev);
    }

    // Project onto xi^perp, where w(xi^{2n-2}, a, b) = lambda_{n-1} q(a, b) q(xi, xi)^{n-1}.
    std::vector<RatVector> projected(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        projected[i] = basis[i];
        const Rational c = cross[i] / q_xi;
        for (std::size_t k = 0; k < rank; ++k) projected[i][k] -= c * xi[k];
    }
    RatMatrix gram(rank, rank);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = i; j < rank; ++j) {
            args[slots - 2] = projected[i];
            args[slots - 1] = projected[j];
            Rational perp = eval(args) / (lam_prev * xi_pow_prev);
            gram(i, j) = perp + cross[i] * cross[j] / q_xi;
            gram(j, i) = gram(i, j);
        }

    // Reproduce w on multisets of basis vectors (all of them when few, else a
    // deterministic sample) and reject on any mismatch.
    std::vector<std::vector<std::size_t>> multisets;
    std::vector<std::size_t> idx(slots, 0);
    const std::size_t cap = 4096;
    for (;;) {
        multisets.push_back(idx);
        if (multisets.size() > cap) break;
        std::size_t k = slots;
        while (k > 0 && idx[k - 1] == rank - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t t = k; t < slots; ++t) idx[t] = idx[k - 1];
    }
    std::vector<std::vector<std::size_t>> checks;
    if (multisets.size() <= 256) {
        checks = multisets;
    } else {
        unsigned long long state = 0x9E3779B97F4A7C15ull;
        for (int s = 0; s < 256; ++s) {
            std::vector<std::size_t> pick(slots);
            for (std::size_t t = 0; t < slots; ++t) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                pick[t] = (state >> 33) % rank;
            }
            checks.push_back(pick);
        }
    }
    for (const auto& ms : checks) {
        std::vector<RatVector> tuple, coords;
        for (std::size_t t : ms) {
            tuple.push_back(basis[t]);
            coords.push_back(unit(rank, t));
        }
        if (eval(tuple) != w_from_q(gram, n, coords))
            throw InconsistentData("recovered q does not reproduce w; samples are not generated by a symmetric q");
    }
    return gram;
}

RatMatrix q_from_w(const MultilinearForm& w, long n, const RatVector& xi, const Rational& q_xi)
{
    std::vector<RatVector> basis;
    for (std::size_t i = 0; i < xi.size(); ++i) basis.push_back(unit(xi.size(), i));
    return q_from_w(w, n, xi, q_xi, basis);
}

BBNorm degree_to_bb(const Integer& degree, long n, unsigned long interval_bits)
{
    if (degree <= 0) throw DomainError("degree must be positive");
    if (n < 1) throw DomainError("n must be at least 1");
    Rational target(degree, lambda_n(n));
    target.canonicalize();
    const unsigned long root = static_cast<unsigned long>(n);

    BBNorm out;
    Integer num_root, den_root;
    const bool num_exact = mpz_root(num_root.get_mpz_t(), target.get_num_mpz_t(), root) != 0;
    const bool den_exact = mpz_root(den_root.get_mpz_t(), target.get_den_mpz_t(), root) != 0;
    if (num_exact && den_exact) {
        Rational x(num_root, den_root);
        x.canonicalize();
        out.exact = x;
        out.integral = x.get_den() == 1;
        out.lower = x;
        out.upper = x;
        return out;
    }
    // floor(target * 2^(bits*n))^(1/n) = floor(x * 2^bits)
    Integer scaled = target.get_num() * power(Integer(2), interval_bits * root) / target.get_den();
    Integer r;
    mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), root);
    const Integer denom = power(Integer(2), interval_bits);
    out.lower = Rational(r, denom);
    out.upper = Rational(r + 1, denom);
    out.lower.canonicalize();
    out.upper.canonicalize();
    return out;
}

} // namespace k3lattice
