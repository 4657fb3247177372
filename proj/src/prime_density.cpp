#include "k3lattice/prime_density.hpp"

#include <algorithm>
#include <cstdlib>
#include <iterator>
#include <set>
#include <string>
#include <thread>

#include "k3lattice/arith.hpp"
#include "k3lattice/error.hpp"

namespace k3lattice {

namespace {

using i128 = __int128;

int kronecker_two(i128 a)
{
    if (a % 2 == 0) return 0;
    const int r = static_cast<int>(((a % 8) + 8) % 8);
    return (r == 1 || r == 7) ? 1 : -1;
}

// Jacobi symbol for odd n > 0.
int jacobi(i128 a, i128 n)
{
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const i128 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

void require_prime(std::int64_t p)
{
    if (p < 2 || !is_prime(Integer(static_cast<long>(p)))) throw DomainError(std::to_string(p) + " is not prime");
}

unsigned thread_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("K3LATTICE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

} // namespace

int kronecker_symbol(std::int64_t a_in, std::int64_t n_in)
{
    if (n_in == 0) throw DomainError("Kronecker symbol (a | 0) is not supported");
    i128 a = a_in, n = n_in;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        const int k2 = kronecker_two(a);
        if (k2 == 0) return 0;
        if (twos % 2 == 1) result *= k2;
    }
    return result * jacobi(a, n);
}

std::int64_t imaginary_quadratic_discriminant(std::int64_t d)
{
    if (d <= 0) throw DomainError("d must be positive");
    std::int64_t core = 1;
    std::int64_t rest = d;
    for (std::int64_t f = 2; f * f <= rest; ++f) {
        int e = 0;
        while (rest % f == 0) {
            rest /= f;
            ++e;
        }
        if (e % 2 == 1) core *= f;
    }
    core *= rest;
    const std::int64_t m = -core;
    return ((m % 4) + 4) % 4 == 1 ? m : 4 * m;
}

Inertness is_inert(std::int64_t p, std::int64_t d)
{
    require_prime(p);
    const int k = kronecker_symbol(imaginary_quadratic_discriminant(d), p);
    return Inertness{k == -1, k == 0};
}

bool fermat_cubic_supersingular(std::int64_t p)
{
    require_prime(p);
    if (p == 3) throw DomainError("the Fermat cubic has bad reduction at 3");
    return p % 3 == 2;
}

Rational union_inert_density(const std::vector<std::int64_t>& primes)
{
    if (primes.empty()) throw InputError("prime list must be nonempty");
    std::set<std::int64_t> seen;
    for (auto p : primes) {
        require_prime(p);
        if (!seen.insert(p).second) throw InputError("prime " + std::to_string(p) + " listed twice");
    }
    Rational out(1);
    out -= Rational(1, power(Integer(2), primes.size()));
    return out;
}

Rational inert_in_any_density(const std::vector<std::int64_t>& ds)
{
    if (ds.empty()) throw InputError("list of d must be nonempty");
    // Rows over F_2: sign bit plus odd-exponent primes of -d.
    std::vector<std::set<std::int64_t>> rows;
    for (auto d : ds) {
        if (d <= 0) throw DomainError("d must be positive");
        std::set<std::int64_t> row{-1};
        std::int64_t rest = d;
        for (std::int64_t f = 2; f * f <= rest; ++f) {
            int e = 0;
            while (rest % f == 0) {
                rest /= f;
                ++e;
            }
            if (e % 2 == 1) row.insert(f);
        }
        if (rest > 1) row.insert(rest);
        rows.push_back(row);
    }
    // Gaussian elimination with symmetric difference as row addition.
    std::size_t rank = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].empty()) continue;
        const std::int64_t pivot = *rows[i].begin();
        ++rank;
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (!rows[j].count(pivot)) continue;
            std::set<std::int64_t> sum;
            std::set_symmetric_difference(rows[i].begin(), rows[i].end(), rows[j].begin(), rows[j].end(),
                                          std::inserter(sum, sum.begin()));
            rows[j] = sum;
        }
    }
    Rational out(1);
    out -= Rational(1, power(Integer(2), rank));
    return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

PrimePredicateReport empirical_density(const std::function<bool(std::uint64_t)>& predicate, std::uint64_t bound,
                                       std::optional<Rational> theoretical)
{
    if (bound < 100) throw InputError("bound must be at least 100, got " + std::to_string(bound));
    const std::vector<std::uint64_t> primes = primes_up_to(bound);
    const unsigned workers = std::min<std::size_t>(thread_count(), primes.size());
    std::vector<std::uint64_t> counts(workers, 0);
    std::vector<std::thread> pool;
    const std::size_t chunk = (primes.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(primes.size(), lo + chunk);
            for (std::size_t i = lo; i < hi; ++i)
                if (predicate(primes[i])) ++counts[w];
        });
    for (auto& t : pool) t.join();

    PrimePredicateReport out;
    out.bound = bound;
    out.total_primes = primes.size();
    for (auto c : counts) out.hits += c;
    out.empirical_density = Rational(Integer(static_cast<unsigned long>(out.hits)),
                                     Integer(static_cast<unsigned long>(out.total_primes)));
    out.empirical_density.canonicalize();
    out.theoretical_density = theoretical;
    return out;
}

} // namespace k3lattice
