#ifndef POLYA_INT_HPP
#define POLYA_INT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polya {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared across the library.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when two quantities that must agree by construction do not
// (signals a wrong input elsewhere, never a recoverable condition).
struct inconsistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// g = gcd(a,b) = x*a + y*b
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// Floor division / remainder (remainder has divisor's sign convention: 0 <= r < |b| for b > 0).
inline Int fdiv_q(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int fdiv_r(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Exact division; throws if not divisible.
inline Int divexact(const Int& a, const Int& b) {
    if (b == 0) throw std::invalid_argument("divexact: division by zero");
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw inconsistency_error("divexact: not divisible");
    return q;
}

inline bool divides(const Int& d, const Int& n) {
    if (d == 0) return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline long to_long(const Int& n) {
    if (!n.fits_slong_p()) throw resource_error("integer exceeds machine range: " + n.get_str());
    return n.get_si();
}

inline std::vector<long> primes_upto(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> sieve(static_cast<size_t>(n) + 1, true);
    for (long p = 2; p <= n; ++p) {
        if (!sieve[p]) continue;
        out.push_back(p);
        for (long q = p * p; q <= n; q += p) sieve[q] = false;
    }
    return out;
}

// Trial-division factorization, smallest prime first. Desk scale: inputs stay
// well below 64 bits squared; anything slower than that is a usage bug.
inline std::vector<std::pair<Int, int>> factorize(Int n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    std::vector<std::pair<Int, int>> out;
    if (n < 0) n = -n;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (!divides(p, n)) continue;
        int e = 0;
        while (divides(p, n)) {
            n = divexact(n, p);
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// Largest squarefree divisor carrying the sign of n: n with all square factors removed.
inline Int squarefree_kernel(const Int& n) {
    if (n == 0) throw std::invalid_argument("squarefree_kernel(0)");
    Int k = n < 0 ? Int(-1) : Int(1);
    for (auto& [p, e] : factorize(n))
        if (e % 2 == 1) k *= p;
    return k;
}

inline bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

// q = p^k with p prime, k >= 1.
inline std::optional<std::pair<Int, int>> prime_power_split(const Int& q) {
    if (q < 2) return std::nullopt;
    auto f = factorize(q);
    if (f.size() != 1) return std::nullopt;
    return std::make_pair(f[0].first, f[0].second);
}

inline int valuation(Int n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation of 0");
    int v = 0;
    while (divides(p, n)) {
        n = divexact(n, p);
        ++v;
    }
    return v;
}

// Smallest nonnegative square root of a mod m, or nullopt. Brute force: all
// moduli in this library are tiny (4p for scanned primes).
inline std::optional<Int> sqrt_mod(const Int& a, const Int& m) {
    Int aa = fdiv_r(a, m);
    for (Int r = 0; r < m; ++r)
        if (fdiv_r(r * r - aa, m) == 0) return r;
    return std::nullopt;
}

inline Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::invalid_argument("mod_inverse: not invertible");
    return r;
}

}  // namespace polya

#endif
