#ifndef POLYA_MODPOLY_HPP
#define POLYA_MODPOLY_HPP

#include "polya/polynomial.hpp"

#include <map>
#include <random>

namespace polya {

// Polynomials over F_p for word-sized p. Coefficients normalized into [0, p),
// constant term first.
struct ModPoly {
    long p = 0;
    std::vector<long> c;

    ModPoly() = default;
    ModPoly(long prime, std::vector<long> cc) : p(prime), c(std::move(cc)) { normalize(); }

    void normalize() {
        for (auto& x : c) {
            x %= p;
            if (x < 0) x += p;
        }
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    long coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : 0; }
    bool operator==(const ModPoly& o) const { return p == o.p && c == o.c; }
    bool operator<(const ModPoly& o) const { return c < o.c; }
};

inline long mod_pow_long(long b, long e, long p) {
    long r = 1 % p;
    b %= p;
    if (b < 0) b += p;
    while (e > 0) {
        if (e & 1) r = static_cast<long>((__int128)r * b % p);
        b = static_cast<long>((__int128)b * b % p);
        e >>= 1;
    }
    return r;
}

inline long mod_inv_long(long a, long p) { return mod_pow_long(a, p - 2, p); }

inline ModPoly mp_reduce(const IntPoly& f, long p) {
    std::vector<long> c(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) c[i] = static_cast<long>(mpz_fdiv_ui(f.c[i].get_mpz_t(), p));
    return ModPoly(p, std::move(c));
}

inline ModPoly mp_x(long p) { return ModPoly(p, {0, 1}); }
inline ModPoly mp_one(long p) { return ModPoly(p, {1}); }

inline ModPoly mp_add(const ModPoly& a, const ModPoly& b) {
    std::vector<long> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = (r[i] + b.c[i]) % a.p;
    return ModPoly(a.p, std::move(r));
}

inline ModPoly mp_sub(const ModPoly& a, const ModPoly& b) {
    std::vector<long> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = (r[i] - b.c[i] % a.p + a.p) % a.p;
    return ModPoly(a.p, std::move(r));
}

inline ModPoly mp_mul(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly(a.p, {});
    std::vector<long> r(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r[i + j] = static_cast<long>(((__int128)a.c[i] * b.c[j] + r[i + j]) % a.p);
    }
    return ModPoly(a.p, std::move(r));
}

inline ModPoly mp_monic(const ModPoly& a) {
    if (a.is_zero() || a.c.back() == 1) return a;
    long inv = mod_inv_long(a.c.back(), a.p);
    std::vector<long> r = a.c;
    for (auto& x : r) x = static_cast<long>((__int128)x * inv % a.p);
    return ModPoly(a.p, std::move(r));
}

inline std::pair<ModPoly, ModPoly> mp_divmod(const ModPoly& a, const ModPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("mp_divmod: zero divisor");
    long p = a.p;
    std::vector<long> rem = a.c;
    int db = b.degree();
    if (a.degree() < db) return {ModPoly(p, {}), a};
    long inv = mod_inv_long(b.c.back(), p);
    std::vector<long> quot(a.degree() - db + 1, 0);
    for (int i = a.degree(); i >= db; --i) {
        long q = static_cast<long>((__int128)rem[i] * inv % p);
        if (q == 0) continue;
        quot[i - db] = q;
        for (int j = 0; j <= db; ++j)
            rem[i - db + j] = static_cast<long>(((__int128)rem[i - db + j] - (__int128)q * b.c[j] % p + p) % p);
    }
    return {ModPoly(p, std::move(quot)), ModPoly(p, std::move(rem))};
}

inline ModPoly mp_mod(const ModPoly& a, const ModPoly& b) { return mp_divmod(a, b).second; }

inline ModPoly mp_gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = mp_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(a);
}

inline ModPoly mp_powmod(const ModPoly& base, Int e, const ModPoly& mod) {
    ModPoly result = mp_one(base.p);
    ModPoly b = mp_mod(base, mod);
    while (e > 0) {
        if (fdiv_r(e, 2) == 1) result = mp_mod(mp_mul(result, b), mod);
        b = mp_mod(mp_mul(b, b), mod);
        e = fdiv_q(e, 2);
    }
    return result;
}

inline ModPoly mp_derivative(const ModPoly& a) {
    if (a.c.size() <= 1) return ModPoly(a.p, {});
    std::vector<long> r(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i)
        r[i - 1] = static_cast<long>((__int128)a.c[i] * (i % a.p) % a.p);
    return ModPoly(a.p, std::move(r));
}

namespace detail {

inline ModPoly random_poly(long p, int deg, std::mt19937_64& rng) {
    std::vector<long> c(deg + 1);
    for (auto& x : c) x = static_cast<long>(rng() % static_cast<unsigned long>(p));
    return ModPoly(p, std::move(c));
}

// Equal-degree splitting (Cantor-Zassenhaus; trace map for p = 2).
inline void edf(const ModPoly& h, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    int k = h.degree() / d;
    if (k == 1) {
        out.push_back(mp_monic(h));
        return;
    }
    long p = h.p;
    while (true) {
        ModPoly r = random_poly(p, h.degree() - 1, rng);
        ModPoly g;
        if (p == 2) {
            ModPoly t = mp_mod(r, h), acc = t;
            for (int i = 1; i < d; ++i) {
                t = mp_mod(mp_mul(t, t), h);
                acc = mp_add(acc, t);
            }
            g = mp_gcd(h, acc);
        } else {
            Int e = divexact(pow_int(Int(p), static_cast<unsigned long>(d)) - 1, Int(2));
            ModPoly s = mp_powmod(r, e, h);
            g = mp_gcd(h, mp_sub(s, mp_one(p)));
        }
        if (g.degree() > 0 && g.degree() < h.degree()) {
            edf(g, d, rng, out);
            edf(mp_divmod(h, g).first, d, rng, out);
            return;
        }
    }
}

// Distinct-degree factorization of a squarefree monic polynomial.
inline void ddf(ModPoly f, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    long p = f.p;
    ModPoly h = mp_x(p);
    int d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            out.push_back(mp_monic(f));
            return;
        }
        h = mp_powmod(h, Int(p), f);
        ModPoly g = mp_gcd(f, mp_sub(h, mp_x(p)));
        if (g.degree() > 0) {
            edf(g, d, rng, out);
            f = mp_divmod(f, g).first;
            h = mp_mod(h, f);
        }
    }
}

inline void factor_rec(const ModPoly& f, int mult, std::mt19937_64& rng,
                       std::map<ModPoly, int>& acc) {
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        acc[mp_monic(f)] += mult;
        return;
    }
    ModPoly df = mp_derivative(f);
    if (df.is_zero()) {
        // f = g(x^p); over F_p, g(x^p) = g(x)^p
        long p = f.p;
        std::vector<long> gc(f.degree() / p + 1);
        for (size_t i = 0; i < gc.size(); ++i) gc[i] = f.coeff(static_cast<int>(i) * p);
        factor_rec(ModPoly(p, std::move(gc)), mult * static_cast<int>(p), rng, acc);
        return;
    }
    ModPoly w = mp_gcd(f, df);
    if (w.degree() == 0) {
        std::vector<ModPoly> irr;
        ddf(mp_monic(f), rng, irr);
        for (auto& g : irr) acc[g] += mult;
        return;
    }
    factor_rec(mp_divmod(f, w).first, mult, rng, acc);
    factor_rec(w, mult, rng, acc);
}

}  // namespace detail

// Full factorization of a monic polynomial over F_p. Deterministic for a
// fixed seed; factors sorted by coefficient vector.
inline std::vector<std::pair<ModPoly, int>> factor_modpoly(const ModPoly& g, uint64_t seed = 0) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::map<ModPoly, int> acc;
    detail::factor_rec(mp_monic(g), 1, rng, acc);
    return {acc.begin(), acc.end()};
}

inline std::vector<std::pair<ModPoly, int>> factor_mod_p(const IntPoly& f, long p,
                                                         uint64_t seed = 0) {
    ModPoly g = mp_reduce(f, p);
    if (g.degree() != f.degree())
        throw std::invalid_argument("factor_mod_p: leading coefficient vanishes mod p");
    return factor_modpoly(g, seed);
}

inline std::vector<long> roots_mod_p(const IntPoly& f, long p) {
    std::vector<long> roots;
    for (auto& [g, e] : factor_mod_p(f, p))
        if (g.degree() == 1) roots.push_back((p - g.c[0]) % p);
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace polya

#endif
