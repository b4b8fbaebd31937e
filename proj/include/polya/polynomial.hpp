#ifndef POLYA_POLYNOMIAL_HPP
#define POLYA_POLYNOMIAL_HPP

#include "polya/mat.hpp"

#include <algorithm>
#include <string>

namespace polya {

// Univariate polynomial over Z, constant coefficient first, trailing zeros
// stripped. The zero polynomial has an empty coefficient vector.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> cc) : c(std::move(cc)) { normalize(); }
    static IntPoly from_longs(std::initializer_list<long> v) {
        std::vector<Int> cc;
        for (long x : v) cc.emplace_back(x);
        return IntPoly(std::move(cc));
    }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero poly
    const Int& lead() const { return c.back(); }
    bool monic() const { return !c.empty() && c.back() == 1; }
    Int coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : Int(0); }

    bool operator==(const IntPoly& o) const { return c == o.c; }
};

inline IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return IntPoly(std::move(r));
}

inline IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return IntPoly(std::move(r));
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(r));
}

inline IntPoly poly_scale(const IntPoly& a, const Int& s) {
    std::vector<Int> r = a.c;
    for (auto& x : r) x *= s;
    return IntPoly(std::move(r));
}

inline Int poly_eval(const IntPoly& a, const Int& x) {
    Int v = 0;
    for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) v = v * x + *it;
    return v;
}

inline IntPoly poly_derivative(const IntPoly& a) {
    if (a.c.size() <= 1) return IntPoly();
    std::vector<Int> r(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = Int(static_cast<long>(i)) * a.c[i];
    return IntPoly(std::move(r));
}

// Division by a monic divisor stays in Z[x].
inline std::pair<IntPoly, IntPoly> poly_divmod_monic(const IntPoly& a, const IntPoly& b) {
    if (!b.monic()) throw std::invalid_argument("poly_divmod_monic: divisor not monic");
    std::vector<Int> rem = a.c;
    int db = b.degree();
    if (a.degree() < db) return {IntPoly(), a};
    std::vector<Int> quot(a.degree() - db + 1, Int(0));
    for (int i = a.degree(); i >= db; --i) {
        Int q = rem[i];
        if (q == 0) continue;
        quot[i - db] = q;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c[j];
    }
    return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
}

// Exact divisibility test in Z[x] for a monic candidate divisor.
inline bool poly_divides_monic(const IntPoly& b, const IntPoly& a) {
    return poly_divmod_monic(a, b).second.is_zero();
}

inline IntPoly poly_pow_mod(const IntPoly& base, const Int& e, const IntPoly& mod) {
    IntPoly result = IntPoly::from_longs({1});
    IntPoly b = poly_divmod_monic(base, mod).second;
    Int k = e;
    while (k > 0) {
        if (fdiv_r(k, 2) == 1) result = poly_divmod_monic(poly_mul(result, b), mod).second;
        b = poly_divmod_monic(poly_mul(b, b), mod).second;
        k = fdiv_q(k, 2);
    }
    return result;
}

// Resultant via the Sylvester matrix (exact).
inline Int resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    int m = f.degree(), n = g.degree();
    if (m == 0) return pow_int(f.c[0], n);
    if (n == 0) return pow_int(g.c[0], m);
    IntMat s(m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s.at(i, i + j) = f.c[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s.at(n + i, i + j) = g.c[n - j];
    return det(s);
}

// Discriminant of a monic polynomial.
inline Int poly_disc(const IntPoly& f) {
    if (!f.monic()) throw std::invalid_argument("poly_disc: not monic");
    int n = f.degree();
    Int r = resultant(f, poly_derivative(f));
    return (n * (n - 1) / 2) % 2 == 0 ? r : -r;
}

// ---- rational polynomials (used for Sturm chains and basis arithmetic) ----

struct RatPoly {
    std::vector<Rat> c;

    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> cc) : c(std::move(cc)) { normalize(); }
    static RatPoly from_int(const IntPoly& p) {
        std::vector<Rat> cc(p.c.size());
        for (size_t i = 0; i < p.c.size(); ++i) cc[i] = Rat(p.c[i]);
        return RatPoly(std::move(cc));
    }
    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : Rat(0); }
};

inline RatPoly rpoly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return RatPoly(std::move(r));
}

inline std::pair<RatPoly, RatPoly> rpoly_divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("rpoly_divmod: zero divisor");
    std::vector<Rat> rem = a.c;
    int db = b.degree();
    if (a.degree() < db) return {RatPoly(), a};
    std::vector<Rat> quot(a.degree() - db + 1, Rat(0));
    for (int i = a.degree(); i >= db; --i) {
        Rat q = rem[i] / b.c[db];
        if (q == 0) continue;
        quot[i - db] = q;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c[j];
    }
    RatPoly r(std::move(rem));
    return {RatPoly(std::move(quot)), std::move(r)};
}

inline RatPoly rpoly_derivative(const RatPoly& f) {
    std::vector<Rat> dc;
    for (int i = 1; i <= f.degree(); ++i) dc.push_back(f.c[i] * Rat(i));
    return RatPoly(std::move(dc));
}

// Number of distinct real roots, by a Sturm chain on the squarefree part.
inline int count_real_roots(const IntPoly& f0) {
    if (f0.degree() <= 0) return 0;
    RatPoly f = RatPoly::from_int(f0);
    {
        RatPoly a = f, b = rpoly_derivative(f);
        while (!b.is_zero()) {
            RatPoly r = rpoly_divmod(a, b).second;
            a = b;
            b = r;
        }
        if (a.degree() > 0) f = rpoly_divmod(f, a).first;
    }
    std::vector<RatPoly> chain = {f, rpoly_derivative(f)};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        RatPoly r = rpoly_divmod(chain[chain.size() - 2], chain.back()).second;
        for (auto& x : r.c) x = -x;
        r.normalize();
        chain.push_back(std::move(r));
        if (chain.back().is_zero()) break;
    }
    auto sign_changes = [&](int at_inf) {
        int changes = 0, last = 0;
        for (auto& p : chain) {
            if (p.is_zero()) continue;
            Rat lead = p.c.back();
            int s = sgn(lead);
            if (at_inf < 0 && p.degree() % 2 == 1) s = -s;
            if (last != 0 && s != 0 && s != last) ++changes;
            if (s != 0) last = s;
        }
        return changes;
    };
    return sign_changes(-1) - sign_changes(+1);
}

inline std::vector<Int> divisors_of(const Int& n) {
    if (n == 0) throw std::invalid_argument("divisors_of(0)");
    std::vector<Int> out = {Int(1)};
    for (auto& [p, e] : factorize(n)) {
        size_t sz = out.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Irreducibility over Q for a monic integer polynomial of degree <= 7,
// by Kronecker's method: a proper factorization forces a monic integer factor
// of degree <= deg/2, which is pinned down by its values at small integers.
inline bool is_irreducible_monic(const IntPoly& f) {
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    if (n > 7) throw unsupported_error("is_irreducible_monic: degree > 7");
    if (f.c[0] == 0) return false;  // x divides
    // degree-1 factors: integer roots divide f(0)
    for (auto& d : divisors_of(f.c[0])) {
        if (poly_eval(f, d) == 0 || poly_eval(f, -d) == 0) return false;
    }
    if (n < 4) return true;
    Int f0 = poly_eval(f, 0), f1 = poly_eval(f, 1), fm1 = poly_eval(f, -1);
    if (f1 == 0 || fm1 == 0) return false;  // caught above, but keep the guard
    // degree-2 factors x^2 + u x + v: v | f(0), 1 + u + v | f(1)
    auto d0 = divisors_of(f0);
    auto d1 = divisors_of(f1);
    for (auto& v0 : d0)
        for (int sv = 0; sv < 2; ++sv) {
            Int v = sv ? -v0 : v0;
            for (auto& w0 : d1)
                for (int sw = 0; sw < 2; ++sw) {
                    Int w = sw ? -w0 : w0;  // w = g(1) = 1 + u + v
                    Int u = w - 1 - v;
                    IntPoly g(std::vector<Int>{v, u, Int(1)});
                    if (poly_divides_monic(g, f)) return false;
                }
        }
    if (n < 6) return true;
    // degree-3 factors x^3 + a x^2 + b x + c via values at 0, 1, -1
    auto dm1 = divisors_of(fm1);
    for (auto& c0 : d0)
        for (int sc = 0; sc < 2; ++sc) {
            Int c = sc ? -c0 : c0;
            for (auto& w0 : d1)
                for (int sw = 0; sw < 2; ++sw) {
                    Int w = sw ? -w0 : w0;  // g(1) = 1 + a + b + c
                    for (auto& z0 : dm1)
                        for (int sz = 0; sz < 2; ++sz) {
                            Int z = sz ? -z0 : z0;  // g(-1) = -1 + a - b + c
                            // a = (g(1) + g(-1))/2 - c, b = (g(1) - g(-1))/2 - 1
                            Int two = 2;
                            if (fdiv_r(w + z, two) != 0) continue;
                            Int a = divexact(w + z, two) - c;
                            Int b = divexact(w - z, two) - 1;
                            IntPoly g(std::vector<Int>{c, b, a, Int(1)});
                            if (poly_divides_monic(g, f)) return false;
                        }
                }
        }
    return true;
}

inline std::string poly_to_string(const IntPoly& f, const std::string& var = "x") {
    if (f.is_zero()) return "0";
    std::string s;
    for (int i = f.degree(); i >= 0; --i) {
        Int c = f.c[i];
        if (c == 0) continue;
        bool first = s.empty();
        if (c > 0 && !first) s += "+";
        if (c < 0) {
            s += "-";
            c = -c;
        }
        if (i == 0) {
            s += c.get_str();
        } else {
            if (c != 1) s += c.get_str() + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace polya

#endif
