#ifndef POLYA_IDEAL_HPP
#define POLYA_IDEAL_HPP

#include "polya/families.hpp"

namespace polya {

// Integral ideal as the HNF basis of its lattice over the integral basis
// (rows are generators). denom > 1 marks a fractional ideal I/denom.
struct IdealRep {
    IntMat hnf;
    Int denom = 1;

    bool operator==(const IdealRep& o) const { return hnf == o.hnf && denom == o.denom; }
    bool operator<(const IdealRep& o) const {
        if (!(denom == o.denom)) return denom < o.denom;
        return hnf.a < o.hnf.a;
    }
};

inline void ideal_canonicalize(IdealRep& i) {
    Int g = i.denom;
    for (auto& x : i.hnf.a) g = gcd(g, x);
    if (g > 1) {
        i.denom = divexact(i.denom, g);
        for (auto& x : i.hnf.a) x = divexact(x, g);
    }
}

inline IdealRep ideal_one(const NumberField& K) { return {IntMat::identity(K.n), Int(1)}; }

inline bool ideal_is_one(const NumberField& K, const IdealRep& i) {
    return i.denom == 1 && i.hnf == IntMat::identity(K.n);
}

// Ideal generated by elements of O_K (as an O_K-module).
inline IdealRep ideal_from_gens(const NumberField& K, const std::vector<Element>& gens) {
    IntMat rows(static_cast<int>(gens.size()) * K.n, K.n);
    int r = 0;
    for (auto& g : gens) {
        IntMat m = mult_matrix(K, g);
        for (int j = 0; j < K.n; ++j, ++r)
            for (int k = 0; k < K.n; ++k) rows.at(r, k) = m.at(j, k);
    }
    IntMat h = hnf(rows);
    if (h.rows != K.n) throw std::invalid_argument("ideal_from_gens: zero ideal");
    return {std::move(h), Int(1)};
}

inline IdealRep ideal_principal(const NumberField& K, const Element& g) {
    return ideal_from_gens(K, {g});
}

// pO_K + g O_K, the standard two-generator form (p, g).
inline IdealRep ideal_two_gen(const NumberField& K, const Int& p, const Element& g) {
    IntMat rows(2 * K.n, K.n);
    for (int j = 0; j < K.n; ++j) rows.at(j, j) = p;
    IntMat m = mult_matrix(K, g);
    for (int j = 0; j < K.n; ++j)
        for (int k = 0; k < K.n; ++k) rows.at(K.n + j, k) = m.at(j, k);
    return {hnf(rows), Int(1)};
}

inline Rat ideal_norm(const NumberField& K, const IdealRep& i) {
    Rat n(det(i.hnf));
    if (i.denom != 1) {
        Rat d(pow_int(i.denom, static_cast<unsigned long>(K.n)));
        n /= d;
    }
    n.canonicalize();
    return n;
}

inline Int ideal_norm_integral(const NumberField& K, const IdealRep& i) {
    if (i.denom != 1) throw std::invalid_argument("ideal_norm_integral: fractional ideal");
    return det(i.hnf);
}

inline IdealRep ideal_mul(const NumberField& K, const IdealRep& a, const IdealRep& b) {
    IntMat rows(K.n * K.n, K.n);
    int r = 0;
    for (int i = 0; i < K.n; ++i) {
        Element u = a.hnf.row(i);
        for (int j = 0; j < K.n; ++j, ++r) {
            Element w = el_mul(K, u, b.hnf.row(j));
            for (int k = 0; k < K.n; ++k) rows.at(r, k) = w[k];
        }
    }
    IdealRep out{hnf(rows), a.denom * b.denom};
    ideal_canonicalize(out);
    return out;
}

inline IdealRep ideal_pow(const NumberField& K, IdealRep base, Int e) {
    if (e < 0) throw std::invalid_argument("ideal_pow: negative exponent");
    IdealRep r = ideal_one(K);
    while (e > 0) {
        if (fdiv_r(e, 2) == 1) r = ideal_mul(K, r, base);
        base = ideal_mul(K, base, base);
        e = fdiv_q(e, 2);
    }
    return r;
}

// gcd of ideals (sum of lattices).
inline IdealRep ideal_add(const NumberField& K, const IdealRep& a, const IdealRep& b) {
    (void)K;
    if (a.denom != 1 || b.denom != 1) throw std::invalid_argument("ideal_add: fractional input");
    return {lattice_sum(a.hnf, b.hnf), Int(1)};
}

// b | a, i.e. a is contained in b (integral ideals).
inline bool ideal_divides(const NumberField& K, const IdealRep& b, const IdealRep& a) {
    (void)K;
    if (a.denom != 1 || b.denom != 1)
        throw std::invalid_argument("ideal_divides: fractional input");
    return lattice_contains(b.hnf, a.hnf);
}

inline bool el_in_ideal(const IdealRep& i, const Element& x) { return in_lattice(i.hnf, x); }

// Valuation of an integral ideal at a prime ideal, via the containment ladder.
inline int ideal_valuation(const NumberField& K, const IdealRep& i, const IdealRep& prime) {
    int v = 0;
    IdealRep pk = prime;
    while (ideal_divides(K, pk, i)) {
        ++v;
        pk = ideal_mul(K, pk, prime);
        if (v > 4096) throw inconsistency_error("ideal_valuation: runaway");
    }
    return v;
}

inline IdealRep ideal_apply_auto(const NumberField& K, const IntMat& a, const IdealRep& i) {
    (void)K;
    IntMat rows(i.hnf.rows, i.hnf.cols);
    for (int r = 0; r < i.hnf.rows; ++r) {
        auto w = vec_mat_mul(i.hnf.row(r), a);
        for (int k = 0; k < i.hnf.cols; ++k) rows.at(r, k) = w[k];
    }
    return {hnf(rows), i.denom};
}

// Product over all non-identity automorphisms of sigma(J): together with J it
// multiplies to N(J) O_K. Stand-in for the inverse ideal in Galois fields.
inline IdealRep ideal_conjugate_cofactor(const NumberField& K, const IdealRep& j) {
    if (!K.galois()) throw unsupported_error("ideal_conjugate_cofactor: field not Galois");
    IdealRep out = ideal_one(K);
    for (size_t t = 1; t < K.autos.size(); ++t)
        out = ideal_mul(K, out, ideal_apply_auto(K, K.autos[t], j));
    return out;
}

// ---- prime factorization ----

struct PrimePower {
    Int p;
    IdealRep prime;
    int e = 0;  // ramification index
    int f = 0;  // residue degree
};

namespace detail {

// Multiplication in the F_p-algebra O_K/pO_K, coordinates over the basis.
struct ModAlgebra {
    const NumberField& K;
    long p;

    long red(const Int& v) const {
        return static_cast<long>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p)));
    }

    std::vector<long> one() const {
        std::vector<long> r(K.n);
        for (int k = 0; k < K.n; ++k) r[k] = red(K.one[k]);
        return r;
    }

    std::vector<long> mul(const std::vector<long>& x, const std::vector<long>& y) const {
        std::vector<long> out(K.n, 0);
        for (int i = 0; i < K.n; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < K.n; ++j) {
                if (y[j] == 0) continue;
                long f = static_cast<long>((__int128)x[i] * y[j] % p);
                if (f == 0) continue;
                for (int k = 0; k < K.n; ++k) {
                    long m = red(K.mult[i].at(j, k));
                    out[k] = static_cast<long>((out[k] + (__int128)f * m) % p);
                }
            }
        }
        return out;
    }
};

// In-place reduced row echelon form over F_p; zero rows are dropped.
inline void rref_mod_p(std::vector<std::vector<long>>& m, long p) {
    int rows = static_cast<int>(m.size());
    if (rows == 0) return;
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (((m[i][c] % p) + p) % p != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        long inv = mod_inv_long(((m[r][c] % p) + p) % p, p);
        for (int j = 0; j < cols; ++j)
            m[r][j] = static_cast<long>((__int128)(((m[r][j] % p) + p) % p) * inv % p);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            long f = ((m[i][c] % p) + p) % p;
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j)
                m[i][j] = static_cast<long>(((m[i][j] - (__int128)f * m[r][j]) % p + p) % p);
        }
        ++r;
    }
    m.resize(r);
}

// Basis of { v : v * M = 0 } over F_p for a rectangular M given by rows.
inline std::vector<std::vector<long>> left_kernel_mod_p(const std::vector<std::vector<long>>& mat,
                                                        long p) {
    int rows = static_cast<int>(mat.size());
    if (rows == 0) return {};
    int cols = static_cast<int>(mat[0].size());
    std::vector<std::vector<long>> m(rows, std::vector<long>(cols + rows, 0));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m[i][j] = ((mat[i][j] % p) + p) % p;
        m[i][cols + i] = 1;
    }
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        long inv = mod_inv_long(m[r][c], p);
        for (int j = 0; j < cols + rows; ++j)
            m[r][j] = static_cast<long>((__int128)m[r][j] * inv % p);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            long f = m[i][c];
            if (f == 0) continue;
            for (int j = 0; j < cols + rows; ++j)
                m[i][j] = static_cast<long>(((m[i][j] - (__int128)f * m[r][j]) % p + p) % p);
        }
        ++r;
    }
    std::vector<std::vector<long>> ker;
    for (int i = r; i < rows; ++i) ker.emplace_back(m[i].begin() + cols, m[i].end());
    return ker;
}

}  // namespace detail

// Complete factorization of pO_K. When p does not divide the index, this is
// Dedekind's theorem on min_poly mod p; otherwise the quotient algebra
// O_K/pO_K is split by its radical and Frobenius-fixed idempotents.
inline std::vector<PrimePower> factor_prime(const NumberField& K, const Int& p,
                                            uint64_t seed = 0) {
    if (!is_prime(p)) throw std::invalid_argument("factor_prime: p not prime");
    std::vector<PrimePower> out;
    if (!divides(p, K.index)) {
        Element theta = el_theta(K);
        for (auto& [g, e] : factor_mod_p(K.min_poly, to_long(p), seed)) {
            // lift g to Z[x] with symmetric residues and evaluate at theta
            std::vector<Int> lift(g.c.size());
            for (size_t i = 0; i < g.c.size(); ++i) {
                long v = g.c[i];
                if (2 * v > g.p) v -= g.p;
                lift[i] = v;
            }
            Element gt = el_eval_poly(K, IntPoly(std::move(lift)), theta);
            PrimePower pp;
            pp.p = p;
            pp.prime = ideal_two_gen(K, p, gt);
            pp.e = e;
            pp.f = g.degree();
            out.push_back(std::move(pp));
        }
    } else {
        // p divides the index: split the quotient algebra A = O_K/pO_K into its
        // maximal ideals. Blocks are proper ideals of A; a random element z with
        // reducible (or non-generating nilpotent) minimal polynomial splits a
        // block into comaximal refinements.
        long pl = to_long(p);
        detail::ModAlgebra A{K, pl};
        std::mt19937_64 rng(seed ^ 0xabcdef1234567ULL);
        std::vector<std::vector<std::vector<long>>> work{{}};  // start: zero ideal
        std::vector<std::vector<std::vector<long>>> finished;  // maximal ideals (rref bases)
        int guard = 0;
        while (!work.empty()) {
            if (++guard > 1000) throw resource_error("factor_prime: splitting stalled");
            auto blk = work.back();
            work.pop_back();
            int dim = K.n - static_cast<int>(blk.size());
            if (dim <= 0) throw inconsistency_error("factor_prime: empty block");
            bool done = false;
            for (int attempt = 0; attempt < 500 && !done; ++attempt) {
                std::vector<long> z(K.n);
                for (auto& x : z) x = static_cast<long>(rng() % static_cast<unsigned long>(pl));
                // minimal polynomial of z modulo the block ideal
                ModPoly minpoly(pl, {});
                std::vector<std::vector<long>> pows;
                std::vector<long> cur = A.one();
                for (int deg = 0; deg <= dim && minpoly.is_zero(); ++deg) {
                    pows.push_back(cur);
                    std::vector<std::vector<long>> m = pows;
                    for (auto& r : blk) m.push_back(r);
                    for (auto& kv : detail::left_kernel_mod_p(m, pl)) {
                        if (kv[deg] != 0) {
                            long inv = mod_inv_long(kv[deg], pl);
                            std::vector<long> c(deg + 1);
                            for (int i = 0; i <= deg; ++i)
                                c[i] = static_cast<long>((__int128)kv[i] * inv % pl);
                            minpoly = ModPoly(pl, std::move(c));
                            break;
                        }
                    }
                    cur = A.mul(cur, z);
                }
                if (minpoly.is_zero())
                    throw inconsistency_error("factor_prime: no minimal polynomial");
                auto factors = factor_modpoly(minpoly, seed + attempt);
                if (factors.size() == 1 && factors[0].second == 1) {
                    if (factors[0].first.degree() == dim) {
                        finished.push_back(blk);  // quotient is a field
                        done = true;
                    }
                    continue;  // irreducible but not generating: try another z
                }
                // refine into comaximal blocks: ideal + g_i(z) A
                for (auto& [g, mult] : factors) {
                    (void)mult;
                    std::vector<long> gz(K.n, 0);
                    for (int i = g.degree(); i >= 0; --i) {
                        gz = A.mul(gz, z);
                        if (g.coeff(i) != 0)
                            for (int k = 0; k < K.n; ++k)
                                gz[k] = static_cast<long>(
                                    (gz[k] + (__int128)g.coeff(i) * A.red(K.one[k])) % pl);
                    }
                    auto nb = blk;
                    for (int i = 0; i < K.n; ++i) {
                        std::vector<long> ei(K.n, 0);
                        ei[i] = 1;
                        nb.push_back(A.mul(gz, ei));
                    }
                    detail::rref_mod_p(nb, pl);
                    int ncodim = K.n - static_cast<int>(nb.size());
                    if (ncodim <= 0 || ncodim >= dim)
                        throw inconsistency_error("factor_prime: degenerate refinement");
                    work.push_back(std::move(nb));
                }
                done = true;
            }
            if (!done) throw resource_error("factor_prime: could not split the quotient algebra");
        }
        // assemble the prime ideals
        for (auto& ib : finished) {
            IntMat rows(static_cast<int>(ib.size()) + K.n, K.n);
            for (int j = 0; j < K.n; ++j) rows.at(j, j) = p;
            for (size_t t = 0; t < ib.size(); ++t)
                for (int k = 0; k < K.n; ++k) rows.at(K.n + static_cast<int>(t), k) = ib[t][k];
            PrimePower pp;
            pp.p = p;
            pp.prime = IdealRep{hnf(rows), Int(1)};
            Int nrm = ideal_norm_integral(K, pp.prime);
            auto split = prime_power_split(nrm);
            if (!split || split->first != p)
                throw inconsistency_error("factor_prime: bad prime norm");
            pp.f = split->second;
            out.push_back(std::move(pp));
        }
        IdealRep pO = ideal_principal(K, el_from_int(K, p));
        for (auto& pp : out) pp.e = ideal_valuation(K, pO, pp.prime);
    }
    // verification: sum e_i f_i = n and the product reconstructs pO exactly
    int total = 0;
    IdealRep prod = ideal_one(K);
    for (auto& pp : out) {
        total += pp.e * pp.f;
        prod = ideal_mul(K, prod, ideal_pow(K, pp.prime, pp.e));
    }
    IdealRep pO = ideal_principal(K, el_from_int(K, p));
    if (total != K.n || !(prod == pO))
        throw inconsistency_error("factor_prime: factorization failed verification");
    std::sort(out.begin(), out.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return out;
}

// ---- behaviour under extensions ----

// I O_L for an embedding j: K -> L (integer matrix on basis coordinates).
inline IdealRep extend_ideal(const NumberField& K, const NumberField& L, const IntMat& j,
                             const IdealRep& i) {
    if (i.denom != 1) throw std::invalid_argument("extend_ideal: fractional input");
    IntMat rows(K.n * L.n, L.n);
    int r = 0;
    for (int t = 0; t < K.n; ++t) {
        Element img = embed(L, j, i.hnf.row(t));
        IntMat m = mult_matrix(L, img);
        for (int s = 0; s < L.n; ++s, ++r)
            for (int k = 0; k < L.n; ++k) rows.at(r, k) = m.at(s, k);
    }
    return {hnf(rows), Int(1)};
}

// P \cap O_K under j: the preimage lattice in K.
inline IdealRep ideal_contract(const NumberField& K, const NumberField& L, const IntMat& j,
                               const IdealRep& p) {
    if (p.denom != 1) throw std::invalid_argument("ideal_contract: fractional input");
    IntMat stacked = stack_rows(j, p.hnf);
    IntMat ker = left_kernel(stacked);
    IntMat gen(ker.rows, K.n);
    for (int i = 0; i < ker.rows; ++i)
        for (int c = 0; c < K.n; ++c) gen.at(i, c) = ker.at(i, c);
    IntMat h = hnf(gen);
    if (h.rows != K.n) throw inconsistency_error("ideal_contract: rank deficient");
    return {std::move(h), Int(1)};
}

// N_{L/K}(J) via the prime factorization of J; errors out when the norm of J
// exceeds the factorization budget.
inline IdealRep relative_norm(const NumberField& K, const NumberField& L, const IntMat& j,
                              const IdealRep& J, uint64_t seed = 0) {
    if (J.denom != 1) throw std::invalid_argument("relative_norm: fractional input");
    Int nrm = ideal_norm_integral(L, J);
    IdealRep out = ideal_one(K);
    if (nrm == 1) return out;
    if (nrm > Int("1000000000000"))
        throw resource_error("relative_norm: norm too large to factor");
    for (auto& [p, e] : factorize(nrm)) {
        (void)e;
        auto lp = factor_prime(L, p, seed);
        auto kp = factor_prime(K, p, seed);
        for (auto& P : lp) {
            int v = ideal_valuation(L, J, P.prime);
            if (v == 0) continue;
            IdealRep below = ideal_contract(K, L, j, P.prime);
            // residue degree of P over its contraction
            int f_below = 0;
            for (auto& q : kp)
                if (q.prime == below) f_below = q.f;
            if (f_below == 0) throw inconsistency_error("relative_norm: contraction not prime");
            if (P.f % f_below != 0) throw inconsistency_error("relative_norm: degree mismatch");
            int frel = P.f / f_below;
            out = ideal_mul(K, out, ideal_pow(K, below, Int(frel) * v));
        }
    }
    return out;
}

}  // namespace polya

#endif
