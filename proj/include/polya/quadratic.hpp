#ifndef POLYA_QUADRATIC_HPP
#define POLYA_QUADRATIC_HPP

#include "polya/abelian.hpp"

#include <map>
#include <optional>
#include <set>

namespace polya {

// Quadratic field Q(sqrt(d)), d squarefree. D is the field discriminant.
struct QuadraticField {
    Int d;
    Int D;
    bool real = false;
};

inline QuadraticField quad_field(const Int& d) {
    if (d == 0 || d == 1) throw std::invalid_argument("quad_field: d must not be 0 or 1");
    if (!is_squarefree(d)) throw std::invalid_argument("quad_field: d must be squarefree");
    QuadraticField k;
    k.d = d;
    k.D = fdiv_r(d, 4) == 1 ? d : 4 * d;
    k.real = d > 0;
    return k;
}

inline bool is_fundamental_disc(const Int& D) {
    if (D == 0 || D == 1) return false;
    Int r = fdiv_r(D, 4);
    if (r == 1) return is_squarefree(D);
    if (r == 0) {
        Int q = divexact(D, 4);
        Int qr = fdiv_r(q, 4);
        return is_squarefree(q) && (qr == 2 || qr == 3);
    }
    return false;
}

// Primes dividing the field discriminant; its cardinality is s_K.
inline std::vector<Int> ramified_primes(const QuadraticField& k) {
    std::vector<Int> out;
    for (auto& [p, e] : factorize(k.D)) out.push_back(p);
    return out;
}

// ---- binary quadratic forms ----

struct BinaryForm {
    Int a, b, c;
    bool operator==(const BinaryForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const BinaryForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

inline Int form_disc(const BinaryForm& f) { return f.b * f.b - 4 * f.a * f.c; }

inline bool form_primitive(const BinaryForm& f) {
    return gcd(gcd(f.a, f.b), f.c) == 1;
}

namespace detail {

// definite case: |b| <= a <= c, with b >= 0 when |b| = a or a = c
inline bool is_reduced_definite(const BinaryForm& f) {
    Int ab = abs(f.b);
    if (!(ab <= f.a && f.a <= f.c)) return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

// indefinite case: 0 < b < sqrt(D) and |sqrt(D) - 2|a|| < b
inline bool is_reduced_indefinite(const BinaryForm& f, const Int& D) {
    if (f.b <= 0 || f.b * f.b >= D) return false;
    Int t = 2 * abs(f.a);
    if ((t + f.b) * (t + f.b) <= D) return false;        // need sqrt(D) < 2|a| + b
    if (t > f.b && (t - f.b) * (t - f.b) >= D) return false;  // need 2|a| - b < sqrt(D)
    return true;
}

}  // namespace detail

inline bool is_reduced(const BinaryForm& f) {
    Int D = form_disc(f);
    return D < 0 ? detail::is_reduced_definite(f) : detail::is_reduced_indefinite(f, D);
}

// One reduction step for indefinite forms: (a,b,c) -> (c,b',c') with
// b' = -b mod 2|c| placed in the standard window.
inline BinaryForm rho_indefinite(const BinaryForm& f) {
    Int D = form_disc(f);
    Int ac = abs(f.c);
    Int s = isqrt(D);
    Int lo;  // unique b' = -b (mod 2|c|) with lo <= b' <= lo + 2|c| - 1
    if (ac > s)
        lo = -ac + 1;  // window (-|c|, |c|]
    else
        lo = s + 1 - 2 * ac;  // window (sqrt(D) - 2|c|, sqrt(D))
    Int bp = lo + fdiv_r(-f.b - lo, 2 * ac);
    Int cp = divexact(bp * bp - D, 4 * f.c);
    return {f.c, bp, cp};
}

inline BinaryForm reduce_form(BinaryForm f) {
    Int D = form_disc(f);
    if (D == 0 || (D > 0 && is_square(D)))
        throw std::invalid_argument("reduce_form: degenerate discriminant");
    if (D < 0) {
        if (f.a < 0) throw std::invalid_argument("reduce_form: negative definite form");
        for (int guard = 0; guard < 100000; ++guard) {
            // normalize b into (-a, a]
            Int q = fdiv_q(f.a - f.b, 2 * f.a);
            if (q != 0) {
                f.b += 2 * f.a * q;
                f.c = divexact(f.b * f.b - D, 4 * f.a);
            }
            if (f.a > f.c) {
                f = {f.c, -f.b, f.a};
                continue;
            }
            if ((f.a == f.c || abs(f.b) == f.a) && f.b < 0) f.b = -f.b;
            if (detail::is_reduced_definite(f)) return f;
        }
    } else {
        for (int guard = 0; guard < 100000; ++guard) {
            if (detail::is_reduced_indefinite(f, D)) return f;
            f = rho_indefinite(f);
        }
    }
    throw inconsistency_error("reduce_form: reduction did not terminate");
}

// Gauss composition (Cohen, alg. 5.4.7); result is reduced.
inline BinaryForm compose(BinaryForm f1, BinaryForm f2) {
    Int D = form_disc(f1);
    if (form_disc(f2) != D) throw std::invalid_argument("compose: discriminants differ");
    if (f1.a > f2.a) std::swap(f1, f2);
    Int s = divexact(f1.b + f2.b, 2);
    Int n = f2.b - s;
    Int y1, d;
    if (divides(f1.a, f2.a)) {
        y1 = 0;
        d = f1.a;
    } else {
        Int u, v;
        d = ext_gcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    Int x2, y2, d1;
    if (divides(d, s)) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        Int u1, v1;
        d1 = ext_gcd(s, d, u1, v1);
        x2 = u1;
        y2 = -v1;
    }
    Int v1 = divexact(f1.a, d1);
    Int v2 = divexact(f2.a, d1);
    Int r = fdiv_r(y1 * y2 * n - x2 * f2.c, v1);
    Int a3 = v1 * v2;
    Int b3 = f2.b + 2 * v2 * r;
    Int c3 = divexact(b3 * b3 - D, 4 * a3);
    return reduce_form({a3, b3, c3});
}

inline BinaryForm principal_form(const Int& D) {
    Int b0 = fdiv_r(D, 2);
    return reduce_form({Int(1), b0, divexact(b0 * b0 - D, 4)});
}

inline BinaryForm form_inverse(const BinaryForm& f) { return reduce_form({f.a, -f.b, f.c}); }

// All reduced forms of discriminant D (primitive; D must be fundamental).
inline std::vector<BinaryForm> reduced_forms(const Int& D) {
    if (fdiv_r(D, 4) > 1) throw std::invalid_argument("reduced_forms: D not 0,1 mod 4");
    if (!is_fundamental_disc(D)) throw std::invalid_argument("reduced_forms: D not fundamental");
    std::vector<BinaryForm> out;
    if (D < 0) {
        for (Int b = fdiv_r(D, 2); 3 * b * b <= abs(D); b += 2) {
            Int ac = divexact(b * b - D, 4);
            for (Int a = b > 0 ? b : Int(1); a * a <= ac; ++a) {
                if (a == 0 || !divides(a, ac)) continue;
                Int c = divexact(ac, a);
                BinaryForm f{a, b, c};
                if (!detail::is_reduced_definite(f)) continue;
                if (!form_primitive(f)) continue;
                out.push_back(f);
                if (b > 0) {
                    BinaryForm g{a, -b, c};
                    if (detail::is_reduced_definite(g)) out.push_back(g);
                }
            }
        }
    } else {
        Int s = isqrt(D);
        for (Int b = fdiv_r(D, 2) == 0 ? Int(2) : Int(1); b <= s; b += 2) {
            Int t = divexact(D - b * b, 4);  // = -a*c > 0
            for (Int a = 1; 2 * a <= s + b; ++a) {
                if (!divides(a, t)) continue;
                for (int sign = 0; sign < 2; ++sign) {
                    Int aa = sign ? -a : a;
                    BinaryForm f{aa, b, divexact(t, -aa)};
                    if (!detail::is_reduced_indefinite(f, D)) continue;
                    if (!form_primitive(f)) continue;
                    out.push_back(f);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- narrow (form) class group ----

// Class set of discriminant D: classes are reduced forms for D < 0 and
// rho-cycles of reduced forms for D > 0. Enumeration only; the group
// structure is built on top by narrow_class_group.
struct QuadClassSet {
    Int D;
    int h = 0;                             // narrow class number
    std::vector<BinaryForm> reps;          // canonical representative per class
    std::map<BinaryForm, int> class_of_reduced;
    int principal = 0;

    int class_index(const BinaryForm& f) const {
        auto it = class_of_reduced.find(reduce_form(f));
        if (it == class_of_reduced.end())
            throw inconsistency_error("class_index: unknown reduced form");
        return it->second;
    }
    int compose_idx(int i, int j) const { return class_index(compose(reps[i], reps[j])); }
};

namespace detail {

// Walk the rho-cycle of a reduced indefinite form.
inline std::vector<BinaryForm> form_cycle(const BinaryForm& start) {
    std::vector<BinaryForm> cyc = {start};
    BinaryForm f = rho_indefinite(start);
    int guard = 0;
    while (!(f == start)) {
        cyc.push_back(f);
        f = rho_indefinite(f);
        if (++guard > 1000000) throw inconsistency_error("form_cycle: did not close");
    }
    return cyc;
}

}  // namespace detail

inline QuadClassSet enumerate_classes(const Int& D) {
    QuadClassSet g;
    g.D = D;
    std::vector<BinaryForm> forms = reduced_forms(D);
    if (D < 0) {
        g.reps = forms;
        for (size_t i = 0; i < forms.size(); ++i) g.class_of_reduced[forms[i]] = static_cast<int>(i);
    } else {
        std::map<BinaryForm, int> seen;
        for (auto& f : forms) {
            if (seen.count(f)) continue;
            auto cyc = detail::form_cycle(f);
            BinaryForm rep = *std::min_element(cyc.begin(), cyc.end());
            int idx = static_cast<int>(g.reps.size());
            g.reps.push_back(rep);
            for (auto& x : cyc) seen[x] = idx;
        }
        g.class_of_reduced = std::move(seen);
    }
    g.h = static_cast<int>(g.reps.size());
    g.principal = g.class_index(principal_form(D));
    return g;
}

// Narrow class group with a polycyclic generating set and full discrete logs.
struct QuadClassGroup {
    QuadClassSet cls;
    std::vector<int> gens;                 // class indices of the generators
    AbelianGroup group;                    // presentation over gens
    std::vector<std::vector<Int>> dlog;    // class index -> coordinates over gens
};

inline QuadClassGroup narrow_class_group(const Int& D) {
    QuadClassGroup g;
    g.cls = enumerate_classes(D);
    PolycyclicData pc = polycyclic_structure(
        g.cls.h, g.cls.principal, [&](int i, int j) { return g.cls.compose_idx(i, j); });
    g.gens = std::move(pc.gens);
    g.group = std::move(pc.group);
    g.dlog = std::move(pc.dlog);
    return g;
}

// ---- fundamental units via continued fractions ----

// Fundamental unit (x + y sqrt(d)) / denom of the maximal order, with its
// norm. denom records the half-integer convention for d = 1 mod 4.
struct FundamentalUnitData {
    Int x, y;
    Int denom;  // 1 or 2
    int norm;   // +1 or -1
    int cf_period = 0;
};

inline FundamentalUnitData fundamental_unit(const Int& d) {
    if (d <= 1) throw std::invalid_argument("fundamental_unit: need d > 1");
    if (!is_squarefree(d)) throw std::invalid_argument("fundamental_unit: d must be squarefree");
    Int P = 0, Q = 1;
    if (fdiv_r(d, 4) == 1) {
        P = 1;
        Q = 2;
    }
    Int s = isqrt(d);
    std::map<std::pair<Int, Int>, int> seen;
    std::vector<Int> partials;
    int start = -1;
    for (int i = 0;; ++i) {
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            start = it->second;
            break;
        }
        seen[key] = i;
        Int a = fdiv_q(P + s, Q);
        partials.push_back(a);
        P = a * Q - P;
        Q = divexact(d - P * P, Q);
        if (i > 10000000) throw resource_error("fundamental_unit: period too long");
    }
    // periodic tail beta = (P_k + sqrt(d))/Q_k, purely periodic
    Int Pk = 0, Qk = 1;
    {
        // replay to recover state at index `start`
        Int P2 = fdiv_r(d, 4) == 1 ? Int(1) : Int(0);
        Int Q2 = fdiv_r(d, 4) == 1 ? Int(2) : Int(1);
        for (int i = 0; i < start; ++i) {
            Int a = fdiv_q(P2 + s, Q2);
            P2 = a * Q2 - P2;
            Q2 = divexact(d - P2 * P2, Q2);
        }
        Pk = P2;
        Qk = Q2;
    }
    int l = static_cast<int>(partials.size()) - start;
    // convergent denominators of the periodic word
    Int qm1 = 0, qm2 = 1;
    for (int t = 0; t < l; ++t) {
        Int a = partials[start + t];
        Int q = a * qm1 + qm2;
        qm2 = qm1;
        qm1 = q;
    }
    // unit = q_{l-1} beta + q_{l-2}
    Int X = qm1 * Pk + qm2 * Qk;
    Int Y = qm1;
    Int denom = Qk;
    Int g = gcd(gcd(X, Y), denom);
    X = divexact(X, g);
    Y = divexact(Y, g);
    denom = divexact(denom, g);
    if (denom < 0) {
        X = -X;
        Y = -Y;
        denom = -denom;
    }
    if (denom != 1 && denom != 2)
        throw inconsistency_error("fundamental_unit: unexpected denominator " + denom.get_str());
    Int nrm4 = X * X - d * Y * Y;
    Int nrm = divexact(nrm4, denom * denom);
    if (nrm != 1 && nrm != -1) throw inconsistency_error("fundamental_unit: norm not a unit");
    int expected = l % 2 == 0 ? 1 : -1;
    if (nrm != expected) throw inconsistency_error("fundamental_unit: norm/period parity clash");
    FundamentalUnitData u;
    u.x = X;
    u.y = Y;
    u.denom = denom;
    u.norm = static_cast<int>(nrm.get_si());
    u.cf_period = l;
    return u;
}

// ---- wide class group, Polya group, Hilbert's prediction ----

// Full per-field computation: narrow group, unit norm, wide group (quotient of
// the narrow one when the fundamental unit has norm +1), ramified prime
// classes, Hilbert's predicted order.
struct QuadComputation {
    QuadraticField K;
    QuadClassGroup narrow;
    std::optional<FundamentalUnitData> unit;
    AbelianGroup wide;                  // same generators as narrow.group
    Int h_wide = 0;
    std::vector<Int> ramified;          // primes dividing D
    std::vector<std::vector<Int>> ramified_coords;  // dlog of each ramified prime class
    std::vector<Int> polya_invariants;
    Int polya_order = 1;
    Int predicted_order = 1;
    bool clamp_used = false;            // s = 1, real, norm +1 edge case
};

// Form attached to a prime: (p, b, c) with the smallest admissible b
// (deterministic tie-break for split primes). nullopt when p is inert.
inline std::optional<BinaryForm> prime_form(const Int& D, const Int& p) {
    for (Int b = fdiv_r(D, 2); b < 2 * p; b += 2) {
        if (fdiv_r(b * b - D, 4 * p) == 0)
            return BinaryForm{p, b, divexact(b * b - D, 4 * p)};
    }
    return std::nullopt;
}

inline Int hilbert_predicted_order(const QuadraticField& K, int unit_norm, bool* clamp_used = nullptr) {
    long s = static_cast<long>(factorize(K.D).size());
    if (clamp_used) *clamp_used = false;
    if (K.real && unit_norm == 1) {
        if (s < 2) {
            // formula would give 2^{s-2} < 1; genus bound forces the trivial group
            if (clamp_used) *clamp_used = true;
            return 1;
        }
        return pow_int(Int(2), static_cast<unsigned long>(s - 2));
    }
    return pow_int(Int(2), static_cast<unsigned long>(s - 1));
}

// The narrow class of the totally negative principal ideals: the class of the
// form (-1, b0, *). Coincides with the principal class iff a unit of norm -1
// exists.
inline int negative_unit_class(const QuadClassSet& cs) {
    if (cs.D < 0) return cs.principal;
    Int b0 = fdiv_r(cs.D, 2);
    BinaryForm neg{Int(-1), b0, divexact(b0 * b0 - cs.D, -4)};
    return cs.class_index(neg);
}

inline QuadComputation compute_quad(const Int& d) {
    QuadComputation qc;
    qc.K = quad_field(d);
    qc.narrow = narrow_class_group(qc.K.D);
    int unit_norm = 0;
    int tcls = qc.narrow.cls.principal;
    if (qc.K.real) {
        qc.unit = fundamental_unit(d);
        unit_norm = qc.unit->norm;
        // cross-check: norm -1 exists iff the form (-1, b0, *) is principal
        tcls = negative_unit_class(qc.narrow.cls);
        bool neg_principal = (tcls == qc.narrow.cls.principal);
        if (neg_principal != (unit_norm == -1))
            throw inconsistency_error("compute_quad: unit norm disagrees with (-1)-form class");
    }
    if (tcls == qc.narrow.cls.principal) {
        qc.wide = qc.narrow.group;
    } else {
        // quotient by the order-2 class of the totally negative principal ideals
        int k = qc.narrow.group.ngens;
        IntMat extra(1, k);
        auto& coords = qc.narrow.dlog[tcls];
        for (int j = 0; j < k; ++j) extra.at(0, j) = coords[j];
        qc.wide = abelian_group(k, stack_rows(qc.narrow.group.rel_hnf, extra));
    }
    qc.h_wide = qc.wide.order;
    qc.ramified = ramified_primes(qc.K);
    std::vector<GroupElement> gens;
    for (auto& p : qc.ramified) {
        auto f = prime_form(qc.K.D, p);
        if (!f) throw inconsistency_error("compute_quad: ramified prime has no form");
        auto coords = qc.narrow.dlog[qc.narrow.cls.class_index(*f)];
        qc.ramified_coords.push_back(coords);
        gens.push_back(coords);
    }
    Subgroup po = subgroup_generated(qc.wide, gens);
    qc.polya_invariants = subgroup_invariants(qc.wide, po);
    qc.polya_order = subgroup_order(qc.wide, po);
    qc.predicted_order = hilbert_predicted_order(qc.K, unit_norm, &qc.clamp_used);
    return qc;
}

// Cheap |Po| for broad scans: closure of the ramified prime classes (plus the
// negative-unit class t when quotienting to the wide group) under composition.
// |Po(K)| = |<ramified, t>| / |<t>|.
inline Int polya_order_quad_fast(const Int& d) {
    QuadraticField K = quad_field(d);
    QuadClassSet cs = enumerate_classes(K.D);
    std::vector<int> seed;
    for (auto& p : factorize(K.D)) {
        auto f = prime_form(K.D, p.first);
        if (!f) throw inconsistency_error("polya_order_quad_fast: ramified prime has no form");
        seed.push_back(cs.class_index(*f));
    }
    int tcls = negative_unit_class(cs);
    Int t_order = tcls == cs.principal ? 1 : 2;
    if (tcls != cs.principal) seed.push_back(tcls);
    std::set<int> closure = {cs.principal};
    std::vector<int> frontier = {cs.principal};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int c : seed) {
                int y = cs.compose_idx(x, c);
                if (closure.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return divexact(Int(static_cast<long>(closure.size())), t_order);
}

}  // namespace polya

#endif
