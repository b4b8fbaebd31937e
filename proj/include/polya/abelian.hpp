#ifndef POLYA_ABELIAN_HPP
#define POLYA_ABELIAN_HPP

#include "polya/mat.hpp"

#include <map>
#include <numeric>
#include <string>

namespace polya {

// Inverse of a unimodular matrix (HNF of such a matrix is the identity, and
// the transform is the inverse).
inline IntMat unimodular_inverse(const IntMat& v) {
    HnfResult hr = hnf_transform(v);
    if (!(hr.h == IntMat::identity(v.rows)))
        throw std::invalid_argument("unimodular_inverse: matrix not unimodular");
    return hr.u;
}

// Finitely generated abelian group Z^k / rowspace(relations), canonicalized by
// Smith normal form. Elements are integer coordinate vectors over the k
// generators; two elements are equal iff their difference lies in the
// relation lattice.
struct AbelianGroup {
    int ngens = 0;
    IntMat rel_hnf;               // HNF of the relation lattice (rank rows)
    IntMat v, vinv;               // SNF column transform: snf coords y = x * v
    std::vector<Int> diag;        // length ngens, divisibility chain, 0 = free
    std::vector<Int> invariants;  // diag entries > 1 (display form)
    bool finite = false;
    Int order = 0;                // product of diag when finite
};

using GroupElement = std::vector<Int>;

inline AbelianGroup abelian_group(int ngens, const IntMat& relations) {
    if (relations.cols != ngens && relations.rows != 0)
        throw std::invalid_argument("abelian_group: relation width != ngens");
    AbelianGroup g;
    g.ngens = ngens;
    IntMat rel = relations.rows == 0 ? IntMat(0, ngens) : relations;
    g.rel_hnf = hnf(rel);
    SnfResult s = snf(rel);
    g.v = std::move(s.v);
    g.vinv = unimodular_inverse(g.v);
    g.diag.assign(ngens, Int(0));
    for (size_t t = 0; t < s.diag.size(); ++t) g.diag[t] = s.diag[t];
    g.finite = true;
    g.order = 1;
    for (auto& d : g.diag) {
        if (d == 0) {
            g.finite = false;
        } else if (d > 1) {
            g.invariants.push_back(d);
            g.order *= d;
        }
    }
    if (!g.finite) g.order = 0;
    return g;
}

inline AbelianGroup trivial_group() { return abelian_group(0, IntMat(0, 0)); }

// Presentation of ⊕ Z/d_i.
inline AbelianGroup cyclic_product(const std::vector<Int>& ds) {
    int k = static_cast<int>(ds.size());
    IntMat rel(k, k);
    for (int i = 0; i < k; ++i) rel.at(i, i) = ds[i];
    return abelian_group(k, rel);
}

inline void check_element(const AbelianGroup& g, const GroupElement& x) {
    if (static_cast<int>(x.size()) != g.ngens)
        throw std::invalid_argument("group element has wrong coordinate length");
}

// Canonical coordinates in the SNF decomposition (entry j reduced mod diag[j]).
inline std::vector<Int> snf_coords(const AbelianGroup& g, const GroupElement& x) {
    check_element(g, x);
    std::vector<Int> y = vec_mat_mul(x, g.v);
    for (int j = 0; j < g.ngens; ++j)
        if (g.diag[j] > 0) y[j] = fdiv_r(y[j], g.diag[j]);
    return y;
}

inline bool element_is_identity(const AbelianGroup& g, const GroupElement& x) {
    auto y = snf_coords(g, x);
    return std::all_of(y.begin(), y.end(), [](const Int& c) { return c == 0; });
}

inline bool element_eq(const AbelianGroup& g, const GroupElement& x, const GroupElement& y) {
    return snf_coords(g, x) == snf_coords(g, y);
}

inline Int element_order(const AbelianGroup& g, const GroupElement& x) {
    auto y = snf_coords(g, x);
    Int n = 1;
    for (int j = 0; j < g.ngens; ++j) {
        if (y[j] == 0) continue;
        if (g.diag[j] == 0)
            throw unsupported_error("element_order: element has infinite order");
        n = lcm(n, divexact(g.diag[j], gcd(g.diag[j], y[j])));
    }
    return n;
}

// A subgroup is stored as the full preimage lattice in Z^k (always containing
// the relation lattice). Canonical equality is HNF equality of these lattices,
// not isomorphism of invariants.
struct Subgroup {
    IntMat lat;
};

inline Subgroup whole_group(const AbelianGroup& g) {
    return {IntMat::identity(g.ngens)};
}

inline Subgroup trivial_subgroup(const AbelianGroup& g) {
    IntMat l = g.rel_hnf;
    if (l.rows < g.ngens)
        throw unsupported_error("trivial_subgroup: ambient group is infinite");
    return {std::move(l)};
}

inline Subgroup subgroup_generated(const AbelianGroup& g, const std::vector<GroupElement>& elems) {
    IntMat gens(static_cast<int>(elems.size()), g.ngens);
    for (size_t i = 0; i < elems.size(); ++i) {
        check_element(g, elems[i]);
        for (int j = 0; j < g.ngens; ++j) gens.at(static_cast<int>(i), j) = elems[i][j];
    }
    return {lattice_sum(gens, g.rel_hnf)};
}

inline bool subgroup_eq(const Subgroup& a, const Subgroup& b) { return a.lat == b.lat; }

inline bool subgroup_contains(const Subgroup& h, const GroupElement& x) {
    return in_lattice(h.lat, x);
}

inline Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b) {
    return {lattice_sum(a.lat, b.lat)};
}

inline Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b) {
    return {lattice_intersect(a.lat, b.lat)};
}

inline Int subgroup_order(const AbelianGroup& g, const Subgroup& h) {
    if (!g.finite) throw unsupported_error("subgroup_order: ambient group is infinite");
    return divexact(det(g.rel_hnf), det(h.lat));
}

// Invariant factors of the subgroup as an abstract group: present it on the
// lattice basis, with relations expressing the ambient relation lattice.
inline std::vector<Int> subgroup_invariants(const AbelianGroup& g, const Subgroup& h) {
    IntMat b(g.rel_hnf.rows, h.lat.rows);
    for (int i = 0; i < g.rel_hnf.rows; ++i) {
        auto sol = hnf_solve(h.lat, g.rel_hnf.row(i));
        if (!sol) throw inconsistency_error("subgroup_invariants: relations not inside lattice");
        for (int j = 0; j < h.lat.rows; ++j) b.at(i, j) = (*sol)[j];
    }
    std::vector<Int> inv;
    for (auto& d : snf(b).diag)
        if (d > 1) inv.push_back(d);
    return inv;
}

// Invariant factors of G / H.
inline std::vector<Int> quotient_invariants(const AbelianGroup& g, const Subgroup& h) {
    (void)g;
    std::vector<Int> inv;
    for (auto& d : snf(h.lat).diag)
        if (d > 1) inv.push_back(d);
    return inv;
}

// Elements killed by n.
inline Subgroup torsion_part(const AbelianGroup& g, const Int& n) {
    if (n <= 0) throw std::invalid_argument("torsion_part: n must be positive");
    if (!g.finite) throw unsupported_error("torsion_part: ambient group is infinite");
    IntMat t(g.ngens, g.ngens);
    for (int j = 0; j < g.ngens; ++j) {
        Int m = divexact(g.diag[j], gcd(n, g.diag[j]));
        for (int c = 0; c < g.ngens; ++c) t.at(j, c) = m * g.vinv.at(j, c);
    }
    return {hnf(t)};
}

struct DirectSumWitness {
    bool direct = false;   // intersection trivial and |H1||H2| = |H1+H2|
    bool spans = false;    // H1 + H2 = G
    std::vector<Int> inv_h1, inv_h2, inv_meet, inv_sum;
};

inline DirectSumWitness is_internal_direct_sum(const AbelianGroup& g, const Subgroup& h1,
                                               const Subgroup& h2) {
    if (!g.finite) throw unsupported_error("is_internal_direct_sum: infinite ambient group");
    DirectSumWitness w;
    Subgroup meet = subgroup_intersect(h1, h2);
    Subgroup sum = subgroup_sum(h1, h2);
    w.inv_h1 = subgroup_invariants(g, h1);
    w.inv_h2 = subgroup_invariants(g, h2);
    w.inv_meet = subgroup_invariants(g, meet);
    w.inv_sum = subgroup_invariants(g, sum);
    bool meet_trivial = subgroup_eq(meet, trivial_subgroup(g));
    w.direct = meet_trivial &&
               subgroup_order(g, h1) * subgroup_order(g, h2) == subgroup_order(g, sum);
    w.spans = sum.lat == IntMat::identity(g.ngens);
    return w;
}

// SNF invariants of an arbitrary relation matrix (entries of the diagonal
// normalized, 1s dropped; zero entries reported as 0 = free rank).
inline std::vector<Int> invariants_from_relations(const IntMat& relations, int ngens) {
    AbelianGroup g = abelian_group(ngens, relations);
    std::vector<Int> out = g.invariants;
    for (auto& d : g.diag)
        if (d == 0) out.push_back(0);
    return out;
}

// Polycyclic presentation of an explicitly given finite abelian group: pick
// generators of maximal order in the successive quotients, with discrete logs
// for every element. `compose` acts on element indices 0..n-1.
struct PolycyclicData {
    std::vector<int> gens;                // element indices of the chosen generators
    AbelianGroup group;                   // presentation over gens
    std::vector<std::vector<Int>> dlog;   // element index -> coordinates over gens
};

template <typename ComposeFn>
PolycyclicData polycyclic_structure(int n, int identity, ComposeFn&& compose) {
    PolycyclicData out;
    std::map<int, std::vector<Int>> dl;
    dl[identity] = {};
    std::vector<std::pair<Int, std::vector<Int>>> rel_tails;  // (relative order, tail coords)
    while (static_cast<int>(dl.size()) < n) {
        int best = -1;
        long best_ord = 0;
        for (int x = 0; x < n; ++x) {
            if (dl.count(x)) continue;
            long ord = 1;
            int y = x;
            while (!dl.count(y)) {
                y = compose(y, x);
                ++ord;
            }
            if (ord > best_ord) {
                best_ord = ord;
                best = x;
            }
        }
        int y = best;
        for (long i = 1; i < best_ord; ++i) y = compose(y, best);
        std::vector<Int> tail = dl.at(y);
        std::map<int, std::vector<Int>> ndl;
        int xj = identity;
        for (long j = 0; j < best_ord; ++j) {
            for (auto& [e, v] : dl) {
                int c = compose(xj, e);
                std::vector<Int> coords = v;
                coords.resize(out.gens.size(), Int(0));
                coords.push_back(j);
                if (ndl.count(c))
                    throw inconsistency_error("polycyclic_structure: coset collision");
                ndl[c] = std::move(coords);
            }
            xj = compose(xj, best);
        }
        dl = std::move(ndl);
        out.gens.push_back(best);
        tail.resize(out.gens.size() - 1, Int(0));
        rel_tails.emplace_back(best_ord, std::move(tail));
    }
    int k = static_cast<int>(out.gens.size());
    IntMat rel(k, k);
    for (int i = 0; i < k; ++i) {
        rel.at(i, i) = rel_tails[i].first;
        for (size_t j = 0; j < rel_tails[i].second.size(); ++j)
            rel.at(i, static_cast<int>(j)) = -rel_tails[i].second[j];
    }
    out.group = abelian_group(k, rel);
    if (out.group.order != n) throw inconsistency_error("polycyclic_structure: order mismatch");
    out.dlog.assign(n, {});
    for (auto& [c, v] : dl) {
        std::vector<Int> coords = v;
        coords.resize(k, Int(0));
        out.dlog[c] = std::move(coords);
    }
    return out;
}

inline std::string render_invariants(const std::vector<Int>& inv) {
    if (inv.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < inv.size(); ++i) {
        if (i) s += " x ";
        s += inv[i] == 0 ? "Z" : "Z/" + inv[i].get_str();
    }
    return s;
}

}  // namespace polya

#endif
