#ifndef POLYA_FAMILIES_HPP
#define POLYA_FAMILIES_HPP

#include "polya/numberfield.hpp"

#include <cmath>

namespace polya {

// Convert basis coordinates to power coordinates.
inline RatVec el_to_power(const NumberField& K, const Element& x) {
    RatVec out{vec_mat_mul(x, K.basis_num), K.basis_den};
    out.normalize();
    return out;
}

// ---- embeddings ----

// j: K -> L as an integer matrix on basis coordinates (x -> x * mat), with
// full ring-homomorphism verification.
inline IntMat make_embedding(const NumberField& K, const NumberField& L,
                             const Element& theta_image) {
    if (!el_is_zero(el_eval_poly(L, K.min_poly, theta_image)))
        throw std::invalid_argument("make_embedding: image is not a root of the subfield poly");
    // powers of the image in O_L
    std::vector<Element> pows(K.n, L.one);
    for (int j = 1; j < K.n; ++j) pows[j] = el_mul(L, pows[j - 1], theta_image);
    IntMat mat(K.n, L.n);
    for (int i = 0; i < K.n; ++i) {
        Element acc(L.n, Int(0));
        for (int j = 0; j < K.n; ++j)
            if (K.basis_num.at(i, j) != 0)
                acc = el_add(acc, el_scale(pows[j], K.basis_num.at(i, j)));
        for (int k = 0; k < L.n; ++k) {
            if (!divides(K.basis_den, acc[k]))
                throw std::invalid_argument("make_embedding: image not integral");
            mat.at(i, k) = divexact(acc[k], K.basis_den);
        }
    }
    // ring homomorphism check on the multiplication tables
    for (int i = 0; i < K.n; ++i)
        for (int j = i; j < K.n; ++j) {
            Element lhs = el_mul(L, mat.row(i), mat.row(j));
            Element rhs(L.n, Int(0));
            for (int k = 0; k < K.n; ++k)
                if (K.mult[i].at(j, k) != 0)
                    rhs = el_add(rhs, el_scale(mat.row(k), K.mult[i].at(j, k)));
            if (lhs != rhs) throw inconsistency_error("make_embedding: not a ring map");
        }
    if (mat.row(0) != L.one) throw inconsistency_error("make_embedding: 1 not fixed");
    return mat;
}

inline Element embed(const NumberField& L, const IntMat& j, const Element& x) {
    (void)L;
    return vec_mat_mul(x, j);
}

// ---- quadratic fields ----

inline NumberField nf_quad(const Int& d) {
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw std::invalid_argument("nf_quad: d must be squarefree, not 0 or 1");
    IntPoly f;
    RatVec sigma_theta;
    if (fdiv_r(d, 4) == 1) {
        // theta = (1 + sqrt d)/2, sigma(theta) = 1 - theta
        f = IntPoly({std::vector<Int>{divexact(1 - d, 4), Int(-1), Int(1)}});
        sigma_theta = RatVec{{Int(1), Int(-1)}, Int(1)};
    } else {
        f = IntPoly({std::vector<Int>{-d, Int(0), Int(1)}});
        sigma_theta = RatVec{{Int(0), Int(-1)}, Int(1)};
    }
    NumberField K = make_field(f, IntMat::identity(2), Int(1));
    Int D = fdiv_r(d, 4) == 1 ? d : 4 * d;
    if (K.disc != D) throw inconsistency_error("nf_quad: discriminant mismatch");
    RatVec id{{Int(0), Int(1)}, Int(1)};
    set_automorphisms(K, {id, sigma_theta}, "C2");
    K.label = "quad:" + d.get_str();
    return K;
}

// ---- cyclic cubic fields ----

namespace detail {

inline double poly_eval_d(const IntPoly& f, double x) {
    double v = 0;
    for (int i = f.degree(); i >= 0; --i) v = v * x + f.c[i].get_d();
    return v;
}

inline std::vector<double> real_roots_numeric(const IntPoly& f) {
    double bound = 1;
    for (auto& c : f.c) bound = std::max(bound, std::abs(c.get_d()));
    bound = bound / std::abs(f.c.back().get_d()) + 1;
    int grid = 40000;
    std::vector<double> roots;
    double prev_x = -bound, prev_v = poly_eval_d(f, prev_x);
    for (int i = 1; i <= grid; ++i) {
        double x = -bound + 2 * bound * i / grid;
        double v = poly_eval_d(f, x);
        if (prev_v == 0) roots.push_back(prev_x);
        if (prev_v * v < 0) {
            double lo = prev_x, hi = x;
            for (int it = 0; it < 200; ++it) {
                double mid = (lo + hi) / 2;
                if (poly_eval_d(f, lo) * poly_eval_d(f, mid) <= 0)
                    hi = mid;
                else
                    lo = mid;
            }
            roots.push_back((lo + hi) / 2);
        }
        prev_x = x;
        prev_v = v;
    }
    return roots;
}

}  // namespace detail

// Cyclic cubic from a monic defining polynomial whose power basis is maximal
// (square discriminant certifies the Galois property). The generating
// automorphism is recovered by fitting a quadratic through the numeric roots
// and verifying exactly.
inline NumberField nf_cyclic_cubic(const IntPoly& f, const std::string& label = "") {
    if (f.degree() != 3) throw std::invalid_argument("nf_cyclic_cubic: degree != 3");
    Int df = poly_disc(f);
    if (!is_square(df))
        throw std::invalid_argument("nf_cyclic_cubic: discriminant not a square (not Galois)");
    NumberField K = make_field(f, IntMat::identity(3), Int(1));
    auto roots = detail::real_roots_numeric(f);
    if (roots.size() != 3) throw inconsistency_error("nf_cyclic_cubic: expected 3 real roots");
    // fit sigma(theta) = a + b theta + c theta^2 mapping r_i -> r_{pi(i)}
    for (int dir = 0; dir < 2; ++dir) {
        double r0 = roots[0], r1 = roots[1], r2 = roots[2];
        double s0 = dir == 0 ? r1 : r2;
        double s1 = dir == 0 ? r2 : r0;
        double s2 = dir == 0 ? r0 : r1;
        // solve the 3x3 Vandermonde system
        double den = (r0 - r1) * (r0 - r2) * (r1 - r2);
        if (std::abs(den) < 1e-9) break;
        // Lagrange: q(x) = sum s_i prod_{j != i} (x - r_j)/(r_i - r_j)
        double c2 = s0 / ((r0 - r1) * (r0 - r2)) + s1 / ((r1 - r0) * (r1 - r2)) +
                    s2 / ((r2 - r0) * (r2 - r1));
        double c1 = -s0 * (r1 + r2) / ((r0 - r1) * (r0 - r2)) -
                    s1 * (r0 + r2) / ((r1 - r0) * (r1 - r2)) -
                    s2 * (r0 + r1) / ((r2 - r0) * (r2 - r1));
        double c0 = s0 * r1 * r2 / ((r0 - r1) * (r0 - r2)) +
                    s1 * r0 * r2 / ((r1 - r0) * (r1 - r2)) +
                    s2 * r0 * r1 / ((r2 - r0) * (r2 - r1));
        // power basis maximal: coefficients are integers
        Int a(static_cast<long>(std::llround(c0)));
        Int b(static_cast<long>(std::llround(c1)));
        Int c(static_cast<long>(std::llround(c2)));
        if (std::abs(c0 - a.get_d()) > 0.01 || std::abs(c1 - b.get_d()) > 0.01 ||
            std::abs(c2 - c.get_d()) > 0.01)
            continue;
        RatVec img{{a, b, c}, Int(1)};
        RatVec id{{Int(0), Int(1), Int(0)}, Int(1)};
        // sigma^2(theta) exactly
        Element sig = el_eval_poly(K, IntPoly({std::vector<Int>{a, b, c}}), el_theta(K));
        Element sig2 = el_eval_poly(K, IntPoly({std::vector<Int>{a, b, c}}), sig);
        RatVec img2 = el_to_power(K, sig2);
        try {
            set_automorphisms(K, {id, img, img2}, "C3");
        } catch (const std::invalid_argument&) {
            continue;
        }
        K.label = label;
        return K;
    }
    throw unsupported_error("nf_cyclic_cubic: could not certify an automorphism");
}

inline IntPoly cyclic_cubic_poly(const std::string& name) {
    if (name == "cond9") return IntPoly::from_longs({-1, -3, 0, 1});
    if (name == "cond7") return IntPoly::from_longs({-1, -2, 1, 1});
    if (name == "cond63") return IntPoly::from_longs({35, -21, 0, 1});
    if (name == "cond13") return IntPoly::from_longs({1, -4, 1, 1});
    throw std::invalid_argument("cyclic_cubic_poly: unknown name " + name);
}

// ---- biquadratic fields ----

struct BiquadData {
    NumberField L;
    NumberField K1, K2, K3;  // the three quadratic subfields Q(sqrt m), Q(sqrt n), Q(sqrt l)
    IntMat j1, j2, j3;       // embeddings into L
};

// Q(sqrt m, sqrt n): theta = sqrt m + sqrt n, with the classical integral
// basis split by the residues of the three subfield radicands mod 4.
inline BiquadData nf_biquad(const Int& m, const Int& n) {
    if (m == n) throw std::invalid_argument("nf_biquad: m = n");
    for (auto& v : {m, n})
        if (v == 0 || v == 1 || !is_squarefree(v))
            throw std::invalid_argument("nf_biquad: radicand must be squarefree, not 0 or 1");
    Int g = gcd(m, n);
    Int l = divexact(m * n, g * g);
    if (l == 1) throw std::invalid_argument("nf_biquad: same field twice");
    // power-coordinate expressions of the three radicals
    Int e = 2 * (m - n);
    RatVec rm{{Int(0), 3 * m + n, Int(0), Int(-1)}, e};
    RatVec rn{{Int(0), -(m + 3 * n), Int(0), Int(1)}, e};
    RatVec rl{{-(m + n), Int(0), Int(1), Int(0)}, 2 * g};
    rm.normalize();
    rn.normalize();
    rl.normalize();
    IntPoly f({std::vector<Int>{(m - n) * (m - n), Int(0), -2 * (m + n), Int(0), Int(1)}});

    struct Radical {
        Int v;
        RatVec r;
    };
    std::vector<Radical> rad = {{m, rm}, {n, rn}, {l, rl}};
    // order: any radicand = 1 mod 4 first; then the basis case applies
    std::stable_sort(rad.begin(), rad.end(), [](const Radical& x, const Radical& y) {
        auto rank = [](const Int& v) { return fdiv_r(v, 4) == 1 ? 0 : 1; };
        return rank(x.v) < rank(y.v);
    });
    auto res = [](const Int& v) { return fdiv_r(v, 4); };
    auto half_shift = [](const RatVec& r) {  // (1 + r)/2
        std::vector<Int> num = r.num;
        num[0] += r.den;
        return RatVec{num, 2 * r.den};
    };
    auto half_sum = [](const RatVec& a, const RatVec& b) {  // (a + b)/2
        Int den = lcm(a.den, b.den);
        std::vector<Int> num(a.num.size(), Int(0));
        for (size_t i = 0; i < num.size(); ++i)
            num[i] = a.num[i] * divexact(den, a.den) + b.num[i] * divexact(den, b.den);
        return RatVec{num, 2 * den};
    };
    RatVec one{{Int(1), Int(0), Int(0), Int(0)}, Int(1)};
    std::vector<RatVec> basis;
    int ones = 0;
    for (auto& r : rad)
        if (res(r.v) == 1) ++ones;
    if (ones == 3) {
        RatVec w1 = half_shift(rad[0].r), w2 = half_shift(rad[1].r);
        basis = {one, w1, w2, detail::rv_mul_mod(w1, w2, f)};
    } else if (ones == 1) {
        basis = {one, half_shift(rad[0].r), rad[1].r, half_sum(rad[1].r, rad[2].r)};
    } else if (ones == 0) {
        // residues {3, 2, 2}: odd radicand first
        std::stable_sort(rad.begin(), rad.end(), [&](const Radical& x, const Radical& y) {
            return (fdiv_r(x.v, 2) != 0) > (fdiv_r(y.v, 2) != 0);
        });
        basis = {one, rad[0].r, rad[1].r, half_sum(rad[1].r, rad[2].r)};
    } else {
        throw inconsistency_error("nf_biquad: impossible residue pattern");
    }
    Int den = 1;
    for (auto& b : basis) den = lcm(den, b.den);
    IntMat bm(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) bm.at(i, j) = basis[i].num[j] * divexact(den, basis[i].den);

    BiquadData out;
    out.L = make_field(f, bm, den);
    // conductor-discriminant check: disc = product of the subfield discriminants
    auto qd = [](const Int& v) { return fdiv_r(v, 4) == 1 ? v : 4 * v; };
    if (out.L.disc != qd(m) * qd(n) * qd(l))
        throw inconsistency_error("nf_biquad: discriminant formula mismatch");
    // automorphisms: all sign choices on (sqrt m, sqrt n)
    auto comb = [&](int sm, int sn) {
        Int den2 = lcm(rm.den, rn.den);
        std::vector<Int> num(4, Int(0));
        for (int i = 0; i < 4; ++i)
            num[i] = Int(sm) * rm.num[i] * divexact(den2, rm.den) +
                     Int(sn) * rn.num[i] * divexact(den2, rn.den);
        RatVec v{num, den2};
        v.normalize();
        return v;
    };
    set_automorphisms(out.L, {comb(1, 1), comb(-1, 1), comb(1, -1), comb(-1, -1)}, "C2xC2");
    out.L.label = "biquad:" + m.get_str() + "," + n.get_str();

    out.K1 = nf_quad(m);
    out.K2 = nf_quad(n);
    out.K3 = nf_quad(l);
    auto sub_theta = [&](const Int& v, const RatVec& r) {
        // theta of Q(sqrt v) inside L: sqrt v, or (1+sqrt v)/2 for v = 1 mod 4
        RatVec img = fdiv_r(v, 4) == 1 ? half_shift(r) : r;
        std::vector<Int> bc = vec_mat_mul(img.num, out.L.pow_num);
        Element x(4);
        for (int k = 0; k < 4; ++k) {
            if (!divides(img.den, bc[k]))
                throw inconsistency_error("nf_biquad: subfield generator not integral");
            x[k] = divexact(bc[k], img.den);
        }
        return x;
    };
    out.j1 = make_embedding(out.K1, out.L, sub_theta(m, rm));
    out.j2 = make_embedding(out.K2, out.L, sub_theta(n, rn));
    out.j3 = make_embedding(out.K3, out.L, sub_theta(l, rl));
    return out;
}

// ---- compositum of fields with coprime degrees (tensor construction) ----

struct CompositumData {
    NumberField L;
    IntMat j1, j2;  // embeddings of the two factors
};

inline void set_automorphism_matrices(NumberField& K, std::vector<IntMat> mats,
                                      const std::string& group_name) {
    for (auto& a : mats) {
        if (abs(det(a)) != 1)
            throw std::invalid_argument("set_automorphism_matrices: not invertible");
        for (int i = 0; i < K.n; ++i)
            for (int j = i; j < K.n; ++j) {
                Element lhs = el_mul(K, a.row(i), a.row(j));
                Element prod(K.n);
                for (int k = 0; k < K.n; ++k) prod[k] = K.mult[i].at(j, k);
                Element rhs = el_apply_auto(K, a, prod);
                if (lhs != rhs)
                    throw std::invalid_argument("set_automorphism_matrices: not a ring map");
            }
    }
    if (static_cast<int>(mats.size()) != K.n)
        throw std::invalid_argument("set_automorphism_matrices: group order != degree");
    for (auto& a : mats)
        for (auto& b : mats) {
            IntMat ab = mat_mul(a, b);
            bool found = false;
            for (auto& c : mats)
                if (c == ab) found = true;
            if (!found) throw std::invalid_argument("set_automorphism_matrices: not closed");
        }
    std::sort(mats.begin(), mats.end(), [&](const IntMat& x, const IntMat& y) {
        bool xi = x == IntMat::identity(K.n), yi = y == IntMat::identity(K.n);
        if (xi != yi) return xi;
        return x.a < y.a;
    });
    if (!(mats[0] == IntMat::identity(K.n)))
        throw std::invalid_argument("set_automorphism_matrices: identity missing");
    K.autos = std::move(mats);
    K.galois_name = group_name;
}

// L = K1 K2 for coprime degrees with coprime discriminants; integral basis is
// the product basis (maximality is certified by make_field).
inline CompositumData nf_compositum(const NumberField& K1, const NumberField& K2) {
    int n1 = K1.n, n2 = K2.n, N = n1 * n2;
    if (gcd(Int(n1), Int(n2)) != 1)
        throw unsupported_error("nf_compositum: degrees must be coprime");
    if (N > 6) throw unsupported_error("nf_compositum: degree > 6");
    if (gcd(K1.disc, K2.disc) != 1)
        throw unsupported_error("nf_compositum: discriminants must be coprime");
    auto idx = [&](int i, int j) { return i * n2 + j; };
    auto tensor_mul = [&](const Element& x, const Element& y) {
        Element out(N, Int(0));
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) {
                if (x[idx(i, j)] == 0) continue;
                for (int k = 0; k < n1; ++k)
                    for (int l = 0; l < n2; ++l) {
                        if (y[idx(k, l)] == 0) continue;
                        Int f = x[idx(i, j)] * y[idx(k, l)];
                        for (int s = 0; s < n1; ++s) {
                            if (K1.mult[i].at(k, s) == 0) continue;
                            for (int t = 0; t < n2; ++t)
                                out[idx(s, t)] += f * K1.mult[i].at(k, s) * K2.mult[j].at(l, t);
                        }
                    }
            }
        return out;
    };
    Element e0_1(n1, Int(0)), e0_2(n2, Int(0));
    e0_1[0] = 1;
    e0_2[0] = 1;
    if (K1.one != e0_1 || K2.one != e0_2)
        throw unsupported_error("nf_compositum: factors must have 1 as first basis element");
    Element th1 = el_theta(K1), th2 = el_theta(K2);
    for (long c = 1; c < 40; ++c) {
        // theta = theta1 (x) 1 + c * 1 (x) theta2 in tensor coordinates
        Element theta(N, Int(0));
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j)
                theta[idx(i, j)] += th1[i] * K2.one[j] + Int(c) * K1.one[i] * th2[j];
        IntMat s(N, N);
        Element pw(N, Int(0));
        pw[idx(0, 0)] = 1;  // assumes omega_0 = 1 in both factors
        for (int k = 0; k < N; ++k) {
            for (int t = 0; t < N; ++t) s.at(k, t) = pw[t];
            pw = tensor_mul(pw, theta);
        }
        if (det(s) == 0) continue;  // not primitive, retry with larger c
        // min poly: theta^N = pw over rows of s
        IntMat adj;
        Int ds = adjugate_and_det(s, adj);
        std::vector<Int> sol = vec_mat_mul(pw, adj);  // coeffs * ds
        std::vector<Int> coeffs(N + 1);
        for (int k = 0; k < N; ++k) {
            if (!divides(ds, sol[k]))
                throw inconsistency_error("nf_compositum: non-integral minimal polynomial");
            coeffs[k] = -divexact(sol[k], ds);
        }
        coeffs[N] = 1;
        IntPoly f(std::move(coeffs));
        NumberField L = make_field(f, adj, ds);
        // automorphisms: tensor products
        std::vector<IntMat> mats;
        for (auto& a1 : K1.autos)
            for (auto& a2 : K2.autos) {
                IntMat a(N, N);
                for (int i = 0; i < n1; ++i)
                    for (int j = 0; j < n2; ++j)
                        for (int k = 0; k < n1; ++k)
                            for (int l = 0; l < n2; ++l)
                                a.at(idx(i, j), idx(k, l)) = a1.at(i, k) * a2.at(j, l);
                mats.push_back(std::move(a));
            }
        if (!K1.autos.empty() && !K2.autos.empty())
            set_automorphism_matrices(L, std::move(mats),
                                      K1.galois_name + "x" + K2.galois_name);
        CompositumData out;
        out.L = std::move(L);
        out.j1 = IntMat(n1, N);
        for (int i = 0; i < n1; ++i) out.j1.at(i, idx(i, 0)) = 1;
        out.j2 = IntMat(n2, N);
        for (int j = 0; j < n2; ++j) out.j2.at(j, idx(0, j)) = 1;
        // verify both embeddings
        for (const IntMat* jm : {&out.j1, &out.j2}) {
            const NumberField& K = jm == &out.j1 ? K1 : K2;
            for (int i = 0; i < K.n; ++i)
                for (int j2i = i; j2i < K.n; ++j2i) {
                    Element lhs = el_mul(out.L, jm->row(i), jm->row(j2i));
                    Element rhs(N, Int(0));
                    for (int k = 0; k < K.n; ++k)
                        if (K.mult[i].at(j2i, k) != 0)
                            rhs = el_add(rhs, el_scale(jm->row(k), K.mult[i].at(j2i, k)));
                    if (lhs != rhs) throw inconsistency_error("nf_compositum: embedding broken");
                }
        }
        return out;
    }
    throw unsupported_error("nf_compositum: no primitive element found");
}

}  // namespace polya

#endif
