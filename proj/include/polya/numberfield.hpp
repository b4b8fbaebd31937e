#ifndef POLYA_NUMBERFIELD_HPP
#define POLYA_NUMBERFIELD_HPP

#include "polya/abelian.hpp"
#include "polya/modpoly.hpp"
#include "polya/polynomial.hpp"

#include <string>

namespace polya {

// Element of K in power-basis coordinates with a common denominator.
struct RatVec {
    std::vector<Int> num;
    Int den = 1;

    void normalize() {
        if (den < 0) {
            den = -den;
            for (auto& x : num) x = -x;
        }
        Int g = den;
        for (auto& x : num) g = gcd(g, x);
        if (g > 1) {
            den = divexact(den, g);
            for (auto& x : num) x = divexact(x, g);
        }
    }
};

inline Int adjugate_and_det(const IntMat& m, IntMat& adj) {
    int n = m.rows;
    Int d = det(m);
    if (d == 0) throw std::invalid_argument("adjugate_and_det: singular matrix");
    adj = IntMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMat sub(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    sub.at(rr, cc) = m.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            Int cof = det(sub);
            adj.at(i, j) = (i + j) % 2 == 0 ? cof : -cof;
        }
    return d;
}

// Characteristic polynomial of an integer matrix (Faddeev-LeVerrier; exact).
inline IntPoly char_poly_int(const IntMat& m) {
    int n = m.rows;
    std::vector<Int> coeff(n + 1);
    coeff[n] = 1;
    IntMat mk = IntMat::identity(n);
    Int c = 0;
    for (int k = 1; k <= n; ++k) {
        // M_k = M (M_{k-1} + c_{k-1} I)
        for (int i = 0; i < n; ++i) mk.at(i, i) += c;
        mk = mat_mul(m, mk);
        Int tr = 0;
        for (int i = 0; i < n; ++i) tr += mk.at(i, i);
        c = divexact(-tr, Int(k));
        coeff[n - k] = c;
    }
    return IntPoly(std::move(coeff));
}

// Number field of degree n <= 6 with a verified maximal integral basis.
// Elements of O_K live as integer row vectors over the basis; the first basis
// element is checked to span Z (it is 1 up to sign normalization).
struct NumberField {
    IntPoly min_poly;
    int n = 0;
    IntMat basis_num;   // row i / basis_den = omega_i in power coordinates
    Int basis_den = 1;
    IntMat pow_num;     // row j / pow_den = theta^j in basis coordinates
    Int pow_den = 1;
    std::vector<IntMat> mult;  // mult[i].at(j,k): coeff of omega_k in omega_i*omega_j
    std::vector<Int> basis_traces;
    Int disc = 0;
    Int index = 1;      // [O_K : Z[theta]]
    int r1 = 0, r2 = 0;
    std::vector<Int> one;  // coordinates of 1
    // Galois action over Q, when present: matrices act on basis coordinates,
    // sigma(x) = x * A. autos[0] is the identity.
    std::vector<IntMat> autos;
    std::string galois_name;
    std::string label;  // canonical descriptor, set by constructors

    bool galois() const { return !autos.empty(); }
};

using Element = std::vector<Int>;

inline IntMat mult_matrix(const NumberField& K, const Element& x) {
    IntMat m(K.n, K.n);
    for (int i = 0; i < K.n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < K.n; ++j)
            for (int k = 0; k < K.n; ++k) m.at(j, k) += x[i] * K.mult[i].at(j, k);
    }
    return m;
}

inline Element el_mul(const NumberField& K, const Element& x, const Element& y) {
    Element out(K.n, Int(0));
    for (int i = 0; i < K.n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < K.n; ++j) {
            if (y[j] == 0) continue;
            Int f = x[i] * y[j];
            for (int k = 0; k < K.n; ++k) out[k] += f * K.mult[i].at(j, k);
        }
    }
    return out;
}

inline Element el_add(const Element& x, const Element& y) {
    Element out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

inline Element el_sub(const Element& x, const Element& y) {
    Element out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
    return out;
}

inline Element el_scale(const Element& x, const Int& s) {
    Element out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
    return out;
}

inline bool el_is_zero(const Element& x) {
    return std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
}

inline Element el_pow(const NumberField& K, Element x, Int e) {
    Element r = K.one;
    while (e > 0) {
        if (fdiv_r(e, 2) == 1) r = el_mul(K, r, x);
        x = el_mul(K, x, x);
        e = fdiv_q(e, 2);
    }
    return r;
}

inline Int el_norm(const NumberField& K, const Element& x) { return det(mult_matrix(K, x)); }

inline Int el_trace(const NumberField& K, const Element& x) {
    Int t = 0;
    for (int i = 0; i < K.n; ++i)
        if (x[i] != 0) t += x[i] * K.basis_traces[i];
    return t;
}

inline Element el_apply_auto(const NumberField& K, const IntMat& a, const Element& x) {
    return vec_mat_mul(x, a);
}

// theta in basis coordinates (integral since O contains Z[theta]).
inline Element el_theta(const NumberField& K) {
    Element t(K.n);
    for (int k = 0; k < K.n; ++k) t[k] = divexact(K.pow_num.at(1, k), K.pow_den);
    return t;
}

inline Element el_from_int(const NumberField& K, const Int& c) { return el_scale(K.one, c); }

// Evaluate an integer polynomial at an element of O_K.
inline Element el_eval_poly(const NumberField& K, const IntPoly& f, const Element& x) {
    Element acc(K.n, Int(0));
    for (int i = f.degree(); i >= 0; --i) {
        acc = el_mul(K, acc, x);
        if (f.c[i] != 0) acc = el_add(acc, el_from_int(K, f.c[i]));
    }
    return acc;
}

namespace detail {

// power coordinates arithmetic mod min_poly (rational, exact)
inline RatVec rv_mul_mod(const RatVec& a, const RatVec& b, const IntPoly& f) {
    IntPoly pa{std::vector<Int>(a.num)};
    IntPoly pb{std::vector<Int>(b.num)};
    IntPoly prod = poly_mul(pa, pb);
    IntPoly rem = poly_divmod_monic(prod, f).second;
    RatVec out;
    out.num.assign(f.degree(), Int(0));
    for (int i = 0; i < std::min<int>(f.degree(), rem.degree() + 1); ++i) out.num[i] = rem.coeff(i);
    out.den = a.den * b.den;
    out.normalize();
    return out;
}

}  // namespace detail

// x = num/den over the integral basis: integrality via the characteristic
// polynomial of the multiplication matrix.
inline bool is_integral(const NumberField& K, const Element& num, const Int& den) {
    if (den == 1) return true;
    IntPoly chi = char_poly_int(mult_matrix(K, num));
    Int dpow = 1;
    for (int k = K.n - 1; k >= 0; --k) {
        dpow *= den;  // den^{n-k}
        if (!divides(dpow, chi.coeff(k))) return false;
    }
    return true;
}

// Construct and fully verify a number field from a monic irreducible
// polynomial and a rational basis given over the power basis. Checks: ring
// closure, discriminant consistency, and p-maximality at every prime whose
// square divides the discriminant (complete certificate at this degree).
inline NumberField make_field(const IntPoly& f, const IntMat& basis_num, const Int& basis_den) {
    NumberField K;
    K.min_poly = f;
    K.n = f.degree();
    if (K.n < 1 || K.n > 6) throw unsupported_error("make_field: degree out of range");
    if (!f.monic()) throw std::invalid_argument("make_field: polynomial not monic");
    if (!is_irreducible_monic(f)) throw std::invalid_argument("make_field: polynomial reducible");
    if (basis_num.rows != K.n || basis_num.cols != K.n)
        throw std::invalid_argument("make_field: basis shape");
    K.basis_num = basis_num;
    K.basis_den = basis_den;

    // inverse transform: theta^j over the basis
    IntMat adj;
    Int d = adjugate_and_det(basis_num, adj);
    // (B/den)^{-1} = den * adj / det
    K.pow_num = adj;
    for (auto& x : K.pow_num.a) x *= basis_den;
    K.pow_den = d;
    {
        Int g = K.pow_den;
        for (auto& x : K.pow_num.a) g = gcd(g, x);
        if (g > 1) {
            K.pow_den = divexact(K.pow_den, g);
            for (auto& x : K.pow_num.a) x = divexact(x, g);
        }
        if (K.pow_den < 0) {
            K.pow_den = -K.pow_den;
            for (auto& x : K.pow_num.a) x = -x;
        }
    }
    // O contains Z[theta]: all pow rows must be integral
    for (auto& x : K.pow_num.a)
        if (!divides(K.pow_den, x))
            throw std::invalid_argument("make_field: basis does not contain the power basis");
    for (auto& x : K.pow_num.a) x = divexact(x, K.pow_den);
    K.pow_den = 1;

    // multiplication table; closure check
    K.mult.assign(K.n, IntMat(K.n, K.n));
    for (int i = 0; i < K.n; ++i) {
        RatVec wi{basis_num.row(i), basis_den};
        for (int j = i; j < K.n; ++j) {
            RatVec wj{basis_num.row(j), basis_den};
            RatVec prod = detail::rv_mul_mod(wi, wj, f);
            // to basis coordinates: prod * pow_num must divide exactly by prod.den
            std::vector<Int> bc = vec_mat_mul(prod.num, K.pow_num);
            for (int k = 0; k < K.n; ++k) {
                if (!divides(prod.den, bc[k]))
                    throw std::invalid_argument("make_field: basis not closed under multiplication");
                Int v = divexact(bc[k], prod.den);
                K.mult[i].at(j, k) = v;
                K.mult[j].at(i, k) = v;
            }
        }
    }
    // coordinates of 1
    {
        std::vector<Int> e0(K.n, Int(0));
        e0[0] = 1;  // power coords of 1
        std::vector<Int> bc = vec_mat_mul(e0, K.pow_num);
        K.one = bc;
        Element check = el_mul(K, K.one, K.one);
        if (check != K.one) throw inconsistency_error("make_field: unit element broken");
    }
    K.basis_traces.assign(K.n, Int(0));
    for (int i = 0; i < K.n; ++i) {
        Int t = 0;
        for (int j = 0; j < K.n; ++j) t += K.mult[i].at(j, j);
        K.basis_traces[i] = t;
    }
    // discriminant via the trace pairing
    IntMat tr(K.n, K.n);
    for (int i = 0; i < K.n; ++i)
        for (int j = 0; j < K.n; ++j) {
            Int t = 0;
            for (int k = 0; k < K.n; ++k) t += K.mult[i].at(j, k) * K.basis_traces[k];
            tr.at(i, j) = t;
        }
    K.disc = det(tr);
    // index consistency: disc(f) = index^2 * disc
    Int df = poly_disc(f);
    Int q = divexact(df, K.disc);
    if (!is_square(q)) throw inconsistency_error("make_field: disc(f)/disc(O) not a square");
    K.index = isqrt(q);
    // signature
    K.r1 = count_real_roots(f);
    K.r2 = (K.n - K.r1) / 2;
    if ((K.n - K.r1) % 2 != 0) throw inconsistency_error("make_field: signature");
    if ((K.r2 % 2 == 0) != (K.disc > 0))
        throw inconsistency_error("make_field: discriminant sign vs signature");
    // p-maximality at every p with p^2 | disc
    for (auto& [p, e] : factorize(K.disc)) {
        if (e < 2) continue;
        long pl = to_long(p);
        // enumerate (p^n - 1)/(p - 1) projective candidates
        for (int lead = 0; lead < K.n; ++lead) {
            std::vector<long> idx(K.n - lead - 1, 0);
            while (true) {
                Element x(K.n, Int(0));
                x[lead] = 1;
                for (int t = 0; t < static_cast<int>(idx.size()); ++t)
                    x[lead + 1 + t] = idx[t];
                if (is_integral(K, x, p))
                    throw std::invalid_argument("make_field: basis not maximal at p = " +
                                                p.get_str());
                int t = 0;
                for (; t < static_cast<int>(idx.size()); ++t) {
                    if (++idx[t] < pl) break;
                    idx[t] = 0;
                }
                if (t == static_cast<int>(idx.size())) break;
            }
        }
    }
    return K;
}

// Register automorphisms given the power-basis coordinates of their images of
// theta. Verifies each image is a root of min_poly, that the induced maps are
// ring automorphisms preserving O_K, and that they form a group of order n.
inline void set_automorphisms(NumberField& K, const std::vector<RatVec>& theta_images,
                              const std::string& group_name) {
    std::vector<IntMat> mats;
    for (auto& img : theta_images) {
        // verify f(sigma theta) = 0 in K
        RatVec acc{std::vector<Int>(K.n, Int(0)), Int(1)};
        for (int i = K.min_poly.degree(); i >= 0; --i) {
            acc = detail::rv_mul_mod(acc, img, K.min_poly);
            acc.num[0] += K.min_poly.c[i] * acc.den;
            acc.normalize();
        }
        for (auto& x : acc.num)
            if (x != 0) throw std::invalid_argument("set_automorphisms: image is not a root");
        // sigma(omega_i) = g_i(sigma theta) where omega_i = g_i(theta)
        IntMat a(K.n, K.n);
        // powers of the image
        std::vector<RatVec> pows(K.n);
        pows[0] = RatVec{std::vector<Int>(K.n, Int(0)), Int(1)};
        pows[0].num[0] = 1;
        for (int j = 1; j < K.n; ++j) pows[j] = detail::rv_mul_mod(pows[j - 1], img, K.min_poly);
        for (int i = 0; i < K.n; ++i) {
            // omega_i = sum_j basis_num[i][j]/basis_den theta^j
            std::vector<Int> num(K.n, Int(0));
            Int den = 1;
            for (int j = 0; j < K.n; ++j) den = lcm(den, pows[j].den);
            den *= K.basis_den;
            for (int j = 0; j < K.n; ++j) {
                Int scale = K.basis_num.at(i, j) * divexact(den, pows[j].den * K.basis_den);
                for (int k = 0; k < K.n; ++k) num[k] += scale * pows[j].num[k];
            }
            // to basis coordinates
            std::vector<Int> bc = vec_mat_mul(num, K.pow_num);
            for (int k = 0; k < K.n; ++k) {
                if (!divides(den, bc[k]))
                    throw std::invalid_argument("set_automorphisms: map does not preserve O_K");
                a.at(i, k) = divexact(bc[k], den);
            }
        }
        mats.push_back(std::move(a));
    }
    // ring automorphism check
    for (auto& a : mats) {
        if (abs(det(a)) != 1) throw std::invalid_argument("set_automorphisms: not invertible");
        for (int i = 0; i < K.n; ++i)
            for (int j = i; j < K.n; ++j) {
                Element si = a.row(i), sj = a.row(j);
                Element lhs = el_mul(K, si, sj);
                Element prod(K.n);
                for (int k = 0; k < K.n; ++k) prod[k] = K.mult[i].at(j, k);
                Element rhs = el_apply_auto(K, a, prod);
                if (lhs != rhs) throw std::invalid_argument("set_automorphisms: not a ring map");
            }
    }
    // group of order n containing the identity, closed under composition
    if (static_cast<int>(mats.size()) != K.n)
        throw std::invalid_argument("set_automorphisms: group order != degree");
    bool has_id = false;
    for (auto& a : mats)
        if (a == IntMat::identity(K.n)) has_id = true;
    if (!has_id) throw std::invalid_argument("set_automorphisms: identity missing");
    for (auto& a : mats)
        for (auto& b : mats) {
            IntMat ab = mat_mul(a, b);
            bool found = false;
            for (auto& c : mats)
                if (c == ab) found = true;
            if (!found) throw std::invalid_argument("set_automorphisms: not closed");
        }
    // identity first
    std::sort(mats.begin(), mats.end(), [&](const IntMat& x, const IntMat& y) {
        bool xi = x == IntMat::identity(K.n), yi = y == IntMat::identity(K.n);
        if (xi != yi) return xi;
        return x.a < y.a;
    });
    K.autos = std::move(mats);
    K.galois_name = group_name;
}

}  // namespace polya

#endif
