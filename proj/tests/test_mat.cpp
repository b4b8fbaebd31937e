#include "polya/mat.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

using namespace polya;

namespace {

std::mt19937_64 rng(12345);

IntMat random_mat(int r, int c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = d(rng);
    return m;
}

// All k-subsets of {0..n-1}.
std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> go = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            go(i + 1);
            cur.pop_back();
        }
    };
    go(0);
    return out;
}

// Independent oracle for SNF diagonals: k-th determinantal divisor is the gcd
// of all k x k minors, and the k-th elementary divisor is D_k / D_{k-1}.
std::vector<Int> snf_diag_oracle(const IntMat& m) {
    int n = std::min(m.rows, m.cols);
    std::vector<Int> dk(n + 1);
    dk[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Int g = 0;
        for (auto& ri : subsets(m.rows, k))
            for (auto& ci : subsets(m.cols, k)) {
                IntMat sub(k, k);
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) sub.at(a, b) = m.at(ri[a], ci[b]);
                g = gcd(g, det(sub));
            }
        dk[k] = g;
    }
    std::vector<Int> out(n);
    for (int k = 1; k <= n; ++k)
        out[k - 1] = dk[k] == 0 ? Int(0) : divexact(dk[k], dk[k - 1]);
    return out;
}

bool is_unimodular(const IntMat& m) { return abs(det(m)) == 1; }

}  // namespace

TEST_CASE("hnf basics") {
    // lattice generated by (4,0),(0,4),(2,2) is index-8 in Z^2
    IntMat m = IntMat::from_rows({{4, 0}, {0, 4}, {2, 2}}, 2);
    IntMat h = hnf(m);
    REQUIRE(h.rows == 2);
    CHECK(h.at(0, 0) == 2);
    CHECK(h.at(0, 1) == 2);
    CHECK(h.at(1, 0) == 0);
    CHECK(h.at(1, 1) == 4);
    CHECK(det(h) == 8);
    CHECK(in_lattice(h, {2, 2}));
    CHECK(in_lattice(h, {4, 0}));
    CHECK_FALSE(in_lattice(h, {1, 1}));
    CHECK_FALSE(in_lattice(h, {2, 0}));
}

TEST_CASE("hnf transform is unimodular and reproduces input lattice") {
    for (int it = 0; it < 40; ++it) {
        IntMat m = random_mat(4, 3, -9, 9);
        HnfResult hr = hnf_transform(m);
        REQUIRE(is_unimodular(hr.u));
        IntMat um = mat_mul(hr.u, m);
        for (int i = 0; i < hr.h.rows; ++i)
            for (int j = 0; j < m.cols; ++j) CHECK(um.at(i, j) == hr.h.at(i, j));
        for (int i = hr.h.rows; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) CHECK(um.at(i, j) == 0);
        // canonical: hnf of the hnf is itself
        CHECK(hnf(hr.h) == hr.h);
        // every original row is in the lattice
        for (int i = 0; i < m.rows; ++i) CHECK(in_lattice(hr.h, m.row(i)));
    }
}

TEST_CASE("left kernel") {
    IntMat m = IntMat::from_rows({{1, 2}, {2, 4}, {3, 5}}, 2);
    IntMat k = left_kernel(m);
    REQUIRE(k.rows == 1);
    auto prod = vec_mat_mul(k.row(0), m);
    CHECK(prod[0] == 0);
    CHECK(prod[1] == 0);
}

TEST_CASE("snf matches determinantal divisor oracle") {
    for (int it = 0; it < 60; ++it) {
        int r = 1 + static_cast<int>(rng() % 4);
        int c = 1 + static_cast<int>(rng() % 4);
        IntMat m = random_mat(r, c, -6, 6);
        SnfResult s = snf(m);
        REQUIRE(is_unimodular(s.u));
        REQUIRE(is_unimodular(s.v));
        IntMat d = mat_mul(mat_mul(s.u, m), s.v);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                CHECK(d.at(i, j) == (i == j ? s.diag[i] : Int(0)));
        for (size_t t = 0; t + 1 < s.diag.size(); ++t) {
            if (s.diag[t + 1] != 0) CHECK(divides(s.diag[t], s.diag[t + 1]));
            if (s.diag[t] == 0) CHECK(s.diag[t + 1] == 0);
        }
        CHECK(s.diag == snf_diag_oracle(m));
    }
}

TEST_CASE("lattice intersection and sum") {
    // 2Z x Z and Z x 3Z intersect in 2Z x 3Z and sum to Z x Z... with gcd structure
    IntMat a = IntMat::from_rows({{2, 0}, {0, 1}}, 2);
    IntMat b = IntMat::from_rows({{1, 0}, {0, 3}}, 2);
    IntMat meet = lattice_intersect(a, b);
    CHECK(meet == IntMat::from_rows({{2, 0}, {0, 3}}, 2));
    IntMat join = lattice_sum(a, b);
    CHECK(join == IntMat::identity(2));

    for (int it = 0; it < 25; ++it) {
        IntMat x = random_mat(3, 3, -5, 5);
        IntMat y = random_mat(3, 3, -5, 5);
        if (det(x) == 0 || det(y) == 0) continue;
        IntMat m = lattice_intersect(x, y);
        // intersection contained in both
        for (int i = 0; i < m.rows; ++i) {
            CHECK(in_lattice(hnf(x), m.row(i)));
            CHECK(in_lattice(hnf(y), m.row(i)));
        }
        // index identity: [Z^n : A][Z^n : B] = [Z^n : A+B][Z^n : A∩B]
        Int ia = abs(det(hnf(x))), ib = abs(det(hnf(y)));
        Int is = abs(det(lattice_sum(x, y))), im = abs(det(m));
        CHECK(ia * ib == is * im);
    }
}

TEST_CASE("express_over recovers integer coefficients") {
    IntMat basis = IntMat::from_rows({{2, 1, 0}, {0, 3, 1}, {0, 0, 5}}, 3);
    IntMat m = IntMat::from_rows({{2, 4, 1}, {0, 0, 5}}, 3);
    IntMat x = express_over(m, basis);
    CHECK(mat_mul(x, basis) == m);
}

TEST_CASE("det bareiss") {
    CHECK(det(IntMat::identity(5)) == 1);
    IntMat m = IntMat::from_rows({{2, 3}, {5, 7}}, 2);
    CHECK(det(m) == -1);
    for (int it = 0; it < 30; ++it) {
        IntMat a = random_mat(4, 4, -8, 8);
        IntMat b = random_mat(4, 4, -8, 8);
        CHECK(det(mat_mul(a, b)) == det(a) * det(b));
    }
}
