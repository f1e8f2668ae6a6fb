#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "pfchi/gf.hpp"

using namespace pfchi;
using namespace pfchi::gf;

namespace {

// Slow reference: trial division by every monic polynomial of degree <= d/2.
// Deliberately shares no code with the library's Rabin test.
using IPoly = std::vector<int64_t>;

int ideg(const IPoly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

bool divides(const IPoly& g, IPoly f, int64_t p) {
    int dg = ideg(g);
    while (ideg(f) >= dg) {
        int df = ideg(f);
        int64_t c = f[static_cast<size_t>(df)];  // g monic
        for (int j = 0; j <= dg; ++j) {
            int64_t& t = f[static_cast<size_t>(df - dg + j)];
            t = ((t - c * g[static_cast<size_t>(j)]) % p + p) % p;
        }
    }
    return ideg(f) < 0;
}

bool brute_irreducible(const IPoly& f, int64_t p) {
    int d = ideg(f);
    if (d <= 0) return false;
    for (int e = 1; e <= d / 2; ++e) {
        IPoly g(static_cast<size_t>(e + 1), 0);
        g[static_cast<size_t>(e)] = 1;
        int64_t count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (int64_t v = 0; v < count; ++v) {
            int64_t rest = v;
            for (int i = 0; i < e; ++i) {
                g[static_cast<size_t>(i)] = rest % p;
                rest /= p;
            }
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

IPoly brute_least_irreducible(int64_t p, int d) {
    IPoly f(static_cast<size_t>(d + 1), 0);
    f[static_cast<size_t>(d)] = 1;
    int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int64_t v = 0; v < count; ++v) {
        int64_t rest = v;
        for (int i = 0; i < d; ++i) {
            f[static_cast<size_t>(i)] = rest % p;
            rest /= p;
        }
        if (brute_irreducible(f, p)) return f;
    }
    return {};
}

Poly int_poly(const Tower& F, const std::vector<int64_t>& coeffs) {
    Poly f;
    for (int64_t c : coeffs) f.c.push_back(F.from_int(c));
    return f;
}

}  // namespace

TEST_CASE("modulus is the lexicographically least irreducible") {
    struct Case {
        int64_t p;
        int k, N;
    };
    for (Case c : {Case{2, 1, 1}, {2, 1, 2}, {2, 2, 1}, {2, 1, 4}, {2, 2, 2}, {3, 1, 2},
                   {3, 1, 3}, {5, 1, 1}, {5, 1, 2}, {7, 1, 2}, {13, 1, 2}}) {
        Tower t = Tower::make(c.p, c.k, c.N);
        CHECK(t.modulus() == brute_least_irreducible(c.p, c.k * c.N));
    }
}

TEST_CASE("known moduli") {
    // F_4 comes out as x^2 + x + 1, F_5 as x, F_9 as x^2 + 1
    CHECK(Tower::make(2, 1, 2).modulus() == IPoly{1, 1, 1});
    CHECK(Tower::make(5, 1, 1).modulus() == IPoly{0, 1});
    CHECK(Tower::make(3, 2, 1).modulus() == IPoly{1, 0, 1});
}

TEST_CASE("field axioms on every element of F_9") {
    Tower t = Tower::make(3, 2, 1);
    auto all = t.sort_elements(1);
    REQUIRE(all.size() == 9);
    for (const auto& a : all) {
        CHECK(t.add(a, t.neg(a)) == t.zero());
        CHECK(t.mul(a, t.one()) == a);
        if (!t.is_zero(a)) {
            CHECK(t.mul(a, t.inv(a)) == t.one());
            CHECK(t.pow(a, 8) == t.one());  // multiplicative group order 8
        }
    }
    // x^2 = -1 in F_9 with modulus x^2 + 1, so the generator has order 4
    CHECK(t.pow(t.generator(), 2) == t.from_int(-1));
    CHECK(t.pow(t.generator(), 4) == t.one());
}

TEST_CASE("generator satisfies the modulus") {
    for (auto [p, k, N] : {std::tuple<int64_t, int, int>{2, 1, 4}, {3, 1, 3}, {5, 2, 2}, {7, 1, 2}}) {
        Tower t = Tower::make(p, k, N);
        Poly f = int_poly(t, t.modulus());
        CHECK(t.is_zero(poly_eval(t, f, t.generator())));
    }
}

TEST_CASE("frobenius is the q-power map and a ring homomorphism") {
    for (auto [p, k, N] : {std::tuple<int64_t, int, int>{2, 1, 3}, {2, 2, 2}, {3, 1, 2}, {5, 1, 2}}) {
        Tower t = Tower::make(p, k, N);
        auto all = t.sort_elements(N);
        for (const auto& a : all) CHECK(t.frobenius(a) == t.pow(a, t.q()));
        for (size_t i = 0; i < all.size(); i += 3)
            for (size_t j = 1; j < all.size(); j += 4) {
                CHECK(t.frobenius(t.add(all[i], all[j])) ==
                      t.add(t.frobenius(all[i]), t.frobenius(all[j])));
                CHECK(t.frobenius(t.mul(all[i], all[j])) ==
                      t.mul(t.frobenius(all[i]), t.frobenius(all[j])));
            }
        for (const auto& a : all) {
            CHECK(t.frobenius_inv(t.frobenius(a)) == a);
            CHECK(t.frobenius_pow(a, N) == a);
        }
    }
}

TEST_CASE("sorts agree with the power-map definition") {
    Tower t = Tower::make(3, 1, 4);  // F_3 up to F_81, sorts m = 1, 2, 4
    auto top = t.sort_elements(4);
    REQUIRE(top.size() == 81);
    for (int m : {1, 2, 4}) {
        BigInt qm = bpow(BigInt(t.q()), m);
        std::vector<Element> expect;
        for (const auto& a : top)
            if (t.pow(a, qm) == a) expect.push_back(a);
        CHECK(t.sort_elements(m) == expect);
        CHECK(t.sort_size(m) == BigInt(expect.size()));
        for (const auto& a : expect) CHECK(t.in_sort(a, m));
    }
    // smaller sorts sit inside larger ones
    auto k1 = t.sort_elements(1);
    auto k2 = t.sort_elements(2);
    for (const auto& a : k1) CHECK(std::binary_search(k2.begin(), k2.end(), a));
    // lexicographically first element is zero
    CHECK(k1.front() == t.zero());
    // K_1 is closed under the field operations
    for (const auto& a : k1)
        for (const auto& b : k1) {
            CHECK(t.in_sort(t.add(a, b), 1));
            CHECK(t.in_sort(t.mul(a, b), 1));
        }
}

TEST_CASE("square counting in F_5") {
    Tower t = Tower::make(5, 1, 1);
    std::vector<Element> squares;
    for (const auto& a : t.sort_elements(1)) squares.push_back(t.mul(a, a));
    std::sort(squares.begin(), squares.end());
    squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
    CHECK(squares.size() == 3);
}

TEST_CASE("construction is deterministic") {
    Tower a = Tower::make(3, 1, 4);
    Tower b = Tower::make(3, 1, 4);
    CHECK(a.modulus() == b.modulus());
    CHECK(a.sort_elements(2) == b.sort_elements(2));
    Tower big1 = Tower::make_arithmetic(13, 1, 40);
    Tower big2 = Tower::make_arithmetic(13, 1, 40);
    CHECK(big1.modulus() == big2.modulus());
}

TEST_CASE("size guards and input validation") {
    CHECK_THROWS_AS(Tower::make(4, 1, 1), NotPrime);
    CHECK_THROWS_AS(Tower::make(6, 1, 2), NotPrime);
    CHECK_THROWS_AS(Tower::make(2, 1, 24), TooLarge);  // 2^24 > 10^7
    Tower ok = Tower::make(2, 1, 23);                  // 2^23 within the default bound
    CHECK(ok.degree() == 23);
    Tower t = Tower::make(5, 1, 2);
    CHECK_THROWS_AS(t.sort_elements(1, 4), TooLarge);
    CHECK(t.sort_elements(1, 5).size() == 5);  // bound is inclusive
    CHECK_THROWS_AS(t.sort_size(3), SortNotInTower);
    CHECK_THROWS_AS(t.in_sort(t.one(), 4), SortNotInTower);
    CHECK_THROWS_AS(t.inv(t.zero()), DomainError);
}

TEST_CASE("arithmetic towers handle large degrees") {
    Tower t = Tower::make_arithmetic(13, 1, 40);
    CHECK(t.degree() == 40);
    Element g = t.generator();
    CHECK(t.mul(g, t.inv(g)) == t.one());
    CHECK(t.frobenius_pow(g, 40) == g);
    Poly f = int_poly(t, t.modulus());
    CHECK(t.is_zero(poly_eval(t, f, g)));
    CHECK(t.in_sort(t.from_int(7), 1));
    CHECK(t.sort_elements(2).size() == 169);  // small sorts stay enumerable
    CHECK_THROWS_AS(t.sort_elements(40), TooLarge);
}

TEST_CASE("polynomial roots match exhaustive search") {
    Tower t = Tower::make(7, 1, 2);  // F_49
    auto all = t.sort_elements(2);
    for (auto coeffs : {std::vector<int64_t>{1, 0, 1}, {3, 5, 0, 1}, {0, 0, 6, 2, 1}, {1, 1}}) {
        Poly f = int_poly(t, coeffs);
        std::vector<Element> expect;
        for (const auto& a : all)
            if (t.is_zero(poly_eval(t, f, a))) expect.push_back(a);
        CHECK(poly_roots(t, f) == expect);
    }
    // fifth roots of unity: 5 divides 48 = |F_49^*|... it does not, gcd(5,48)=1
    Poly x5m1 = int_poly(t, {-1, 0, 0, 0, 0, 1});
    CHECK(poly_roots(t, x5m1).size() == 1);  // only T = 1
    CHECK_THROWS_AS(poly_roots(t, Poly{}), ZeroPolynomial);
    CHECK_THROWS_AS(poly_roots(t, int_poly(t, {0, 0})), ZeroPolynomial);
    CHECK(poly_roots(t, int_poly(t, {3})).empty());
}

TEST_CASE("roots in characteristic 2") {
    Tower t = Tower::make(2, 1, 4);  // F_16
    auto all = t.sort_elements(4);
    // x^5 - 1 splits: 5 | 15
    Poly f = int_poly(t, {1, 0, 0, 0, 0, 1});
    std::vector<Element> expect;
    for (const auto& a : all)
        if (t.is_zero(poly_eval(t, f, a))) expect.push_back(a);
    CHECK(expect.size() == 5);
    CHECK(poly_roots(t, f) == expect);
    CHECK(poly_roots(t, f) == poly_roots(t, f));  // deterministic
}

TEST_CASE("product of linear factors recovers its roots") {
    Tower t = Tower::make(3, 1, 3);
    auto all = t.sort_elements(3);
    Element a = all[5], b = all[17], c = all[20];
    Poly f;
    f.c = {t.one()};
    for (const auto& r : {a, b, c}) {
        Poly lin;
        lin.c = {t.neg(r), t.one()};
        f = poly_mul(t, f, lin);
    }
    std::vector<Element> expect = {a, b, c};
    std::sort(expect.begin(), expect.end());
    CHECK(poly_roots(t, f) == expect);
}

TEST_CASE("polynomial arithmetic identities") {
    Tower t = Tower::make(5, 1, 2);
    Poly f = int_poly(t, {2, 0, 3, 1});
    Poly g = int_poly(t, {1, 4});
    Poly r = poly_rem(t, f, g);
    CHECK(poly_deg(t, r) < poly_deg(t, g));
    // f ≡ r at every root of g
    for (const auto& root : poly_roots(t, g))
        CHECK(poly_eval(t, f, root) == poly_eval(t, r, root));
    Poly s = poly_sub(t, poly_add(t, f, g), g);
    CHECK(poly_deg(t, s) == poly_deg(t, f));
    for (const auto& a : t.sort_elements(1))
        CHECK(poly_eval(t, s, a) == poly_eval(t, f, a));
    Poly gc = poly_gcd(t, poly_mul(t, f, g), g);
    CHECK(poly_deg(t, gc) == 1);  // g itself, made monic
}

TEST_CASE("embedding F_4 into F_16") {
    Tower src = Tower::make(2, 1, 2);
    Tower dst = Tower::make(2, 1, 4);
    Embedding e(src, dst);
    auto all = src.sort_elements(2);
    CHECK(e(src.zero()) == dst.zero());
    CHECK(e(src.one()) == dst.one());
    std::vector<Element> images;
    for (const auto& a : all) {
        images.push_back(e(a));
        // the image of F_4 is the sort K_2 of the target
        CHECK(dst.in_sort(e(a), 2));
        for (const auto& b : all) {
            CHECK(e(src.add(a, b)) == dst.add(e(a), e(b)));
            CHECK(e(src.mul(a, b)) == dst.mul(e(a), e(b)));
        }
    }
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    CHECK(images.size() == all.size());  // injective
}

TEST_CASE("embedding across characteristics is rejected") {
    Tower a = Tower::make(2, 1, 2);
    Tower b = Tower::make(3, 1, 2);
    CHECK_THROWS_AS(Embedding(a, b), PreconditionError);
    Tower c = Tower::make(2, 1, 3);
    CHECK_THROWS_AS(Embedding(a, c), PreconditionError);  // 2 does not divide 3
}
