#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "pfchi/errors.hpp"
#include "pfchi/geometry.hpp"
#include "pfchi/numeric.hpp"
#include "pfchi/zeta.hpp"

using namespace pfchi;
using zeta::CountSeries;
using zeta::ZetaData;

namespace {

std::vector<BigInt> big(std::initializer_list<int64_t> xs) {
    std::vector<BigInt> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

CountSeries series_of(int64_t q, std::initializer_list<int64_t> xs) {
    return CountSeries{q, big(xs)};
}

// modular exponentiation with an arbitrary-precision exponent, used as an
// independent oracle for power_sum_mod
int64_t modexp_big(int64_t base, BigInt e, int64_t m) {
    BigInt acc = 1, b = mod_norm(BigInt(base), m);
    while (e > 0) {
        if ((e & 1) != 0) acc = acc * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<int64_t>(acc);
}

}  // namespace

TEST_CASE("curve fit from a single count") {
    // q = 5, N1 = 4: a = 5 + 1 - 4 = 2, numerator 1 - 2T + 5T^2
    auto z = zeta::fit_curve_lpoly(series_of(5, {4}), 1);
    CHECK(z.q == 5);
    CHECK(z.A == big({1, -6, 5}));
    CHECK(z.B == big({1, -2, 5}));

    // supersingular over F_5: N1 = 6 gives a = 0
    auto zs = zeta::fit_curve_lpoly(series_of(5, {6}), 1);
    CHECK(zs.B == big({1, 0, 5}));

    // genus 0 has an empty numerator. P^1 over F_7: N_n = 7^n + 1.
    auto zp = zeta::fit_curve_lpoly(series_of(7, {8, 50, 344}), 0);
    CHECK(zp.A == big({1, -8, 7}));
    CHECK(zp.B == big({1}));
}

TEST_CASE("curve fit round-trips elliptic counts") {
    struct Case {
        int64_t a4, a6, q;
    };
    for (auto c : {Case{1, 0, 5}, Case{2, 1, 7}, Case{1, 3, 11}, Case{2, 1, 13}}) {
        std::vector<BigInt> counts;
        counts.push_back(geometry::count_elliptic(0, 0, 0, c.a4, c.a6, c.q, 1));
        auto z = zeta::fit_curve_lpoly(CountSeries{c.q, counts}, 1);
        for (int n = 2; n <= 3; ++n)
            CHECK(zeta::power_sum(z, n) ==
                  geometry::count_elliptic(0, 0, 0, c.a4, c.a6, c.q, n, 40'000'000));
        CHECK(zeta::weil_check(z, 1));
    }
}

TEST_CASE("curve fit validates every provided count") {
    // N1 = 4 forces N2 = 34 over F_5 (a = 2, N2 = 25 + 1 - (a^2 - 2q) = 32)
    CHECK_THROWS_AS(zeta::fit_curve_lpoly(series_of(5, {4, 33}), 1), InconsistentCounts);
    CHECK_NOTHROW(zeta::fit_curve_lpoly(series_of(5, {4, 32}), 1));
    CHECK_THROWS_AS(zeta::fit_curve_lpoly(series_of(5, {}), 1), PreconditionError);
    CHECK_THROWS_AS(zeta::fit_curve_lpoly(series_of(5, {4}), -1), PreconditionError);
    CHECK_THROWS_AS(zeta::fit_curve_lpoly(series_of(1, {4}), 1), PreconditionError);
    CHECK_THROWS_AS(zeta::fit_curve_lpoly(CountSeries{5, big({-2})}, 1), PreconditionError);
}

TEST_CASE("recurrence fit on the affine line and the torus") {
    // A^1 over F_3: N_n = 3^n
    auto za = zeta::fit_rational_zeta(series_of(3, {3, 9, 27, 81, 243, 729}), 1);
    CHECK(za.A == big({1, -3}));
    CHECK(za.B == big({1}));

    // G_m over F_3: N_n = 3^n - 1
    auto zg = zeta::fit_rational_zeta(series_of(3, {2, 8, 26, 80, 242, 728, 2186, 6560}), 2);
    CHECK(zg.A == big({1, -3}));
    CHECK(zg.B == big({1, -1}));
    CHECK(zeta::power_sum(zg, 5) == 242);
}

TEST_CASE("recurrence fit recovers surface data from closed-form counts") {
    // N_n = 25^n - 5^n (a smooth affine surface fibered in elliptic curves)
    std::vector<BigInt> c5;
    for (int n = 1; n <= 8; ++n) c5.push_back(bpow(BigInt(25), n) - bpow(BigInt(5), n));
    auto z5 = zeta::fit_rational_zeta(CountSeries{5, c5}, 2);
    CHECK(z5.A == big({1, -25}));
    CHECK(z5.B == big({1, -5}));

    // N_n = 49^n - 7^n - 1 + (-1)^n needs four characteristic roots
    std::vector<BigInt> c7;
    for (int n = 1; n <= 12; ++n)
        c7.push_back(bpow(BigInt(49), n) - bpow(BigInt(7), n) - 1 + (n % 2 == 0 ? 1 : -1));
    auto z7 = zeta::fit_rational_zeta(CountSeries{7, c7}, 4);
    CHECK(z7.A == big({1, -48, -49}));
    CHECK(z7.B == big({1, -8, 7}));
}

TEST_CASE("recurrence fit separates a doubled root by its weight") {
    // supersingular curve over F_25 with a = -10: B = (1 + 5T)^2, so the
    // root -5 must be assigned weight -2 while 1 and 25 carry weight +1
    auto curve = zeta::fit_curve_lpoly(series_of(25, {36}), 1);
    CHECK(curve.B == big({1, 10, 25}));
    std::vector<BigInt> counts;
    for (int n = 1; n <= 12; ++n) counts.push_back(zeta::power_sum(curve, n));
    auto z = zeta::fit_rational_zeta(CountSeries{25, counts}, 4);
    CHECK(z.A == big({1, -26, 25}));
    CHECK(z.B == big({1, 10, 25}));
    CHECK(zeta::weil_check(z, 1));
}

TEST_CASE("recurrence fit is idempotent") {
    auto first = zeta::fit_rational_zeta(series_of(3, {2, 8, 26, 80, 242, 728, 2186, 6560}), 2);
    std::vector<BigInt> replay;
    for (int n = 1; n <= 8; ++n) replay.push_back(zeta::power_sum(first, n));
    auto second = zeta::fit_rational_zeta(CountSeries{3, replay}, 2);
    CHECK(first == second);
}

TEST_CASE("recurrence fit of the empty variety") {
    auto z = zeta::fit_rational_zeta(series_of(7, {0, 0, 0, 0, 0, 0, 0, 0}), 2);
    CHECK(z.A == big({1}));
    CHECK(z.B == big({1}));
    CHECK(zeta::power_sum(z, 3) == 0);
}

TEST_CASE("recurrence fit failure modes") {
    // 0,0,0,1 admits no linear recurrence of order <= 2
    CHECK_THROWS_AS(zeta::fit_rational_zeta(series_of(3, {0, 0, 0, 1, 0, 0, 0, 0}), 2),
                    NoRecurrence);
    // the primes fit an order-2 recurrence on four entries but fail beyond
    CHECK_THROWS_AS(zeta::fit_rational_zeta(series_of(3, {2, 3, 5, 7, 11, 13, 17, 19}), 2),
                    VerificationError);
    // a tail entry off by one from 3^n
    CHECK_THROWS_AS(zeta::fit_rational_zeta(series_of(3, {3, 9, 27, 81, 243, 729, 2188}), 1),
                    ValidationFailure);
    // not enough data for the requested bound
    CHECK_THROWS_AS(zeta::fit_rational_zeta(series_of(3, {3, 9, 27}), 1), PreconditionError);
    CHECK_THROWS_AS(zeta::fit_rational_zeta(series_of(3, {3, 9, 27, 81, 243, 729}), -1),
                    PreconditionError);
    // alternating signs: root -3 needs weight +1, fine; but weight 2 on a
    // single root of a bound-1 fit must be rejected as exceeding the bound
    std::vector<BigInt> doubled;
    for (int n = 1; n <= 6; ++n) doubled.push_back(2 * bpow(BigInt(3), n));
    CHECK_THROWS_AS(zeta::fit_rational_zeta(CountSeries{3, doubled}, 1), ValidationFailure);
}

TEST_CASE("power sums from explicit root data") {
    // A = (1-2T)(1-3T), B = (1-T): N_n = 2^n + 3^n - 1
    ZetaData z{4, big({1, -5, 6}), big({1, -1})};
    for (int n = 1; n <= 10; ++n)
        CHECK(zeta::power_sum(z, n) == bpow(BigInt(2), n) + bpow(BigInt(3), n) - 1);
    CHECK_THROWS_AS(zeta::power_sum(z, 0), PreconditionError);
}

TEST_CASE("modular power sums match exact ones") {
    ZetaData torus{3, big({1, -3}), big({1, -1})};
    ZetaData curve{5, big({1, -6, 5}), big({1, -2, 5})};
    for (const auto& z : {torus, curve})
        for (int64_t n = 1; n <= 12; ++n)
            for (int64_t m : {2, 9, 10, 97, 3})
                CHECK(zeta::power_sum_mod(z, BigInt(n), m) ==
                      static_cast<int64_t>(mod_norm(zeta::power_sum(z, n), m)));
}

TEST_CASE("modular power sums at astronomically large n") {
    // G_m over F_3: N_n = 3^n - 1, checked against direct modular powering
    ZetaData z{3, big({1, -3}), big({1, -1})};
    BigInt huge = bpow(BigInt(10), 30) + 7;
    for (int64_t m : {2, 5, 9, 24, 97, 625}) {
        int64_t want = mod_norm(modexp_big(3, huge, m) - 1, m);
        CHECK(zeta::power_sum_mod(z, huge, m) == want);
    }
    CHECK_THROWS_AS(zeta::power_sum_mod(z, BigInt(0), 5), PreconditionError);
    CHECK_THROWS_AS(zeta::power_sum_mod(z, BigInt(3), 0), PreconditionError);
}

TEST_CASE("weil check accepts and rejects the right numerators") {
    ZetaData good{5, big({1, -6, 5}), big({1, -2, 5})};
    ZetaData super{5, big({1, -6, 5}), big({1, 0, 5})};
    ZetaData bad{5, big({1, -6, 5}), big({1, -7, 5})};  // |a| > 2 sqrt(q)
    CHECK(zeta::weil_check(good, 1));
    CHECK(zeta::weil_check(super, 1));
    CHECK_FALSE(zeta::weil_check(bad, 1));

    // structural rejections: size, constant term, functional equation
    CHECK_FALSE(zeta::weil_check(good, 0));
    CHECK_FALSE(zeta::weil_check(ZetaData{5, {}, big({2, -2, 5})}, 1));
    CHECK_FALSE(zeta::weil_check(ZetaData{5, {}, big({1, -2, 7})}, 1));
    CHECK_FALSE(zeta::weil_check(good, -1));

    // doubled reciprocal root of exact modulus sqrt(q)
    CHECK(zeta::weil_check(ZetaData{25, {}, big({1, 10, 25})}, 1));
    CHECK(zeta::weil_check(ZetaData{25, {}, big({1, -10, 25})}, 1));
}

TEST_CASE("fitted data always has unit constant terms and nonzero leads") {
    auto check_shape = [](const ZetaData& z) {
        REQUIRE(!z.A.empty());
        REQUIRE(!z.B.empty());
        CHECK(z.A[0] == 1);
        CHECK(z.B[0] == 1);
        CHECK(z.A.back() != 0);
        CHECK(z.B.back() != 0);
    };
    check_shape(zeta::fit_curve_lpoly(series_of(13, {18}), 1));
    check_shape(zeta::fit_rational_zeta(series_of(3, {3, 9, 27, 81, 243, 729}), 1));
    check_shape(zeta::fit_rational_zeta(series_of(7, {0, 0, 0, 0, 0, 0, 0, 0}), 2));
}
