#include "pfchi/padic.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "pfchi/errors.hpp"

namespace pfchi::padic {

namespace {

int64_t require_prime(int64_t ell, const char* role) {
    auto [p, e] = prime_power_split(ell);  // NotPrime for everything else
    if (e != 1)
        throw PreconditionError(std::string(role) + " must be prime, got " + std::to_string(ell));
    return p;
}

int64_t valuation(BigInt v, int64_t ell) {
    if (v < 0) v = -v;
    int64_t t = 0;
    while (v % ell == 0) {
        v /= ell;
        ++t;
    }
    return t;
}

BigInt eval_poly(const std::vector<BigInt>& coeffs, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// inverse of a mod p for prime p and a not divisible by p
int64_t inv_mod(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = mod_norm(a, p);
    while (nr != 0) {
        int64_t qq = r / nr;
        t = std::exchange(nt, t - qq * nt);
        r = std::exchange(nr, r - qq * nr);
    }
    return mod_norm(t, p);
}

}  // namespace

NewtonPolygonResult newton_polygon(const std::vector<BigInt>& poly, int64_t ell) {
    require_prime(ell, "the valuation base");
    std::vector<BigInt> coeffs = poly;
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.empty()) throw ZeroPolynomial("no polygon for the zero polynomial");

    NewtonPolygonResult out;
    out.prime = ell;
    while (coeffs[out.zero_roots] == 0) ++out.zero_roots;

    // lower convex hull of (i, v(c_i)) over the nonzero coefficients
    struct Pt {
        int64_t x, y;
    };
    std::vector<Pt> hull;
    for (size_t i = out.zero_roots; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        Pt pt{static_cast<int64_t>(i), valuation(coeffs[i], ell)};
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull.back();
            if ((b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x) <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    for (size_t s = 1; s < hull.size(); ++s) {
        BigRat slope(hull[s - 1].y - hull[s].y, hull[s].x - hull[s - 1].x);
        for (int64_t c = 0; c < hull[s].x - hull[s - 1].x; ++c) out.slopes.push_back(slope);
    }
    std::sort(out.slopes.begin(), out.slopes.end());
    return out;
}

Residue unit_part_residue(const zeta::ZetaData& z, int64_t ell, int k, int64_t modulus_bound) {
    require_prime(ell, "the residue characteristic");
    if (k < 1) throw PreconditionError("the modulus exponent must be positive");
    int64_t m = ipow_checked(ell, k);
    if (m > modulus_bound)
        throw PreconditionError("modulus " + std::to_string(m) + " exceeds the bound " +
                                std::to_string(modulus_bound));
    int degree = 0;
    if (!z.A.empty()) degree += static_cast<int>(z.A.size()) - 1;
    if (!z.B.empty()) degree += static_cast<int>(z.B.size()) - 1;
    if (degree == 0) return Residue{m, 0};

    BigInt exponent = bpow(BigInt(ell), static_cast<int64_t>(k) * degree);
    BigInt cycle = 1;
    for (int d = 1; d <= degree; ++d)
        cycle = boost::multiprecision::lcm(cycle, bpow(BigInt(ell), d) - 1);
    exponent *= cycle;

    int64_t first = zeta::power_sum_mod(z, 1 + exponent, m);
    for (int t = 2; t <= 3; ++t)
        if (zeta::power_sum_mod(z, 1 + t * exponent, m) != first)
            throw StabilizationFailure("unit-part residue mod " + std::to_string(m) +
                                       " did not stabilize");
    return Residue{m, first};
}

euler::EulerValue principal_chi(const zeta::ZetaData& z, const std::vector<int64_t>& moduli,
                                int64_t modulus_bound) {
    auto [p, k_base] = prime_power_split(z.q);
    (void)k_base;
    euler::EulerValue out;
    for (int64_t m : moduli) {
        auto [ell, k] = prime_power_split(m);
        Residue unit = unit_part_residue(z, ell, k, modulus_bound);
        if (ell == p) {
            out.entries[m] = unit.value;
            continue;
        }
        int64_t count = mod_norm(zeta::power_sum(z, 1), m);
        if (count != unit.value)
            throw NonUnitRoot("point count " + std::to_string(count) + " and unit part " +
                              std::to_string(unit.value) + " disagree mod " + std::to_string(m) +
                              ": some characteristic root has positive valuation");
        out.entries[m] = count;
    }
    return out;
}

BigRat dual_chi(const zeta::ZetaData& z) {
    auto [p, k_base] = prime_power_split(z.q);
    (void)k_base;
    auto reciprocal_sum = [&](const std::vector<BigInt>& poly, const char* which) -> BigRat {
        if (poly.empty() || poly[0] != 1)
            throw PreconditionError(std::string(which) + " must have constant term 1");
        BigInt lead = poly.back();
        if (lead < 0) lead = -lead;
        while (lead % p == 0) lead /= p;
        if (lead != 1)
            throw NonUnitRoot(std::string(which) +
                              " has a characteristic root that is not a unit away from the base");
        if (poly.size() < 2) return BigRat(0);
        return BigRat(-poly[poly.size() - 2]) / BigRat(poly.back());
    };
    return reciprocal_sum(z.A, "the denominator data") - reciprocal_sum(z.B, "the numerator data");
}

bool loial_check(const zeta::ZetaData& z, int64_t p, int i) {
    require_prime(p, "the residue characteristic");
    if (i < 1) throw PreconditionError("the isogeny exponent must be positive");
    auto [qp, qk] = prime_power_split(z.q);
    (void)qk;
    if (qp != p)
        throw PreconditionError("base cardinality " + std::to_string(z.q) + " is not a power of " +
                                std::to_string(p));
    if (z.B.empty() || z.B[0] != 1)
        throw PreconditionError("the numerator must have constant term 1");
    int deg = static_cast<int>(z.B.size()) - 1;
    if (deg % 2 != 0) throw PreconditionError("the numerator degree must be even");
    int g = deg / 2;
    if (BigInt(z.q) <= bpow(BigInt(p), 2LL * g * i))
        throw PreconditionError("requires q > p^(2gi)");

    std::vector<BigInt> charpoly(z.B.rbegin(), z.B.rend());
    auto polygon = newton_polygon(charpoly, p);
    int unit_count = 0;
    for (const auto& s : polygon.slopes)
        if (s == 0) ++unit_count;

    BigInt value = eval_poly(charpoly, bpow(BigInt(p), i));
    if (value == 0) return true;
    return valuation(value, p) >= static_cast<int64_t>(i) * (2 * g - unit_count);
}

Residue unit_root(int64_t a, int64_t q, int64_t p, int s) {
    require_prime(p, "the residue characteristic");
    auto [qp, qk] = prime_power_split(q);
    (void)qk;
    if (qp != p)
        throw PreconditionError("q = " + std::to_string(q) + " is not a power of " +
                                std::to_string(p));
    if (s < 1) throw PreconditionError("the precision must be positive");
    if (a % p == 0)
        throw SupersingularInput("both roots of T^2 - " + std::to_string(a) + "T + " +
                                 std::to_string(q) + " have positive valuation");
    int64_t target = ipow_checked(p, s);

    // f(beta) = beta^2 - a beta + q; f'(beta) = 2 beta - a = a != 0 mod p
    int64_t u = inv_mod(a, p);
    BigInt beta = mod_norm(a, p);
    int64_t modulus = p;
    for (int j = 1; j < s; ++j) {
        modulus *= p;
        BigInt f = beta * beta - a * beta + q;
        beta = mod_norm(beta - f * u, modulus);
    }
    return Residue{target, mod_norm(beta, target)};
}

}  // namespace pfchi::padic
