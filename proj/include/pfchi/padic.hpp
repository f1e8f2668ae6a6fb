#pragma once

#include <cstdint>
#include <vector>

#include "pfchi/euler.hpp"
#include "pfchi/numeric.hpp"
#include "pfchi/zeta.hpp"

namespace pfchi::padic {

// Valuations of the roots of an integer polynomial, read off the lower
// convex hull of the points (i, v_ell(c_i)). Roots equal to zero are tallied
// separately since their valuation is unbounded.
struct NewtonPolygonResult {
    int64_t prime = 0;
    std::vector<BigRat> slopes;  // valuations of the nonzero roots, ascending
    int zero_roots = 0;
};

// A value in [0, modulus).
struct Residue {
    int64_t modulus = 0;
    int64_t value = 0;

    friend bool operator==(const Residue&, const Residue&) = default;
};

inline constexpr int64_t kDefaultModulusBound = 1'000'000'000;

// poly has ascending integer coefficients; ell must be prime.
NewtonPolygonResult newton_polygon(const std::vector<BigInt>& poly, int64_t ell);

// Sum of the ell-adic unit characteristic roots of A minus those of B, mod
// ell^k. Computed as N_{1+tE} mod ell^k with E = ell^{kD} lcm{ell^d - 1 :
// 1 <= d <= D} and D = deg A + deg B; the exponent fixes every unit root and
// annihilates the rest, and agreement across t = 1, 2, 3 is verified.
Residue unit_part_residue(const zeta::ZetaData& z, int64_t ell, int k,
                          int64_t modulus_bound = kDefaultModulusBound);

// The point-count residue at each prime-power modulus ell^k. When ell does
// not divide q this is N_1 mod ell^k, cross-checked against the unit part
// (a mismatch means some root is not an ell-adic unit); when ell divides q
// it is the unit part alone.
euler::EulerValue principal_chi(const zeta::ZetaData& z, const std::vector<int64_t>& moduli,
                                int64_t modulus_bound = kDefaultModulusBound);

// Exact rational sum of the reciprocals of the roots of A minus those of B,
// from the coefficient ratios at the top of each polynomial. Requires every
// root to be a unit at all primes away from q, so the denominator divides a
// power of q.
BigRat dual_chi(const zeta::ZetaData& z);

// Divisibility test v_p(Q(p^i)) >= i(2g - r), where Q is the monic
// degree-2g characteristic polynomial obtained by reversing B and r is its
// number of p-adic unit roots. Requires q > p^(2gi).
bool loial_check(const zeta::ZetaData& z, int64_t p, int i);

// The unique unit root of T^2 - aT + q over Z_p, mod p^s, by Hensel lifting
// from beta = a mod p. Requires p prime, q a power of p, and p not dividing
// a (otherwise both roots have positive valuation).
Residue unit_root(int64_t a, int64_t q, int64_t p, int s);

}  // namespace pfchi::padic
