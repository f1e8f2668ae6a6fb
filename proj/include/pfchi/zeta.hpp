#pragma once

#include <cstdint>
#include <vector>

#include "pfchi/numeric.hpp"

namespace pfchi::zeta {

// Exact point counts N_1, N_2, ... over the extensions of F_q.
struct CountSeries {
    int64_t q = 0;
    std::vector<BigInt> counts;
};

// Characteristic-root data: N_n = sum of n-th powers of the reciprocal roots
// of A minus the same for B. Coefficients ascending, constant terms 1.
struct ZetaData {
    int64_t q = 0;
    std::vector<BigInt> A;
    std::vector<BigInt> B;

    friend bool operator==(const ZetaData&, const ZetaData&) = default;
};

// Recovers the genus-g numerator B (degree 2g, functional equation
// b_{2g-i} = q^{g-i} b_i) from N_1..N_g via Newton's identities, with
// A = (1-T)(1-qT). Every provided count is checked against the result.
ZetaData fit_curve_lpoly(const CountSeries& series, int genus);

// Fits the minimal integer linear recurrence of order <= degree_bound to the
// series (needs at least 2*degree_bound + 4 entries), splits the recurrence
// roots into A and B by the sign of their weight in N_n, and validates the
// reconstruction against every entry.
ZetaData fit_rational_zeta(const CountSeries& series, int degree_bound);

// N_n by the Newton recurrence on the coefficients of A and B.
BigInt power_sum(const ZetaData& z, int64_t n);

// N_n mod m for astronomically large n, via companion-matrix powering.
int64_t power_sum_mod(const ZetaData& z, const BigInt& n, int64_t m);

// True iff B satisfies the genus-g coefficient functional equation exactly
// and every complex root of B has squared modulus 1/q within 1e-9.
bool weil_check(const ZetaData& z, int genus);

}  // namespace pfchi::zeta
