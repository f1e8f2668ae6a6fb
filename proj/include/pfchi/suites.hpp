#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfchi/gf.hpp"
#include "pfchi/torsion.hpp"
#include "pfchi/zeta.hpp"

namespace pfchi::suites {

// Outcome of one verification battery. A suite passes only when it ran at
// least one check and none failed; notes carry one line per failure.
struct SuiteResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> notes;

    SuiteResult() = default;
    explicit SuiteResult(std::string n) : name(std::move(n)) {}

    bool pass() const { return checks > 0 && failures == 0; }
};

struct FittedCurve {
    torsion::Curve curve;
    zeta::ZetaData z;
};

// The two parity sentences (counting quantifier vs its sigma-elimination)
// agree with each other and with the residue of q mod 5, on every prime
// power q <= q_max.
SuiteResult parity_elimination(int64_t q_max = 200, int64_t bound = gf::kDefaultEnumBound);

// Point count of the projective Legendre family over every odd prime
// q <= q_max equals q^2 - q, minus 2 when -1 is a nonsquare.
SuiteResult legendre_counts(int64_t q_max = 100, int64_t bound = gf::kDefaultEnumBound);

// A fixed dozen nonsingular Weierstrass curves over fields of at most 49
// elements, counted by enumeration and fitted exactly.
std::vector<FittedCurve> curve_corpus(int64_t bound = gf::kDefaultEnumBound);

// Zeta data of the Legendre family refit from its closed count formula.
std::vector<zeta::ZetaData> legendre_zetas(const std::vector<int64_t>& qs = {13, 17, 29, 37});

// dual_chi equals |E(F_q)| / q on the curve corpus, and 1/q^2 - 1/q (less 2
// when -1 is a nonsquare) on the Legendre family, as exact rationals.
SuiteResult dual_chi_exactness(int64_t bound = gf::kDefaultEnumBound);

// Sweep of every nonsingular y^2 = x^3 + ax + b over the given prime fields
// against the torsion moduli 4, 9, 5 prime to q: the point count matches
// 1 - trace + q mod ell^k, and the matrix determinant matches q. Returns the
// fitted zeta data of every curve touched.
struct TraceSweepResult {
    SuiteResult congruence;
    SuiteResult determinant;
    std::vector<FittedCurve> fitted;
};
TraceSweepResult trace_congruences(const std::vector<int64_t>& qs = {5, 7, 11, 13});

// Newton polygons of the fitted characteristic polynomials are flat at zero
// for every prime ell <= 19 away from q.
SuiteResult unit_slopes(const std::vector<zeta::ZetaData>& corpus);

// Over F_{p^2} for p in {3, 5, 7}: ordinary curves match the unit root of
// frobenius mod p^2, supersingular ones have exactly one point mod p.
SuiteResult bad_characteristic();

// v_p(Q(p^i)) >= i(2 - r) for base-changed curves with q^k > p^{2i},
// i in {1, 2}, both ordinary (r = 1) and supersingular (r = 0).
SuiteResult loial_divisibility();

// Additivity, multiplicativity, constant-fiber projection, residue
// coherence, and Vandermonde fiber decomposition over a corpus of fifty-odd
// affine sets across F_3, F_5, F_7 at the moduli 2, 3, 4, 5, 6, 9.
SuiteResult euler_axioms(int64_t bound = gf::kDefaultEnumBound);

// Counts predicted by fitted zeta data match brute-force enumeration for
// every extension with q^{2n} within the cap.
SuiteResult zeta_roundtrip(const std::vector<FittedCurve>& corpus,
                           int64_t size_cap = 10'000'000);

// unit_part_residue agrees across its three internal stabilization exponents
// for each zeta datum and each small prime power modulus.
SuiteResult stabilization(const std::vector<zeta::ZetaData>& corpus);

// Dispatcher used by `pfchi verify --suite`. q_max = 0 picks each suite's
// default range. The seed is accepted for interface stability; the suites
// are deterministic.
SuiteResult run_suite(const std::string& name, int64_t q_max, int64_t bound, uint64_t seed);
std::vector<std::string> suite_names();

}  // namespace pfchi::suites
