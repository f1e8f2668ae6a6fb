#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pfchi/geometry.hpp"
#include "pfchi/logic.hpp"
#include "pfchi/numeric.hpp"

namespace pfchi::euler {

// A mod-n Euler characteristic known at finitely many moduli. Whenever both
// m and n are present with m | n, entry(n) mod m = entry(m).
struct EulerValue {
    std::map<int64_t, int64_t> entries;  // modulus -> residue in [0, modulus)

    friend bool operator==(const EulerValue&, const EulerValue&) = default;
};

// One line of a verification report.
struct CheckRecord {
    int64_t modulus = 0;
    std::string check;
    BigInt lhs = 0;
    BigInt rhs = 0;
    bool pass = false;
};

// Serialized JSON array of {"modulus", "check", "lhs", "rhs", "pass"} objects.
std::string report_json(const std::vector<CheckRecord>& records);

// Builds the value at the requested moduli from residues given at prime
// powers; composite entries are Chinese-remaindered from their prime-power
// parts. Throws PreconditionError when a needed part is missing.
EulerValue make_euler_value(const std::map<int64_t, int64_t>& prime_power_residues,
                            const std::vector<int64_t>& moduli);

// Exact point count of the set reduced at each modulus. Composite entries
// are recombined from their prime-power parts as a consistency check.
EulerValue chi_hat(const geometry::ConstructibleSpec& spec, const std::vector<int64_t>& moduli,
                   int64_t bound = gf::kDefaultEnumBound);
EulerValue chi_hat(const logic::Formula& f, const std::vector<logic::TypedVar>& free_vars,
                   const logic::Model& M, const std::vector<int64_t>& moduli);

// Checks additivity on the splitting of each set by vanishing of its first
// coordinate, multiplicativity on pairwise products, and the constant-fiber
// identity chi(total) = r * chi(image) under projection to the first
// coordinate wherever all nonempty fibers share one size r. Violations are
// reported with pass = false, never thrown.
std::vector<CheckRecord> verify_axioms(const std::vector<geometry::ConstructibleSpec>& sets,
                                       const std::vector<int64_t>& moduli,
                                       int64_t bound = gf::kDefaultEnumBound);

// Fiber-size class counts x_k recovered from the power counts
// chi(Y_n) = sum_k x_k k^n by solving the Vandermonde system exactly.
struct Decomposition {
    std::map<int64_t, BigInt> classes;  // fiber size k >= 1 -> base points with that fiber
    BigInt total = 0;                   // sum of the class counts (size of the image)
};

// chi_powers[j] is the count of the (n_powers[j])-th fiber power; unknowns
// run over k = 1..max_fiber. A solution with a negative or fractional class
// is rejected as SingularSystem.
Decomposition vandermonde_decompose(const std::vector<BigInt>& chi_powers,
                                    const std::vector<int64_t>& n_powers, int64_t max_fiber);

// Convenience form: power counts are derived from the histogram itself and
// the recovered classes are confirmed against it.
Decomposition vandermonde_decompose(const std::map<int64_t, BigInt>& hist,
                                    const std::vector<int64_t>& n_powers);

}  // namespace pfchi::euler
