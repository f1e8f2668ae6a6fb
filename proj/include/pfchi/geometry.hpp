#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pfchi/gf.hpp"
#include "pfchi/logic.hpp"
#include "pfchi/numeric.hpp"

namespace pfchi::geometry {

// Sparse multivariate polynomial over F_p: exponent vector (one entry per
// ambient variable) mapped to a coefficient already reduced into [0, p).
struct MPoly {
    std::map<std::vector<int>, int64_t> terms;

    friend bool operator==(const MPoly&, const MPoly&) = default;
};

// A constructible subset over F_q, cut out by equations and inequations with
// coefficients in the prime field. The first projective_block coordinates
// form a projective block (scalar-equivalent, not all zero); the remaining
// ones are affine. projective_block == 0 is plain affine space and
// projective_block == vars.size() is plain projective space; anything in
// between describes a family of projective sets over an affine base, like an
// elliptic surface fibered over a parameter line.
struct ConstructibleSpec {
    int projective_block = 0;
    std::vector<std::string> vars;
    std::vector<MPoly> equations;
    std::vector<MPoly> inequations;
    int64_t p = 0;
    int k = 1;

    bool is_projective() const { return projective_block > 0; }
    int dim() const { return static_cast<int>(vars.size()); }
    int64_t q() const;
};

// Converts a sigma-free term into a polynomial in the given variables,
// reducing coefficients mod p. Unknown variables or frobenius applications
// raise ParseError.
MPoly poly_from_term(const logic::Term& t, const std::vector<std::string>& vars, int64_t p);

// Validates and normalizes: p prime, variable names distinct, projective
// polynomials homogeneous, coefficients reduced mod p.
ConstructibleSpec make_spec(bool projective, std::vector<std::string> vars,
                            std::vector<MPoly> equations, std::vector<MPoly> inequations,
                            int64_t p, int k);

// Same validation for a projective block of the given width followed by
// affine coordinates; constraints must be homogeneous in the block variables.
ConstructibleSpec make_family_spec(int projective_block, std::vector<std::string> vars,
                                   std::vector<MPoly> equations, std::vector<MPoly> inequations,
                                   int64_t p, int k);

// Plain-text variety description: `ambient = affine M` or `ambient =
// projective M`, `vars = x, y, ...`, `base = p` or `base = p^k`, then one
// `<poly> = 0` or `<poly> != 0` line per constraint (term syntax, no sigma).
ConstructibleSpec parse_variety(const std::string& text);

// Exact number of F_{q^n}-points. Projective tuples are counted through the
// standard affine patches, so scalar orbits are never enumerated twice.
BigInt count_points(const ConstructibleSpec& spec, int n,
                    int64_t enum_bound = gf::kDefaultEnumBound);

// Points of the projective Weierstrass curve y^2 + a1 xy + a3 y = x^3 +
// a2 x^2 + a4 x + a6 over F_{q^n}, including the point at infinity.
// Rejects singular equations.
BigInt count_elliptic(int64_t a1, int64_t a2, int64_t a3, int64_t a4, int64_t a6, int64_t q,
                      int n = 1, int64_t enum_bound = gf::kDefaultEnumBound);

// For the coordinate projection onto base_vars (affine specs only): how many
// base tuples in the ambient base space have exactly k preimages, for each k
// that occurs.
std::map<int64_t, BigInt> fiber_histogram(const ConstructibleSpec& spec,
                                          const std::vector<std::string>& base_vars, int n,
                                          int64_t enum_bound = gf::kDefaultEnumBound);

}  // namespace pfchi::geometry
