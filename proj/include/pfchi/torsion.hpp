#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pfchi/euler.hpp"
#include "pfchi/gf.hpp"
#include "pfchi/numeric.hpp"
#include "pfchi/zeta.hpp"

namespace pfchi::torsion {

/// Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q.
/// Coefficients are integers, reduced into the prime field. Singular
/// equations are rejected by every entry point that touches the curve.
struct Curve {
    int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    int64_t q = 0;
};

/// |E(F_{q^n})| including the point at infinity. The base count is obtained
/// by enumeration, higher n through the trace recurrence, so large n is cheap.
BigInt curve_count(const Curve& c, int n = 1);

/// q + 1 - |E(F_q)|.
int64_t curve_trace(const Curve& c);

/// True exactly when the base characteristic divides the trace.
bool is_supersingular(const Curve& c);

/// Zeta data of the curve: A = (1-T)(1-qT), B = 1 - aT + qT^2.
zeta::ZetaData curve_zeta(const Curve& c);

/// Point with coordinates in the top field of some tower, or the point at
/// infinity. Ordering is lexicographic so points can live in sets.
struct Point {
    bool inf = true;
    gf::Element x, y;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

bool on_curve(const gf::Tower& F, const Curve& c, const Point& P);
Point point_neg(const gf::Tower& F, const Curve& c, const Point& P);
Point point_add(const gf::Tower& F, const Curve& c, const Point& A, const Point& B);
Point point_mul(const gf::Tower& F, const Curve& c, const BigInt& n, const Point& P);

/// Basis of the ell^k-torsion of E. Away from the characteristic the group
/// is (Z/ell^k)^2 and rank is 2; at ell = p it is cyclic of order p^k for
/// ordinary curves (rank 1) and trivial for supersingular ones (rank 0).
/// ext_degree is the least m with all generators, hence the whole group,
/// inside E(F_{q^m}); field points at a shared tower F_p ⊆ F_q ⊆ F_{q^m}
/// that stays alive for the duration of the process (null when rank is 0).
struct TorsionBasis {
    Curve curve;
    int64_t ell = 0;
    int k = 1;
    int rank = 0;
    int ext_degree = 1;
    const gf::Tower* field = nullptr;
    Point P, Q;
};

/// Finds a torsion basis by sampling random points in successively larger
/// extensions and projecting onto the ell-part. Candidate degrees run over
/// divisors of the certified bound lcm(ell^2-1, ell(ell-1)) * ell^(k-1), so
/// the search terminates with the minimal degree. Throws TooLarge when the
/// required extension exceeds the resource cap, NotPrime for composite ell.
TorsionBasis torsion_basis(const Curve& c, int64_t ell, int k);

/// Every point spanned by the basis: ell^(2k) points for rank 2, ell^k for
/// rank 1, just infinity for rank 0.
std::vector<Point> torsion_points(const TorsionBasis& b);

/// Matrix of the q-power Frobenius on the basis, entries in Z/ell^k with
/// column j holding the coordinates of the image of the j-th generator:
/// phi(P) = m[0][0] P + m[1][0] Q and phi(Q) = m[0][1] P + m[1][1] Q.
/// Rank 1 uses only m[0][0]; rank 0 is the empty matrix with trace 0.
struct FrobeniusMatrix {
    int64_t modulus = 1;
    int rank = 0;
    std::array<std::array<int64_t, 2>, 2> m{};

    int64_t trace() const;
    int64_t det() const;
};

/// Computes the matrix by locating Frobenius images in the span of the
/// basis. Throws NotRepresentable if an image falls outside the span.
FrobeniusMatrix frob_matrix(const TorsionBasis& b);

/// For ell prime to q: checks |E(F_q)| = 1 - tr(M) + q (mod ell^k) where M
/// is the Frobenius matrix on the ell^k-torsion, cross-checks tr(M) against
/// the trace of the curve and det(M) against q. One record per check; the
/// congruences are reported, not enforced. Throws PreconditionError when
/// ell divides q.
std::vector<euler::CheckRecord> verify_trace_count(const Curve& c, int64_t ell, int k);

/// Characteristic-ell analogue at ell = p, for q = p^kb with kb >= s.
/// Ordinary curves: |E(F_q)| = 1 - beta (mod p^s) with beta the unit root of
/// the trace polynomial, plus an independent check against the Frobenius
/// multiplier on an explicit p^s-torsion generator when one is affordable.
/// Supersingular curves carry no p-torsion points, the trace reads 0, and
/// the records compare |E(F_q)| with 1 modulo p^j for each j <= s;
/// counterexamples at small q show up as failing records rather than being
/// suppressed.
std::vector<euler::CheckRecord> verify_trace_count_p(const Curve& c, int64_t p, int s);

}  // namespace pfchi::torsion
