#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfchi/geometry.hpp"
#include "pfchi/numeric.hpp"
#include "pfchi/torsion.hpp"
#include "pfchi/zeta.hpp"

namespace pfchi::builtins {

// Named sets available without writing a variety file:
//   affine-line       A^1                          N_n = q^n
//   gm                A^1 minus the origin         N_n = q^n - 1
//   projective-line   P^1                          N_n = q^n + 1
//   legendre-surface  the projective family y^2 z = x(x - z)(x - lz)
//                     over l in A^1 - {0, 1}, odd characteristic only;
//                     N_n = Q^2 - Q - 2 when Q = q^n = 3 (mod 4), else
//                     Q^2 - Q (minus one curve point per fiber twist pair)
std::vector<std::string> names();

geometry::ConstructibleSpec make(const std::string& name, int64_t q);

// Exact number of F_{q^n}-points of the named set, by closed formula.
BigInt closed_count(const std::string& name, int64_t q, int n);

// Degree bound of the rational zeta data of the named set, and a count
// series long enough to refit it with fit_rational_zeta.
int degree_bound(const std::string& name);
zeta::CountSeries closed_series(const std::string& name, int64_t q);

// Reads a Weierstrass equation such as
//   y^2 + x*y = x^3 + 2*x + 1
// into coefficients over F_q. One side must be y^2 + a1 x y + a3 y and the
// other x^3 + a2 x^2 + a4 x + a6, up to reordering and signs; anything else
// is rejected. Singularity is not checked here.
torsion::Curve parse_curve(const std::string& text, int64_t q);

}  // namespace pfchi::builtins
