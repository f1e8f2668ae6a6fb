#include "pfchi/builtins.hpp"

#include <algorithm>

#include "pfchi/errors.hpp"
#include "pfchi/logic.hpp"

namespace pfchi::builtins {

namespace {

geometry::MPoly poly(const std::string& text, const std::vector<std::string>& vars, int64_t p) {
    return geometry::poly_from_term(logic::parse_term(text), vars, p);
}

[[noreturn]] void unknown(const std::string& name) {
    std::string msg = "unknown builtin '" + name + "'; available:";
    for (const auto& n : names()) msg += " " + n;
    throw ParseError(msg);
}

}  // namespace

std::vector<std::string> names() {
    return {"affine-line", "gm", "projective-line", "legendre-surface"};
}

geometry::ConstructibleSpec make(const std::string& name, int64_t q) {
    auto [p, k] = prime_power_split(q);
    if (name == "affine-line") return geometry::make_spec(false, {"x"}, {}, {}, p, k);
    if (name == "gm") return geometry::make_spec(false, {"x"}, {}, {poly("x", {"x"}, p)}, p, k);
    if (name == "projective-line") return geometry::make_spec(true, {"x", "y"}, {}, {}, p, k);
    if (name == "legendre-surface") {
        if (p == 2) throw PreconditionError("the legendre surface needs odd characteristic");
        std::vector<std::string> v{"x", "y", "z", "l"};
        return geometry::make_family_spec(3, v,
                                          {poly("y^2*z - x*(x - z)*(x - l*z)", v, p)},
                                          {poly("l", v, p), poly("l - 1", v, p)}, p, k);
    }
    unknown(name);
}

BigInt closed_count(const std::string& name, int64_t q, int n) {
    if (n < 1) throw PreconditionError("extension degree must be at least 1");
    auto [p, k] = prime_power_split(q);
    (void)k;
    BigInt Q = bpow(BigInt(q), n);
    if (name == "affine-line") return Q;
    if (name == "gm") return Q - 1;
    if (name == "projective-line") return Q + 1;
    if (name == "legendre-surface") {
        if (p == 2) throw PreconditionError("the legendre surface needs odd characteristic");
        BigInt c = Q * Q - Q;
        if (Q % 4 == 3) c -= 2;
        return c;
    }
    unknown(name);
}

int degree_bound(const std::string& name) {
    if (name == "affine-line") return 1;
    if (name == "gm" || name == "projective-line") return 2;
    // four growth rates show up when q = 3 mod 4: Q^2, Q, 1, and (-1)^n
    if (name == "legendre-surface") return 4;
    unknown(name);
}

zeta::CountSeries closed_series(const std::string& name, int64_t q) {
    int len = 2 * degree_bound(name) + 4;
    zeta::CountSeries s{q, {}};
    for (int n = 1; n <= len; ++n) s.counts.push_back(closed_count(name, q, n));
    return s;
}

torsion::Curve parse_curve(const std::string& text, int64_t q) {
    auto [p, kk] = prime_power_split(q);
    (void)kk;
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || text.find('=', eq + 1) != std::string::npos ||
        text[eq - 1] == '!')
        throw ParseError("a curve description needs exactly one '='");
    geometry::MPoly d =
        poly(text.substr(0, eq) + " - (" + text.substr(eq + 1) + ")", {"x", "y"}, p);

    auto coeff = [&](int ex, int ey) {
        auto it = d.terms.find(std::vector<int>{ex, ey});
        return it == d.terms.end() ? int64_t{0} : it->second;
    };
    // Everything on one side; orient so the y^2 term has coefficient +1.
    int64_t sign;
    if (coeff(0, 2) == 1)
        sign = 1;
    else if (coeff(0, 2) == p - 1)
        sign = -1;
    else
        throw ParseError("curve equation must contain y^2 with unit coefficient");
    auto c = [&](int ex, int ey) { return mod_norm(sign * coeff(ex, ey), p); };
    if (c(3, 0) != mod_norm(int64_t{-1}, p))
        throw ParseError("curve equation must contain x^3 opposite the y^2 term");
    static const std::vector<std::vector<int>> allowed = {{0, 2}, {1, 1}, {0, 1}, {3, 0},
                                                          {2, 0}, {1, 0}, {0, 0}};
    for (const auto& [e, v] : d.terms)
        if (v != 0 && std::find(allowed.begin(), allowed.end(), e) == allowed.end())
            throw ParseError("not a Weierstrass equation: stray monomial x^" +
                             std::to_string(e[0]) + " y^" + std::to_string(e[1]));
    return torsion::Curve{c(1, 1), mod_norm(-c(2, 0), p), c(0, 1), mod_norm(-c(1, 0), p),
                          mod_norm(-c(0, 0), p), q};
}

}  // namespace pfchi::builtins
