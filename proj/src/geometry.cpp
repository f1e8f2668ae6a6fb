#include "pfchi/geometry.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "pfchi/errors.hpp"

namespace pfchi::geometry {

namespace {

void mpoly_accumulate(std::map<std::vector<int>, BigInt>& acc, const logic::Term& t,
                      const std::vector<std::string>& vars, const BigInt& scale) {
    using K = logic::Term::Kind;
    switch (t.kind) {
        case K::Var: {
            auto it = std::find(vars.begin(), vars.end(), t.name);
            if (it == vars.end())
                throw ParseError("variable '" + t.name + "' is not an ambient coordinate");
            std::vector<int> e(vars.size(), 0);
            e[static_cast<size_t>(it - vars.begin())] = 1;
            acc[e] += scale;
            return;
        }
        case K::Int: {
            acc[std::vector<int>(vars.size(), 0)] += scale * t.value;
            return;
        }
        case K::Add:
            mpoly_accumulate(acc, t.args[0], vars, scale);
            mpoly_accumulate(acc, t.args[1], vars, scale);
            return;
        case K::Sub:
            mpoly_accumulate(acc, t.args[0], vars, scale);
            mpoly_accumulate(acc, t.args[1], vars, -scale);
            return;
        case K::Neg:
            mpoly_accumulate(acc, t.args[0], vars, -scale);
            return;
        case K::Mul:
        case K::Pow: {
            // multiply out both factors' expansions
            std::map<std::vector<int>, BigInt> a, b;
            if (t.kind == K::Mul) {
                mpoly_accumulate(a, t.args[0], vars, BigInt(1));
                mpoly_accumulate(b, t.args[1], vars, BigInt(1));
            } else {
                mpoly_accumulate(a, t.args[0], vars, BigInt(1));
                b[std::vector<int>(vars.size(), 0)] = 1;
                for (int i = 0; i < t.exponent; ++i) {
                    std::map<std::vector<int>, BigInt> next;
                    for (const auto& [ea, ca] : a)
                        for (const auto& [eb, cb] : b) {
                            std::vector<int> e(ea.size());
                            for (size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
                            next[e] += ca * cb;
                        }
                    b = std::move(next);
                }
                for (const auto& [e, c] : b) acc[e] += scale * c;
                return;
            }
            for (const auto& [ea, ca] : a)
                for (const auto& [eb, cb] : b) {
                    std::vector<int> e(ea.size());
                    for (size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
                    acc[e] += scale * ca * cb;
                }
            return;
        }
        case K::Frob:
        case K::FrobInv:
            throw ParseError("frobenius is not allowed in variety polynomials");
    }
}

MPoly reduce_mod(const std::map<std::vector<int>, BigInt>& acc, int64_t p) {
    MPoly out;
    for (const auto& [e, c] : acc) {
        int64_t r = static_cast<int64_t>(c % p);
        if (r < 0) r += p;
        if (r != 0) out.terms[e] = r;
    }
    return out;
}

bool is_homogeneous(const MPoly& f, int block) {
    int deg = -1;
    for (const auto& [e, c] : f.terms) {
        (void)c;
        int d = 0;
        for (int i = 0; i < block && i < static_cast<int>(e.size()); ++i) d += e[i];
        if (deg == -1)
            deg = d;
        else if (d != deg)
            return false;
    }
    return true;
}

gf::Element eval_mpoly(const gf::Tower& F, const MPoly& f, const std::vector<gf::Element>& at) {
    gf::Element acc = F.zero();
    for (const auto& [e, c] : f.terms) {
        gf::Element t = F.from_int(c);
        for (size_t i = 0; i < e.size(); ++i)
            for (int j = 0; j < e[i]; ++j) t = F.mul(t, at[i]);
        acc = F.add(acc, t);
    }
    return acc;
}

bool satisfies(const gf::Tower& F, const ConstructibleSpec& spec,
               const std::vector<gf::Element>& at) {
    for (const auto& f : spec.equations)
        if (!F.is_zero(eval_mpoly(F, f, at))) return false;
    for (const auto& f : spec.inequations)
        if (F.is_zero(eval_mpoly(F, f, at))) return false;
    return true;
}

// Walks tuples whose first `fixed.size()` coordinates are pinned; the
// remaining ones range over F_{q^n}.
BigInt count_with_prefix(const gf::Tower& F, const ConstructibleSpec& spec,
                         const std::vector<gf::Element>& fixed,
                         const std::vector<gf::Element>& field) {
    size_t m = spec.vars.size();
    std::vector<gf::Element> at = fixed;
    at.resize(m, F.zero());
    BigInt count = 0;
    std::function<void(size_t)> walk = [&](size_t idx) {
        if (idx == m) {
            if (satisfies(F, spec, at)) ++count;
            return;
        }
        for (const auto& a : field) {
            at[idx] = a;
            walk(idx + 1);
        }
    };
    walk(fixed.size());
    return count;
}

BigInt checked_tuple_space(const BigInt& field_size, int free_coords, int64_t enum_bound) {
    BigInt total = 1;
    for (int i = 0; i < free_coords; ++i) total *= field_size;
    if (total > enum_bound)
        throw TooLarge("point enumeration needs " + total.str() + " tuples, past the bound of " +
                       std::to_string(enum_bound));
    return total;
}

}  // namespace

int64_t ConstructibleSpec::q() const { return ipow_checked(p, k); }

MPoly poly_from_term(const logic::Term& t, const std::vector<std::string>& vars, int64_t p) {
    if (p < 2 || !is_prime(p)) throw NotPrime("coefficient modulus must be prime");
    std::map<std::vector<int>, BigInt> acc;
    mpoly_accumulate(acc, t, vars, BigInt(1));
    return reduce_mod(acc, p);
}

ConstructibleSpec make_spec(bool projective, std::vector<std::string> vars,
                            std::vector<MPoly> equations, std::vector<MPoly> inequations,
                            int64_t p, int k) {
    int block = projective ? static_cast<int>(vars.size()) : 0;
    return make_family_spec(block, std::move(vars), std::move(equations), std::move(inequations),
                            p, k);
}

ConstructibleSpec make_family_spec(int projective_block, std::vector<std::string> vars,
                                   std::vector<MPoly> equations, std::vector<MPoly> inequations,
                                   int64_t p, int k) {
    if (p < 2 || !is_prime(p)) throw NotPrime("base field characteristic must be prime");
    if (k < 1) throw PreconditionError("base field must be a positive power of p");
    if (vars.empty()) throw PreconditionError("ambient space needs at least one coordinate");
    if (projective_block < 0 || projective_block > static_cast<int>(vars.size()))
        throw PreconditionError("projective block exceeds the ambient dimension");
    std::vector<std::string> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("ambient coordinates must be distinct");
    ConstructibleSpec spec;
    spec.projective_block = projective_block;
    spec.vars = std::move(vars);
    spec.p = p;
    spec.k = k;
    auto load = [&](std::vector<MPoly>& dst, std::vector<MPoly>& src) {
        for (auto& f : src) {
            for (const auto& [e, c] : f.terms) {
                (void)c;
                if (e.size() != spec.vars.size())
                    throw PreconditionError("polynomial arity does not match the ambient space");
            }
            std::map<std::vector<int>, BigInt> acc;
            for (const auto& [e, c] : f.terms) acc[e] = c;
            MPoly reduced = reduce_mod(acc, p);
            if (projective_block > 0 && !is_homogeneous(reduced, projective_block))
                throw PreconditionError(
                    "constraints must be homogeneous in the projective coordinates");
            dst.push_back(std::move(reduced));
        }
    };
    load(spec.equations, equations);
    load(spec.inequations, inequations);
    return spec;
}

ConstructibleSpec parse_variety(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool projective = false;
    bool have_ambient = false, have_base = false;
    int ambient_dim = 0;
    int64_t p = 0;
    int k = 1;
    std::vector<std::string> vars;
    std::vector<std::pair<logic::Term, bool>> constraints;  // term, is_inequation
    auto strip = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        size_t b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.rfind("ambient", 0) == 0) {
            std::istringstream h(s);
            std::string kw, eq, kind;
            h >> kw >> eq >> kind >> ambient_dim;
            if (eq != "=" || (kind != "affine" && kind != "projective") || ambient_dim < 1)
                throw ParseError("malformed ambient line: " + s);
            projective = kind == "projective";
            have_ambient = true;
        } else if (s.rfind("vars", 0) == 0) {
            size_t eq = s.find('=');
            if (eq == std::string::npos) throw ParseError("malformed vars line: " + s);
            std::istringstream h(s.substr(eq + 1));
            std::string name;
            while (std::getline(h, name, ',')) {
                name = strip(name);
                if (name.empty()) throw ParseError("empty variable name in vars line");
                vars.push_back(name);
            }
        } else if (s.rfind("base", 0) == 0) {
            size_t eq = s.find('=');
            if (eq == std::string::npos) throw ParseError("malformed base line: " + s);
            std::string rhs = strip(s.substr(eq + 1));
            size_t caret = rhs.find('^');
            try {
                if (caret == std::string::npos) {
                    p = std::stoll(rhs);
                } else {
                    p = std::stoll(rhs.substr(0, caret));
                    k = std::stoi(rhs.substr(caret + 1));
                }
            } catch (const std::exception&) {
                throw ParseError("malformed base line: " + s);
            }
            have_base = true;
        } else {
            logic::Formula f = logic::parse(s);
            bool neq = false;
            if (f.kind == logic::Formula::Kind::Not) {
                neq = true;
                f = f.sub[0];
            }
            if (f.kind != logic::Formula::Kind::Eq)
                throw ParseError("constraint lines must be equations or inequations: " + s);
            logic::Term diff;
            diff.kind = logic::Term::Kind::Sub;
            diff.args = {f.terms[0], f.terms[1]};
            constraints.emplace_back(std::move(diff), neq);
        }
    }
    if (!have_ambient) throw ParseError("missing ambient line");
    if (!have_base) throw ParseError("missing base line");
    if (static_cast<int>(vars.size()) != ambient_dim)
        throw ParseError("vars line does not match the ambient dimension");
    std::vector<MPoly> eqs, neqs;
    for (const auto& [t, neq] : constraints)
        (neq ? neqs : eqs).push_back(poly_from_term(t, vars, p));
    return make_spec(projective, vars, eqs, neqs, p, k);
}

BigInt count_points(const ConstructibleSpec& spec, int n, int64_t enum_bound) {
    if (n < 1) throw PreconditionError("extension degree must be >= 1");
    gf::Tower F = gf::Tower::make_arithmetic(spec.p, spec.k, n);
    BigInt field_size = F.sort_size(n);
    int m = spec.dim();
    if (!spec.is_projective()) {
        checked_tuple_space(field_size, m, enum_bound);
        if (m == 1) {
            BigInt count = 0;
            std::vector<gf::Element> at(1, F.zero());
            F.for_each_in_sort(n, enum_bound, [&](const gf::Element& a) {
                at[0] = a;
                if (satisfies(F, spec, at)) ++count;
            });
            return count;
        }
        std::vector<gf::Element> field = F.sort_elements(n, enum_bound);
        return count_with_prefix(F, spec, {}, field);
    }
    // each projective patch pins coordinates 0..i-1 at zero and coordinate i
    // at one; the rest of the block and the affine tail stay free
    int block = spec.projective_block;
    BigInt patch_total = 0;
    for (int i = 0; i < block; ++i) {
        BigInt sz = 1;
        for (int j = i + 1; j < m; ++j) sz *= field_size;
        patch_total += sz;
    }
    if (patch_total > enum_bound)
        throw TooLarge("projective enumeration needs " + patch_total.str() +
                       " tuples, past the bound of " + std::to_string(enum_bound));
    std::vector<gf::Element> field = F.sort_elements(n, enum_bound);
    BigInt count = 0;
    for (int i = 0; i < block; ++i) {
        std::vector<gf::Element> fixed(i, F.zero());
        fixed.push_back(F.one());
        count += count_with_prefix(F, spec, fixed, field);
    }
    return count;
}

BigInt count_elliptic(int64_t a1, int64_t a2, int64_t a3, int64_t a4, int64_t a6, int64_t q, int n,
                      int64_t enum_bound) {
    auto [p, k] = prime_power_split(q);
    BigInt A1 = a1, A2 = a2, A3 = a3, A4 = a4, A6 = a6;
    BigInt b2 = A1 * A1 + 4 * A2;
    BigInt b4 = 2 * A4 + A1 * A3;
    BigInt b6 = A3 * A3 + 4 * A6;
    BigInt b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    BigInt disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc % p == 0) throw SingularCurve("weierstrass discriminant vanishes mod " +
                                           std::to_string(p));
    if (n < 1) throw PreconditionError("extension degree must be >= 1");
    gf::Tower F = gf::Tower::make_arithmetic(p, k, n);
    BigInt field_size = F.sort_size(n);
    BigInt pair_space = field_size * field_size;
    if (pair_space > enum_bound)
        throw TooLarge("affine curve enumeration needs " + pair_space.str() +
                       " pairs, past the bound of " + std::to_string(enum_bound));
    gf::Element c1 = F.from_int(a1), c2 = F.from_int(a2), c3 = F.from_int(a3),
                c4 = F.from_int(a4), c6 = F.from_int(a6);
    std::vector<gf::Element> field = F.sort_elements(n, enum_bound);
    std::vector<gf::Element> rhs(field.size());
    for (size_t i = 0; i < field.size(); ++i) {
        const gf::Element& x = field[i];
        gf::Element x2 = F.mul(x, x);
        rhs[i] = F.add(F.add(F.mul(x2, x), F.mul(c2, x2)), F.add(F.mul(c4, x), c6));
    }
    BigInt count = 1;  // the point at infinity
    if (a1 % p == 0) {
        // no xy cross term, so both sides separate: enumerate each side once
        // and count coincidences through a sorted multiset join
        std::map<gf::Element, int64_t> left;
        for (const auto& y : field) ++left[F.add(F.mul(y, y), F.mul(c3, y))];
        for (const auto& r : rhs) {
            auto it = left.find(r);
            if (it != left.end()) count += it->second;
        }
        return count;
    }
    for (const auto& y : field) {
        gf::Element ty = F.add(F.mul(y, y), F.mul(c3, y));
        gf::Element uy = F.mul(c1, y);
        for (size_t i = 0; i < field.size(); ++i)
            if (F.add(ty, F.mul(uy, field[i])) == rhs[i]) ++count;
    }
    return count;
}

std::map<int64_t, BigInt> fiber_histogram(const ConstructibleSpec& spec,
                                          const std::vector<std::string>& base_vars, int n,
                                          int64_t enum_bound) {
    if (spec.is_projective())
        throw PreconditionError("fiber histograms are defined for affine specs only");
    if (n < 1) throw PreconditionError("extension degree must be >= 1");
    // the projection must reorder the coordinates so the base comes first
    std::vector<size_t> base_idx;
    for (const auto& name : base_vars) {
        auto it = std::find(spec.vars.begin(), spec.vars.end(), name);
        if (it == spec.vars.end())
            throw PreconditionError("projection variable '" + name + "' is not a coordinate");
        base_idx.push_back(static_cast<size_t>(it - spec.vars.begin()));
    }
    std::vector<size_t> dedup = base_idx;
    std::sort(dedup.begin(), dedup.end());
    if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end())
        throw PreconditionError("projection variables must be distinct");

    gf::Tower F = gf::Tower::make_arithmetic(spec.p, spec.k, n);
    BigInt field_size = F.sort_size(n);
    size_t m = spec.vars.size();
    checked_tuple_space(field_size, static_cast<int>(m), enum_bound);
    std::vector<gf::Element> field = F.sort_elements(n, enum_bound);

    std::vector<size_t> fiber_idx;
    for (size_t i = 0; i < m; ++i)
        if (std::find(base_idx.begin(), base_idx.end(), i) == base_idx.end())
            fiber_idx.push_back(i);

    std::map<int64_t, BigInt> hist;
    std::vector<gf::Element> at(m, F.zero());
    std::function<void(size_t)> walk_fiber;
    int64_t fiber_count = 0;
    walk_fiber = [&](size_t idx) {
        if (idx == fiber_idx.size()) {
            if (satisfies(F, spec, at)) ++fiber_count;
            return;
        }
        for (const auto& a : field) {
            at[fiber_idx[idx]] = a;
            walk_fiber(idx + 1);
        }
    };
    std::function<void(size_t)> walk_base = [&](size_t idx) {
        if (idx == base_idx.size()) {
            fiber_count = 0;
            walk_fiber(0);
            ++hist[fiber_count];
            return;
        }
        for (const auto& a : field) {
            at[base_idx[idx]] = a;
            walk_base(idx + 1);
        }
    };
    walk_base(0);
    return hist;
}

}  // namespace pfchi::geometry
