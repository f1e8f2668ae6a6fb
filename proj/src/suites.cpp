#include "pfchi/suites.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "pfchi/builtins.hpp"
#include "pfchi/errors.hpp"
#include "pfchi/euler.hpp"
#include "pfchi/geometry.hpp"
#include "pfchi/logic.hpp"
#include "pfchi/numeric.hpp"
#include "pfchi/padic.hpp"

namespace pfchi::suites {

namespace {

std::vector<int64_t> primes_upto(int64_t n) {
    std::vector<int64_t> out;
    for (int64_t v = 2; v <= n; ++v)
        if (is_prime(v)) out.push_back(v);
    return out;
}

std::string curve_str(const torsion::Curve& c) {
    std::ostringstream os;
    os << "[" << c.a1 << "," << c.a2 << "," << c.a3 << "," << c.a4 << "," << c.a6 << "]/F"
       << c.q;
    return os.str();
}

void fail(SuiteResult& r, const std::string& note) {
    ++r.failures;
    r.notes.push_back(note);
}

// L-data of the same curve regarded over F_{q^k}, from the trace recurrence.
zeta::ZetaData base_change(const torsion::Curve& c, int k) {
    int64_t t = torsion::curve_trace(c);
    BigInt prev = 2, cur = t;
    for (int j = 1; j < k; ++j) prev = std::exchange(cur, t * cur - c.q * prev);
    int64_t qk = ipow_checked(c.q, k);
    return {qk, {BigInt(1), BigInt(-1) - qk, BigInt(qk)}, {BigInt(1), -cur, BigInt(qk)}};
}

geometry::MPoly poly(const std::string& text, const std::vector<std::string>& vars, int64_t p) {
    return geometry::poly_from_term(logic::parse_term(text), vars, p);
}

// Affine test sets with a spread of dimensions, singularities, fiber
// shapes, and inequations.
std::vector<geometry::ConstructibleSpec> axiom_sets(int64_t q) {
    auto [p, k] = prime_power_split(q);
    std::vector<geometry::ConstructibleSpec> out;
    auto add = [&](std::vector<std::string> vars, std::vector<std::string> eqs,
                   std::vector<std::string> neqs) {
        std::vector<geometry::MPoly> E, N;
        for (const auto& e : eqs) E.push_back(poly(e, vars, p));
        for (const auto& e : neqs) N.push_back(poly(e, vars, p));
        out.push_back(geometry::make_spec(false, std::move(vars), std::move(E), std::move(N),
                                          p, k));
    };
    add({"x"}, {}, {});
    add({"x"}, {}, {"x"});
    add({"x"}, {"x"}, {});
    add({"x"}, {"x^2 - x"}, {});
    add({"x"}, {"x^2 + 1"}, {});
    add({"x", "y"}, {"y - x^2"}, {});
    add({"x", "y"}, {"x^2 + y^2 - 1"}, {});
    add({"x", "y"}, {"x*y - 1"}, {});
    add({"x", "y"}, {"y^2 - x^3"}, {});
    add({"x", "y"}, {"y^2 - x^3 - x^2"}, {});
    add({"x", "y"}, {"x*y"}, {});
    add({"x", "y"}, {"y^2 - x^3 - x"}, {});
    add({"x", "y"}, {"y^2 - x"}, {});
    add({"x", "y"}, {"y - x^2"}, {"x"});
    add({"x", "y"}, {}, {"x*y - 1"});
    add({"x", "y", "z"}, {"z - x*y"}, {});
    add({"x", "y", "z"}, {"z - x"}, {});
    return out;
}

}  // namespace

SuiteResult parity_elimination(int64_t q_max, int64_t bound) {
    SuiteResult r{"parity-elimination"};
    const logic::Formula mu = logic::parse("mu[5,2] x:K1. x = x");
    const logic::Formula elim = logic::parse("5 != 0 & forall x:K4. (x^5 = 1 -> s(x) = x^2)");
    // keep the base sorts enumerable but steer the guarded K4 quantifier onto
    // the root-finding path, which beats enumerating millions of elements
    int64_t eval_bound = std::min(bound, std::max(q_max, int64_t{10'000}));
    for (int64_t p : primes_upto(q_max)) {
        int k = 1;
        for (int64_t q = p; q <= q_max; q *= p, ++k) {
            gf::Tower tower = gf::Tower::make_arithmetic(p, k, 4);
            logic::Model M{&tower, eval_bound};
            bool expect = q % 5 == 2;
            r.checks += 2;
            if (logic::evaluate(mu, M) != expect)
                fail(r, "q=" + std::to_string(q) + ": counting sentence disagrees with q mod 5");
            if (logic::evaluate(elim, M) != expect)
                fail(r, "q=" + std::to_string(q) + ": eliminated sentence disagrees with q mod 5");
        }
    }
    return r;
}

SuiteResult legendre_counts(int64_t q_max, int64_t bound) {
    SuiteResult r{"legendre-count"};
    for (int64_t q : primes_upto(q_max)) {
        if (q == 2) continue;
        BigInt got = geometry::count_points(builtins::make("legendre-surface", q), 1, bound);
        BigInt want = BigInt(q) * q - q - (q % 4 == 3 ? 2 : 0);
        ++r.checks;
        if (got != want)
            fail(r, "q=" + std::to_string(q) + ": counted " + got.str() + ", expected " +
                        want.str());
    }
    return r;
}

std::vector<FittedCurve> curve_corpus(int64_t bound) {
    static const torsion::Curve kList[] = {
        {0, 0, 0, 1, 0, 5},  {0, 0, 0, 0, 1, 5},  {0, 0, 0, 1, 1, 7},  {0, 0, 0, 2, 1, 7},
        {1, 1, 0, 0, 1, 2},  {0, 0, 1, 0, 0, 2},  {0, 0, 0, 1, 1, 9},  {0, 0, 0, 1, 1, 11},
        {0, 0, 0, 2, 1, 11}, {0, 0, 0, 1, 1, 13}, {0, 0, 0, 1, 1, 25}, {0, 0, 0, 1, 1, 49},
    };
    std::vector<FittedCurve> out;
    for (const auto& c : kList) {
        BigInt n1 = geometry::count_elliptic(c.a1, c.a2, c.a3, c.a4, c.a6, c.q, 1, bound);
        out.push_back({c, zeta::fit_curve_lpoly({c.q, {n1}}, 1)});
    }
    return out;
}

std::vector<zeta::ZetaData> legendre_zetas(const std::vector<int64_t>& qs) {
    std::vector<zeta::ZetaData> out;
    for (int64_t q : qs)
        out.push_back(zeta::fit_rational_zeta(builtins::closed_series("legendre-surface", q),
                                              builtins::degree_bound("legendre-surface")));
    return out;
}

SuiteResult dual_chi_exactness(int64_t bound) {
    SuiteResult r{"dual-chi"};
    for (const auto& fc : curve_corpus(bound)) {
        BigRat got = padic::dual_chi(fc.z);
        BigRat want = BigRat(zeta::power_sum(fc.z, 1)) / BigRat(fc.curve.q);
        ++r.checks;
        if (got != want)
            fail(r, curve_str(fc.curve) + ": dual value " + got.str() + " is not count/q");
    }
    for (int64_t q : {13, 17, 29, 37}) {
        // the closed count series feeding the fit is itself enumeration-checked
        BigInt direct = geometry::count_points(builtins::make("legendre-surface", q), 1, bound);
        ++r.checks;
        if (direct != builtins::closed_count("legendre-surface", q, 1)) {
            fail(r, "legendre q=" + std::to_string(q) + ": closed count formula is off");
            continue;
        }
        BigRat got = padic::dual_chi(legendre_zetas({q})[0]);
        BigRat want = BigRat(1) / BigRat(BigInt(q) * q) - BigRat(1) / BigRat(q);
        if (q % 4 == 3) want -= 2;
        ++r.checks;
        if (got != want)
            fail(r, "legendre q=" + std::to_string(q) + ": dual value " + got.str() +
                        ", expected " + want.str());
    }
    return r;
}

TraceSweepResult trace_congruences(const std::vector<int64_t>& qs) {
    TraceSweepResult out;
    out.congruence.name = "trace-count";
    out.determinant.name = "determinant";
    struct Mod {
        int64_t ell;
        int k;
        int64_t m;
    };
    static const Mod kMods[] = {{2, 2, 4}, {3, 2, 9}, {5, 1, 5}};
    for (int64_t q : qs) {
        if (!is_prime(q) || q == 2) continue;
        for (int64_t a = 0; a < q; ++a)
            for (int64_t b = 0; b < q; ++b) {
                if (mod_norm(-16 * (4 * a * a * a + 27 * b * b), q) == 0) continue;
                torsion::Curve c{0, 0, 0, a, b, q};
                BigInt n1 = torsion::curve_count(c);
                out.fitted.push_back({c, zeta::fit_curve_lpoly({q, {n1}}, 1)});
                for (const Mod& mod : kMods) {
                    if (q % mod.ell == 0) continue;
                    try {
                        auto M = torsion::frob_matrix(torsion::torsion_basis(c, mod.ell, mod.k));
                        ++out.congruence.checks;
                        if (mod_norm(n1, mod.m) != mod_norm(1 - M.trace() + q, mod.m))
                            fail(out.congruence, curve_str(c) + " mod " + std::to_string(mod.m) +
                                                     ": count differs from 1 - trace + q");
                        ++out.determinant.checks;
                        if (M.det() != mod_norm(q, mod.m))
                            fail(out.determinant, curve_str(c) + " mod " + std::to_string(mod.m) +
                                                      ": determinant is not q");
                    } catch (const Error& e) {
                        ++out.congruence.checks;
                        fail(out.congruence, curve_str(c) + " mod " + std::to_string(mod.m) +
                                                 ": " + e.what());
                    }
                }
            }
    }
    return out;
}

SuiteResult unit_slopes(const std::vector<zeta::ZetaData>& corpus) {
    SuiteResult r{"unit-slopes"};
    static const int64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    for (const auto& z : corpus)
        for (int64_t ell : kPrimes) {
            if (z.q % ell == 0) continue;
            for (const auto* side : {&z.A, &z.B}) {
                if (side->size() < 2) continue;
                std::vector<BigInt> rev(side->rbegin(), side->rend());
                auto np = padic::newton_polygon(rev, ell);
                ++r.checks;
                bool flat = np.zero_roots == 0 &&
                            std::all_of(np.slopes.begin(), np.slopes.end(),
                                        [](const BigRat& s) { return s == 0; });
                if (!flat)
                    fail(r, "q=" + std::to_string(z.q) + " ell=" + std::to_string(ell) +
                                ": nonzero slope on fitted data");
            }
        }
    return r;
}

SuiteResult bad_characteristic() {
    SuiteResult r{"bad-characteristic"};
    for (int64_t p : {3, 5, 7}) {
        int64_t q = p * p;
        for (int64_t a = 0; a < p; ++a)
            for (int64_t b = 0; b < p; ++b) {
                torsion::Curve c{0, 0, 0, a, b, q};
                try {
                    torsion::curve_count(c);
                } catch (const SingularCurve&) {
                    continue;
                }
                int s = torsion::is_supersingular(c) ? 1 : 2;
                for (const auto& rec : torsion::verify_trace_count_p(c, p, s)) {
                    ++r.checks;
                    if (!rec.pass)
                        fail(r, curve_str(c) + " " + rec.check + " mod " +
                                    std::to_string(rec.modulus) + ": " + rec.lhs.str() +
                                    " != " + rec.rhs.str());
                }
            }
    }
    return r;
}

SuiteResult loial_divisibility() {
    SuiteResult r{"loial"};
    static const torsion::Curve kOrdinary[] = {
        {0, 0, 0, 1, 0, 5}, {0, 0, 0, 1, 1, 5}, {0, 0, 0, 2, 1, 5},
        {0, 0, 0, 1, 1, 7}, {0, 1, 0, 0, 1, 3},
    };
    static const torsion::Curve kSupersingular[] = {
        {0, 0, 0, 0, 1, 5}, {0, 0, 0, 1, 0, 3}, {0, 0, 0, 3, 0, 7}, {0, 0, 1, 0, 0, 2},
    };
    // the k = 5 cross-checks enumerate fields of up to 7^5 elements, whose
    // pair space runs past the default budget
    constexpr int64_t kEnumBound = 1'000'000'000;
    auto drive = [&](const torsion::Curve& c, bool ss) {
        ++r.checks;
        if (torsion::is_supersingular(c) != ss) {
            fail(r, curve_str(c) + ": unexpected supersingularity class");
            return;
        }
        for (int i : {1, 2}) {
            int k = i == 1 ? 3 : 5;  // guarantees q^k > q^{2i} for the prime base
            zeta::ZetaData z = base_change(c, k);
            ++r.checks;
            if (zeta::power_sum(z, 1) !=
                geometry::count_elliptic(c.a1, c.a2, c.a3, c.a4, c.a6, c.q, k, kEnumBound)) {
                fail(r, curve_str(c) + " k=" + std::to_string(k) +
                            ": base change disagrees with enumeration");
                continue;
            }
            ++r.checks;
            if (!padic::loial_check(z, c.q, i))
                fail(r, curve_str(c) + " i=" + std::to_string(i) + ": divisibility fails");
        }
    };
    for (const auto& c : kOrdinary) drive(c, false);
    for (const auto& c : kSupersingular) drive(c, true);
    return r;
}

SuiteResult euler_axioms(int64_t bound) {
    SuiteResult r{"euler-axioms"};
    const std::vector<int64_t> moduli{2, 3, 4, 5, 6, 9};
    int total_sets = 0;
    for (int64_t q : {3, 5, 7}) {
        auto sets = axiom_sets(q);
        total_sets += static_cast<int>(sets.size());
        for (const auto& rec : euler::verify_axioms(sets, moduli, bound)) {
            ++r.checks;
            if (!rec.pass)
                fail(r, "q=" + std::to_string(q) + " " + rec.check + " mod " +
                            std::to_string(rec.modulus) + ": " + rec.lhs.str() + " != " +
                            rec.rhs.str());
        }
        for (std::size_t i = 0; i < sets.size(); ++i) {
            std::string tag = "q=" + std::to_string(q) + " set" + std::to_string(i);
            try {
                auto chi = euler::chi_hat(sets[i], moduli, bound);
                BigInt n1 = geometry::count_points(sets[i], 1, bound);
                for (const auto& [m, v] : chi.entries) {
                    ++r.checks;
                    if (mod_norm(n1, m) != v)
                        fail(r, tag + ": class mod " + std::to_string(m) +
                                    " differs from the count");
                }
                for (const auto& [m, v] : chi.entries)
                    for (const auto& [m2, v2] : chi.entries) {
                        if (m >= m2 || m2 % m != 0) continue;
                        ++r.checks;
                        if (v2 % m != v)
                            fail(r, tag + ": entries at " + std::to_string(m) + " and " +
                                        std::to_string(m2) + " are incoherent");
                    }
            } catch (const Error& e) {
                ++r.checks;
                fail(r, tag + ": " + e.what());
            }
            if (sets[i].dim() < 2) continue;
            try {
                auto hist = geometry::fiber_histogram(sets[i], {sets[i].vars[0]}, 1, bound);
                int64_t max_fiber = 0;
                BigInt direct = 0, image = 0;
                for (const auto& [size, cnt] : hist) {
                    max_fiber = std::max(max_fiber, size);
                    direct += size * cnt;
                    if (size > 0) image += cnt;
                }
                if (max_fiber == 0) continue;
                std::vector<int64_t> powers;
                for (int64_t j = 1; j <= max_fiber; ++j) powers.push_back(j);
                auto dec = euler::vandermonde_decompose(hist, powers);
                BigInt recovered = 0;
                for (const auto& [size, cnt] : dec.classes) recovered += size * cnt;
                ++r.checks;
                if (dec.total != image || recovered != direct ||
                    direct != geometry::count_points(sets[i], 1, bound))
                    fail(r, tag + ": fiber decomposition does not match direct counts");
            } catch (const Error& e) {
                ++r.checks;
                fail(r, tag + ": " + e.what());
            }
        }
    }
    ++r.checks;
    if (total_sets < 50)
        fail(r, "corpus holds only " + std::to_string(total_sets) + " sets");
    r.notes.push_back("examined " + std::to_string(total_sets) + " definable sets");
    return r;
}

SuiteResult zeta_roundtrip(const std::vector<FittedCurve>& corpus, int64_t size_cap) {
    SuiteResult r{"zeta-roundtrip"};
    for (const auto& fc : corpus) {
        const auto& c = fc.curve;
        for (int n = 1; bpow(BigInt(c.q), 2 * n) <= size_cap; ++n) {
            ++r.checks;
            if (zeta::power_sum(fc.z, n) !=
                geometry::count_elliptic(c.a1, c.a2, c.a3, c.a4, c.a6, c.q, n))
                fail(r, curve_str(c) + " n=" + std::to_string(n) +
                            ": predicted count differs from enumeration");
        }
    }
    return r;
}

SuiteResult stabilization(const std::vector<zeta::ZetaData>& corpus) {
    SuiteResult r{"stabilization"};
    for (const auto& z : corpus)
        for (int64_t ell : {2, 3, 5, 7})
            for (int k : {1, 2}) {
                ++r.checks;
                try {
                    padic::unit_part_residue(z, ell, k);
                } catch (const StabilizationFailure& e) {
                    fail(r, "q=" + std::to_string(z.q) + " ell=" + std::to_string(ell) +
                                " k=" + std::to_string(k) + ": " + e.what());
                }
            }
    return r;
}

std::vector<std::string> suite_names() {
    return {"parity-elimination", "legendre-count",    "dual-chi",       "trace-count",
            "determinant",        "unit-slopes",       "bad-characteristic", "loial",
            "euler-axioms",       "zeta-roundtrip",    "stabilization"};
}

SuiteResult run_suite(const std::string& name, int64_t q_max, int64_t bound, uint64_t seed) {
    (void)seed;  // suites are deterministic
    if (name == "parity-elimination") return parity_elimination(q_max ? q_max : 200, bound);
    if (name == "legendre-count") return legendre_counts(q_max ? q_max : 100, bound);
    if (name == "dual-chi") return dual_chi_exactness(bound);
    if (name == "trace-count" || name == "determinant") {
        std::vector<int64_t> qs{5, 7, 11, 13};
        if (q_max) {
            qs.clear();
            for (int64_t p : primes_upto(q_max))
                if (p >= 3) qs.push_back(p);
        }
        auto sweep = trace_congruences(qs);
        return name == "trace-count" ? sweep.congruence : sweep.determinant;
    }
    if (name == "unit-slopes" || name == "stabilization") {
        std::vector<zeta::ZetaData> corpus;
        for (const auto& fc : curve_corpus(bound)) corpus.push_back(fc.z);
        for (auto& z : legendre_zetas()) corpus.push_back(std::move(z));
        return name == "unit-slopes" ? unit_slopes(corpus) : stabilization(corpus);
    }
    if (name == "bad-characteristic") return bad_characteristic();
    if (name == "loial") return loial_divisibility();
    if (name == "euler-axioms") return euler_axioms(bound);
    if (name == "zeta-roundtrip") return zeta_roundtrip(curve_corpus(bound));
    std::string msg = "unknown suite '" + name + "'; available:";
    for (const auto& n : suite_names()) msg += " " + n;
    throw ParseError(msg);
}

}  // namespace pfchi::suites
