#include "pfchi/euler.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "json.hpp"
#include "pfchi/errors.hpp"

namespace pfchi::euler {

namespace {

// prime -> exponent, by trial division
std::map<int64_t, int> factorize(int64_t n) {
    std::map<int64_t, int> out;
    for (int64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    if (n > 1) ++out[n];
    return out;
}

void check_coherence(const std::map<int64_t, int64_t>& entries) {
    for (const auto& [m, rm] : entries)
        for (const auto& [n, rn] : entries)
            if (m < n && n % m == 0 && rn % m != rm)
                throw ValidationFailure("residues mod " + std::to_string(n) + " and " +
                                        std::to_string(m) + " are not coherent");
}

EulerValue value_of_count(const BigInt& count, const std::vector<int64_t>& moduli) {
    // direct reduction at every modulus, plus prime-power parts for the
    // cross-check recombination
    std::map<int64_t, int64_t> parts;
    for (int64_t n : moduli) {
        if (n < 1) throw PreconditionError("moduli must be positive");
        for (const auto& [p, e] : factorize(n)) {
            int64_t pe = ipow_checked(p, e);
            parts[pe] = mod_norm(count, pe);
        }
    }
    EulerValue recombined = make_euler_value(parts, moduli);
    EulerValue out;
    for (int64_t n : moduli) {
        out.entries[n] = mod_norm(count, n);
        if (out.entries[n] != recombined.entries.at(n))
            throw ValidationFailure("direct count mod " + std::to_string(n) +
                                    " disagrees with its prime-power recombination");
    }
    check_coherence(out.entries);
    return out;
}

BigInt rat_to_int(const BigRat& v, const char* what) {
    if (boost::multiprecision::denominator(v) != 1)
        throw SingularSystem(std::string(what) + " is not an integer");
    return boost::multiprecision::numerator(v);
}

}  // namespace

std::string report_json(const std::vector<CheckRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    auto num = [](const BigInt& v) -> nlohmann::json {
        if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max())
            return v.convert_to<int64_t>();
        return v.str();
    };
    for (const auto& r : records)
        arr.push_back({{"modulus", r.modulus},
                       {"check", r.check},
                       {"lhs", num(r.lhs)},
                       {"rhs", num(r.rhs)},
                       {"pass", r.pass}});
    return arr.dump();
}

EulerValue make_euler_value(const std::map<int64_t, int64_t>& prime_power_residues,
                            const std::vector<int64_t>& moduli) {
    // validate the supplied parts
    for (const auto& [pe, r] : prime_power_residues) {
        prime_power_split(pe);  // throws NotPrime otherwise
        if (r < 0 || r >= pe)
            throw PreconditionError("residue " + std::to_string(r) + " is not reduced mod " +
                                    std::to_string(pe));
    }
    EulerValue out;
    for (int64_t n : moduli) {
        if (n < 1) throw PreconditionError("moduli must be positive");
        int64_t value = 0, built = 1;
        for (const auto& [p, e] : factorize(n)) {
            int64_t need = ipow_checked(p, e);
            // smallest supplied power of p that determines the residue mod p^e
            int64_t found = -1;
            for (const auto& [pe, r] : prime_power_residues) {
                if (pe % need != 0) continue;
                if (prime_power_split(pe).first != p) continue;
                found = mod_norm(r, need);
                break;
            }
            if (found < 0)
                throw PreconditionError("no residue supplied for the factor " +
                                        std::to_string(need) + " of " + std::to_string(n));
            value = crt_pair(value, built, found, need);
            built *= need;
        }
        out.entries[n] = value;
    }
    check_coherence(out.entries);
    return out;
}

EulerValue chi_hat(const geometry::ConstructibleSpec& spec, const std::vector<int64_t>& moduli,
                   int64_t bound) {
    return value_of_count(geometry::count_points(spec, 1, bound), moduli);
}

EulerValue chi_hat(const logic::Formula& f, const std::vector<logic::TypedVar>& free_vars,
                   const logic::Model& M, const std::vector<int64_t>& moduli) {
    return value_of_count(logic::count_solutions(f, free_vars, M), moduli);
}

std::vector<CheckRecord> verify_axioms(const std::vector<geometry::ConstructibleSpec>& sets,
                                       const std::vector<int64_t>& moduli, int64_t bound) {
    std::vector<CheckRecord> report;
    auto emit = [&](const std::string& name, const BigInt& lhs, const BigInt& rhs) {
        for (int64_t n : moduli) {
            BigInt l = mod_norm(lhs, n), r = mod_norm(rhs, n);
            report.push_back({n, name, l, r, l == r});
        }
    };

    for (size_t i = 0; i < sets.size(); ++i) {
        const auto& x = sets[i];
        BigInt total = geometry::count_points(x, 1, bound);
        std::string tag = "set" + std::to_string(i);

        // split along vanishing of the first coordinate
        geometry::MPoly first;
        {
            std::vector<int> exps(x.vars.size(), 0);
            exps[0] = 1;
            first.terms[exps] = 1;
        }
        auto zero_eqs = x.equations;
        zero_eqs.push_back(first);
        auto zero_part = geometry::make_family_spec(x.projective_block, x.vars, zero_eqs,
                                                    x.inequations, x.p, x.k);
        auto nonzero_ineqs = x.inequations;
        nonzero_ineqs.push_back(first);
        auto nonzero_part = geometry::make_family_spec(x.projective_block, x.vars, x.equations,
                                                       nonzero_ineqs, x.p, x.k);
        BigInt split_sum = geometry::count_points(zero_part, 1, bound) +
                           geometry::count_points(nonzero_part, 1, bound);
        emit("additivity:" + tag, total, split_sum);

        // constant-fiber projection to the first coordinate
        if (!x.is_projective()) {
            auto hist = geometry::fiber_histogram(x, {x.vars[0]}, 1, bound);
            int64_t fiber = -1;
            bool constant = true;
            BigInt image = 0;
            for (const auto& [size, bases] : hist) {
                if (size == 0) continue;
                image += bases;
                if (fiber < 0)
                    fiber = size;
                else if (fiber != size)
                    constant = false;
            }
            if (constant && fiber > 0) emit("fibration:" + tag, total, fiber * image);
        }
    }

    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j) {
            const auto& x = sets[i];
            const auto& y = sets[j];
            if (x.is_projective() || y.is_projective()) continue;
            if (x.p != y.p || x.k != y.k) continue;

            // juxtapose with disjoint variable names
            std::vector<std::string> vars;
            for (const auto& v : x.vars) vars.push_back("a_" + v);
            for (const auto& v : y.vars) vars.push_back("b_" + v);
            size_t nx = x.vars.size(), ny = y.vars.size();
            auto embed = [&](const geometry::MPoly& f, bool left) {
                geometry::MPoly out;
                for (const auto& [exps, c] : f.terms) {
                    std::vector<int> padded(nx + ny, 0);
                    for (size_t t = 0; t < exps.size(); ++t)
                        padded[left ? t : nx + t] = exps[t];
                    out.terms[padded] = c;
                }
                return out;
            };
            std::vector<geometry::MPoly> eqs, ineqs;
            for (const auto& f : x.equations) eqs.push_back(embed(f, true));
            for (const auto& f : y.equations) eqs.push_back(embed(f, false));
            for (const auto& f : x.inequations) ineqs.push_back(embed(f, true));
            for (const auto& f : y.inequations) ineqs.push_back(embed(f, false));
            auto product = geometry::make_spec(false, vars, eqs, ineqs, x.p, x.k);

            BigInt lhs = geometry::count_points(product, 1, bound);
            BigInt rhs = geometry::count_points(x, 1, bound) * geometry::count_points(y, 1, bound);
            emit("multiplicativity:set" + std::to_string(i) + "xset" + std::to_string(j), lhs,
                 rhs);
        }

    return report;
}

Decomposition vandermonde_decompose(const std::vector<BigInt>& chi_powers,
                                    const std::vector<int64_t>& n_powers, int64_t max_fiber) {
    if (max_fiber < 0) throw PreconditionError("the maximal fiber size cannot be negative");
    if (chi_powers.size() != n_powers.size())
        throw PreconditionError("each power count needs its exponent");
    for (size_t i = 0; i < n_powers.size(); ++i) {
        if (n_powers[i] < 1) throw PreconditionError("power exponents must be positive");
        for (size_t j = i + 1; j < n_powers.size(); ++j)
            if (n_powers[i] == n_powers[j])
                throw PreconditionError("power exponents must be distinct");
    }
    size_t m = static_cast<size_t>(max_fiber);
    if (chi_powers.size() < m)
        throw PreconditionError("need at least " + std::to_string(m) + " power counts");

    Decomposition out;
    if (m == 0) {
        for (const auto& v : chi_powers)
            if (v != 0) throw SingularSystem("nonzero counts with no admissible fiber size");
        return out;
    }

    // solve sum_k x_k k^{n_j} = chi_j exactly on the first m equations
    std::vector<std::vector<BigRat>> mat(m, std::vector<BigRat>(m + 1));
    for (size_t j = 0; j < m; ++j) {
        for (size_t k = 1; k <= m; ++k)
            mat[j][k - 1] = BigRat(bpow(BigInt(k), n_powers[j]));
        mat[j][m] = BigRat(chi_powers[j]);
    }
    for (size_t col = 0; col < m; ++col) {
        size_t pivot = col;
        while (pivot < m && mat[pivot][col] == 0) ++pivot;
        if (pivot == m) throw SingularSystem("the power system is degenerate");
        std::swap(mat[col], mat[pivot]);
        for (size_t row = 0; row < m; ++row) {
            if (row == col || mat[row][col] == 0) continue;
            BigRat f = mat[row][col] / mat[col][col];
            for (size_t t = col; t <= m; ++t) mat[row][t] -= f * mat[col][t];
        }
    }
    std::vector<BigInt> solution(m + 1, 0);
    for (size_t k = 1; k <= m; ++k) {
        BigInt x = rat_to_int(mat[k - 1][m] / mat[k - 1][k - 1], "a class count");
        if (x < 0) throw SingularSystem("a class count came out negative");
        solution[k] = x;
        if (x != 0) {
            out.classes[static_cast<int64_t>(k)] = x;
            out.total += x;
        }
    }
    // remaining equations must agree with the solved classes
    for (size_t j = m; j < n_powers.size(); ++j) {
        BigInt predicted = 0;
        for (size_t k = 1; k <= m; ++k) predicted += solution[k] * bpow(BigInt(k), n_powers[j]);
        if (predicted != chi_powers[j])
            throw SingularSystem("power counts are inconsistent with the recovered classes");
    }
    return out;
}

Decomposition vandermonde_decompose(const std::map<int64_t, BigInt>& hist,
                                    const std::vector<int64_t>& n_powers) {
    int64_t max_fiber = 0;
    for (const auto& [size, bases] : hist) {
        if (size < 0) throw PreconditionError("fiber sizes cannot be negative");
        if (bases < 0) throw PreconditionError("histogram multiplicities cannot be negative");
        if (size > max_fiber && bases != 0) max_fiber = size;
    }
    std::vector<BigInt> chi_powers;
    for (int64_t n : n_powers) {
        BigInt acc = 0;
        for (const auto& [size, bases] : hist)
            if (size > 0) acc += bases * bpow(BigInt(size), n);
        chi_powers.push_back(acc);
    }
    auto out = vandermonde_decompose(chi_powers, n_powers, max_fiber);
    for (const auto& [size, bases] : hist) {
        if (size == 0 || bases == 0) continue;
        auto it = out.classes.find(size);
        if (it == out.classes.end() || it->second != bases)
            throw SingularSystem("recovered classes disagree with the histogram");
    }
    return out;
}

}  // namespace pfchi::euler
