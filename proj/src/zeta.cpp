#include "pfchi/zeta.hpp"

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <map>

#include "pfchi/errors.hpp"

namespace pfchi::zeta {

namespace {

// ---- power sums of reciprocal roots ----------------------------------------

// P(T) = sum c_i T^i with c_0 = 1; returns p_1..p_n where p_j is the sum of
// j-th powers of the reciprocal roots.
std::vector<BigInt> newton_power_sums(const std::vector<BigInt>& c, int64_t n) {
    int d = static_cast<int>(c.size()) - 1;
    std::vector<BigInt> p(static_cast<size_t>(n) + 1);
    for (int64_t j = 1; j <= n; ++j) {
        BigInt acc = 0;
        if (j <= d) acc = -j * c[j];
        for (int64_t i = 1; i < j && i <= d; ++i) acc -= c[i] * p[j - i];
        p[j] = acc;
    }
    return p;
}

BigInt power_sum_of(const std::vector<BigInt>& c, int64_t n) {
    if (c.size() <= 1) return 0;
    return newton_power_sums(c, n)[n];
}

// Inverse direction: from power sums p_1..p_g recover c_1..c_g. Division by
// j must be exact, otherwise no integer polynomial has these power sums.
std::vector<BigInt> coeffs_from_power_sums(const std::vector<BigInt>& p, int g) {
    std::vector<BigInt> c(static_cast<size_t>(g) + 1);
    c[0] = 1;
    for (int j = 1; j <= g; ++j) {
        BigInt acc = p[j];
        for (int i = 1; i < j; ++i) acc += c[i] * p[j - i];
        if (acc % j != 0)
            throw InconsistentCounts("power sums do not come from an integer polynomial");
        c[j] = -acc / j;
    }
    return c;
}

// ---- rational polynomial arithmetic (ascending coefficients) ---------------

using RPoly = std::vector<BigRat>;

int rdeg(const RPoly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

void rtrim(RPoly& f) { f.resize(static_cast<size_t>(std::max(rdeg(f), -1) + 1)); }

RPoly rsub(const RPoly& a, const RPoly& b) {
    RPoly r(std::max(a.size(), b.size()), BigRat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    rtrim(r);
    return r;
}

RPoly rmul(const RPoly& a, const RPoly& b) {
    if (rdeg(a) < 0 || rdeg(b) < 0) return {};
    RPoly r(a.size() + b.size() - 1, BigRat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    rtrim(r);
    return r;
}

RPoly rrem(RPoly a, const RPoly& b) {
    int db = rdeg(b);
    for (int da = rdeg(a); da >= db && db >= 0; da = rdeg(a)) {
        BigRat f = a[da] / b[db];
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        a[da] = 0;
    }
    rtrim(a);
    return a;
}

RPoly rmonic(RPoly f) {
    int d = rdeg(f);
    if (d < 0) return f;
    BigRat lead = f[d];
    for (auto& x : f) x /= lead;
    return f;
}

// exact quotient of num by den (remainder known to vanish)
RPoly rdiv_exact(const RPoly& num, const RPoly& den) {
    int dd = rdeg(den);
    if (dd <= 0) {
        RPoly q = num;
        if (dd == 0)
            for (auto& x : q) x /= den[0];
        return q;
    }
    RPoly rem = num;
    RPoly q(num.size(), BigRat(0));
    for (int da = rdeg(rem); da >= dd; da = rdeg(rem)) {
        BigRat f = rem[da] / den[dd];
        q[da - dd] += f;
        for (int i = 0; i <= dd; ++i) rem[da - dd + i] -= f * den[i];
        rem[da] = 0;
    }
    rtrim(q);
    return q;
}

RPoly rgcd(RPoly a, RPoly b) {
    while (rdeg(b) >= 0) {
        RPoly r = rrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return rmonic(std::move(a));
}

RPoly rderiv(const RPoly& f) {
    if (f.size() <= 1) return {};
    RPoly d(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * BigRat(static_cast<int64_t>(i));
    return d;
}

// inverse of a modulo m in Q[x], or empty when not coprime
RPoly rinv_mod(const RPoly& a, const RPoly& m) {
    RPoly r0 = m, r1 = rrem(a, m);
    RPoly t0 = {}, t1 = {BigRat(1)};
    while (rdeg(r1) > 0) {
        // one division step: r0 = q*r1 + r2
        RPoly q(static_cast<size_t>(rdeg(r0) - rdeg(r1) + 1), BigRat(0));
        RPoly rem = r0;
        int d1 = rdeg(r1);
        for (int da = rdeg(rem); da >= d1; da = rdeg(rem)) {
            BigRat f = rem[da] / r1[d1];
            q[da - d1] += f;
            for (int i = 0; i <= d1; ++i) rem[da - d1 + i] -= f * r1[i];
            rem[da] = 0;
            rtrim(rem);
        }
        RPoly t2 = rsub(t0, rmul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (rdeg(r1) != 0) return {};  // gcd has positive degree
    BigRat lead = r1[0];
    for (auto& x : t1) x /= lead;
    return rrem(std::move(t1), m);
}

// minimal LFSR connection polynomial 1 + c_1 x + ... + c_L x^L for s_0..s_{n-1}
RPoly berlekamp_massey(const std::vector<BigRat>& s) {
    RPoly C = {BigRat(1)}, B = {BigRat(1)};
    int L = 0, m = 1;
    BigRat b(1);
    for (size_t n = 0; n < s.size(); ++n) {
        BigRat d = s[n];
        for (int i = 1; i <= L && i <= static_cast<int>(n); ++i)
            if (i < static_cast<int>(C.size())) d += C[i] * s[n - i];
        if (d == 0) {
            ++m;
            continue;
        }
        RPoly saved = C;
        BigRat coef = d / b;
        if (C.size() < B.size() + m) C.resize(B.size() + m, BigRat(0));
        for (size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
        if (2 * L <= static_cast<int>(n)) {
            L = static_cast<int>(n) + 1 - L;
            B = std::move(saved);
            b = d;
            m = 1;
        } else {
            ++m;
        }
    }
    C.resize(static_cast<size_t>(L) + 1, BigRat(0));
    return C;
}

BigInt rat_to_int(const BigRat& r, const char* what) {
    if (boost::multiprecision::denominator(r) != 1)
        throw ValidationFailure(std::string(what) + " is not an integer");
    return boost::multiprecision::numerator(r);
}

void check_nonnegative(const CountSeries& series) {
    for (const auto& n : series.counts)
        if (n < 0) throw PreconditionError("point counts cannot be negative");
    if (series.q < 2) throw PreconditionError("base cardinality must be at least 2");
}

void validate_against(const ZetaData& z, const CountSeries& series, bool curve_fit) {
    for (size_t n = 1; n <= series.counts.size(); ++n) {
        BigInt predicted = power_sum(z, static_cast<int64_t>(n));
        if (predicted != series.counts[n - 1]) {
            std::string msg = "fitted data predicts N_" + std::to_string(n) + " = " +
                              predicted.str() + " but the series has " +
                              series.counts[n - 1].str();
            if (curve_fit) throw InconsistentCounts(msg);
            throw ValidationFailure(msg);
        }
    }
}

// ---- complex roots (Durand-Kerner) ------------------------------------------

std::vector<std::complex<double>> complex_roots(const std::vector<BigInt>& coeffs) {
    int d = static_cast<int>(coeffs.size()) - 1;
    while (d >= 0 && coeffs[d] == 0) --d;
    if (d <= 0) return {};
    std::vector<std::complex<double>> a(d + 1);
    double lead = static_cast<double>(coeffs[d]);
    for (int i = 0; i <= d; ++i) a[i] = static_cast<double>(coeffs[i]) / lead;
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = a[d];
        for (int i = d - 1; i >= 0; --i) v = v * x + a[i];
        return v;
    };
    std::vector<std::complex<double>> z(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> w(1.0, 0.0);
    for (int i = 0; i < d; ++i) {
        w *= seed;
        z[i] = w;
    }
    for (int iter = 0; iter < 1000; ++iter) {
        double moved = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> denom(1.0, 0.0);
            for (int j = 0; j < d; ++j)
                if (j != i) denom *= z[i] - z[j];
            std::complex<double> step = eval(z[i]) / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

}  // namespace

ZetaData fit_curve_lpoly(const CountSeries& series, int genus) {
    check_nonnegative(series);
    if (genus < 0) throw PreconditionError("genus cannot be negative");
    if (static_cast<int>(series.counts.size()) < genus)
        throw PreconditionError("need at least g counts to fit a genus-g numerator");
    int64_t q = series.q;
    ZetaData z;
    z.q = q;
    z.A = {BigInt(1), BigInt(-1 - q), BigInt(q)};  // (1 - T)(1 - qT)
    if (genus == 0) {
        z.B = {BigInt(1)};
        validate_against(z, series, true);
        return z;
    }
    // s_n = 1 + q^n - N_n are the power sums of the reciprocal roots of B
    std::vector<BigInt> s(static_cast<size_t>(genus) + 1);
    for (int n = 1; n <= genus; ++n)
        s[n] = 1 + bpow(BigInt(q), n) - series.counts[static_cast<size_t>(n) - 1];
    std::vector<BigInt> b = coeffs_from_power_sums(s, genus);
    b.resize(2 * static_cast<size_t>(genus) + 1);
    for (int i = 0; i < genus; ++i) b[2 * genus - i] = bpow(BigInt(q), genus - i) * b[i];
    z.B = std::move(b);
    validate_against(z, series, true);
    return z;
}

ZetaData fit_rational_zeta(const CountSeries& series, int degree_bound) {
    check_nonnegative(series);
    if (degree_bound < 0) throw PreconditionError("degree bound cannot be negative");
    size_t need = 2 * static_cast<size_t>(degree_bound) + 4;
    if (series.counts.size() < need)
        throw PreconditionError("recurrence fitting needs at least " + std::to_string(need) +
                                " counts, got " + std::to_string(series.counts.size()));
    std::vector<BigRat> s;
    for (size_t i = 0; i < 2 * static_cast<size_t>(degree_bound) && i < series.counts.size(); ++i)
        s.emplace_back(series.counts[i]);
    RPoly C = berlekamp_massey(s);
    int r = static_cast<int>(C.size()) - 1;
    if (r > degree_bound)
        throw NoRecurrence("minimal recurrence order " + std::to_string(r) +
                           " exceeds the degree bound " + std::to_string(degree_bound));

    // characteristic polynomial x^r + c_1 x^{r-1} + ... + c_r, whose roots
    // are the growth rates appearing in N_n
    RPoly charpoly(static_cast<size_t>(r) + 1);
    for (int i = 0; i <= r; ++i) charpoly[r - i] = C[i];
    if (r > 0 && charpoly[0] == 0)
        throw ValidationFailure("the fitted recurrence has a zero characteristic root");

    ZetaData z;
    z.q = series.q;
    z.A = {BigInt(1)};
    z.B = {BigInt(1)};
    if (r > 0) {
        // weight interpolation: U(x) collects the series against the
        // characteristic coefficients so that the weight of each root rho is
        // U(rho) / (rho * charpoly'(rho))
        RPoly U(static_cast<size_t>(r), BigRat(0));
        for (int t = 0; t < r; ++t)
            for (int i = t + 1; i <= r; ++i) U[t] += charpoly[i] * BigRat(series.counts[i - t - 1]);
        RPoly xcp = rmul({BigRat(0), BigRat(1)}, rderiv(charpoly));
        RPoly inv = rinv_mod(xcp, charpoly);
        if (inv.empty())
            throw ValidationFailure("characteristic roots are not separable from their weights");
        RPoly weight_fn = rrem(rmul(rrem(U, charpoly), inv), charpoly);

        int accounted = 0;
        std::map<int, RPoly> by_weight;
        for (int v = -degree_bound; v <= degree_bound; ++v) {
            if (v == 0) continue;
            RPoly shifted = weight_fn;
            if (shifted.empty()) shifted = {BigRat(0)};
            shifted[0] -= BigRat(v);
            RPoly g = rgcd(charpoly, shifted);
            int dg = rdeg(g);
            if (dg <= 0) continue;
            by_weight[v] = g;
            accounted += dg * std::abs(v);
        }
        int covered = 0;
        for (const auto& [v, g] : by_weight) {
            (void)v;
            covered += rdeg(g);
        }
        if (covered != r)
            throw ValidationFailure("recurrence roots carry weights outside the degree bound");
        if (accounted > degree_bound)
            throw ValidationFailure("total weighted degree exceeds the degree bound");

        auto fold_in = [&](std::vector<BigInt>& dst, const RPoly& g, int copies) {
            // rev(g) has constant term 1 for monic g; multiply in `copies` times
            int dg = rdeg(g);
            std::vector<BigInt> rev(static_cast<size_t>(dg) + 1);
            for (int i = 0; i <= dg; ++i) rev[i] = rat_to_int(g[dg - i], "fitted root datum");
            for (int c = 0; c < copies; ++c) {
                std::vector<BigInt> prod(dst.size() + rev.size() - 1);
                for (size_t i = 0; i < dst.size(); ++i)
                    for (size_t j = 0; j < rev.size(); ++j) prod[i + j] += dst[i] * rev[j];
                dst = std::move(prod);
            }
        };
        for (const auto& [v, g] : by_weight)
            fold_in(v > 0 ? z.A : z.B, g, std::abs(v));
    }
    validate_against(z, series, false);
    return z;
}

BigInt power_sum(const ZetaData& z, int64_t n) {
    if (n < 1) throw PreconditionError("power sums are defined for n >= 1");
    return power_sum_of(z.A, n) - power_sum_of(z.B, n);
}

namespace {

int64_t mulmod64(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

// trace of the n-th power of the companion matrix of x^d + c_1 x^{d-1} + ...
int64_t companion_trace(const std::vector<BigInt>& c, const BigInt& n, int64_t m) {
    int d = static_cast<int>(c.size()) - 1;
    if (d <= 0) return 0;
    std::vector<int64_t> last(d);  // last column: -c_d, -c_{d-1}, ..., -c_1
    for (int i = 0; i < d; ++i) last[i] = mod_norm(-c[d - i], m);
    auto mul = [&](const std::vector<int64_t>& A, const std::vector<int64_t>& B) {
        std::vector<int64_t> R(static_cast<size_t>(d) * d, 0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                int64_t a = A[static_cast<size_t>(i) * d + k];
                if (a == 0) continue;
                for (int j = 0; j < d; ++j)
                    R[static_cast<size_t>(i) * d + j] =
                        (R[static_cast<size_t>(i) * d + j] +
                         mulmod64(a, B[static_cast<size_t>(k) * d + j], m)) %
                        m;
            }
        return R;
    };
    std::vector<int64_t> M(static_cast<size_t>(d) * d, 0);
    for (int i = 1; i < d; ++i) M[static_cast<size_t>(i) * d + (i - 1)] = 1 % m;
    for (int i = 0; i < d; ++i) M[static_cast<size_t>(i) * d + (d - 1)] = last[i];
    std::vector<int64_t> R(static_cast<size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) R[static_cast<size_t>(i) * d + i] = 1 % m;
    BigInt e = n;
    while (e > 0) {
        if ((e & 1) != 0) R = mul(R, M);
        M = mul(M, M);
        e >>= 1;
    }
    int64_t tr = 0;
    for (int i = 0; i < d; ++i) tr = (tr + R[static_cast<size_t>(i) * d + i]) % m;
    return tr;
}

}  // namespace

int64_t power_sum_mod(const ZetaData& z, const BigInt& n, int64_t m) {
    if (n < 1) throw PreconditionError("power sums are defined for n >= 1");
    if (m < 1) throw PreconditionError("modulus must be positive");
    int64_t a = companion_trace(z.A, n, m);
    int64_t b = companion_trace(z.B, n, m);
    return mod_norm(a - b, m);
}

bool weil_check(const ZetaData& z, int genus) {
    if (genus < 0) return false;
    const auto& B = z.B;
    size_t want = 2 * static_cast<size_t>(genus) + 1;
    if (B.size() != want || B[0] != 1) return false;
    for (int i = 0; i <= genus; ++i)
        if (B[2 * static_cast<size_t>(genus) - i] != bpow(BigInt(z.q), genus - i) * B[i])
            return false;
    if (genus == 0) return true;
    // deflate repeated roots exactly so the iteration converges quadratically
    RPoly rb(B.size());
    for (size_t i = 0; i < B.size(); ++i) rb[i] = BigRat(B[i]);
    RPoly common = rgcd(rb, rderiv(rb));
    RPoly squarefree = rdiv_exact(rb, common);
    std::vector<BigInt> sf(squarefree.size());
    BigInt mult = 1;
    for (const auto& coeff : squarefree)
        mult = boost::multiprecision::lcm(mult, boost::multiprecision::denominator(coeff));
    for (size_t i = 0; i < squarefree.size(); ++i) {
        BigRat scaled = squarefree[i] * BigRat(mult);
        sf[i] = boost::multiprecision::numerator(scaled);
    }
    auto roots = complex_roots(sf);
    double target = 1.0 / static_cast<double>(z.q);
    for (const auto& r : roots)
        if (std::abs(std::norm(r) - target) > 1e-9) return false;
    return true;
}

}  // namespace pfchi::zeta
