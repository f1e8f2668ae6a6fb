#include "pfchi/gf.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <random>

namespace pfchi::gf {

namespace {

// ---- dense polynomials over F_p, little-endian int64 coefficients ----

using FpPoly = std::vector<int64_t>;

int fp_deg(const FpPoly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

void fp_trim(FpPoly& a) { a.resize(static_cast<size_t>(fp_deg(a) + 1)); }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    for (auto& v : out) v = mod_norm(v, p);
    fp_trim(out);
    return out;
}

FpPoly fp_rem(FpPoly a, const FpPoly& b, int64_t p) {
    int db = fp_deg(b);
    if (db < 0) throw DomainError("division by zero polynomial");
    int64_t lead_inv = mod_inv(b[db], p);
    fp_trim(a);
    while (fp_deg(a) >= db) {
        int da = fp_deg(a);
        int64_t c = mod_norm(a[da] * lead_inv, p);
        for (int j = 0; j <= db; ++j)
            a[da - db + j] = mod_norm(a[da - db + j] - c * b[j], p);
        fp_trim(a);
    }
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, int64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (fp_deg(b) >= 0) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    int da = fp_deg(a);
    if (da >= 0 && a[da] != 1) {
        int64_t s = mod_inv(a[da], p);
        for (auto& v : a) v = mod_norm(v * s, p);
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, int64_t p) {
    return fp_rem(fp_mul(a, b, p), f, p);
}

FpPoly fp_powmod(FpPoly base, BigInt e, const FpPoly& f, int64_t p) {
    FpPoly r{1};
    base = fp_rem(std::move(base), f, p);
    while (e > 0) {
        if ((e & 1) != 0) r = fp_mulmod(r, base, f, p);
        base = fp_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

// columns of the x -> x^p map on F_p[x]/(f); col_j = (x^p)^j mod f
std::vector<FpPoly> frobenius_columns(const FpPoly& f, int64_t p) {
    int d = fp_deg(f);
    FpPoly xp = fp_powmod({0, 1}, p, f, p);
    std::vector<FpPoly> cols(static_cast<size_t>(d));
    cols[0] = {1};
    for (int j = 1; j < d; ++j) cols[static_cast<size_t>(j)] = fp_mulmod(cols[static_cast<size_t>(j - 1)], xp, f, p);
    for (auto& c : cols) c.resize(static_cast<size_t>(d), 0);
    return cols;
}

FpPoly apply_columns(const std::vector<FpPoly>& cols, const FpPoly& v, int64_t p) {
    int d = static_cast<int>(cols.size());
    FpPoly out(static_cast<size_t>(d), 0);
    for (int j = 0; j < d; ++j) {
        int64_t vj = j < static_cast<int>(v.size()) ? v[static_cast<size_t>(j)] : 0;
        if (vj == 0) continue;
        const FpPoly& col = cols[static_cast<size_t>(j)];
        for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] += vj * col[static_cast<size_t>(i)];
    }
    for (auto& v2 : out) v2 = mod_norm(v2, p);
    return out;
}

// Rabin test, with the iterated-Frobenius work done by a matrix on the
// quotient ring so that large degrees stay affordable.
bool fp_is_irreducible(const FpPoly& f, int64_t p) {
    int d = fp_deg(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    auto cols = frobenius_columns(f, p);
    std::vector<int> checkpoints;
    for (auto& [r, e] : factorize(d)) {
        (void)e;
        checkpoints.push_back(d / static_cast<int>(r));
    }
    FpPoly v(static_cast<size_t>(d), 0);
    v[1] = 1;  // x
    FpPoly x = v;
    for (int j = 1; j <= d; ++j) {
        v = apply_columns(cols, v, p);
        if (std::find(checkpoints.begin(), checkpoints.end(), j) != checkpoints.end()) {
            FpPoly diff(static_cast<size_t>(d), 0);
            for (int i = 0; i < d; ++i) diff[static_cast<size_t>(i)] = mod_norm(v[static_cast<size_t>(i)] - x[static_cast<size_t>(i)], p);
            if (fp_deg(fp_gcd(diff, f, p)) != 0) return false;
        }
    }
    return v == x;
}

FpPoly lex_least_irreducible(int64_t p, int d) {
    // Non-leading coefficients ordered with the x^(d-1) one most significant
    // and the constant term last, i.e. the constant varies fastest.
    FpPoly f(static_cast<size_t>(d + 1), 0);
    f[static_cast<size_t>(d)] = 1;
    for (BigInt v = 0;; ++v) {
        BigInt rest = v;
        for (int i = 0; i < d; ++i) {
            f[static_cast<size_t>(i)] = static_cast<int64_t>(rest % p);
            rest /= p;
        }
        if (fp_is_irreducible(f, p)) return f;
    }
}

FpPoly seeded_irreducible(int64_t p, int d, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> coeff(0, p - 1);
    // small-degree factor sieve: linear factors by evaluation, quadratic
    // irreducible factors by trial remainder
    std::vector<FpPoly> quads;
    for (int64_t b = 0; b < p; ++b)
        for (int64_t c = 0; c < p; ++c) {
            FpPoly g{c, b, 1};
            bool has_root = false;
            for (int64_t a = 0; a < p && !has_root; ++a)
                if (mod_norm(a * a + b * a + c, p) == 0) has_root = true;
            if (!has_root) quads.push_back(g);
        }
    for (int attempt = 0; attempt < 100000; ++attempt) {
        FpPoly f(static_cast<size_t>(d + 1), 0);
        f[static_cast<size_t>(d)] = 1;
        for (int i = 0; i < d; ++i) f[static_cast<size_t>(i)] = coeff(rng);
        if (f[0] == 0) f[0] = 1;
        bool rooted = false;
        for (int64_t a = 0; a < p && !rooted; ++a) {
            int64_t acc = 0;
            for (int i = d; i >= 0; --i) acc = mod_norm(acc * a + f[static_cast<size_t>(i)], p);
            if (acc == 0) rooted = true;
        }
        if (rooted) continue;
        bool quad_factor = false;
        for (const auto& g : quads)
            if (fp_deg(fp_rem(f, g, p)) < 0) {
                quad_factor = true;
                break;
            }
        if (quad_factor) continue;
        if (fp_is_irreducible(f, p)) return f;
    }
    throw Error("irreducible polynomial search did not terminate");
}

uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t x = a * 0x9e3779b97f4a7c15ULL + b + 0x2545f4914f6cdd1dULL;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return x;
}

}  // namespace

// ---- Tower -------------------------------------------------------------

Tower Tower::make(int64_t p, int k, int N, int64_t enum_bound) {
    if (!is_prime(p)) throw NotPrime("p must be prime, got " + std::to_string(p));
    if (k < 1 || N < 1) throw PreconditionError("k and N must be >= 1");
    BigInt total = bpow(BigInt(p), static_cast<int64_t>(k) * N);
    if (total > enum_bound)
        throw TooLarge("tower F_(p^" + std::to_string(k * N) + ") with p=" + std::to_string(p) +
                       " exceeds the enumeration bound");
    Tower t;
    t.init(p, k, N, lex_least_irreducible(p, k * N));
    return t;
}

Tower Tower::make_arithmetic(int64_t p, int k, int N) {
    if (!is_prime(p)) throw NotPrime("p must be prime, got " + std::to_string(p));
    if (k < 1 || N < 1) throw PreconditionError("k and N must be >= 1");
    int d = k * N;
    BigInt total = bpow(BigInt(p), d);
    Tower t;
    if (total <= 4'000'000)
        t.init(p, k, N, lex_least_irreducible(p, d));
    else if (d <= 24)
        t.init(p, k, N, lex_least_irreducible(p, d));  // scan exits early in practice
    else
        t.init(p, k, N, seeded_irreducible(p, d, mix_seed(static_cast<uint64_t>(p), static_cast<uint64_t>(d))));
    return t;
}

void Tower::init(int64_t p, int k, int N, std::vector<int64_t> modulus) {
    p_ = p;
    k_ = k;
    N_ = N;
    d_ = k * N;
    BigInt q = bpow(BigInt(p), k);
    if (q > std::numeric_limits<int64_t>::max()) throw TooLarge("q = p^k overflows 64 bits");
    q_ = static_cast<int64_t>(q);
    modulus_ = std::move(modulus);
    auto cols = frobenius_columns(modulus_, p_);
    pmat_.assign(static_cast<size_t>(d_) * d_, 0);
    for (int j = 0; j < d_; ++j)
        for (int i = 0; i < d_; ++i)
            pmat_[static_cast<size_t>(i) * d_ + j] = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
}

BigInt Tower::sort_size(int m) const {
    if (m < 1 || N_ % m != 0)
        throw SortNotInTower("K_" + std::to_string(m) + " is not a sort of this tower (N=" +
                             std::to_string(N_) + ")");
    return bpow(BigInt(q_), m);
}

Element Tower::zero() const { return Element{std::vector<int64_t>(static_cast<size_t>(d_), 0)}; }

Element Tower::one() const { return from_int(1); }

Element Tower::from_int(int64_t v) const {
    Element e = zero();
    e.c[0] = mod_norm(v, p_);
    return e;
}

Element Tower::generator() const {
    Element e = zero();
    if (d_ == 1)
        e.c[0] = mod_norm(-modulus_[0], p_);
    else
        e.c[1] = 1;
    return e;
}

Element Tower::add(const Element& a, const Element& b) const {
    Element out = a;
    for (int i = 0; i < d_; ++i) out.c[static_cast<size_t>(i)] = mod_norm(out.c[static_cast<size_t>(i)] + b.c[static_cast<size_t>(i)], p_);
    return out;
}

Element Tower::sub(const Element& a, const Element& b) const {
    Element out = a;
    for (int i = 0; i < d_; ++i) out.c[static_cast<size_t>(i)] = mod_norm(out.c[static_cast<size_t>(i)] - b.c[static_cast<size_t>(i)], p_);
    return out;
}

Element Tower::neg(const Element& a) const {
    Element out = a;
    for (auto& v : out.c) v = mod_norm(-v, p_);
    return out;
}

Element Tower::mul(const Element& a, const Element& b) const {
    std::vector<int64_t> buf(static_cast<size_t>(2 * d_ - 1), 0);
    for (int i = 0; i < d_; ++i) {
        if (a.c[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < d_; ++j) buf[static_cast<size_t>(i + j)] += a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
    }
    for (auto& v : buf) v = mod_norm(v, p_);
    for (int i = 2 * d_ - 2; i >= d_; --i) {
        int64_t c = buf[static_cast<size_t>(i)];
        if (c == 0) continue;
        for (int j = 0; j < d_; ++j)
            buf[static_cast<size_t>(i - d_ + j)] = mod_norm(buf[static_cast<size_t>(i - d_ + j)] - c * modulus_[static_cast<size_t>(j)], p_);
        buf[static_cast<size_t>(i)] = 0;
    }
    Element out = zero();
    for (int i = 0; i < d_; ++i) out.c[static_cast<size_t>(i)] = buf[static_cast<size_t>(i)];
    return out;
}

Element Tower::inv(const Element& a) const {
    if (is_zero(a)) throw DomainError("field inverse of zero");
    // extended Euclid on (a, modulus)
    FpPoly r0 = modulus_, r1 = a.c;
    fp_trim(r1);
    FpPoly t0{}, t1{1};
    while (fp_deg(r1) > 0) {
        // r0 = q*r1 + r2
        FpPoly q_poly;
        FpPoly rem = r0;
        int d1 = fp_deg(r1);
        int64_t lead_inv = mod_inv(r1[static_cast<size_t>(d1)], p_);
        fp_trim(rem);
        q_poly.assign(static_cast<size_t>(std::max(fp_deg(rem) - d1 + 1, 1)), 0);
        while (fp_deg(rem) >= d1) {
            int dr = fp_deg(rem);
            int64_t c = mod_norm(rem[static_cast<size_t>(dr)] * lead_inv, p_);
            q_poly[static_cast<size_t>(dr - d1)] = c;
            for (int j = 0; j <= d1; ++j)
                rem[static_cast<size_t>(dr - d1 + j)] = mod_norm(rem[static_cast<size_t>(dr - d1 + j)] - c * r1[static_cast<size_t>(j)], p_);
            fp_trim(rem);
        }
        FpPoly t2_sub = fp_mul(q_poly, t1, p_);
        FpPoly t2 = t0;
        t2.resize(std::max(t2.size(), t2_sub.size()), 0);
        for (size_t i = 0; i < t2_sub.size(); ++i) t2[i] = mod_norm(t2[i] - t2_sub[i], p_);
        t0 = std::move(t1);
        t1 = std::move(t2);
        r0 = std::move(r1);
        r1 = std::move(rem);
    }
    if (fp_deg(r1) != 0) throw DomainError("element not invertible");
    int64_t s = mod_inv(r1[0], p_);
    Element out = zero();
    for (size_t i = 0; i < t1.size() && i < static_cast<size_t>(d_); ++i) out.c[i] = mod_norm(t1[i] * s, p_);
    return out;
}

Element Tower::pow(const Element& a, const BigInt& e) const {
    if (e == 0) return one();
    if (e < 0) return pow(inv(a), -e);
    Element r = one(), b = a;
    BigInt ee = e;
    while (ee > 0) {
        if ((ee & 1) != 0) r = mul(r, b);
        b = mul(b, b);
        ee >>= 1;
    }
    return r;
}

bool Tower::is_zero(const Element& a) const {
    return std::all_of(a.c.begin(), a.c.end(), [](int64_t v) { return v == 0; });
}

const std::vector<int64_t>& Tower::sigma_q_pow(int m) const {
    m = ((m % N_) + N_) % N_;
    auto it = sigma_cache_.find(m);
    if (it != sigma_cache_.end()) return it->second;
    std::vector<int64_t> mat;
    if (m == 0) {
        mat.assign(static_cast<size_t>(d_) * d_, 0);
        for (int i = 0; i < d_; ++i) mat[static_cast<size_t>(i) * d_ + i] = 1;
    } else if (m == 1) {
        // sigma = (x -> x^p)^k
        mat = pmat_;
        for (int t = 1; t < k_; ++t) {
            std::vector<int64_t> nm(static_cast<size_t>(d_) * d_, 0);
            for (int i = 0; i < d_; ++i)
                for (int l = 0; l < d_; ++l) {
                    int64_t v = pmat_[static_cast<size_t>(i) * d_ + l];
                    if (v == 0) continue;
                    for (int j = 0; j < d_; ++j)
                        nm[static_cast<size_t>(i) * d_ + j] = mod_norm(nm[static_cast<size_t>(i) * d_ + j] + v * mat[static_cast<size_t>(l) * d_ + j], p_);
                }
            mat = std::move(nm);
        }
    } else {
        const auto& s1 = sigma_q_pow(1);
        const auto& sm = sigma_q_pow(m - 1);
        mat.assign(static_cast<size_t>(d_) * d_, 0);
        for (int i = 0; i < d_; ++i)
            for (int l = 0; l < d_; ++l) {
                int64_t v = s1[static_cast<size_t>(i) * d_ + l];
                if (v == 0) continue;
                for (int j = 0; j < d_; ++j)
                    mat[static_cast<size_t>(i) * d_ + j] = mod_norm(mat[static_cast<size_t>(i) * d_ + j] + v * sm[static_cast<size_t>(l) * d_ + j], p_);
            }
    }
    return sigma_cache_.emplace(m, std::move(mat)).first->second;
}

namespace {
Element apply_matrix(const std::vector<int64_t>& mat, const Element& a, int d, int64_t p) {
    Element out{std::vector<int64_t>(static_cast<size_t>(d), 0)};
    for (int j = 0; j < d; ++j) {
        int64_t v = a.c[static_cast<size_t>(j)];
        if (v == 0) continue;
        for (int i = 0; i < d; ++i)
            out.c[static_cast<size_t>(i)] += v * mat[static_cast<size_t>(i) * d + j];
    }
    for (auto& v : out.c) v = mod_norm(v, p);
    return out;
}
}  // namespace

Element Tower::frobenius(const Element& a) const { return apply_matrix(sigma_q_pow(1), a, d_, p_); }

Element Tower::p_frobenius(const Element& a) const { return apply_matrix(pmat_, a, d_, p_); }

Element Tower::frobenius_pow(const Element& a, int j) const {
    return apply_matrix(sigma_q_pow(j), a, d_, p_);
}

Element Tower::frobenius_inv(const Element& a) const { return frobenius_pow(a, N_ - 1); }

bool Tower::in_sort(const Element& a, int m) const {
    if (m < 1 || N_ % m != 0)
        throw SortNotInTower("K_" + std::to_string(m) + " is not a sort of this tower (N=" +
                             std::to_string(N_) + ")");
    return frobenius_pow(a, m % N_) == a;
}

std::vector<int64_t> Tower::kernel_basis(int m) const {
    // kernel of (sigma^m - I) over F_p, flattened row-per-vector
    const auto& sm = sigma_q_pow(m % N_);
    std::vector<int64_t> a(static_cast<size_t>(d_) * d_);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
            a[static_cast<size_t>(i) * d_ + j] = mod_norm(sm[static_cast<size_t>(i) * d_ + j] - (i == j ? 1 : 0), p_);
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < d_ && row < d_; ++col) {
        int sel = -1;
        for (int r = row; r < d_; ++r)
            if (a[static_cast<size_t>(r) * d_ + col] != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        for (int j = 0; j < d_; ++j) std::swap(a[static_cast<size_t>(sel) * d_ + j], a[static_cast<size_t>(row) * d_ + j]);
        int64_t inv_piv = mod_inv(a[static_cast<size_t>(row) * d_ + col], p_);
        for (int j = 0; j < d_; ++j) a[static_cast<size_t>(row) * d_ + j] = mod_norm(a[static_cast<size_t>(row) * d_ + j] * inv_piv, p_);
        for (int r = 0; r < d_; ++r) {
            if (r == row) continue;
            int64_t f = a[static_cast<size_t>(r) * d_ + col];
            if (f == 0) continue;
            for (int j = 0; j < d_; ++j)
                a[static_cast<size_t>(r) * d_ + j] = mod_norm(a[static_cast<size_t>(r) * d_ + j] - f * a[static_cast<size_t>(row) * d_ + j], p_);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<int64_t> basis;
    for (int col = 0; col < d_; ++col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end()) continue;
        std::vector<int64_t> v(static_cast<size_t>(d_), 0);
        v[static_cast<size_t>(col)] = 1;
        for (size_t r = 0; r < pivot_col.size(); ++r)
            v[static_cast<size_t>(pivot_col[r])] = mod_norm(-a[r * d_ + col], p_);
        basis.insert(basis.end(), v.begin(), v.end());
    }
    return basis;
}

void Tower::for_each_in_sort(int m, int64_t enum_bound,
                             const std::function<void(const Element&)>& fn) const {
    BigInt size = sort_size(m);
    if (size > enum_bound)
        throw TooLarge("K_" + std::to_string(m) + " has " + size.str() +
                       " elements, past the enumeration bound");
    auto basis = kernel_basis(m);
    int r = static_cast<int>(basis.size()) / d_;
    assert(r == k_ * m);
    int64_t n = static_cast<int64_t>(size);
    // encode with the constant coefficient most significant so that sorted
    // keys give increasing lexicographic coefficient order
    std::vector<int64_t> pw(static_cast<size_t>(d_));
    pw[static_cast<size_t>(d_ - 1)] = 1;
    for (int i = d_ - 2; i >= 0; --i) pw[static_cast<size_t>(i)] = pw[static_cast<size_t>(i + 1)] * p_;
    std::vector<int64_t> keys;
    keys.reserve(static_cast<size_t>(n));
    std::vector<int64_t> cur(static_cast<size_t>(d_), 0), digits(static_cast<size_t>(std::max(r, 1)), 0);
    auto push = [&]() {
        int64_t key = 0;
        for (int i = 0; i < d_; ++i) key += cur[static_cast<size_t>(i)] * pw[static_cast<size_t>(i)];
        keys.push_back(key);
    };
    push();
    for (int64_t step = 1; step < n; ++step) {
        int i = 0;
        while (true) {
            const int64_t* b = basis.data() + static_cast<size_t>(i) * d_;
            for (int t = 0; t < d_; ++t) cur[static_cast<size_t>(t)] = mod_norm(cur[static_cast<size_t>(t)] + b[t], p_);
            if (++digits[static_cast<size_t>(i)] < p_) break;
            digits[static_cast<size_t>(i)] = 0;
            ++i;
        }
        push();
    }
    std::sort(keys.begin(), keys.end());
    Element e = zero();
    for (int64_t key : keys) {
        for (int i = 0; i < d_; ++i) {
            e.c[static_cast<size_t>(i)] = (key / pw[static_cast<size_t>(i)]) % p_;
        }
        fn(e);
    }
}

std::vector<Element> Tower::sort_elements(int m, int64_t enum_bound) const {
    std::vector<Element> out;
    for_each_in_sort(m, enum_bound, [&](const Element& e) { out.push_back(e); });
    return out;
}

std::string Tower::to_string(const Element& a) const {
    std::string s = "(";
    for (int i = 0; i < d_; ++i) {
        if (i) s += ",";
        s += std::to_string(a.c[static_cast<size_t>(i)]);
    }
    return s + ")";
}

// ---- univariate polynomials over the tower ------------------------------

namespace {
void tp_trim(const Tower& F, Poly& f) {
    while (!f.c.empty() && F.is_zero(f.c.back())) f.c.pop_back();
}
}  // namespace

int poly_deg(const Tower& F, const Poly& f) {
    for (int i = static_cast<int>(f.c.size()) - 1; i >= 0; --i)
        if (!F.is_zero(f.c[static_cast<size_t>(i)])) return i;
    return -1;
}

Poly poly_add(const Tower& F, const Poly& a, const Poly& b) {
    Poly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), F.zero());
    for (size_t i = 0; i < out.c.size(); ++i) {
        Element v = i < a.c.size() ? a.c[i] : F.zero();
        if (i < b.c.size()) v = F.add(v, b.c[i]);
        out.c[i] = v;
    }
    tp_trim(F, out);
    return out;
}

Poly poly_sub(const Tower& F, const Poly& a, const Poly& b) {
    Poly nb = b;
    for (auto& v : nb.c) v = F.neg(v);
    return poly_add(F, a, nb);
}

Poly poly_mul(const Tower& F, const Poly& a, const Poly& b) {
    Poly out;
    if (a.c.empty() || b.c.empty()) return out;
    out.c.assign(a.c.size() + b.c.size() - 1, F.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (F.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            out.c[i + j] = F.add(out.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    tp_trim(F, out);
    return out;
}

Poly poly_scale(const Tower& F, const Element& s, const Poly& a) {
    Poly out = a;
    for (auto& v : out.c) v = F.mul(s, v);
    tp_trim(F, out);
    return out;
}

Poly poly_rem(const Tower& F, const Poly& a, const Poly& b) {
    int db = poly_deg(F, b);
    if (db < 0) throw DomainError("division by zero polynomial");
    Element lead_inv = F.inv(b.c[static_cast<size_t>(db)]);
    Poly r = a;
    tp_trim(F, r);
    while (poly_deg(F, r) >= db) {
        int dr = poly_deg(F, r);
        Element c = F.mul(r.c[static_cast<size_t>(dr)], lead_inv);
        for (int j = 0; j <= db; ++j)
            r.c[static_cast<size_t>(dr - db + j)] =
                F.sub(r.c[static_cast<size_t>(dr - db + j)], F.mul(c, b.c[static_cast<size_t>(j)]));
        tp_trim(F, r);
    }
    return r;
}

Poly poly_gcd(const Tower& F, Poly a, Poly b) {
    tp_trim(F, a);
    tp_trim(F, b);
    while (poly_deg(F, b) >= 0) {
        Poly r = poly_rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    int da = poly_deg(F, a);
    if (da >= 0) a = poly_scale(F, F.inv(a.c[static_cast<size_t>(da)]), a);
    return a;
}

Element poly_eval(const Tower& F, const Poly& f, const Element& at) {
    Element acc = F.zero();
    for (int i = static_cast<int>(f.c.size()) - 1; i >= 0; --i)
        acc = F.add(F.mul(acc, at), f.c[static_cast<size_t>(i)]);
    return acc;
}

namespace {

Poly poly_mulmod(const Tower& F, const Poly& a, const Poly& b, const Poly& f) {
    return poly_rem(F, poly_mul(F, a, b), f);
}

Poly poly_powmod(const Tower& F, Poly base, BigInt e, const Poly& f) {
    Poly r;
    r.c = {F.one()};
    base = poly_rem(F, base, f);
    while (e > 0) {
        if ((e & 1) != 0) r = poly_mulmod(F, r, base, f);
        base = poly_mulmod(F, base, base, f);
        e >>= 1;
    }
    return r;
}

Poly poly_x(const Tower& F) {
    Poly x;
    x.c = {F.zero(), F.one()};
    return x;
}

Element random_element(const Tower& F, std::mt19937_64& rng) {
    Element e = F.zero();
    std::uniform_int_distribution<int64_t> coeff(0, F.p() - 1);
    for (auto& v : e.c) v = coeff(rng);
    return e;
}

// split a monic squarefree product of linear factors
void cz_split(const Tower& F, const Poly& f, std::vector<Element>& roots, std::mt19937_64& rng) {
    int d = poly_deg(F, f);
    if (d <= 0) return;
    if (d == 1) {
        roots.push_back(F.neg(f.c[0]));
        return;
    }
    BigInt field_size = bpow(BigInt(F.p()), F.degree());
    for (int attempt = 0; attempt < 200; ++attempt) {
        Poly h;
        if (F.p() == 2) {
            // trace map of a random multiple of x
            Poly term;
            term.c = {F.zero(), random_element(F, rng)};
            term = poly_rem(F, term, f);
            Poly acc = term;
            for (int i = 1; i < F.degree(); ++i) {
                term = poly_mulmod(F, term, term, f);
                acc = poly_add(F, acc, term);
            }
            h = acc;
        } else {
            Poly lin;
            lin.c = {random_element(F, rng), random_element(F, rng)};
            if (F.is_zero(lin.c[1])) lin.c[1] = F.one();
            Poly t = poly_powmod(F, lin, (field_size - 1) / 2, f);
            t.c.resize(std::max<size_t>(t.c.size(), 1), F.zero());
            t.c[0] = F.sub(t.c[0], F.one());
            h = t;
        }
        Poly g = poly_gcd(F, f, h);
        int dg = poly_deg(F, g);
        if (dg > 0 && dg < d) {
            cz_split(F, g, roots, rng);
            Poly rest = f;
            // divide f by g
            Poly quot;
            {
                Poly r = f;
                int dgg = poly_deg(F, g);
                quot.c.assign(static_cast<size_t>(d - dgg + 1), F.zero());
                Element lead_inv = F.inv(g.c[static_cast<size_t>(dgg)]);
                while (poly_deg(F, r) >= dgg) {
                    int dr = poly_deg(F, r);
                    Element c = F.mul(r.c[static_cast<size_t>(dr)], lead_inv);
                    quot.c[static_cast<size_t>(dr - dgg)] = c;
                    for (int j = 0; j <= dgg; ++j)
                        r.c[static_cast<size_t>(dr - dgg + j)] =
                            F.sub(r.c[static_cast<size_t>(dr - dgg + j)], F.mul(c, g.c[static_cast<size_t>(j)]));
                    tp_trim(F, r);
                }
            }
            cz_split(F, quot, roots, rng);
            return;
        }
    }
    throw Error("root splitting did not converge");
}

}  // namespace

std::vector<Element> poly_roots(const Tower& F, const Poly& f, uint64_t seed) {
    Poly g = f;
    tp_trim(F, g);
    if (g.c.empty()) throw ZeroPolynomial("poly_roots of the zero polynomial");
    std::vector<Element> roots;
    if (poly_deg(F, g) == 0) return roots;
    // strip roots at zero
    size_t t = 0;
    while (t < g.c.size() && F.is_zero(g.c[t])) ++t;
    if (t > 0) {
        roots.push_back(F.zero());
        g.c.erase(g.c.begin(), g.c.begin() + static_cast<long>(t));
    }
    if (poly_deg(F, g) > 0) {
        Element lead = g.c.back();
        g = poly_scale(F, F.inv(lead), g);
        BigInt field_size = bpow(BigInt(F.p()), F.degree());
        Poly xq = poly_powmod(F, poly_x(F), field_size, g);
        Poly lin = poly_gcd(F, g, poly_sub(F, xq, poly_x(F)));
        std::mt19937_64 rng(mix_seed(seed, 0x9d2c5680u));
        cz_split(F, lin, roots, rng);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---- embeddings ----------------------------------------------------------

Embedding::Embedding(const Tower& src, const Tower& dst) : dst_(&dst) {
    if (src.p() != dst.p() || dst.degree() % src.degree() != 0)
        throw PreconditionError("no embedding: tower degrees or characteristics mismatch");
    Poly f;
    f.c.reserve(src.modulus().size());
    for (int64_t c : src.modulus()) f.c.push_back(dst.from_int(c));
    auto roots = poly_roots(dst, f);
    if (roots.empty()) throw Error("modulus has no root in the target field");
    Element r = roots.front();  // sorted, so lexicographically least
    gen_pow_.resize(static_cast<size_t>(src.degree()));
    gen_pow_[0] = dst.one();
    for (size_t i = 1; i < gen_pow_.size(); ++i) gen_pow_[i] = dst.mul(gen_pow_[i - 1], r);
}

Element Embedding::operator()(const Element& a) const {
    Element acc = dst_->zero();
    for (size_t i = 0; i < gen_pow_.size(); ++i) {
        int64_t ci = a.c[i];
        if (ci == 0) continue;
        Element term = gen_pow_[i];
        for (auto& v : term.c) v = mod_norm(v * ci, dst_->p());
        acc = dst_->add(acc, term);
    }
    return acc;
}

}  // namespace pfchi::gf
