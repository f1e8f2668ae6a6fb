#include "pfchi/numeric.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace pfchi {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for the full int64 range
    uint64_t d = static_cast<uint64_t>(n - 1);
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        uint64_t x = powmod_u64(a, d, static_cast<uint64_t>(n));
        if (x == 1 || x == static_cast<uint64_t>(n - 1)) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, static_cast<uint64_t>(n));
            if (x == static_cast<uint64_t>(n - 1)) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::pair<int64_t, int> prime_power_split(int64_t q) {
    if (q < 2) throw NotPrime("not a prime power: " + std::to_string(q));
    for (int k = 63; k >= 2; --k) {
        // integer k-th root candidate
        int64_t p = static_cast<int64_t>(std::llround(std::pow(static_cast<double>(q), 1.0 / k)));
        for (int64_t c = p - 1; c <= p + 1; ++c) {
            if (c < 2) continue;
            BigInt pw = bpow(BigInt(c), k);
            if (pw == q && is_prime(c)) return {c, k};
        }
    }
    if (is_prime(q)) return {q, 1};
    throw NotPrime("not a prime power: " + std::to_string(q));
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    std::vector<std::pair<int64_t, int>> out;
    if (n < 0) n = -n;
    for (int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int64_t ipow_checked(int64_t base, int exp) {
    BigInt r = bpow(BigInt(base), exp);
    if (r > std::numeric_limits<int64_t>::max())
        throw TooLarge("integer power overflows 64 bits");
    return static_cast<int64_t>(r);
}

BigInt bpow(const BigInt& base, int64_t exp) {
    BigInt r = 1, b = base;
    int64_t e = exp;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

int64_t mod_pow(int64_t base, int64_t exp, int64_t m) {
    uint64_t b = static_cast<uint64_t>(mod_norm(base, m));
    return static_cast<int64_t>(powmod_u64(b, static_cast<uint64_t>(exp), static_cast<uint64_t>(m)));
}

int64_t mod_inv(int64_t a, int64_t m) {
    int64_t t = 0, new_t = 1;
    int64_t r = m, new_r = mod_norm(a, m);
    while (new_r != 0) {
        int64_t qt = r / new_r;
        int64_t tmp = t - qt * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - qt * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw DomainError("no modular inverse of " + std::to_string(a) +
                                  " mod " + std::to_string(m));
    return mod_norm(t, m);
}

int valuation(BigInt n, int64_t p) {
    if (n == 0) throw DomainError("valuation of zero");
    if (n < 0) n = -n;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t lcm64_checked(int64_t a, int64_t b) {
    BigInt l = BigInt(a) / std::gcd(a, b) * b;
    if (l > std::numeric_limits<int64_t>::max()) throw TooLarge("lcm overflows 64 bits");
    return static_cast<int64_t>(l);
}

int64_t crt_pair(int64_t r1, int64_t m1, int64_t r2, int64_t m2) {
    // x = r1 + m1 * t with t ≡ (r2 - r1)/m1 (mod m2)
    int64_t t = mod_norm((r2 - r1) % m2, m2);
    t = static_cast<int64_t>((static_cast<__int128>(t) * mod_inv(m1 % m2, m2)) % m2);
    BigInt x = BigInt(r1) + BigInt(m1) * t;
    return mod_norm(x, m1 * m2);
}

}  // namespace pfchi
