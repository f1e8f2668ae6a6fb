#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>
#include <vector>

#include "pfchi/errors.hpp"

namespace pfchi {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

bool is_prime(int64_t n);

// q = p^k with p prime, k >= 1; throws NotPrime otherwise.
std::pair<int64_t, int> prime_power_split(int64_t q);

std::vector<std::pair<int64_t, int>> factorize(int64_t n);

int64_t ipow_checked(int64_t base, int exp);  // TooLarge on int64 overflow
BigInt bpow(const BigInt& base, int64_t exp);

int64_t mod_pow(int64_t base, int64_t exp, int64_t m);
int64_t mod_inv(int64_t a, int64_t m);  // m prime or gcd(a,m)=1; DomainError otherwise

// largest e with p^e | n; n must be nonzero
int valuation(BigInt n, int64_t p);

int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64_checked(int64_t a, int64_t b);

// x ≡ r1 (mod m1), x ≡ r2 (mod m2) with gcd(m1,m2)=1; result mod m1*m2
int64_t crt_pair(int64_t r1, int64_t m1, int64_t r2, int64_t m2);

inline int64_t mod_norm(BigInt v, int64_t m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return static_cast<int64_t>(r);
}

inline int64_t mod_norm(int64_t v, int64_t m) {
    int64_t r = v % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace pfchi
