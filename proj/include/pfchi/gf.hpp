#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pfchi/errors.hpp"
#include "pfchi/numeric.hpp"

namespace pfchi::gf {

inline constexpr int64_t kDefaultEnumBound = 10'000'000;

/// Element of the top field F_(q^N): coefficient vector of its representative
/// polynomial modulo the tower modulus, c[i] = coefficient of x^i, 0 <= c[i] < p.
/// Comparison is lexicographic on the vector (constant coefficient first).
struct Element {
    std::vector<int64_t> c;

    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element&, const Element&) = default;
};

/// The tower F_p ⊆ F_q ⊆ F_(q^N), q = p^k, realized as F_p[x]/(f) with f monic
/// irreducible of degree k*N. Sort K_m (for m | N) is the fixed field of the
/// m-th power of the q-Frobenius, i.e. the copy of F_(q^m) inside the top field.
class Tower {
  public:
    /// Canonical constructor: f is the lexicographically least monic
    /// irreducible of degree k*N (non-leading coefficients compared from the
    /// x^(d-1) one down, constant term last). Requires p^(k*N) <= enum_bound.
    static Tower make(int64_t p, int k, int N, int64_t enum_bound = kDefaultEnumBound);

    /// Arithmetic-only tower with no size cap: enumeration of sorts past the
    /// bound still fails, but element arithmetic in large fields works. The
    /// modulus comes from the lex scan when that is affordable and otherwise
    /// from a deterministic seeded search, so towers are reproducible.
    static Tower make_arithmetic(int64_t p, int k, int N);

    int64_t p() const { return p_; }
    int k() const { return k_; }
    int N() const { return N_; }
    int degree() const { return d_; }          // k*N
    int64_t q() const { return q_; }           // p^k
    const std::vector<int64_t>& modulus() const { return modulus_; }

    BigInt sort_size(int m) const;             // q^m, with m | N checked

    Element zero() const;
    Element one() const;
    Element from_int(int64_t v) const;         // image of an integer in F_p
    Element generator() const;                 // the class of x

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;       // DomainError on zero
    Element pow(const Element& a, const BigInt& e) const;
    bool is_zero(const Element& a) const;

    Element frobenius(const Element& a) const;      // x -> x^q
    Element p_frobenius(const Element& a) const;    // x -> x^p
    Element frobenius_pow(const Element& a, int j) const;
    Element frobenius_inv(const Element& a) const;  // x -> x^(q^(N-1))

    /// Membership in K_m. Throws SortNotInTower unless m >= 1 and m | N.
    bool in_sort(const Element& a, int m) const;

    /// All q^m elements of K_m in increasing lexicographic order.
    /// Throws TooLarge when q^m exceeds the bound.
    std::vector<Element> sort_elements(int m, int64_t enum_bound = kDefaultEnumBound) const;
    void for_each_in_sort(int m, int64_t enum_bound,
                          const std::function<void(const Element&)>& fn) const;

    std::string to_string(const Element& a) const;

  private:
    Tower() = default;
    void init(int64_t p, int k, int N, std::vector<int64_t> modulus);
    const std::vector<int64_t>& sigma_q_pow(int m) const;  // matrix of x -> x^(q^m)
    std::vector<int64_t> kernel_basis(int m) const;        // basis of K_m over F_p, flattened

    int64_t p_ = 0;
    int k_ = 0;
    int N_ = 0;
    int d_ = 0;
    int64_t q_ = 0;
    std::vector<int64_t> modulus_;              // length d+1, monic
    std::vector<int64_t> pmat_;                 // d*d matrix of x -> x^p, row major
    mutable std::map<int, std::vector<int64_t>> sigma_cache_;  // m -> matrix of sigma^m
};

/// Dense univariate polynomial over the tower's top field, little-endian.
struct Poly {
    std::vector<Element> c;
};

int poly_deg(const Tower& F, const Poly& f);
Poly poly_add(const Tower& F, const Poly& a, const Poly& b);
Poly poly_sub(const Tower& F, const Poly& a, const Poly& b);
Poly poly_mul(const Tower& F, const Poly& a, const Poly& b);
Poly poly_scale(const Tower& F, const Element& s, const Poly& a);
Poly poly_rem(const Tower& F, const Poly& a, const Poly& b);
Poly poly_gcd(const Tower& F, Poly a, Poly b);  // monic result
Element poly_eval(const Tower& F, const Poly& f, const Element& at);

/// Distinct roots of f in the top field, sorted lexicographically.
/// Cantor-Zassenhaus behind a fixed seed; ZeroPolynomial when f == 0.
std::vector<Element> poly_roots(const Tower& F, const Poly& f, uint64_t seed = 1);

/// Field homomorphism between towers over the same prime: the generator of
/// src goes to the lexicographically least root of src's modulus inside dst.
/// Requires src.degree() | dst.degree().
class Embedding {
  public:
    Embedding(const Tower& src, const Tower& dst);
    Element operator()(const Element& a) const;

  private:
    const Tower* dst_;
    std::vector<Element> gen_pow_;  // images of x^0..x^(d_src-1)
};

}  // namespace pfchi::gf
