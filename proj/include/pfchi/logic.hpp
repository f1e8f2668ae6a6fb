#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pfchi/gf.hpp"

namespace pfchi::logic {

/// Term of the multi-sorted field language. s(t) applies the q-power map
/// sigma once; s_inv(t) applies sigma^(N-1), which inverts it on every sort
/// of a degree-N tower.
struct Term {
    enum class Kind { Var, Int, Add, Sub, Neg, Mul, Pow, Frob, FrobInv };
    Kind kind;
    std::string name;       // Var
    int64_t value = 0;      // Int
    int exponent = 0;       // Pow, >= 1
    std::vector<Term> args;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Formula with the usual connectives, exists/forall, and the counting
/// quantifier Parity(n, k): "the number of witnesses is congruent to k mod n".
/// t != u is parsed as Not(Eq(t, u)).
struct Formula {
    enum class Kind { Eq, Not, And, Or, Implies, Iff, Exists, Forall, Parity };
    Kind kind;
    std::vector<Term> terms;     // Eq: exactly two
    std::vector<Formula> sub;    // connective operands or quantifier body
    std::string var;             // quantifiers
    int sort = 0;                // quantifier sort index m of K_m
    int64_t mod_n = 0;           // Parity, >= 2
    int64_t mod_k = 0;           // Parity, 0 <= k < n

    friend bool operator==(const Formula&, const Formula&) = default;
};

/// Concrete syntax, whitespace-insensitive:
///   formula := iff, with quantifiers allowed wherever an atom is and their
///   body extending as far right as possible
///   iff  := impl ("<->" impl)*          (left associative)
///   impl := disj ["->" impl]            (right associative)
///   disj := conj ("|" conj)*   conj := neg ("&" neg)*
///   neg  := "!" neg | quant | atom
///   atom := term ("="|"!=") term | "(" formula ")"
///   quant := ("exists" | "forall" | "mu" "[" INT "," INT "]") VAR ":" "K" INT "." formula
///   term := sums/products/negation of: VAR, INT, t^INT (INT >= 1),
///           "s(" term ")", "s_inv(" term ")", "(" term ")"
/// Throws ParseError (SortError for a malformed sort annotation).
Formula parse(const std::string& text);

/// Term-only entry point for the same syntax, sigma allowed.
Term parse_term(const std::string& text);

/// render(parse(t)) reparses to an equal AST.
std::string render(const Formula& f);
std::string render(const Term& t);

/// Least common multiple of every quantifier sort in f (1 if none), the
/// natural tower degree for evaluating a sentence.
int sort_lcm(const Formula& f);

struct TypedVar {
    std::string name;
    int sort;
};

/// Interpretation context: the tower fixes q and the sorts; dual = true
/// reinterprets s as sigma^(N-1) and s_inv as sigma (the mirror structure
/// with the inverse automorphism).
struct Model {
    const gf::Tower* tower;
    int64_t bound = gf::kDefaultEnumBound;
    bool dual = false;
};

using Env = std::map<std::string, gf::Element>;

/// Truth value of f under the assignment. Quantified sorts within the bound
/// are enumerated; a quantifier over a larger sort is still evaluated when
/// its body is guarded by a sigma-free polynomial equation in the bound
/// variable (only the equation's roots can matter), and throws TooLarge
/// otherwise. Throws UnboundVariable and SortNotInTower as appropriate.
bool evaluate(const Formula& f, const Model& M, const Env& assignment = {});

/// |{a-bar : f(a-bar) holds}| over the given free variables, exact.
/// Throws TooLarge when the product of the sort sizes exceeds the bound.
BigInt count_solutions(const Formula& f, const std::vector<TypedVar>& free_vars, const Model& M);

/// count_solutions reduced mod n (n >= 1).
int64_t count_mod(const Formula& f, const std::vector<TypedVar>& free_vars, const Model& M,
                  int64_t n);

}  // namespace pfchi::logic
