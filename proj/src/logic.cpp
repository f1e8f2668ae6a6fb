#include "pfchi/logic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>

#include "pfchi/numeric.hpp"

namespace pfchi::logic {

namespace {

// ---- tokens --------------------------------------------------------------

struct Token {
    enum class Kind { Ident, Int, Sym, End };
    Kind kind;
    std::string text;
    size_t pos;
};

bool is_keyword(const std::string& s) {
    return s == "exists" || s == "forall" || s == "mu" || s == "s" || s == "s_inv";
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Token::Kind::Ident, text.substr(i, j - i), start});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Token::Kind::Int, text.substr(i, j - i), start});
            i = j;
        } else if (text.compare(i, 3, "<->") == 0) {
            out.push_back({Token::Kind::Sym, "<->", start});
            i += 3;
        } else if (text.compare(i, 2, "->") == 0 || text.compare(i, 2, "!=") == 0) {
            out.push_back({Token::Kind::Sym, text.substr(i, 2), start});
            i += 2;
        } else if (std::string("()[].,:=!&|+-*^").find(c) != std::string::npos) {
            out.push_back({Token::Kind::Sym, std::string(1, c), start});
            ++i;
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
        }
    }
    out.push_back({Token::Kind::End, "", text.size()});
    return out;
}

// ---- recursive-descent parser ---------------------------------------------

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;

    const Token& peek() const { return toks[at]; }
    bool is_sym(const std::string& s) const {
        return peek().kind == Token::Kind::Sym && peek().text == s;
    }
    bool accept_sym(const std::string& s) {
        if (!is_sym(s)) return false;
        ++at;
        return true;
    }
    void expect_sym(const std::string& s) {
        if (!accept_sym(s)) throw ParseError("expected '" + s + "'", peek().pos);
    }
    bool at_ident(const std::string& s) const {
        return peek().kind == Token::Kind::Ident && peek().text == s;
    }

    int64_t expect_int() {
        if (peek().kind != Token::Kind::Int) throw ParseError("expected an integer", peek().pos);
        const Token& t = toks[at++];
        try {
            return std::stoll(t.text);
        } catch (const std::exception&) {
            throw ParseError("integer literal out of range", t.pos);
        }
    }

    // --- terms ---

    Term term() { return sum(); }

    Term sum() {
        Term l = product();
        while (is_sym("+") || is_sym("-")) {
            bool plus = peek().text == "+";
            ++at;
            Term r = product();
            Term n;
            n.kind = plus ? Term::Kind::Add : Term::Kind::Sub;
            n.args = {std::move(l), std::move(r)};
            l = std::move(n);
        }
        return l;
    }

    Term product() {
        Term l = unary();
        while (accept_sym("*")) {
            Term r = unary();
            Term n;
            n.kind = Term::Kind::Mul;
            n.args = {std::move(l), std::move(r)};
            l = std::move(n);
        }
        return l;
    }

    Term unary() {
        if (accept_sym("-")) {
            Term n;
            n.kind = Term::Kind::Neg;
            n.args = {unary()};
            return n;
        }
        return power();
    }

    Term power() {
        Term base = primary();
        while (accept_sym("^")) {
            size_t pos = peek().pos;
            int64_t e = expect_int();
            if (e < 1 || e > 1'000'000) throw ParseError("exponent must be a positive integer", pos);
            Term n;
            n.kind = Term::Kind::Pow;
            n.exponent = static_cast<int>(e);
            n.args = {std::move(base)};
            base = std::move(n);
        }
        return base;
    }

    static bool sort_shaped(const std::string& s) {
        if (s.size() < 2 || s[0] != 'K') return false;
        return std::all_of(s.begin() + 1, s.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    Term primary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Int) {
            Term n;
            n.kind = Term::Kind::Int;
            n.value = expect_int();
            return n;
        }
        if (t.kind == Token::Kind::Ident) {
            if (t.text == "s" || t.text == "s_inv") {
                bool inv = t.text == "s_inv";
                ++at;
                expect_sym("(");
                Term inner = term();
                expect_sym(")");
                Term n;
                n.kind = inv ? Term::Kind::FrobInv : Term::Kind::Frob;
                n.args = {std::move(inner)};
                return n;
            }
            if (is_keyword(t.text)) throw ParseError("'" + t.text + "' is reserved", t.pos);
            if (sort_shaped(t.text)) throw ParseError("sort names cannot be variables", t.pos);
            Term n;
            n.kind = Term::Kind::Var;
            n.name = t.text;
            ++at;
            return n;
        }
        if (accept_sym("(")) {
            Term inner = term();
            expect_sym(")");
            return inner;
        }
        throw ParseError("expected a term", t.pos);
    }

    // --- formulas ---

    Formula formula() { return iff(); }

    Formula iff() {
        Formula l = impl();
        while (accept_sym("<->")) {
            Formula r = impl();
            Formula n;
            n.kind = Formula::Kind::Iff;
            n.sub = {std::move(l), std::move(r)};
            l = std::move(n);
        }
        return l;
    }

    Formula impl() {
        Formula l = disj();
        if (accept_sym("->")) {
            Formula r = impl();  // right associative
            Formula n;
            n.kind = Formula::Kind::Implies;
            n.sub = {std::move(l), std::move(r)};
            return n;
        }
        return l;
    }

    Formula disj() {
        Formula l = conj();
        while (accept_sym("|")) {
            Formula r = conj();
            Formula n;
            n.kind = Formula::Kind::Or;
            n.sub = {std::move(l), std::move(r)};
            l = std::move(n);
        }
        return l;
    }

    Formula conj() {
        Formula l = neg();
        while (accept_sym("&")) {
            Formula r = neg();
            Formula n;
            n.kind = Formula::Kind::And;
            n.sub = {std::move(l), std::move(r)};
            l = std::move(n);
        }
        return l;
    }

    bool at_quantifier() const {
        return at_ident("exists") || at_ident("forall") || at_ident("mu");
    }

    Formula neg() {
        if (accept_sym("!")) {
            Formula n;
            n.kind = Formula::Kind::Not;
            n.sub = {neg()};
            return n;
        }
        if (at_quantifier()) return quant();
        return atom();
    }

    Formula quant() {
        Formula n;
        if (at_ident("exists"))
            n.kind = Formula::Kind::Exists;
        else if (at_ident("forall"))
            n.kind = Formula::Kind::Forall;
        else
            n.kind = Formula::Kind::Parity;
        ++at;
        if (n.kind == Formula::Kind::Parity) {
            expect_sym("[");
            size_t pos = peek().pos;
            n.mod_n = expect_int();
            expect_sym(",");
            size_t kpos = peek().pos;
            n.mod_k = expect_int();
            expect_sym("]");
            if (n.mod_n < 2) throw ParseError("parity modulus must be >= 2", pos);
            if (n.mod_k < 0 || n.mod_k >= n.mod_n)
                throw ParseError("parity residue must lie in [0, n)", kpos);
        }
        const Token& v = peek();
        if (v.kind != Token::Kind::Ident || is_keyword(v.text))
            throw ParseError("expected a variable name", v.pos);
        if (sort_shaped(v.text)) throw ParseError("sort names cannot be variables", v.pos);
        n.var = v.text;
        ++at;
        expect_sym(":");
        const Token& srt = peek();
        if (srt.kind != Token::Kind::Ident || !sort_shaped(srt.text))
            throw SortError("expected a sort of the form K<m>", srt.pos);
        long m = std::stol(srt.text.substr(1));
        if (m < 1) throw SortError("sort index must be >= 1", srt.pos);
        n.sort = static_cast<int>(m);
        ++at;
        expect_sym(".");
        n.sub.push_back(formula());  // body extends maximally to the right
        return n;
    }

    Formula atom() {
        // '(' is ambiguous: it may open a parenthesized formula or a
        // parenthesized term; try the formula reading first and back off.
        if (is_sym("(")) {
            size_t save = at;
            try {
                ++at;
                Formula f = formula();
                expect_sym(")");
                return f;
            } catch (const ParseError&) {
                at = save;
            }
        }
        Term l = term();
        bool negated;
        if (accept_sym("=")) {
            negated = false;
        } else if (accept_sym("!=")) {
            negated = true;
        } else {
            throw ParseError("expected '=' or '!='", peek().pos);
        }
        Term r = term();
        Formula eq;
        eq.kind = Formula::Kind::Eq;
        eq.terms = {std::move(l), std::move(r)};
        if (!negated) return eq;
        Formula n;
        n.kind = Formula::Kind::Not;
        n.sub = {std::move(eq)};
        return n;
    }
};

// ---- rendering -------------------------------------------------------------

// term precedence: Add/Sub 1, Mul 2, Neg 3, Pow 4, atoms 5
void render_term_prec(const Term& t, int parent, std::string& out) {
    auto wrap = [&](int prec, auto&& body) {
        bool need = prec < parent;
        if (need) out += "(";
        body();
        if (need) out += ")";
    };
    switch (t.kind) {
        case Term::Kind::Var:
            out += t.name;
            break;
        case Term::Kind::Int:
            out += std::to_string(t.value);
            break;
        case Term::Kind::Add:
            wrap(1, [&] {
                render_term_prec(t.args[0], 1, out);
                out += " + ";
                render_term_prec(t.args[1], 2, out);
            });
            break;
        case Term::Kind::Sub:
            wrap(1, [&] {
                render_term_prec(t.args[0], 1, out);
                out += " - ";
                render_term_prec(t.args[1], 2, out);
            });
            break;
        case Term::Kind::Mul:
            wrap(2, [&] {
                render_term_prec(t.args[0], 2, out);
                out += "*";
                render_term_prec(t.args[1], 3, out);
            });
            break;
        case Term::Kind::Neg:
            wrap(3, [&] {
                out += "-";
                render_term_prec(t.args[0], 3, out);
            });
            break;
        case Term::Kind::Pow:
            wrap(4, [&] {
                render_term_prec(t.args[0], 5, out);
                out += "^" + std::to_string(t.exponent);
            });
            break;
        case Term::Kind::Frob:
            out += "s(";
            render_term_prec(t.args[0], 0, out);
            out += ")";
            break;
        case Term::Kind::FrobInv:
            out += "s_inv(";
            render_term_prec(t.args[0], 0, out);
            out += ")";
            break;
    }
}

// formula precedence: Iff 1, Implies 2, Or 3, And 4, Not/atoms 5
void render_formula_prec(const Formula& f, int parent, std::string& out) {
    auto wrap = [&](int prec, auto&& body) {
        bool need = prec < parent;
        if (need) out += "(";
        body();
        if (need) out += ")";
    };
    switch (f.kind) {
        case Formula::Kind::Eq:
            render_term_prec(f.terms[0], 0, out);
            out += " = ";
            render_term_prec(f.terms[1], 0, out);
            break;
        case Formula::Kind::Not:
            if (f.sub[0].kind == Formula::Kind::Eq) {
                render_term_prec(f.sub[0].terms[0], 0, out);
                out += " != ";
                render_term_prec(f.sub[0].terms[1], 0, out);
            } else {
                out += "!";
                render_formula_prec(f.sub[0], 5, out);
            }
            break;
        case Formula::Kind::And:
            wrap(4, [&] {
                render_formula_prec(f.sub[0], 4, out);
                out += " & ";
                render_formula_prec(f.sub[1], 5, out);
            });
            break;
        case Formula::Kind::Or:
            wrap(3, [&] {
                render_formula_prec(f.sub[0], 3, out);
                out += " | ";
                render_formula_prec(f.sub[1], 4, out);
            });
            break;
        case Formula::Kind::Implies:
            wrap(2, [&] {
                render_formula_prec(f.sub[0], 3, out);
                out += " -> ";
                render_formula_prec(f.sub[1], 2, out);
            });
            break;
        case Formula::Kind::Iff:
            wrap(1, [&] {
                render_formula_prec(f.sub[0], 1, out);
                out += " <-> ";
                render_formula_prec(f.sub[1], 2, out);
            });
            break;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
        case Formula::Kind::Parity: {
            bool need = parent > 0;
            if (need) out += "(";
            if (f.kind == Formula::Kind::Exists)
                out += "exists ";
            else if (f.kind == Formula::Kind::Forall)
                out += "forall ";
            else
                out += "mu[" + std::to_string(f.mod_n) + "," + std::to_string(f.mod_k) + "] ";
            out += f.var + ":K" + std::to_string(f.sort) + ". ";
            render_formula_prec(f.sub[0], 0, out);
            if (need) out += ")";
            break;
        }
    }
}

// ---- evaluation -------------------------------------------------------------

bool term_mentions(const Term& t, const std::string& var) {
    if (t.kind == Term::Kind::Var) return t.name == var;
    return std::any_of(t.args.begin(), t.args.end(),
                       [&](const Term& a) { return term_mentions(a, var); });
}

constexpr int kGuardDegreeCap = 512;

struct Evaluator {
    const Model& M;
    Env env;

    const gf::Tower& F() const { return *M.tower; }

    gf::Element term(const Term& t) {
        switch (t.kind) {
            case Term::Kind::Var: {
                auto it = env.find(t.name);
                if (it == env.end()) throw UnboundVariable("variable '" + t.name + "' is not bound");
                return it->second;
            }
            case Term::Kind::Int:
                return F().from_int(t.value);
            case Term::Kind::Add:
                return F().add(term(t.args[0]), term(t.args[1]));
            case Term::Kind::Sub:
                return F().sub(term(t.args[0]), term(t.args[1]));
            case Term::Kind::Neg:
                return F().neg(term(t.args[0]));
            case Term::Kind::Mul:
                return F().mul(term(t.args[0]), term(t.args[1]));
            case Term::Kind::Pow:
                return F().pow(term(t.args[0]), t.exponent);
            case Term::Kind::Frob:
                return F().frobenius_pow(term(t.args[0]), M.dual ? F().N() - 1 : 1);
            case Term::Kind::FrobInv:
                return F().frobenius_pow(term(t.args[0]), M.dual ? 1 : F().N() - 1);
        }
        throw Error("unreachable term kind");
    }

    bool operator()(const Formula& f) {
        switch (f.kind) {
            case Formula::Kind::Eq:
                return term(f.terms[0]) == term(f.terms[1]);
            case Formula::Kind::Not:
                return !(*this)(f.sub[0]);
            case Formula::Kind::And:
                return (*this)(f.sub[0]) && (*this)(f.sub[1]);
            case Formula::Kind::Or:
                return (*this)(f.sub[0]) || (*this)(f.sub[1]);
            case Formula::Kind::Implies:
                return !(*this)(f.sub[0]) || (*this)(f.sub[1]);
            case Formula::Kind::Iff:
                return (*this)(f.sub[0]) == (*this)(f.sub[1]);
            case Formula::Kind::Exists:
            case Formula::Kind::Forall:
            case Formula::Kind::Parity:
                return quantifier(f);
        }
        throw Error("unreachable formula kind");
    }

    // The bound variable's sort polynomial, when the term is sigma-free in
    // the bound variable and all other variables are already assigned.
    std::optional<gf::Poly> to_poly(const Term& t, const std::string& var) {
        switch (t.kind) {
            case Term::Kind::Var: {
                gf::Poly p;
                if (t.name == var) {
                    p.c = {F().zero(), F().one()};
                    return p;
                }
                auto it = env.find(t.name);
                if (it == env.end()) return std::nullopt;
                p.c = {it->second};
                return p;
            }
            case Term::Kind::Int: {
                gf::Poly p;
                p.c = {F().from_int(t.value)};
                return p;
            }
            case Term::Kind::Add: {
                auto a = to_poly(t.args[0], var), b = to_poly(t.args[1], var);
                if (!a || !b) return std::nullopt;
                return gf::poly_add(F(), *a, *b);
            }
            case Term::Kind::Sub: {
                auto a = to_poly(t.args[0], var), b = to_poly(t.args[1], var);
                if (!a || !b) return std::nullopt;
                return gf::poly_sub(F(), *a, *b);
            }
            case Term::Kind::Neg: {
                auto a = to_poly(t.args[0], var);
                if (!a) return std::nullopt;
                return gf::poly_scale(F(), F().from_int(-1), *a);
            }
            case Term::Kind::Mul: {
                auto a = to_poly(t.args[0], var), b = to_poly(t.args[1], var);
                if (!a || !b) return std::nullopt;
                if (gf::poly_deg(F(), *a) + gf::poly_deg(F(), *b) > kGuardDegreeCap)
                    return std::nullopt;
                return gf::poly_mul(F(), *a, *b);
            }
            case Term::Kind::Pow: {
                auto a = to_poly(t.args[0], var);
                if (!a) return std::nullopt;
                int d = gf::poly_deg(F(), *a);
                if (d > 0 && static_cast<int64_t>(d) * t.exponent > kGuardDegreeCap)
                    return std::nullopt;
                gf::Poly r;
                r.c = {F().one()};
                for (int i = 0; i < t.exponent; ++i) r = gf::poly_mul(F(), r, *a);
                return r;
            }
            case Term::Kind::Frob:
            case Term::Kind::FrobInv: {
                if (term_mentions(t.args[0], var)) return std::nullopt;
                gf::Poly p;
                p.c = {term(t)};
                return p;
            }
        }
        return std::nullopt;
    }

    bool quantifier(const Formula& f) {
        BigInt size = F().sort_size(f.sort);  // validates the sort
        if (size <= M.bound) {
            int64_t count = 0;
            bool all = true, any = false;
            auto saved = env.find(f.var) != env.end() ? std::optional(env[f.var]) : std::nullopt;
            F().for_each_in_sort(f.sort, M.bound, [&](const gf::Element& a) {
                env[f.var] = a;
                bool v = (*this)(f.sub[0]);
                all = all && v;
                any = any || v;
                if (v) ++count;
            });
            if (saved)
                env[f.var] = *saved;
            else
                env.erase(f.var);
            if (f.kind == Formula::Kind::Forall) return all;
            if (f.kind == Formula::Kind::Exists) return any;
            return count % f.mod_n == f.mod_k;
        }
        return guarded_quantifier(f, size);
    }

    // Sort too large to walk: the body must pin the bound variable down to
    // the roots of a polynomial equation. For forall the guard appears as
    // "equation -> psi" (everything off the root set holds vacuously), for
    // exists/parity as "equation & psi" or a bare equation.
    bool guarded_quantifier(const Formula& f, const BigInt& size) {
        const Formula& body = f.sub[0];
        const Formula* eq = nullptr;
        const Formula* psi = nullptr;
        if (f.kind == Formula::Kind::Forall) {
            if (body.kind == Formula::Kind::Implies && body.sub[0].kind == Formula::Kind::Eq) {
                eq = &body.sub[0];
                psi = &body.sub[1];
            } else if (body.kind == Formula::Kind::Eq) {
                eq = &body;
            }
        } else {
            if (body.kind == Formula::Kind::And && body.sub[0].kind == Formula::Kind::Eq) {
                eq = &body.sub[0];
                psi = &body.sub[1];
            } else if (body.kind == Formula::Kind::Eq) {
                eq = &body;
            }
        }
        auto too_large = [&]() -> TooLarge {
            return TooLarge("quantifier over K_" + std::to_string(f.sort) + " with " + size.str() +
                            " elements exceeds the bound and has no equation guard");
        };
        if (!eq) throw too_large();
        auto lhs = to_poly(eq->terms[0], f.var);
        auto rhs = to_poly(eq->terms[1], f.var);
        if (!lhs || !rhs) throw too_large();
        gf::Poly guard = gf::poly_sub(F(), *lhs, *rhs);
        int deg = gf::poly_deg(F(), guard);
        if (deg < 0) throw too_large();  // identically true equation pins nothing down
        std::vector<gf::Element> sat;
        if (deg > 0) {
            for (const auto& r : gf::poly_roots(F(), guard))
                if (F().in_sort(r, f.sort)) sat.push_back(r);
        }
        auto saved = env.find(f.var) != env.end() ? std::optional(env[f.var]) : std::nullopt;
        int64_t count = 0;
        bool all = true, any = false;
        for (const auto& r : sat) {
            bool v = true;
            if (psi) {
                env[f.var] = r;
                v = (*this)(*psi);
            }
            all = all && v;
            any = any || v;
            if (v) ++count;
        }
        if (saved)
            env[f.var] = *saved;
        else
            env.erase(f.var);
        if (f.kind == Formula::Kind::Forall) {
            // for bare "forall x. equation" the non-roots falsify it outright
            if (!psi && BigInt(static_cast<int64_t>(sat.size())) != size) return false;
            return all;
        }
        if (f.kind == Formula::Kind::Exists) return any;
        return count % f.mod_n == f.mod_k;
    }
};

void collect_sorts(const Formula& f, std::vector<int>& out) {
    if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall ||
        f.kind == Formula::Kind::Parity)
        out.push_back(f.sort);
    for (const auto& s : f.sub) collect_sorts(s, out);
}

}  // namespace

Formula parse(const std::string& text) {
    Parser p{tokenize(text)};
    Formula f = p.formula();
    if (p.peek().kind != Token::Kind::End)
        throw ParseError("unexpected trailing input", p.peek().pos);
    return f;
}

Term parse_term(const std::string& text) {
    Parser p{tokenize(text)};
    Term t = p.term();
    if (p.peek().kind != Token::Kind::End)
        throw ParseError("unexpected trailing input", p.peek().pos);
    return t;
}

std::string render(const Formula& f) {
    std::string out;
    render_formula_prec(f, 0, out);
    return out;
}

std::string render(const Term& t) {
    std::string out;
    render_term_prec(t, 0, out);
    return out;
}

int sort_lcm(const Formula& f) {
    std::vector<int> sorts;
    collect_sorts(f, sorts);
    int64_t l = 1;
    for (int m : sorts) l = lcm64_checked(l, m);
    if (l > 1'000'000) throw TooLarge("tower degree needed by the formula is impractical");
    return static_cast<int>(l);
}

bool evaluate(const Formula& f, const Model& M, const Env& assignment) {
    Evaluator ev{M, assignment};
    return ev(f);
}

BigInt count_solutions(const Formula& f, const std::vector<TypedVar>& free_vars, const Model& M) {
    BigInt product = 1;
    for (const auto& v : free_vars) product *= M.tower->sort_size(v.sort);
    if (product > M.bound)
        throw TooLarge("free-variable space has " + product.str() + " tuples, past the bound");
    Evaluator ev{M, {}};
    BigInt count = 0;
    std::function<void(size_t)> walk = [&](size_t idx) {
        if (idx == free_vars.size()) {
            if (ev(f)) ++count;
            return;
        }
        M.tower->for_each_in_sort(free_vars[idx].sort, M.bound, [&](const gf::Element& a) {
            ev.env[free_vars[idx].name] = a;
            walk(idx + 1);
        });
        ev.env.erase(free_vars[idx].name);
    };
    walk(0);
    return count;
}

int64_t count_mod(const Formula& f, const std::vector<TypedVar>& free_vars, const Model& M,
                  int64_t n) {
    if (n < 1) throw PreconditionError("modulus must be >= 1");
    return mod_norm(count_solutions(f, free_vars, M), n);
}

}  // namespace pfchi::logic
