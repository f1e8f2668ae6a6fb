#include "pfchi/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pfchi/builtins.hpp"
#include "pfchi/errors.hpp"
#include "pfchi/euler.hpp"
#include "pfchi/geometry.hpp"
#include "pfchi/logic.hpp"
#include "pfchi/numeric.hpp"
#include "pfchi/padic.hpp"
#include "pfchi/suites.hpp"
#include "pfchi/torsion.hpp"
#include "pfchi/zeta.hpp"

namespace pfchi::cli {

namespace {

using nlohmann::ordered_json;

ordered_json json_big(const BigInt& v) {
    if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max())
        return static_cast<int64_t>(v);
    return v.str();
}

std::string trimmed(const std::string& s) {
    auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

int64_t parse_int(const std::string& piece, const char* what) {
    int64_t v = 0;
    auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc() || p != piece.data() + piece.size())
        throw ParseError(std::string("cannot read ") + what + " '" + piece + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) out.push_back(trimmed(cur));
    return out;
}

std::vector<int64_t> parse_moduli(const std::string& text) {
    std::vector<int64_t> out;
    for (const auto& piece : split(text, ',')) {
        int64_t m = parse_int(piece, "modulus");
        if (m < 2) throw ParseError("moduli must be at least 2");
        out.push_back(m);
    }
    return out;
}

std::vector<logic::TypedVar> parse_free(const std::string& text) {
    std::vector<logic::TypedVar> out;
    if (trimmed(text).empty()) return out;
    for (const auto& piece : split(text, ',')) {
        auto colon = piece.find(':');
        if (colon == std::string::npos || colon + 1 >= piece.size() || piece[colon + 1] != 'K')
            throw SortError("free variables look like x:K1, got '" + piece + "'");
        std::string name = trimmed(piece.substr(0, colon));
        int64_t sort = parse_int(trimmed(piece.substr(colon + 2)), "sort index");
        if (name.empty() || sort < 1)
            throw SortError("free variables look like x:K1, got '" + piece + "'");
        out.push_back({name, static_cast<int>(sort)});
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Flags that pick the object whose zeta data the command works on.
struct SourceFlags {
    std::string curve, builtin, variety;
    int64_t q = 0;
    int genus = 2;
    int counts_upto = 0;
};

void add_source_flags(CLI::App* cmd, SourceFlags& s) {
    auto* c = cmd->add_option("--curve", s.curve, "Weierstrass equation over F_q");
    auto* b = cmd->add_option("--builtin", s.builtin, "named builtin set");
    auto* v = cmd->add_option("--variety", s.variety, "variety description file");
    c->excludes(b);
    c->excludes(v);
    b->excludes(v);
    cmd->add_option("--q", s.q, "base field size for --curve or --builtin");
    cmd->add_option("--genus", s.genus, "degree bound when fitting a variety file")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--counts-upto", s.counts_upto, "extension counts to fit from")
        ->check(CLI::PositiveNumber);
}

zeta::ZetaData fit_source(const SourceFlags& s, const RunConfig& cfg) {
    if (!s.curve.empty()) {
        if (!s.q) throw ParseError("--curve needs --q");
        torsion::Curve c = builtins::parse_curve(s.curve, s.q);
        int m = s.counts_upto > 0 ? s.counts_upto : 1;
        zeta::CountSeries series{c.q, {}};
        for (int n = 1; n <= m; ++n)
            series.counts.push_back(geometry::count_elliptic(c.a1, c.a2, c.a3, c.a4, c.a6, c.q,
                                                             n, cfg.enumeration_bound));
        return zeta::fit_curve_lpoly(series, 1);
    }
    if (!s.builtin.empty()) {
        if (!s.q) throw ParseError("--builtin needs --q");
        auto series = builtins::closed_series(s.builtin, s.q);
        for (int n = static_cast<int>(series.counts.size()) + 1; n <= s.counts_upto; ++n)
            series.counts.push_back(builtins::closed_count(s.builtin, s.q, n));
        return zeta::fit_rational_zeta(series, builtins::degree_bound(s.builtin));
    }
    if (!s.variety.empty()) {
        auto spec = geometry::parse_variety(read_file(s.variety));
        int m = s.counts_upto > 0 ? s.counts_upto : 2 * s.genus + 4;
        zeta::CountSeries series{spec.q(), {}};
        for (int n = 1; n <= m; ++n)
            series.counts.push_back(geometry::count_points(spec, n, cfg.enumeration_bound));
        return zeta::fit_rational_zeta(series, s.genus);
    }
    throw ParseError("give one of --curve, --builtin, or --variety");
}

std::string rational_str(const BigRat& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void emit_records(const std::vector<euler::CheckRecord>& recs, const RunConfig& cfg,
                  std::ostream& out) {
    if (cfg.output == OutputMode::Json) {
        out << euler::report_json(recs) << "\n";
        return;
    }
    if (cfg.output == OutputMode::Csv) {
        out << "modulus,check,lhs,rhs,pass\n";
        for (const auto& r : recs)
            out << r.modulus << "," << r.check << "," << r.lhs << "," << r.rhs << ","
                << (r.pass ? "true" : "false") << "\n";
        return;
    }
    bool all = true;
    for (const auto& r : recs) {
        out << (r.pass ? "ok   " : "FAIL ") << r.check << " mod " << r.modulus << ": " << r.lhs
            << " vs " << r.rhs << "\n";
        all = all && r.pass;
    }
    out << (all ? "pass" : "fail") << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string output_name = "text";

    CLI::App app{"nonstandard sizes of definable sets over finite fields"};
    app.name("pfchi");
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--bound", cfg.enumeration_bound, "enumeration budget")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", cfg.seed, "seed for randomized batteries");
        cmd->add_option("--output", output_name, "text, json, or csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
    };

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a sentence or count solutions over F_q");
    int64_t eval_q = 0;
    std::string eval_formula, eval_file, eval_free;
    int64_t eval_mod = 0;
    eval->add_option("--q", eval_q, "base field size")->required();
    auto* formula_opt = eval->add_option("--formula", eval_formula, "formula text");
    auto* file_opt = eval->add_option("--file", eval_file, "file holding the formula");
    formula_opt->excludes(file_opt);
    eval->add_option("--free", eval_free, "free variables, like x:K1,y:K2");
    auto* mod_opt = eval->add_option("--count-mod", eval_mod, "report the count mod n")
                        ->check(CLI::PositiveNumber);
    add_common(eval);

    // zeta / chi / dualchi
    auto* zeta_cmd = app.add_subcommand("zeta", "fit and print zeta data");
    SourceFlags zeta_src;
    add_source_flags(zeta_cmd, zeta_src);
    add_common(zeta_cmd);

    auto* chi_cmd = app.add_subcommand("chi", "principal characteristic at the given moduli");
    SourceFlags chi_src;
    add_source_flags(chi_cmd, chi_src);
    std::string chi_moduli;
    int64_t chi_ell = 0;
    int chi_k = 1;
    chi_cmd->add_option("--moduli", chi_moduli, "comma-separated moduli");
    chi_cmd->add_option("--ell", chi_ell, "prime modulus base");
    chi_cmd->add_option("--k", chi_k, "power of --ell")->check(CLI::PositiveNumber);
    add_common(chi_cmd);

    auto* dual_cmd = app.add_subcommand("dualchi", "exact dual characteristic");
    SourceFlags dual_src;
    add_source_flags(dual_cmd, dual_src);
    add_common(dual_cmd);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run consistency checks or a named suite");
    SourceFlags verify_src;
    add_source_flags(verify_cmd, verify_src);
    std::string verify_suite, verify_moduli;
    int64_t verify_ell = 0, verify_qmax = 0;
    int verify_k = 1;
    verify_cmd->add_option("--suite", verify_suite, "suite name");
    verify_cmd->add_option("--q-max", verify_qmax, "base field cap for the suite")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--moduli", verify_moduli, "comma-separated prime power moduli");
    verify_cmd->add_option("--ell", verify_ell, "prime modulus base");
    verify_cmd->add_option("--k", verify_k, "power of --ell")->check(CLI::PositiveNumber);
    add_common(verify_cmd);

    try {
        if (const char* env = std::getenv("PFCHI_BOUND")) {
            std::string text(env);
            int64_t v = parse_int(text, "PFCHI_BOUND");
            if (v < 1) throw ParseError("PFCHI_BOUND must be positive");
            cfg.enumeration_bound = v;
        }

        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));

        if (output_name == "json")
            cfg.output = OutputMode::Json;
        else if (output_name == "csv")
            cfg.output = OutputMode::Csv;

        if (eval->parsed()) {
            std::string text = !eval_formula.empty()
                                   ? eval_formula
                                   : (!eval_file.empty() ? read_file(eval_file)
                                                         : throw ParseError(
                                                               "eval needs --formula or --file"));
            logic::Formula f = logic::parse(text);
            auto vars = parse_free(eval_free);
            int64_t N = logic::sort_lcm(f);
            for (const auto& v : vars) N = lcm64_checked(N, v.sort);
            auto [p, k] = prime_power_split(eval_q);
            gf::Tower tower = gf::Tower::make_arithmetic(p, k, static_cast<int>(N));
            logic::Model M{&tower, cfg.enumeration_bound};
            ordered_json doc;
            std::string line;
            if (mod_opt->count()) {
                int64_t r = logic::count_mod(f, vars, M, eval_mod);
                line = std::to_string(r);
                doc = ordered_json{{"residue", r}, {"modulus", eval_mod}};
            } else if (!vars.empty()) {
                BigInt c = logic::count_solutions(f, vars, M);
                line = c.str();
                doc = ordered_json{{"count", json_big(c)}};
            } else {
                bool v = logic::evaluate(f, M);
                line = v ? "true" : "false";
                doc = ordered_json{{"result", v}};
            }
            if (cfg.output == OutputMode::Json)
                out << doc.dump() << "\n";
            else
                out << line << "\n";
            return 0;
        }

        if (zeta_cmd->parsed()) {
            zeta::ZetaData z = fit_source(zeta_src, cfg);
            ordered_json a = ordered_json::array(), b = ordered_json::array();
            for (const auto& v : z.A) a.push_back(json_big(v));
            for (const auto& v : z.B) b.push_back(json_big(v));
            out << ordered_json{{"q", z.q}, {"A", a}, {"B", b}}.dump() << "\n";
            return 0;
        }

        if (chi_cmd->parsed()) {
            std::vector<int64_t> moduli;
            if (!chi_moduli.empty()) moduli = parse_moduli(chi_moduli);
            if (chi_ell) moduli.push_back(ipow_checked(chi_ell, chi_k));
            if (moduli.empty()) throw ParseError("chi needs --moduli or --ell");
            zeta::ZetaData z = fit_source(chi_src, cfg);
            // principal values live at prime powers; composites are CRT'd back
            std::map<int64_t, int64_t> parts;
            {
                std::vector<int64_t> pp;
                for (int64_t m : moduli)
                    for (auto [pr, e] : factorize(m)) pp.push_back(ipow_checked(pr, e));
                std::sort(pp.begin(), pp.end());
                pp.erase(std::unique(pp.begin(), pp.end()), pp.end());
                parts = padic::principal_chi(z, pp).entries;
            }
            euler::EulerValue val = euler::make_euler_value(parts, moduli);
            if (cfg.output == OutputMode::Csv) {
                out << "modulus,value\n";
                for (const auto& [m, v] : val.entries) out << m << "," << v << "\n";
            } else {
                ordered_json doc = ordered_json::object();
                for (const auto& [m, v] : val.entries) doc[std::to_string(m)] = v;
                out << doc.dump() << "\n";
            }
            return 0;
        }

        if (dual_cmd->parsed()) {
            BigRat v = padic::dual_chi(fit_source(dual_src, cfg));
            if (cfg.output == OutputMode::Json)
                out << ordered_json{{"result", rational_str(v)}}.dump() << "\n";
            else
                out << rational_str(v) << "\n";
            return 0;
        }

        if (verify_cmd->parsed()) {
            if (!verify_suite.empty()) {
                auto res = suites::run_suite(verify_suite, verify_qmax, cfg.enumeration_bound,
                                             cfg.seed);
                if (cfg.output == OutputMode::Json) {
                    out << ordered_json{{"suite", res.name},
                                        {"checks", res.checks},
                                        {"failures", res.failures},
                                        {"pass", res.pass()},
                                        {"notes", res.notes}}
                               .dump()
                        << "\n";
                } else {
                    for (const auto& note : res.notes) out << note << "\n";
                    out << "suite " << res.name << ": " << res.checks << " checks, "
                        << res.failures << " failures\n"
                        << (res.pass() ? "pass" : "fail") << "\n";
                }
                return res.pass() ? 0 : 4;
            }
            std::vector<int64_t> moduli;
            if (!verify_moduli.empty()) moduli = parse_moduli(verify_moduli);
            if (verify_ell) moduli.push_back(ipow_checked(verify_ell, verify_k));
            if (moduli.empty())
                throw ParseError("verify needs --suite, or a source with --moduli or --ell");
            std::vector<euler::CheckRecord> recs;
            if (!verify_src.curve.empty()) {
                if (!verify_src.q) throw ParseError("--curve needs --q");
                torsion::Curve c = builtins::parse_curve(verify_src.curve, verify_src.q);
                int64_t p = prime_power_split(c.q).first;
                for (int64_t m : moduli) {
                    auto [l, kk] = prime_power_split(m);
                    auto part = l == p ? torsion::verify_trace_count_p(c, l, kk)
                                       : torsion::verify_trace_count(c, l, kk);
                    recs.insert(recs.end(), part.begin(), part.end());
                }
            } else if (!verify_src.builtin.empty() || !verify_src.variety.empty()) {
                geometry::ConstructibleSpec spec =
                    !verify_src.builtin.empty()
                        ? builtins::make(verify_src.builtin, verify_src.q
                                                                 ? verify_src.q
                                                                 : throw ParseError(
                                                                       "--builtin needs --q"))
                        : geometry::parse_variety(read_file(verify_src.variety));
                recs = euler::verify_axioms({spec}, moduli, cfg.enumeration_bound);
            } else {
                throw ParseError("verify needs --suite, --curve, --builtin, or --variety");
            }
            emit_records(recs, cfg, out);
            bool all = true;
            for (const auto& r : recs) all = all && r.pass;
            return all ? 0 : 4;
        }

        throw ParseError("no subcommand given");
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const VerificationError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace pfchi::cli
