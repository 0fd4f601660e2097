// Command-line front end: eigenvalue tables, d-code constructions, inner
// distributions, derived classical codes, and the verification suites.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>

#include "formscheme/serialize.hpp"
#include "formscheme/verify.hpp"

namespace fs = formscheme;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_check_failed = 2;
constexpr int exit_cap = 3;

int exit_code_for(const fs::error& e) {
    switch (e.code()) {
        case fs::errc::cap_exceeded:
            return exit_cap;
        case fs::errc::bad_argument:
        case fs::errc::parity_mismatch:
        case fs::errc::odd_characteristic:
        case fs::errc::odd_char_required:
        case fs::errc::inadmissible_index:
        case fs::errc::unsupported_case:
        case fs::errc::dimension_mismatch:
        case fs::errc::bad_subspace:
        case fs::errc::not_additive:
        case fs::errc::degenerate_set:
        case fs::errc::io_error:
            return exit_usage;
        default:
            return exit_check_failed;
    }
}

const fs::Field& field_for_q(std::uint64_t q) {
    for (std::uint32_t p = 2; p <= q; ++p) {
        if (!fs::detail::is_prime_u32(p)) continue;
        std::uint64_t t = q;
        std::uint32_t k = 0;
        while (t % p == 0) {
            t /= p;
            ++k;
        }
        if (t == 1) return fs::Field::get(p, k);
    }
    fs::raise(fs::errc::bad_argument, "q = " + std::to_string(q) + " is not a prime power");
}

void check_formula_limits(int m, std::uint64_t q) {
    double bits = fs::form_space_dim(m) * std::log2(double(q));
    fs::check(bits <= 60.0, fs::errc::bad_argument, "q^(m(m+1)/2) exceeds the 2^60 formula limit");
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        fs::write_text_file(out_path, content);
}

struct EigArgs {
    int m = 1;
    std::uint64_t q = 2;
    std::string scheme = "quad", which = "both", format = "json", out;
    bool oracle = false;
    unsigned threads = 1;
};

int cmd_eig(const EigArgs& a) {
    check_formula_limits(a.m, a.q);
    fs::FormKind kind = a.scheme == "sym" ? fs::FormKind::symmetric : fs::FormKind::quadratic;
    std::vector<fs::EigTable> tables;
    if (a.which == "P" || a.which == "both") tables.push_back(fs::eig_table(a.m, a.q, kind, 'P'));
    if (a.which == "Q" || a.which == "both") tables.push_back(fs::eig_table(a.m, a.q, kind, 'Q'));

    if (a.oracle) {
        const fs::Field& f = field_for_q(a.q);
        auto index = fs::orbit_indices(a.m);
        auto qt = fs::oracle_q_table(f, a.m, a.threads);
        auto pt = fs::oracle_p_table(f, a.m, a.threads);
        fs::EigTables closed = fs::eig_tables(a.m, a.q);
        std::size_t bad = 0;
        for (std::size_t r = 0; r < index.size(); ++r)
            for (std::size_t c = 0; c < index.size(); ++c) {
                if (qt[r][c] != closed.Q.rows[r][c]) {
                    std::cout << "FAIL Q[" << index[r].str() << "][" << index[c].str() << "]: formula " << closed.Q.rows[r][c].str()
                              << " oracle " << qt[r][c].str() << "\n";
                    ++bad;
                }
                if (pt[r][c] != closed.P.rows[r][c]) {
                    std::cout << "FAIL P[" << index[r].str() << "][" << index[c].str() << "]: formula " << closed.P.rows[r][c].str()
                              << " oracle " << pt[r][c].str() << "\n";
                    ++bad;
                }
            }
        std::cout << (bad ? "FAIL" : "PASS") << " oracle validation of " << 2 * index.size() * index.size() << " entries\n";
        if (bad) return exit_check_failed;
    }

    if (a.format == "csv") {
        std::string content;
        for (const auto& t : tables) {
            if (!content.empty()) content += "\n";
            content += fs::eig_to_csv(t);
        }
        emit(a.out, content);
    } else {
        fs::json j;
        if (tables.size() == 1) {
            j = fs::eig_to_json(tables[0]);
        } else {
            for (const auto& t : tables) j[std::string(1, t.which)] = fs::eig_to_json(t);
        }
        emit(a.out, j.dump(2) + "\n");
    }
    return exit_ok;
}

struct ConstructArgs {
    std::string family;
    int m = 1, d = 1;
    std::uint64_t q = 2;
    bool do_puncture = false;
    std::string out;
    std::uint64_t cap = 0;
};

int cmd_construct(const ConstructArgs& a) {
    const fs::Field& f = field_for_q(a.q);
    std::uint64_t cap = a.cap ? a.cap : fs::global_cap();
    fs::json j;
    std::ostringstream note;
    if (a.family == "sym") {
        auto X = fs::sym_dcode(a.m, a.d, f, cap);
        if (a.do_puncture) {
            auto P = fs::puncture(X);
            j = fs::forms_to_json(P);
            note << "punctured symmetric " << a.d << "-code: " << P.size() << " forms on dimension " << P.m;
        } else {
            j = fs::forms_to_json(X);
            note << "symmetric " << a.d << "-code: " << X.size() << " forms";
        }
    } else {
        fs::QuadSet X;
        if (a.family == "quad-oo") {
            X = fs::quad_dcode_odd_odd(a.m, a.d, f, cap);
        } else if (a.family == "quad-ee") {
            X = fs::quad_dcode_even_even(a.m, a.d, f, cap);
        } else {
            fs::check(a.d % 2 == 0, fs::errc::parity_mismatch, "elliptic family needs even d = 2*delta");
            X = fs::elliptic_dcode(a.m, a.d / 2, f, cap);
        }
        if (a.do_puncture) {
            auto P = fs::puncture(X);
            j = fs::forms_to_json(P);
            note << "punctured " << a.family << " code: " << P.size() << " forms on dimension " << P.m;
        } else {
            j = fs::forms_to_json(X);
            note << a.family << " code: " << X.size() << " forms";
        }
    }
    std::cerr << note.str() << "\n";
    emit(a.out, j.dump(2) + "\n");
    return exit_ok;
}

struct InnerdistArgs {
    std::string in, out;
    bool dual = false, design = false;
    std::uint64_t cap = 0;
};

int cmd_innerdist(const InnerdistArgs& a) {
    std::uint64_t cap = a.cap ? a.cap : fs::global_cap();
    fs::json input = fs::json::parse(fs::read_text_file(a.in));
    fs::AnyFormSet any = fs::forms_from_json(input);
    fs::json j;
    std::visit(
        [&](const auto& X) {
            j["kind"] = fs::kind_name(X.kind);
            j["m"] = X.m;
            j["q"] = X.q();
            j["field"] = fs::field_to_json(*X.field);
            j["size"] = X.size();
            j["additive"] = fs::is_additive(X);
            fs::InnerDist inner = fs::inner_dist(X, cap);
            j["inner"] = fs::dist_to_json(inner);
            if (a.dual || a.design) {
                fs::DualDist dual = fs::dual_dist(X.kind, inner, X.q());
                if (a.dual) j["dual"] = fs::dist_to_json(dual);
                if (a.design) j["design_degree"] = fs::design_degree(dual);
            }
        },
        any);
    emit(a.out, j.dump(2) + "\n");
    return exit_ok;
}

struct CodeArgs {
    std::string in, out, words, which = "both";
    std::uint64_t cap = 0;
};

int cmd_code(const CodeArgs& a) {
    std::uint64_t cap = a.cap ? a.cap : (std::uint64_t(1) << 20);
    fs::json input = fs::json::parse(fs::read_text_file(a.in));
    fs::AnyFormSet any = fs::forms_from_json(input);
    fs::check(std::holds_alternative<fs::QuadSet>(any), fs::errc::bad_argument, "code construction needs quadratic forms");
    const fs::QuadSet& Y = std::get<fs::QuadSet>(any);
    fs::ClassicalCode c = fs::make_code(Y);

    fs::json j;
    j["length"] = c.length;
    j["size"] = c.size.str();
    bool want_theory = a.which == "theory" || a.which == "both";
    bool want_brute = a.which == "brute" || a.which == "both";
    fs::WeightEnumerator theory, brute;
    if (want_theory) {
        theory = fs::dist_enum_theory(Y);
        j["theory"] = fs::enum_to_json(theory);
    }
    if (want_brute) {
        brute = fs::dist_enum_brute(c, cap);
        j["brute"] = fs::enum_to_json(brute);
        std::uint64_t dmin = 0;
        for (const auto& [w, n] : brute.counts)
            if (w > 0) {
                dmin = w;
                break;
            }
        j["min_distance"] = dmin;
        // designed distance applies when Y is a d-code with delta = floor(d/2) >= 1
        fs::InnerDist inner = fs::inner_dist(Y, fs::global_cap());
        int dmax = 0;
        for (int d = 1; d <= Y.m; ++d)
            if (fs::is_d_code(inner, d)) dmax = d;
        if (dmax / 2 >= 1) {
            std::uint64_t designed = fs::designed_distance(Y.m, Y.q(), dmax / 2);
            j["designed_distance"] = designed;
            j["meets_designed_distance"] = (dmin == designed);
        }
    }
    if (want_theory && want_brute) j["equal"] = (theory == brute);
    if (!a.words.empty()) {
        fs::check(c.size <= fs::BigInt(cap), fs::errc::cap_exceeded, "codeword dump exceeds cap");
        fs::json rows = fs::json::array();
        auto coords = fs::detail::coordinate_table(*c.tower);
        const fs::Field& B = c.tower->base();
        const fs::Field& E = c.tower->big();
        for (const auto& qf : Y.members) {
            for (std::uint64_t av = 0; av < E.q(); ++av)
                for (fs::felem cc = 0; cc < B.q(); ++cc) {
                    std::vector<int> word;
                    word.reserve(std::size_t(c.length));
                    for (std::uint64_t x = 1; x <= c.length; ++x)
                        word.push_back(int(B.add(B.add(qf.eval(coords[std::size_t(x - 1)]),
                                                       c.tower->rel_trace(E.mul(fs::felem(av), fs::felem(x)))),
                                                cc)));
                    rows.push_back(word);
                }
        }
        fs::write_text_file(a.words, fs::json(rows).dump() + "\n");
    }
    emit(a.out, j.dump(2) + "\n");
    if (want_theory && want_brute && !(theory == brute)) return exit_check_failed;
    return exit_ok;
}

struct VerifyArgs {
    std::string suite = "all", out;
    fs::VerifyOptions opt;
};

int cmd_verify(const VerifyArgs& a) {
    auto results = fs::run_suite(a.suite, a.opt);
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << std::llround(r.millis) << " ms)";
        if (!r.detail.empty()) std::cout << " - " << r.detail;
        std::cout << "\n";
        all = all && r.pass;
    }
    fs::json report;
    report["suite"] = a.suite;
    report["seed"] = a.opt.seed;
    report["max_m"] = a.opt.max_m;
    report["max_q"] = a.opt.max_q;
    report["threads"] = a.opt.threads;
    report["pass"] = all;
    fs::json checks = fs::json::array();
    for (const auto& r : results) {
        fs::json c;
        c["name"] = r.name;
        c["pass"] = r.pass;
        c["detail"] = r.detail;
        c["millis"] = r.millis;
        checks.push_back(c);
    }
    report["checks"] = checks;
    if (!a.out.empty()) fs::write_text_file(a.out, report.dump(2) + "\n");
    std::cout << (all ? "PASS" : "FAIL") << " (" << results.size() << " checks)\n";
    return all ? exit_ok : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"formscheme: association schemes of quadratic and symmetric bilinear forms over finite fields"};
    app.require_subcommand(1);

    EigArgs eig;
    auto* eig_cmd = app.add_subcommand("eig", "eigenvalue tables of the schemes");
    eig_cmd->add_option("--m", eig.m, "dimension m")->required();
    eig_cmd->add_option("--q", eig.q, "field size q")->required();
    eig_cmd->add_option("--scheme", eig.scheme, "scheme: quad or sym")->check(CLI::IsMember({"quad", "sym"}));
    eig_cmd->add_option("--which", eig.which, "table: P, Q or both")->check(CLI::IsMember({"P", "Q", "both"}));
    eig_cmd->add_option("--format", eig.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    eig_cmd->add_option("--out", eig.out, "output path (stdout when omitted)");
    eig_cmd->add_flag("--oracle", eig.oracle, "validate against the character-sum oracles");
    eig_cmd->add_option("--threads", eig.threads, "worker threads for the oracle pass");

    ConstructArgs cons;
    auto* cons_cmd = app.add_subcommand("construct", "maximal d-code constructions");
    cons_cmd->add_option("--family", cons.family, "sym, quad-oo, quad-ee or elliptic")
        ->required()
        ->check(CLI::IsMember({"sym", "quad-oo", "quad-ee", "elliptic"}));
    cons_cmd->add_option("--m", cons.m, "dimension m")->required();
    cons_cmd->add_option("--d", cons.d, "minimum rank distance d")->required();
    cons_cmd->add_option("--q", cons.q, "field size q")->required();
    cons_cmd->add_flag("--puncture", cons.do_puncture, "restrict to the default hyperplane");
    cons_cmd->add_option("--out", cons.out, "output path for the forms JSON");
    cons_cmd->add_option("--cap", cons.cap, "enumeration cap override");

    InnerdistArgs inner;
    auto* inner_cmd = app.add_subcommand("innerdist", "inner and dual distributions of a form set");
    inner_cmd->add_option("--in", inner.in, "forms JSON input")->required();
    inner_cmd->add_flag("--dual", inner.dual, "also compute the dual distribution");
    inner_cmd->add_flag("--design", inner.design, "report the design degree");
    inner_cmd->add_option("--out", inner.out, "output path");
    inner_cmd->add_option("--cap", inner.cap, "enumeration cap override");

    CodeArgs code;
    auto* code_cmd = app.add_subcommand("code", "classical code C(Y) from a set of quadratic forms");
    code_cmd->add_option("--in", code.in, "forms JSON input")->required();
    code_cmd->add_option("--enum", code.which, "theory, brute or both")->check(CLI::IsMember({"theory", "brute", "both"}));
    code_cmd->add_option("--out", code.out, "output path");
    code_cmd->add_option("--words", code.words, "write the codeword dump to this path");
    code_cmd->add_option("--cap", code.cap, "codeword cap override");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", verify.suite, "qnum, scheme, codesets, construct, rmcodes or all")
        ->check(CLI::IsMember({"qnum", "scheme", "codesets", "construct", "rmcodes", "all"}));
    verify_cmd->add_option("--max-m", verify.opt.max_m, "largest dimension to test");
    verify_cmd->add_option("--max-q", verify.opt.max_q, "largest field size to test");
    verify_cmd->add_option("--seed", verify.opt.seed, "seed recorded in the report");
    verify_cmd->add_option("--threads", verify.opt.threads, "worker threads");
    verify_cmd->add_option("--work-cap", verify.opt.work_cap, "per-code verification work cap");
    verify_cmd->add_option("--out", verify.out, "JSON report path");

    try {
        app.parse(argc, argv);
        if (*eig_cmd) return cmd_eig(eig);
        if (*cons_cmd) return cmd_construct(cons);
        if (*inner_cmd) return cmd_innerdist(inner);
        if (*code_cmd) return cmd_code(code);
        if (*verify_cmd) return cmd_verify(verify);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    } catch (const fs::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_check_failed;
    }
    return exit_usage;
}
