#pragma once

// Command-line driver. `run` is the whole program minus process setup, so the
// test suite can drive it with in-memory streams.
//
// Exit codes: 0 success/pass, 1 negative result (not associative, no_form,
// failed suite), 2 input error, 3 guard-rail breach.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nsemi/boolcls.hpp"
#include "nsemi/enumerate.hpp"
#include "nsemi/error.hpp"
#include "nsemi/finops.hpp"
#include "nsemi/json_io.hpp"
#include "nsemi/mlpoly.hpp"
#include "nsemi/naive.hpp"

namespace nsemi::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kGuardRail = 3 };

struct CliConfig {
    static constexpr std::uint64_t kMinMaxCells = std::uint64_t{1} << 10;

    std::uint64_t max_cells = Limits::default_max_cells;
    bool json = false;
    unsigned threads = 0;

    EnumOptions enum_options() const { return {Limits{max_cells}, threads}; }
};

namespace detail {

using io::json;

inline std::string read_input(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
    } else {
        std::ifstream file(path);
        if (!file) throw input_error("cannot open '" + path + "'");
        buf << file.rdbuf();
    }
    return buf.str();
}

inline FiniteOp read_op(const std::string& path, std::istream& in) {
    return io::op_from_json(io::parse_text(read_input(path, in)));
}

/// phi as given on the command line: "[0,1,0]", "0,1,0" or "0 1 0" (CLI11 may split the list).
inline std::vector<Value> parse_phi(const std::vector<std::string>& parts) {
    std::string text;
    for (const std::string& part : parts) {
        for (char c : part) {
            if (c != '[' && c != ']') text += c;
        }
        text += ',';
    }
    while (!text.empty() && text.back() == ',') text.pop_back();
    json j = io::parse_text("[" + text + "]");
    if (!j.is_array()) throw input_error("phi must be a JSON array such as [0,1,0]");
    std::vector<Value> phi;
    for (const json& v : j) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw input_error("phi entries must be nonnegative integers");
        phi.push_back(v.get<Value>());
    }
    return phi;
}

inline std::uint32_t parse_count(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        unsigned long v = std::stoul(s, &used);
        if (used != s.size() || v > 0xFFFFFFFFUL) throw input_error("");
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        throw input_error(std::string("invalid ") + what + " '" + s + "'");
    }
}

inline void print_report(const EnumerationReport& r, const CliConfig& cfg, std::ostream& out) {
    if (cfg.json) {
        out << io::report_to_json(r).dump() << '\n';
        return;
    }
    out << r.suite << ' ' << r.params.dump() << ": " << (r.verdict ? (*r.verdict ? "pass" : "fail") : "done") << " ("
        << r.associative << " associative of " << r.scanned << " scanned, " << r.elapsed_ms << " ms)\n";
    for (const auto& [key, count] : r.histogram) out << "  " << key << ": " << count << '\n';
    if (r.details.contains("primitive_sumbar_arities")) {
        out << "  primitive sumbar arities: " << r.details["primitive_sumbar_arities"].dump() << '\n';
    }
}

/// Whether f is the function of one of the associative multilinear polynomials over GF(k).
inline std::optional<bool> outside_multilinear(const FiniteOp& f, const CliConfig& cfg) {
    if (!is_prime(f.k()) || f.n() < 2) return std::nullopt;
    try {
        auto scan = enumerate_assoc_multilinear(f.k(), f.n(), cfg.enum_options());
        for (const MultilinearPoly& p : scan.associative) {
            if (function_table(p, cfg.enum_options().limits) == f) return false;
        }
        return true;
    } catch (const infeasible_size&) {
        return std::nullopt;
    }
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    using detail::json;
    CliConfig cfg;
    CLI::App app{"Exhaustive classification and verification of n-ary associative operations", "nsemi"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", cfg.json, "Emit JSON instead of human-readable text");
    app.add_option("--max-cells", cfg.max_cells, "Guard rail on table sizes and scanned tuples")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads for exhaustive scans (0 = auto)")->capture_default_str();

    std::string input = "-";
    bool probes = false;
    std::uint64_t ell = 0;
    std::uint32_t k = 0, n = 0, max_n = 0;
    std::uint64_t prime = 0, oracle_stride = 1;
    std::string suite, kind;
    std::vector<std::string> fixture_args;

    auto* check = app.add_subcommand("check", "Decide associativity of an operation table");
    check->add_option("input", input, "Table JSON file, or - for stdin");

    auto* classify = app.add_subcommand("classify", "Classify an operation on {0,1}");
    classify->add_option("input", input, "Table JSON file, or - for stdin");
    classify->add_flag("--probes", probes, "Use the seven-probe decision tree and report the probes");

    auto* classify_poly = app.add_subcommand("classify-poly", "Classify a multilinear polynomial");
    classify_poly->add_option("input", input, "Polynomial JSON file, or - for stdin");

    auto* derive_cmd = app.add_subcommand("derive", "Emit the derived operation f_ell");
    derive_cmd->add_option("input", input, "Table JSON file, or - for stdin");
    derive_cmd->add_option("--ell", ell, "Number of iterations")->required();

    auto* enumerate_cmd = app.add_subcommand("enumerate", "List all associative tables or polynomials");
    auto* k_opt = enumerate_cmd->add_option("--k", k, "Carrier size");
    auto* p_opt = enumerate_cmd->add_option("--prime", prime, "Prime field for multilinear polynomials");
    enumerate_cmd->add_option("--n", n, "Arity")->required();
    k_opt->excludes(p_opt);

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite, "two-element | marmat | primitive | semigroup-count")->required();
    verify->add_option("--n", n, "Arity");
    verify->add_option("--k", k, "Carrier size (semigroup-count)");
    verify->add_option("--prime", prime, "Prime field (marmat)");
    verify->add_option("--max-n", max_n, "Largest arity (primitive)");
    verify->add_option("--oracle-stride", oracle_stride, "Pointwise oracle on every s-th polynomial (marmat, 0 = off)")
        ->capture_default_str();

    auto* fixtures = app.add_subcommand("fixtures", "Associative operations outside the closed forms");
    fixtures->add_option("kind", kind, "band ROWS COLS | phi [TABLE]")->required();
    fixtures->add_option("params", fixture_args, "Fixture parameters");
    auto* fixture_n = fixtures->add_option("--n", n, "Arity (phi)");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (cfg.max_cells < CliConfig::kMinMaxCells) {
            throw input_error("--max-cells must be at least " + std::to_string(CliConfig::kMinMaxCells));
        }
        const Limits limits{cfg.max_cells};
        const EnumOptions opts = cfg.enum_options();

        if (*check) {
            FiniteOp f = detail::read_op(input, in);
            bool assoc = is_associative(f, limits);
            if (cfg.json) {
                out << json{{"associative", assoc}, {"k", f.k()}, {"n", f.n()}}.dump() << '\n';
            } else {
                out << (assoc ? "associative" : "not associative") << '\n';
            }
            return assoc ? kOk : kNegative;
        }

        if (*classify) {
            FiniteOp f = detail::read_op(input, in);
            if (f.k() != 2) throw input_error("classify needs an operation on {0,1} (k = 2)");
            if (f.n() == 1) {
                out << json{{"form", std::string(to_string(classify_unary(f)))}, {"n", 1}}.dump() << '\n';
                return kOk;
            }
            json j;
            BoolFormDescriptor d;
            if (probes) {
                ProbeOutcome outcome = probe_classification(f);
                d = outcome.descriptor;
                j = io::descriptor_to_json(d);
                j["case"] = outcome.case_label;
                json list = json::array();
                for (std::size_t i = 0; i < kProbes.size(); ++i) {
                    Probe p = kProbes[i];
                    bool used = std::any_of(outcome.readings.begin(), outcome.readings.end(),
                                            [p](const ProbeReading& r) { return r.probe == p; });
                    list.push_back(json{{"tuple", probe_word(p, f.n())},
                                        {"value", f[probe_index(p, f.n())]},
                                        {"read", used}});
                }
                j["probes"] = std::move(list);
            } else {
                d = classify_boolean(f, limits);
                j = io::descriptor_to_json(d);
            }
            out << j.dump() << '\n';
            return d.form == BoolForm::NotAssociative ? kNegative : kOk;
        }

        if (*classify_poly) {
            MultilinearPoly p = io::poly_from_json(io::parse_text(detail::read_input(input, in)));
            if (p.n() < 2) throw input_error("classify-poly needs n >= 2");
            MarMatForm form = classify_marmat(p);
            bool assoc = is_associative_poly(p);
            bool has_form = kind_of(form) != FormKind::None;
            if (assoc != has_form) {
                err << "internal error: symbolic verdict and closed-form classification disagree\n";
                return kNegative;
            }
            json j = {{"form", io::form_to_json(form)}, {"associative", assoc}};
            out << j.dump() << '\n';
            return assoc ? kOk : kNegative;
        }

        if (*derive_cmd) {
            FiniteOp f = detail::read_op(input, in);
            out << io::op_to_json(derive(f, ell, limits)).dump() << '\n';
            return kOk;
        }

        if (*enumerate_cmd) {
            if (*p_opt) {
                auto scan = enumerate_assoc_multilinear(prime, n, opts);
                if (cfg.json) {
                    json polys = json::array();
                    for (const auto& p : scan.associative) polys.push_back(io::poly_to_json(p));
                    out << json{{"report", io::report_to_json(scan.report)}, {"polynomials", std::move(polys)}}.dump()
                        << '\n';
                } else {
                    detail::print_report(scan.report, cfg, out);
                    for (const auto& p : scan.associative) {
                        out << "  " << io::form_to_json(classify_marmat(p)).dump() << ' ' << io::poly_to_json(p).dump()
                            << '\n';
                    }
                }
                return kOk;
            }
            if (!*k_opt) throw input_error("enumerate needs --k K or --prime P");
            auto scan = enumerate_assoc_ops(k, n, opts);
            if (cfg.json) {
                json ops = json::array();
                for (const auto& f : scan.ops) ops.push_back(io::op_to_json(f));
                out << json{{"report", io::report_to_json(scan.report)}, {"ops", std::move(ops)}}.dump() << '\n';
            } else {
                detail::print_report(scan.report, cfg, out);
                for (const auto& f : scan.ops) out << "  " << io::op_to_json(f).dump() << '\n';
            }
            return kOk;
        }

        if (*verify) {
            EnumerationReport r;
            if (suite == "two-element") {
                if (n == 0) throw input_error("verify two-element needs --n");
                r = verify_two_element_theorem(n, opts);
            } else if (suite == "marmat") {
                if (prime == 0 || n == 0) throw input_error("verify marmat needs --prime and --n");
                r = enumerate_assoc_multilinear(prime, n, opts, oracle_stride).report;
                r.suite = "marmat";
            } else if (suite == "primitive") {
                if (max_n == 0) throw input_error("verify primitive needs --max-n");
                r = verify_proposition(max_n, opts);
            } else if (suite == "semigroup-count") {
                if (k == 0 || n == 0) throw input_error("verify semigroup-count needs --k and --n");
                auto scan = enumerate_assoc_ops(k, n, opts);
                auto oracle = naive::enumerate_associative(k, n, limits);
                r = scan.report;
                r.suite = "semigroup-count";
                r.details = {{"oracle_count", oracle.size()}};
                r.verdict = scan.ops == oracle;
            } else {
                throw input_error("unknown suite '" + suite + "'");
            }
            detail::print_report(r, cfg, out);
            return r.passed() ? kOk : kNegative;
        }

        if (*fixtures) {
            FiniteOp f;
            std::optional<bool> outside;
            if (kind == "band") {
                if (fixture_args.size() != 2) throw input_error("fixtures band needs ROWS COLS");
                f = rectangular_band(detail::parse_count(fixture_args[0], "rows"),
                                     detail::parse_count(fixture_args[1], "cols"), limits);
            } else if (kind == "phi") {
                if (fixture_args.empty()) throw input_error("fixtures phi needs a table such as [0,1,0]");
                f = idempotent_map_op(detail::parse_phi(fixture_args), *fixture_n ? n : 2, limits);
                outside = detail::outside_multilinear(f, cfg);
            } else {
                throw input_error("unknown fixture kind '" + kind + "'");
            }
            bool assoc = is_associative(f, limits);
            if (cfg.json) {
                json j = {{"op", io::op_to_json(f)}, {"associative", assoc}};
                if (kind == "phi") j["outside_multilinear"] = outside ? json(*outside) : json(nullptr);
                out << j.dump() << '\n';
            } else {
                out << io::op_to_json(f).dump() << '\n' << (assoc ? "associative" : "not associative") << '\n';
                if (outside && *outside) out << "outside multilinear classification\n";
            }
            return assoc ? kOk : kNegative;
        }
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const infeasible_size& e) {
        err << "error: " << e.what() << '\n';
        return kGuardRail;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << '\n';
        return kNegative;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace nsemi::cli
