#pragma once

/**
 * @file json_io.hpp
 * @brief JSON wire formats.
 *
 *   ring        "Z" | {"prime": p}
 *   ring elem   decimal string
 *   rational    "num/den", lowest terms
 *   operation   {"k": int, "n": int, "table": [int, ...]}
 *   descriptor  {"form": "or" | ..., "n": int}
 *   certificate {"base": <operation>, "ell": int}
 *   polynomial  {"ring": <ring>, "n": int, "coeffs": [{"vars": [1-based ints], "coef": "decimal"}, ...]}
 *   form        {"form": "product_form", "a": "2", "b": "1/2"}, etc.
 *   report      {"suite", "params", "scanned", "associative", "histogram", "verdict", "elapsed_ms", "details"}
 *
 * Parse failures are reported as input_error.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "nsemi/algebra.hpp"
#include "nsemi/boolcls.hpp"
#include "nsemi/enumerate.hpp"
#include "nsemi/error.hpp"
#include "nsemi/finops.hpp"
#include "nsemi/mlpoly.hpp"

namespace nsemi::io {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw input_error("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw input_error(std::string("missing field '") + key + "'");
    return *it;
}

inline std::uint64_t unsigned_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw input_error(std::string("field '") + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

inline std::uint32_t small_field(const json& j, const char* key) {
    std::uint64_t v = unsigned_field(j, key);
    if (v > 0xFFFFFFFFULL) throw input_error(std::string("field '") + key + "' is too large");
    return static_cast<std::uint32_t>(v);
}

}  // namespace detail

inline json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
}

// Rings and elements.

inline json ring_to_json(RingSpec r) {
    if (r.is_integers()) return "Z";
    return json{{"prime", r.modulus()}};
}

inline RingSpec ring_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "Z") return RingSpec::integers();
        throw input_error("unknown ring '" + j.get<std::string>() + "'");
    }
    return RingSpec::prime_field(detail::unsigned_field(j, "prime"));
}

inline RingElem elem_from_json(const json& j, RingSpec ring) {
    if (j.is_string()) return parse_ring_elem(j.get<std::string>(), ring);
    if (j.is_number_integer()) return {ring, static_cast<long long>(j.get<std::int64_t>())};
    throw input_error("ring element must be a decimal string");
}

// Operations.

inline json op_to_json(const FiniteOp& f) { return json{{"k", f.k()}, {"n", f.n()}, {"table", f.table()}}; }

inline FiniteOp op_from_json(const json& j) {
    const std::uint32_t k = detail::small_field(j, "k");
    const std::uint32_t n = detail::small_field(j, "n");
    const json& t = detail::field(j, "table");
    if (!t.is_array()) throw input_error("field 'table' must be an array");
    std::vector<Value> table;
    table.reserve(t.size());
    for (const json& v : t) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > 0xFFFFFFFFLL) {
            throw input_error("table entries must be nonnegative integers");
        }
        table.push_back(v.get<Value>());
    }
    return {k, n, std::move(table)};
}

inline json certificate_to_json(const DerivationCertificate& c) { return json{{"base", op_to_json(c.base)}, {"ell", c.ell}}; }

inline DerivationCertificate certificate_from_json(const json& j) {
    return {op_from_json(detail::field(j, "base")), detail::unsigned_field(j, "ell")};
}

inline json descriptor_to_json(const BoolFormDescriptor& d) {
    return json{{"form", std::string(to_string(d.form))}, {"n", d.n}};
}

inline BoolFormDescriptor descriptor_from_json(const json& j) {
    const json& form = detail::field(j, "form");
    if (!form.is_string()) throw input_error("field 'form' must be a string");
    return {parse_bool_form(form.get<std::string>()), detail::small_field(j, "n")};
}

// Polynomials and forms.

inline json poly_to_json(const MultilinearPoly& p) {
    json coeffs = json::array();
    for (const auto& [m, c] : p.coeffs()) coeffs.push_back(json{{"vars", vars_of(m)}, {"coef", c.to_string()}});
    return json{{"ring", ring_to_json(p.ring())}, {"n", p.n()}, {"coeffs", std::move(coeffs)}};
}

/// Unsorted variable lists and zero or repeated monomials are normalized.
inline MultilinearPoly poly_from_json(const json& j) {
    const RingSpec ring = ring_from_json(detail::field(j, "ring"));
    const std::uint32_t n = detail::small_field(j, "n");
    MultilinearPoly p(ring, n);
    const json& coeffs = detail::field(j, "coeffs");
    if (!coeffs.is_array()) throw input_error("field 'coeffs' must be an array");
    for (const json& term : coeffs) {
        const json& vars = detail::field(term, "vars");
        if (!vars.is_array()) throw input_error("field 'vars' must be an array");
        std::vector<std::uint32_t> idx;
        for (const json& v : vars) {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw input_error("variable indices are 1-based integers");
            idx.push_back(v.get<std::uint32_t>());
        }
        p.add_term(monomial_of(idx, n), elem_from_json(detail::field(term, "coef"), ring));
    }
    return p;
}

inline json form_to_json(const MarMatForm& form) {
    json j = {{"form", std::string(to_string(kind_of(form)))}};
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, ConstantForm> || std::is_same_v<F, ShiftedSumForm>) {
                j["c"] = f.c.to_string();
            } else if constexpr (std::is_same_v<F, OmegaSumForm>) {
                j["omega"] = f.omega.to_string();
            } else if constexpr (std::is_same_v<F, ProductForm>) {
                j["a"] = f.a.to_string();
                j["b"] = f.b.to_string();
            }
        },
        form);
    return j;
}

inline MarMatForm form_from_json(const json& j, RingSpec ring) {
    const json& name = detail::field(j, "form");
    if (!name.is_string()) throw input_error("field 'form' must be a string");
    const std::string s = name.get<std::string>();
    auto str = [&](const char* key) {
        const json& v = detail::field(j, key);
        if (!v.is_string()) throw input_error(std::string("field '") + key + "' must be a string");
        return v.get<std::string>();
    };
    if (s == "no_form") return NoForm{};
    if (s == "constant") return ConstantForm{parse_ring_elem(str("c"), ring)};
    if (s == "first_proj") return FirstProjForm{};
    if (s == "last_proj") return LastProjForm{};
    if (s == "shifted_sum") return ShiftedSumForm{parse_ring_elem(str("c"), ring)};
    if (s == "omega_sum") return OmegaSumForm{parse_ring_elem(str("omega"), ring)};
    if (s == "product_form") return ProductForm{parse_ring_elem(str("a"), ring), parse_fraction_elem(str("b"), ring)};
    throw input_error("unknown form '" + s + "'");
}

// Reports.

inline json report_to_json(const EnumerationReport& r) {
    json hist = json::object();
    for (const auto& [key, count] : r.histogram) hist[key] = count;
    json j = {{"suite", r.suite},
              {"params", r.params},
              {"scanned", r.scanned},
              {"associative", r.associative},
              {"histogram", std::move(hist)}};
    j["verdict"] = r.verdict ? json(*r.verdict ? "pass" : "fail") : json(nullptr);
    j["elapsed_ms"] = r.elapsed_ms;
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

}  // namespace nsemi::io
