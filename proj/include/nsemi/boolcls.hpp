#pragma once

/**
 * @file boolcls.hpp
 * @brief Associative operations on {0, 1}: the eight canonical n-ary families,
 * the seven-probe decision tree, binary derivability and primitivity.
 */

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nsemi/error.hpp"
#include "nsemi/finops.hpp"

namespace nsemi {

enum class BoolForm { Const0, Const1, Proj1, ProjN, Or, And, Sum, SumBar, NotAssociative };

/// Classification outcome for an operation of arity n >= 2 on {0, 1}.
struct BoolFormDescriptor {
    BoolForm form = BoolForm::NotAssociative;
    std::uint32_t n = 2;

    friend bool operator==(const BoolFormDescriptor&, const BoolFormDescriptor&) = default;
};

/// The eight associative families, in the order of the binary semigroup table
/// (c0, c1, pr1, pr2, or, and, +, boxplus).
inline constexpr std::array<BoolForm, 8> kBoolForms = {BoolForm::Const0, BoolForm::Const1, BoolForm::Proj1,
                                                       BoolForm::ProjN,  BoolForm::Or,     BoolForm::And,
                                                       BoolForm::Sum,    BoolForm::SumBar};

inline std::string_view to_string(BoolForm f) {
    switch (f) {
        case BoolForm::Const0: return "const0";
        case BoolForm::Const1: return "const1";
        case BoolForm::Proj1: return "proj1";
        case BoolForm::ProjN: return "projn";
        case BoolForm::Or: return "or";
        case BoolForm::And: return "and";
        case BoolForm::Sum: return "sum";
        case BoolForm::SumBar: return "sumbar";
        case BoolForm::NotAssociative: return "not_associative";
    }
    return "not_associative";
}

inline BoolForm parse_bool_form(std::string_view s) {
    for (BoolForm f : kBoolForms) {
        if (to_string(f) == s) return f;
    }
    if (s == "not_associative") return BoolForm::NotAssociative;
    throw input_error("unknown Boolean form '" + std::string(s) + "'");
}

/// The four unary operations on {0, 1}; all are associative.
enum class UnaryForm { Const0, Const1, Identity, Negation };

inline std::string_view to_string(UnaryForm f) {
    switch (f) {
        case UnaryForm::Const0: return "const0";
        case UnaryForm::Const1: return "const1";
        case UnaryForm::Identity: return "identity";
        case UnaryForm::Negation: return "negation";
    }
    return "identity";
}

inline UnaryForm classify_unary(const FiniteOp& f) {
    if (f.k() != 2 || f.n() != 1) throw input_error("unary classification needs k = 2, n = 1");
    if (f[0] == 0) return f[1] == 0 ? UnaryForm::Const0 : UnaryForm::Identity;
    return f[1] == 0 ? UnaryForm::Negation : UnaryForm::Const1;
}

namespace detail {
inline void require_boolean(const FiniteOp& f) {
    if (f.k() != 2) throw input_error("Boolean classification needs k = 2, got k = " + std::to_string(f.k()));
}
inline void require_arity_at_least_two(std::uint32_t n) {
    if (n < 2) throw input_error("arity must be at least 2, got " + std::to_string(n));
}
}  // namespace detail

/// Table of the canonical n-ary operation of the given family.
inline FiniteOp canonical_op(BoolForm form, std::uint32_t n, const Limits& limits = {}) {
    detail::require_arity_at_least_two(n);
    if (form == BoolForm::NotAssociative) throw input_error("no canonical table for not_associative");
    const std::uint64_t size = require_size(2, n, limits, "canonical table");
    const std::uint64_t all = size - 1;
    std::vector<Value> table(size);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        bool v = false;
        switch (form) {
            case BoolForm::Const0: v = false; break;
            case BoolForm::Const1: v = true; break;
            case BoolForm::Proj1: v = (idx >> (n - 1)) & 1U; break;
            case BoolForm::ProjN: v = idx & 1U; break;
            case BoolForm::Or: v = idx != 0; break;
            case BoolForm::And: v = idx == all; break;
            case BoolForm::Sum: v = std::popcount(idx) & 1; break;
            case BoolForm::SumBar: v = !(std::popcount(idx) & 1); break;
            case BoolForm::NotAssociative: break;
        }
        table[idx] = v ? 1 : 0;
    }
    return {2, n, std::move(table)};
}

/// The seven probe words of the two-element case analysis.
enum class Probe {
    Zeros,        // 0^n
    OneZeros,     // 1 0^{n-1}
    ZerosOne,     // 0^{n-1} 1
    Ones,         // 1^n
    OneOneZeros,  // 1 1 0^{n-2}
    ZeroOneZeros, // 0 1 0^{n-2}
    ZeroOnes,     // 0 1^{n-1}
};

inline constexpr std::array<Probe, 7> kProbes = {Probe::Zeros,       Probe::OneZeros,     Probe::ZerosOne,
                                                 Probe::Ones,        Probe::OneOneZeros,  Probe::ZeroOneZeros,
                                                 Probe::ZeroOnes};

/// Table index of a probe word of length n (first letter most significant).
inline std::uint64_t probe_index(Probe p, std::uint32_t n) {
    const std::uint64_t top = std::uint64_t{1} << (n - 1);
    switch (p) {
        case Probe::Zeros: return 0;
        case Probe::OneZeros: return top;
        case Probe::ZerosOne: return 1;
        case Probe::Ones: return (top << 1) - 1;
        case Probe::OneOneZeros: return top | (top >> 1);
        case Probe::ZeroOneZeros: return top >> 1;
        case Probe::ZeroOnes: return top - 1;
    }
    return 0;
}

inline std::string probe_word(Probe p, std::uint32_t n) {
    std::string w(n, '0');
    std::uint64_t idx = probe_index(p, n);
    for (std::uint32_t i = 0; i < n; ++i) {
        if ((idx >> (n - 1 - i)) & 1U) w[i] = '1';
    }
    return w;
}

/// One table lookup made by the decision tree.
struct ProbeReading {
    Probe probe;
    Value value;
};

struct ProbeOutcome {
    BoolFormDescriptor descriptor;
    std::string case_label;  // e.g. "1.2.1.2"
    std::vector<ProbeReading> readings;
};

/**
 * Runs the case analysis on an arity-n operation whose cells are supplied by
 * `read(index)`. Reads at most four cells on any path.
 */
template <class CellReader>
ProbeOutcome run_probe_tree(std::uint32_t n, CellReader&& read) {
    detail::require_arity_at_least_two(n);
    ProbeOutcome out;
    auto probe = [&](Probe p) {
        Value v = read(probe_index(p, n));
        out.readings.push_back({p, v});
        return v;
    };
    auto done = [&](BoolForm f, const char* label) {
        out.descriptor = {f, n};
        out.case_label = label;
        return out;
    };

    if (probe(Probe::Zeros) == 0) {
        if (probe(Probe::OneZeros) == 0) {
            if (probe(Probe::ZerosOne) == 0) {
                return probe(Probe::Ones) == 0 ? done(BoolForm::Const0, "1.1.1.1") : done(BoolForm::And, "1.1.1.2");
            }
            return done(BoolForm::ProjN, "1.1.2");
        }
        if (probe(Probe::OneOneZeros) == 0) {
            // 1.2.1.1 forces 0 = 1 under associativity.
            return probe(Probe::ZeroOneZeros) == 0 ? done(BoolForm::NotAssociative, "1.2.1.1")
                                                   : done(BoolForm::Sum, "1.2.1.2");
        }
        return probe(Probe::ZeroOnes) == 0 ? done(BoolForm::Proj1, "1.2.2.1") : done(BoolForm::Or, "1.2.2.2");
    }
    return probe(Probe::OneZeros) == 0 ? done(BoolForm::SumBar, "2.1") : done(BoolForm::Const1, "2.2");
}

inline ProbeOutcome probe_classification(const FiniteOp& f) {
    detail::require_boolean(f);
    return run_probe_tree(f.n(), [&f](std::uint64_t idx) { return f[idx]; });
}

/**
 * Classifies an associative operation on {0, 1} from its probe values alone.
 * On non-associative input the answer is meaningful only when the impossible
 * probe combination is hit (reported as NotAssociative).
 */
inline BoolFormDescriptor classify_by_probes(const FiniteOp& f) { return probe_classification(f).descriptor; }

/// Full classification: associativity check, then comparison with the eight canonical tables.
inline BoolFormDescriptor classify_boolean(const FiniteOp& f, const Limits& limits = {}) {
    detail::require_boolean(f);
    detail::require_arity_at_least_two(f.n());
    if (!is_associative(f, limits)) return {BoolForm::NotAssociative, f.n()};
    for (BoolForm form : kBoolForms) {
        if (canonical_op(form, f.n(), limits) == f) return {form, f.n()};
    }
    // Unreachable for a correct associativity check: the eight families are exhaustive.
    throw std::logic_error("associative Boolean operation outside the canonical families");
}

/// The eight binary semigroup operations on {0, 1}.
inline std::vector<FiniteOp> binary_semigroups() {
    std::vector<FiniteOp> ops;
    for (BoolForm form : kBoolForms) ops.push_back(canonical_op(form, 2));
    return ops;
}

/// Searches the binary semigroups for g with g_{n-1} = f.
inline std::optional<DerivationCertificate> derivable_from_binary(const FiniteOp& f, const Limits& limits = {}) {
    detail::require_boolean(f);
    detail::require_arity_at_least_two(f.n());
    for (const FiniteOp& g : binary_semigroups()) {
        if (auto cert = derivable_from(f, g, limits)) return cert;
    }
    return std::nullopt;
}

/// True iff n - 1 is a power of two.
constexpr bool primitive_sumbar_arity(std::uint64_t n) { return n >= 2 && std::has_single_bit(n - 1); }

/**
 * Smallest-arity witness deriving SumBar^(n): base SumBar^(m) with odd ell > 1
 * and n = ell*(m-1)+1. Empty exactly when n - 1 is a power of two.
 */
inline std::optional<std::pair<std::uint32_t, std::uint64_t>> sumbar_derivation(std::uint32_t n) {
    for (std::uint32_t m = 2; m < n; ++m) {
        if ((n - 1) % (m - 1) != 0) continue;
        std::uint64_t ell = (n - 1) / (m - 1);
        if (ell > 1 && ell % 2 == 1) return std::pair{m, ell};
    }
    return std::nullopt;
}

/**
 * Primitivity on {0, 1} for an associative f. Unary and binary operations are
 * primitive; for n >= 3 only SumBar^(n) with n = 2^k + 1 is.
 */
inline PrimitivityResult primitive_boolean(const FiniteOp& f, const Limits& limits = {}) {
    detail::require_boolean(f);
    if (f.n() <= 2) return {true, std::nullopt};
    // A canonical table needs no associativity check; anything else gets the full one.
    BoolFormDescriptor d{BoolForm::NotAssociative, f.n()};
    for (BoolForm form : kBoolForms) {
        if (canonical_op(form, f.n(), limits) == f) d.form = form;
    }
    if (d.form == BoolForm::NotAssociative) d = classify_boolean(f, limits);
    if (d.form == BoolForm::NotAssociative) throw input_error("primitivity is defined for associative operations only");
    if (d.form != BoolForm::SumBar) {
        return {false, DerivationCertificate{canonical_op(d.form, 2), f.n() - 1ULL}};
    }
    auto witness = sumbar_derivation(f.n());
    if (!witness) return {true, std::nullopt};
    return {false, DerivationCertificate{canonical_op(BoolForm::SumBar, witness->first, limits), witness->second}};
}

}  // namespace nsemi
