#pragma once

/**
 * @file finops.hpp
 * @brief n-ary operations on a finite carrier {0, ..., k-1}, stored as value tables.
 *
 * A tuple (a_1, ..., a_n) lives at table index sum_i a_i * k^(n-i): the first
 * argument is the most significant digit.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nsemi/error.hpp"

namespace nsemi {

using Value = std::uint32_t;

class FiniteOp {
public:
    FiniteOp() : FiniteOp(1, 1, {0}) {}

    FiniteOp(std::uint32_t k, std::uint32_t n, std::vector<Value> table) : k_(k), n_(n), table_(std::move(table)) {
        if (k_ < 1) throw input_error("carrier size must be at least 1");
        if (n_ < 1) throw input_error("arity must be at least 1");
        auto expected = checked_pow(k_, n_);
        if (!expected || *expected != table_.size()) {
            throw input_error("table length " + std::to_string(table_.size()) + " does not equal k^n = " +
                              std::to_string(k_) + "^" + std::to_string(n_));
        }
        for (Value v : table_) {
            if (v >= k_) throw input_error("table entry " + std::to_string(v) + " outside carrier of size " +
                                           std::to_string(k_));
        }
    }

    /// Tabulates fn(args) over all tuples; fn receives a span of n values.
    template <class Fn>
    static FiniteOp tabulate(std::uint32_t k, std::uint32_t n, Fn&& fn, const Limits& limits = {}) {
        std::uint64_t size = require_size(k, n, limits, "operation table");
        std::vector<Value> table(size);
        std::vector<Value> args(n, 0);
        for (std::uint64_t idx = 0; idx < size; ++idx) {
            table[idx] = fn(std::span<const Value>(args));
            for (std::uint32_t pos = n; pos-- > 0;) {
                if (++args[pos] < k) break;
                args[pos] = 0;
            }
        }
        return {k, n, std::move(table)};
    }

    std::uint32_t k() const { return k_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t arity() const { return n_; }
    const std::vector<Value>& table() const { return table_; }
    std::size_t size() const { return table_.size(); }

    Value operator[](std::uint64_t index) const { return table_[index]; }

    friend bool operator==(const FiniteOp&, const FiniteOp&) = default;
    friend auto operator<=>(const FiniteOp& a, const FiniteOp& b) {
        if (auto c = a.k_ <=> b.k_; c != 0) return c;
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.table_ <=> b.table_;
    }

private:
    std::uint32_t k_;
    std::uint32_t n_;
    std::vector<Value> table_;
};

/// Table index of an argument tuple under the index law.
inline std::uint64_t encode_tuple(std::span<const Value> args, std::uint32_t k) {
    std::uint64_t idx = 0;
    for (Value a : args) {
        if (a >= k) throw input_error("argument " + std::to_string(a) + " outside carrier of size " + std::to_string(k));
        idx = idx * k + a;
    }
    return idx;
}

/// Inverse of encode_tuple.
inline std::vector<Value> decode_index(std::uint64_t index, std::uint32_t k, std::uint32_t n) {
    std::vector<Value> args(n);
    for (std::uint32_t pos = n; pos-- > 0;) {
        args[pos] = static_cast<Value>(index % k);
        index /= k;
    }
    return args;
}

inline Value eval(const FiniteOp& f, std::span<const Value> args) {
    if (args.size() != f.n()) {
        throw input_error("arity mismatch: expected " + std::to_string(f.n()) + " arguments, got " +
                          std::to_string(args.size()));
    }
    return f[encode_tuple(args, f.k())];
}

inline Value eval(const FiniteOp& f, std::initializer_list<Value> args) {
    return eval(f, std::span<const Value>(args.begin(), args.size()));
}

/**
 * Generalized associativity: nesting f at position i agrees with nesting at
 * position i+1 on every (2n-1)-tuple, for i = 0..n-2. Stops at the first
 * counterexample. Unary operations are associative.
 */
inline bool is_associative(const FiniteOp& f, const Limits& limits = {}) {
    const std::uint64_t k = f.k();
    const std::uint32_t n = f.n();
    if (n == 1) return true;
    const std::uint32_t width = 2 * n - 1;
    const std::uint64_t tuples = require_size(k, width, limits, "associativity check");

    std::vector<std::uint64_t> pw(width + 1);
    pw[0] = 1;
    for (std::uint32_t i = 1; i <= width; ++i) pw[i] = pw[i - 1] * k;
    const std::uint64_t arg_span = pw[n];

    // Value of the outer application when f is nested at position i.
    auto nested = [&](std::uint64_t idx, std::uint32_t i) {
        std::uint64_t prefix = idx / pw[width - i];
        std::uint64_t inner = (idx / pw[n - 1 - i]) % arg_span;
        std::uint64_t suffix = idx % pw[n - 1 - i];
        std::uint64_t outer = (prefix * k + f[inner]) * pw[n - 1 - i] + suffix;
        return f[outer];
    };

    for (std::uint64_t idx = 0; idx < tuples; ++idx) {
        Value prev = nested(idx, 0);
        for (std::uint32_t i = 1; i < n; ++i) {
            Value cur = nested(idx, i);
            if (cur != prev) return false;
            prev = cur;
        }
    }
    return true;
}

/// The identity map on a k-element carrier.
inline FiniteOp identity_op(std::uint32_t k) {
    std::vector<Value> table(k);
    for (std::uint32_t a = 0; a < k; ++a) table[a] = a;
    return {k, 1, std::move(table)};
}

/// Arity of the ell-th derived operation of an arity-n operation: ell*(n-1)+1.
constexpr std::uint64_t derived_arity(std::uint64_t n, std::uint64_t ell) { return ell * (n - 1) + 1; }

/**
 * The derived operation f_ell: f_0 = id, f_{ell+1}(a_1..) = f_ell(f(a_1..a_n), a_{n+1}, ...).
 */
inline FiniteOp derive(const FiniteOp& f, std::uint64_t ell, const Limits& limits = {}) {
    const std::uint32_t k = f.k();
    if (ell == 0) return identity_op(k);
    const std::uint64_t target = derived_arity(f.n(), ell);
    if (target > 64) throw infeasible_size("infeasible size: derived arity " + std::to_string(target));
    require_size(k, target, limits, "derived table");
    if (ell == 1) return f;

    FiniteOp current = f;  // f_l with l = 1
    for (std::uint64_t l = 1; l < ell; ++l) {
        const std::uint32_t cur_arity = current.n();
        const std::uint32_t next_arity = cur_arity + f.n() - 1;
        const std::uint64_t tail = *checked_pow(k, cur_arity - 1);
        const std::uint64_t size = *checked_pow(k, next_arity);
        std::vector<Value> table(size);
        for (std::uint64_t idx = 0; idx < size; ++idx) {
            std::uint64_t head = idx / tail;
            std::uint64_t rest = idx % tail;
            table[idx] = current[f[head] * tail + rest];
        }
        current = FiniteOp(k, next_arity, std::move(table));
    }
    return current;
}

/// Witness that some operation equals base_ell.
struct DerivationCertificate {
    FiniteOp base;
    std::uint64_t ell = 0;

    std::uint64_t derived_arity() const { return nsemi::derived_arity(base.n(), ell); }

    friend bool operator==(const DerivationCertificate&, const DerivationCertificate&) = default;
};

/**
 * Returns (g, ell) when f = g_ell, otherwise nullopt. For unary g the
 * smallest matching power of g is reported.
 */
inline std::optional<DerivationCertificate> derivable_from(const FiniteOp& f, const FiniteOp& g,
                                                           const Limits& limits = {}) {
    if (f.k() != g.k()) throw input_error("carrier mismatch: " + std::to_string(f.k()) + " vs " + std::to_string(g.k()));
    const std::uint64_t n = f.n();
    const std::uint64_t m = g.n();
    if (m == 1) {
        if (n != 1) return std::nullopt;
        // g_ell is the ell-fold composite of g; walk the powers until they cycle.
        std::vector<FiniteOp> seen;
        FiniteOp power = identity_op(g.k());
        for (std::uint64_t ell = 0;; ++ell) {
            if (power == f) return DerivationCertificate{g, ell};
            if (std::find(seen.begin(), seen.end(), power) != seen.end()) return std::nullopt;
            seen.push_back(power);
            std::vector<Value> next(power.size());
            for (std::size_t a = 0; a < next.size(); ++a) next[a] = g[power[a]];
            power = FiniteOp(g.k(), 1, std::move(next));
        }
    }
    if ((n - 1) % (m - 1) != 0) return std::nullopt;
    const std::uint64_t ell = (n - 1) / (m - 1);
    if (derive(g, ell, limits) == f) return DerivationCertificate{g, ell};
    return std::nullopt;
}

/// Associative operations of a carrier, keyed by arity.
using AssocCatalog = std::map<std::uint32_t, std::vector<FiniteOp>>;

struct PrimitivityResult {
    bool primitive = true;
    std::optional<DerivationCertificate> witness;
};

/**
 * f is primitive when no associative operation of smaller arity derives it.
 * The catalog must list every arity m in [2, n) with (n-1) divisible by (m-1);
 * the witness uses the smallest such m and, within an arity, catalog order.
 */
inline PrimitivityResult is_primitive(const FiniteOp& f, const AssocCatalog& catalog, const Limits& limits = {}) {
    const std::uint32_t n = f.n();
    for (std::uint32_t m = 2; m < n; ++m) {
        if ((n - 1) % (m - 1) != 0) continue;
        auto it = catalog.find(m);
        if (it == catalog.end()) {
            throw input_error("catalog lacks arity " + std::to_string(m) + " required for arity " + std::to_string(n));
        }
        for (const FiniteOp& g : it->second) {
            if (g.k() != f.k()) throw input_error("catalog operation on a different carrier");
            if (auto cert = derivable_from(f, g, limits)) return {false, std::move(cert)};
        }
    }
    return {true, std::nullopt};
}

/**
 * Packed one-bit-per-cell view of an operation on {0, 1}, used by the
 * exhaustive enumerator. Bit i of the packed words is table cell i.
 */
class PackedBoolOp {
public:
    PackedBoolOp(std::uint32_t n, std::vector<std::uint64_t> words) : n_(n), words_(std::move(words)) {
        if (n_ < 1 || n_ > 30) throw input_error("packed arity out of range");
        std::uint64_t cells = std::uint64_t{1} << n_;
        if (words_.size() != (cells + 63) / 64) throw input_error("packed word count mismatch");
        if (cells < 64) words_[0] &= (std::uint64_t{1} << cells) - 1;
    }

    static PackedBoolOp from(const FiniteOp& f) {
        if (f.k() != 2) throw input_error("packed representation requires k = 2");
        std::vector<std::uint64_t> words((f.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i]) words[i / 64] |= std::uint64_t{1} << (i % 64);
        }
        return {f.n(), std::move(words)};
    }

    std::uint32_t n() const { return n_; }
    const std::vector<std::uint64_t>& words() const { return words_; }

    bool bit(std::uint64_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

    FiniteOp to_op() const {
        std::vector<Value> table(std::uint64_t{1} << n_);
        for (std::uint64_t i = 0; i < table.size(); ++i) table[i] = bit(i) ? 1 : 0;
        return {2, n_, std::move(table)};
    }

    bool is_associative(const Limits& limits = {}) const { return packed_is_associative(words_, n_, limits); }

    /// Adjacent-position check on a packed Boolean table.
    static bool packed_is_associative(std::span<const std::uint64_t> words, std::uint32_t n,
                                      const Limits& limits = {}) {
        if (n == 1) return true;
        const std::uint32_t width = 2 * n - 1;
        const std::uint64_t tuples = require_size(2, width, limits, "associativity check");
        const std::uint64_t arg_mask = (std::uint64_t{1} << n) - 1;
        auto cell = [&](std::uint64_t i) -> std::uint64_t { return (words[i >> 6] >> (i & 63)) & 1U; };
        for (std::uint64_t idx = 0; idx < tuples; ++idx) {
            std::uint64_t prev = 0;
            for (std::uint32_t i = 0; i < n; ++i) {
                const std::uint32_t low = n - 1 - i;  // bits after the nested block
                std::uint64_t inner = (idx >> low) & arg_mask;
                std::uint64_t prefix = idx >> (width - i);
                std::uint64_t suffix = idx & ((std::uint64_t{1} << low) - 1);
                std::uint64_t v = cell((((prefix << 1) | cell(inner)) << low) | suffix);
                if (i > 0 && v != prev) return false;
                prev = v;
            }
        }
        return true;
    }

private:
    std::uint32_t n_;
    std::vector<std::uint64_t> words_;
};

}  // namespace nsemi
