#pragma once

// Reference associativity checker used as an oracle for the enumerator. It
// shares nothing with the optimized path beyond the FiniteOp container: every
// pair of nesting positions is compared on every tuple, without early exit.

#include <cstdint>
#include <vector>

#include "nsemi/error.hpp"
#include "nsemi/finops.hpp"

namespace nsemi::naive {

inline Value lookup(const FiniteOp& f, const std::vector<Value>& args) {
    std::uint64_t idx = 0;
    for (Value a : args) idx = idx * f.k() + a;
    return f.table().at(idx);
}

inline Value nested_value(const FiniteOp& f, const std::vector<Value>& tuple, std::uint32_t pos) {
    const std::uint32_t n = f.n();
    std::vector<Value> inner(tuple.begin() + pos, tuple.begin() + pos + n);
    std::vector<Value> outer;
    outer.insert(outer.end(), tuple.begin(), tuple.begin() + pos);
    outer.push_back(lookup(f, inner));
    outer.insert(outer.end(), tuple.begin() + pos + n, tuple.end());
    return lookup(f, outer);
}

inline bool all_pairs_associative(const FiniteOp& f, const Limits& limits = {}) {
    const std::uint32_t n = f.n();
    if (n == 1) return true;
    require_size(f.k(), 2 * n - 1, limits, "naive associativity check");
    std::vector<Value> tuple(2 * n - 1, 0);
    bool ok = true;
    for (;;) {
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i + 1; j < n; ++j) {
                if (nested_value(f, tuple, i) != nested_value(f, tuple, j)) ok = false;
            }
        }
        std::size_t pos = tuple.size();
        while (pos > 0) {
            if (++tuple[pos - 1] < f.k()) break;
            tuple[--pos] = 0;
        }
        if (pos == 0) break;
    }
    return ok;
}

/// Every associative table on a k-element carrier of arity n, in table order
/// (table[0] most significant, smallest table first).
inline std::vector<FiniteOp> enumerate_associative(std::uint32_t k, std::uint32_t n, const Limits& limits = {}) {
    const std::uint64_t cells = require_size(k, n, limits, "table");
    require_size(k, cells, limits, "naive enumeration");
    std::vector<Value> table(cells, 0);
    std::vector<FiniteOp> out;
    for (;;) {
        FiniteOp f(k, n, table);
        if (all_pairs_associative(f, limits)) out.push_back(std::move(f));
        std::size_t pos = table.size();
        while (pos > 0) {
            if (++table[pos - 1] < k) break;
            table[--pos] = 0;
        }
        if (pos == 0) break;
    }
    return out;
}

}  // namespace nsemi::naive
