#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace nsemi {

/// Malformed or inconsistent input (bad table, mixed rings, composite modulus, ...).
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A requested table or scan would exceed the configured guard rail.
class infeasible_size : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Size limits shared by every table-building or exhaustive routine.
struct Limits {
    static constexpr std::uint64_t default_max_cells = std::uint64_t{1} << 24;

    std::uint64_t max_cells = default_max_cells;
};

/// base^exp, or nullopt when the result exceeds `cap`.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                                std::uint64_t cap = std::numeric_limits<std::uint64_t>::max()) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return std::nullopt;
        r *= base;
        if (r == 0) return 0;
    }
    if (r > cap) return std::nullopt;
    return r;
}

/// base^exp, throwing infeasible_size when it exceeds the limit.
inline std::uint64_t require_size(std::uint64_t base, std::uint64_t exp, const Limits& limits,
                                  const char* what) {
    auto r = checked_pow(base, exp, limits.max_cells);
    if (!r) {
        throw infeasible_size(std::string("infeasible size: ") + what + " needs " + std::to_string(base) + "^" +
                              std::to_string(exp) + " > " + std::to_string(limits.max_cells));
    }
    return *r;
}

}  // namespace nsemi
