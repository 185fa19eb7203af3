#pragma once

/**
 * @file mlpoly.hpp
 * @brief Multilinear polynomials over ℤ and GF(p).
 *
 * A polynomial in n variables is a map from subsets of {x_1, ..., x_n} to
 * nonzero coefficients. Subsets are bitmasks: bit i-1 stands for x_i. No
 * exponent data exists, so every polynomial is multilinear by construction.
 *
 * Associativity is decided symbolically by comparing the coefficient maps of
 * the n nested compositions. Associative polynomials are then matched against
 * the six closed forms:
 *
 *   (i)   c
 *   (ii)  x_1
 *   (iii) x_n
 *   (iv)  c + sum x_i
 *   (v)   sum w^(i-1) x_i          (n >= 3, w != 1, w^(n-1) = 1)
 *   (vi)  -b + a prod (x_i + b)    (a != 0, b in the fraction field,
 *                                   a b^k in R for 1 <= k < n, a b^n - b in R)
 */

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "nsemi/algebra.hpp"
#include "nsemi/error.hpp"
#include "nsemi/finops.hpp"

namespace nsemi {

/// Set of variable indices, bit i-1 for x_i.
using Monomial = std::uint64_t;

inline constexpr std::uint32_t kMaxPolyVars = 32;

inline Monomial monomial_of(std::span<const std::uint32_t> vars, std::uint32_t n) {
    Monomial m = 0;
    for (std::uint32_t v : vars) {
        if (v < 1 || v > n) throw input_error("variable index " + std::to_string(v) + " outside 1.." + std::to_string(n));
        Monomial bit = Monomial{1} << (v - 1);
        if (m & bit) throw input_error("variable x" + std::to_string(v) + " repeated: polynomial is not multilinear");
        m |= bit;
    }
    return m;
}

/// Ascending 1-based variable indices of a monomial.
inline std::vector<std::uint32_t> vars_of(Monomial m) {
    std::vector<std::uint32_t> vars;
    while (m) {
        vars.push_back(static_cast<std::uint32_t>(std::countr_zero(m)) + 1);
        m &= m - 1;
    }
    return vars;
}

class MultilinearPoly {
public:
    MultilinearPoly(RingSpec ring, std::uint32_t n) : ring_(ring), n_(n) {
        if (n_ < 1 || n_ > kMaxPolyVars) {
            throw input_error("number of variables must be in 1.." + std::to_string(kMaxPolyVars));
        }
    }

    RingSpec ring() const { return ring_; }
    std::uint32_t n() const { return n_; }
    const std::map<Monomial, RingElem>& coeffs() const { return coeffs_; }
    std::size_t term_count() const { return coeffs_.size(); }
    bool is_zero() const { return coeffs_.empty(); }

    Monomial full_monomial() const { return n_ == 64 ? ~Monomial{0} : (Monomial{1} << n_) - 1; }

    RingElem coef(Monomial m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? RingElem::zero(ring_) : it->second;
    }

    /// Adds c to the coefficient of m.
    MultilinearPoly& add_term(Monomial m, const RingElem& c) {
        check_term(m, c);
        if (c.is_zero()) return *this;
        auto [it, inserted] = coeffs_.try_emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
        return *this;
    }

    MultilinearPoly& add_term(std::initializer_list<std::uint32_t> vars, long long c) {
        return add_term(monomial_of(std::span<const std::uint32_t>(vars.begin(), vars.size()), n_), RingElem(ring_, c));
    }

    MultilinearPoly& set_coef(Monomial m, const RingElem& c) {
        check_term(m, c);
        if (c.is_zero()) {
            coeffs_.erase(m);
        } else {
            coeffs_.insert_or_assign(m, c);
        }
        return *this;
    }

    friend bool operator==(const MultilinearPoly&, const MultilinearPoly&) = default;

private:
    void check_term(Monomial m, const RingElem& c) const {
        if (c.ring() != ring_) throw input_error("coefficient ring " + c.ring().to_string() + " differs from " + ring_.to_string());
        if ((m & ~full_monomial()) != 0) throw input_error("monomial uses variables beyond x" + std::to_string(n_));
    }

    RingSpec ring_;
    std::uint32_t n_;
    std::map<Monomial, RingElem> coeffs_;
};

inline RingElem eval(const MultilinearPoly& p, std::span<const RingElem> point) {
    if (point.size() != p.n()) {
        throw input_error("expected " + std::to_string(p.n()) + " coordinates, got " + std::to_string(point.size()));
    }
    for (const RingElem& x : point) {
        if (x.ring() != p.ring()) throw input_error("point coordinate outside " + p.ring().to_string());
    }
    BigInt acc = 0;
    for (const auto& [m, c] : p.coeffs()) {
        BigInt term = c.value();
        for (Monomial rest = m; rest && term != 0; rest &= rest - 1) term *= point[std::countr_zero(rest)].value();
        acc += term;
    }
    return {p.ring(), std::move(acc)};
}

inline RingElem eval(const MultilinearPoly& p, std::initializer_list<RingElem> point) {
    return eval(p, std::span<const RingElem>(point.begin(), point.size()));
}

/**
 * The composition p(x_1..x_i, p(x_{i+1}..x_{i+n}), x_{i+n+1}..x_{2n-1}) as a
 * polynomial in 2n-1 variables, for 0 <= i < n.
 */
inline MultilinearPoly compose_at(const MultilinearPoly& p, std::uint32_t i) {
    const std::uint32_t n = p.n();
    if (n < 2) throw input_error("composition needs at least two variables");
    if (i >= n) throw input_error("position " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));

    const Monomial inner_slot = Monomial{1} << i;
    const Monomial low = inner_slot - 1;  // x_1..x_i keep their index
    MultilinearPoly q(p.ring(), 2 * n - 1);
    for (const auto& [outer, c] : p.coeffs()) {
        // Slots after the inner one shift up by n - 1 variables.
        Monomial mapped = (outer & low) | ((outer >> (i + 1)) << (i + n));
        if (!(outer & inner_slot)) {
            q.add_term(mapped, c);
            continue;
        }
        for (const auto& [inner, d] : p.coeffs()) q.add_term(mapped | (inner << i), c * d);
    }
    return q;
}

/// Symbolic associativity: the coefficient maps of all n compositions coincide.
inline bool is_associative_poly(const MultilinearPoly& p) {
    if (p.n() < 2) return true;
    MultilinearPoly prev = compose_at(p, 0);
    for (std::uint32_t i = 1; i < p.n(); ++i) {
        MultilinearPoly cur = compose_at(p, i);
        if (cur != prev) return false;
        prev = std::move(cur);
    }
    return true;
}

/// Value table of p as an operation on GF(q), with residues as carrier elements.
inline FiniteOp function_table(const MultilinearPoly& p, const Limits& limits = {}) {
    if (!p.ring().is_prime_field()) throw input_error("function table needs a prime field");
    const auto q = static_cast<std::uint32_t>(p.ring().modulus());
    std::vector<RingElem> point(p.n(), RingElem::zero(p.ring()));
    return FiniteOp::tabulate(
        q, p.n(),
        [&](std::span<const Value> args) {
            for (std::size_t j = 0; j < args.size(); ++j) point[j] = RingElem(p.ring(), static_cast<long long>(args[j]));
            return static_cast<Value>(eval(p, point).value());
        },
        limits);
}

/**
 * Pointwise associativity over GF(q): tabulates p and checks every nesting
 * position on every (2n-1)-tuple of field elements.
 */
inline bool pointwise_associative(const MultilinearPoly& p, const Limits& limits = {}) {
    if (!p.ring().is_prime_field()) throw input_error("pointwise check is only decidable over a prime field");
    const std::uint32_t n = p.n();
    if (n < 2) return true;
    const std::uint64_t q = p.ring().modulus();
    require_size(q, 2 * n - 1, limits, "pointwise associativity check");
    const FiniteOp table = function_table(p, limits);

    std::vector<Value> tuple(2 * n - 1, 0);
    std::vector<Value> args(n);
    auto apply = [&](std::span<const Value> a) {
        std::uint64_t idx = 0;
        for (Value v : a) idx = idx * q + v;
        return table[idx];
    };
    auto nested = [&](std::uint32_t i) {
        Value inner = apply(std::span<const Value>(tuple).subspan(i, n));
        for (std::uint32_t j = 0; j < i; ++j) args[j] = tuple[j];
        args[i] = inner;
        for (std::uint32_t j = i + 1; j < n; ++j) args[j] = tuple[j + n - 1];
        return apply(args);
    };
    while (true) {
        Value reference = nested(0);
        for (std::uint32_t i = 1; i < n; ++i) {
            if (nested(i) != reference) return false;
        }
        std::size_t pos = tuple.size();
        while (pos > 0 && ++tuple[pos - 1] == q) tuple[--pos] = 0;
        if (pos == 0) return true;
    }
}

// Closed forms.

struct ConstantForm {
    RingElem c;
    friend bool operator==(const ConstantForm&, const ConstantForm&) = default;
};
struct FirstProjForm {
    friend bool operator==(const FirstProjForm&, const FirstProjForm&) = default;
};
struct LastProjForm {
    friend bool operator==(const LastProjForm&, const LastProjForm&) = default;
};
struct ShiftedSumForm {
    RingElem c;
    friend bool operator==(const ShiftedSumForm&, const ShiftedSumForm&) = default;
};
struct OmegaSumForm {
    RingElem omega;
    friend bool operator==(const OmegaSumForm&, const OmegaSumForm&) = default;
};
struct ProductForm {
    RingElem a;
    FractionElem b;
    friend bool operator==(const ProductForm&, const ProductForm&) = default;
};
struct NoForm {
    friend bool operator==(const NoForm&, const NoForm&) = default;
};

using MarMatForm =
    std::variant<NoForm, ConstantForm, FirstProjForm, LastProjForm, ShiftedSumForm, OmegaSumForm, ProductForm>;

enum class FormKind { None, Constant, FirstProj, LastProj, ShiftedSum, OmegaSum, Product };

inline constexpr std::array<FormKind, 6> kFormKinds = {FormKind::Constant,   FormKind::FirstProj, FormKind::LastProj,
                                                       FormKind::ShiftedSum, FormKind::OmegaSum,  FormKind::Product};

inline FormKind kind_of(const MarMatForm& f) { return static_cast<FormKind>(f.index()); }

inline std::string_view to_string(FormKind k) {
    switch (k) {
        case FormKind::None: return "no_form";
        case FormKind::Constant: return "constant";
        case FormKind::FirstProj: return "first_proj";
        case FormKind::LastProj: return "last_proj";
        case FormKind::ShiftedSum: return "shifted_sum";
        case FormKind::OmegaSum: return "omega_sum";
        case FormKind::Product: return "product_form";
    }
    return "no_form";
}

namespace detail {

inline bool only_singletons_and_constant(const MultilinearPoly& p) {
    for (const auto& [m, c] : p.coeffs()) {
        if (std::popcount(m) > 1) return false;
    }
    return true;
}

inline std::optional<ConstantForm> match_constant(const MultilinearPoly& p) {
    if (p.term_count() > 1 || (p.term_count() == 1 && p.coeffs().begin()->first != 0)) return std::nullopt;
    return ConstantForm{p.coef(0)};
}

inline bool match_single_variable(const MultilinearPoly& p, std::uint32_t var) {
    if (p.term_count() != 1) return false;
    const auto& [m, c] = *p.coeffs().begin();
    return m == (Monomial{1} << (var - 1)) && c.is_one();
}

inline std::optional<ShiftedSumForm> match_shifted_sum(const MultilinearPoly& p) {
    if (!only_singletons_and_constant(p)) return std::nullopt;
    for (std::uint32_t i = 0; i < p.n(); ++i) {
        if (!p.coef(Monomial{1} << i).is_one()) return std::nullopt;
    }
    return ShiftedSumForm{p.coef(0)};
}

inline std::optional<OmegaSumForm> match_omega_sum(const MultilinearPoly& p) {
    if (p.n() < 3 || !only_singletons_and_constant(p) || !p.coef(0).is_zero()) return std::nullopt;
    const RingElem omega = p.coef(Monomial{1} << 1);
    if (omega.is_one() || !ring_pow(omega, p.n() - 1).is_one()) return std::nullopt;
    RingElem expected = RingElem::one(p.ring());
    for (std::uint32_t i = 0; i < p.n(); ++i) {
        if (p.coef(Monomial{1} << i) != expected) return std::nullopt;
        expected = expected * omega;
    }
    return OmegaSumForm{omega};
}

/// Conditions on (a, b) for the product form in R.
inline bool product_parameters_valid(const RingElem& a, const FractionElem& b, std::uint32_t n) {
    if (a.is_zero()) return false;
    const FractionElem fa = fraction_field_elem(a);
    FractionElem ab_k = fa;
    for (std::uint32_t k = 1; k < n; ++k) {
        ab_k = ab_k * b;
        if (!in_base_ring(ab_k)) return false;
    }
    return in_base_ring(ab_k * b - b);
}

inline std::optional<ProductForm> match_product(const MultilinearPoly& p) {
    const std::uint32_t n = p.n();
    const Monomial full = p.full_monomial();
    const RingElem a = p.coef(full);
    if (a.is_zero()) return std::nullopt;
    const FractionElem fa = fraction_field_elem(a);
    // b is read off x_1...x_{n-1}; everything else is verified against it.
    const FractionElem b = fraction_field_elem(p.coef(full & ~(Monomial{1} << (n - 1)))) / fa;

    // scaled[k] = a * b^k
    std::vector<FractionElem> scaled{fa};
    for (std::uint32_t k = 1; k <= n; ++k) scaled.push_back(scaled.back() * b);
    const FractionElem constant = scaled[n] - b;

    if (b.is_zero()) {
        if (p.term_count() != 1) return std::nullopt;
    } else {
        // Every nonempty subset carries a * b^(n-|S|) != 0, so all 2^n - 1 must be stored.
        if (n >= 63) return std::nullopt;
        const std::uint64_t nonempty = (std::uint64_t{1} << n) - 1;
        const std::uint64_t stored_nonempty = p.term_count() - (p.coeffs().contains(0) ? 1 : 0);
        if (stored_nonempty != nonempty) return std::nullopt;
        for (const auto& [m, c] : p.coeffs()) {
            if (m == 0) continue;
            if (fraction_field_elem(c) != scaled[n - std::popcount(m)]) return std::nullopt;
        }
    }
    if (fraction_field_elem(p.coef(0)) != constant) return std::nullopt;
    if (!product_parameters_valid(a, b, n)) return std::nullopt;
    return ProductForm{a, b};
}

}  // namespace detail

/// Every closed form that p matches, in the fixed order (i)..(vi).
inline std::vector<MarMatForm> matching_forms(const MultilinearPoly& p) {
    if (p.n() < 2) throw input_error("closed forms are defined for n >= 2");
    std::vector<MarMatForm> out;
    if (auto f = detail::match_constant(p)) out.emplace_back(*f);
    if (detail::match_single_variable(p, 1)) out.emplace_back(FirstProjForm{});
    if (detail::match_single_variable(p, p.n())) out.emplace_back(LastProjForm{});
    if (auto f = detail::match_shifted_sum(p)) out.emplace_back(*f);
    if (auto f = detail::match_omega_sum(p)) out.emplace_back(*f);
    if (auto f = detail::match_product(p)) out.emplace_back(*f);
    return out;
}

/// The unique closed form of p, or NoForm. A double match is an internal error.
inline MarMatForm classify_marmat(const MultilinearPoly& p) {
    std::vector<MarMatForm> forms = matching_forms(p);
    if (forms.empty()) return NoForm{};
    if (forms.size() > 1) {
        throw std::logic_error("polynomial matches both " + std::string(to_string(kind_of(forms[0]))) + " and " +
                               std::string(to_string(kind_of(forms[1]))));
    }
    return forms.front();
}

/// Expands a closed form into its coefficient map over `ring` in n variables.
inline MultilinearPoly from_form(const MarMatForm& form, RingSpec ring, std::uint32_t n, const Limits& limits = {}) {
    if (n < 2) throw input_error("closed forms are defined for n >= 2");
    MultilinearPoly p(ring, n);
    auto require_ring = [&](const RingElem& x) {
        if (x.ring() != ring) throw input_error("form parameter " + x.to_string() + " is not in " + ring.to_string());
    };
    auto add_singletons = [&](const RingElem& first, const RingElem& ratio) {
        RingElem c = first;
        for (std::uint32_t i = 0; i < n; ++i) {
            p.add_term(Monomial{1} << i, c);
            c = c * ratio;
        }
    };

    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, NoForm>) {
                throw input_error("no_form has no polynomial");
            } else if constexpr (std::is_same_v<F, ConstantForm>) {
                require_ring(f.c);
                p.add_term(0, f.c);
            } else if constexpr (std::is_same_v<F, FirstProjForm>) {
                p.add_term(1, RingElem::one(ring));
            } else if constexpr (std::is_same_v<F, LastProjForm>) {
                p.add_term(Monomial{1} << (n - 1), RingElem::one(ring));
            } else if constexpr (std::is_same_v<F, ShiftedSumForm>) {
                require_ring(f.c);
                p.add_term(0, f.c);
                add_singletons(RingElem::one(ring), RingElem::one(ring));
            } else if constexpr (std::is_same_v<F, OmegaSumForm>) {
                require_ring(f.omega);
                if (n < 3) throw input_error("omega_sum needs n >= 3");
                if (f.omega.is_one()) throw input_error("omega_sum needs omega != 1");
                if (!ring_pow(f.omega, n - 1).is_one()) {
                    throw input_error("omega_sum needs omega^(n-1) = 1, got omega = " + f.omega.to_string());
                }
                add_singletons(RingElem::one(ring), f.omega);
            } else if constexpr (std::is_same_v<F, ProductForm>) {
                require_ring(f.a);
                if (f.b.ring() != ring) throw input_error("parameter b is not in the fraction field of " + ring.to_string());
                if (f.a.is_zero()) throw input_error("product_form needs a != 0");
                if (!detail::product_parameters_valid(f.a, f.b, n)) {
                    throw input_error("product_form parameters violate a*b^k in R or a*b^n - b in R");
                }
                std::vector<RingElem> scaled;  // a * b^k, k = 0..n
                FractionElem acc = fraction_field_elem(f.a);
                for (std::uint32_t k = 0; k <= n; ++k) {
                    scaled.push_back(k < n ? to_base_ring(acc) : RingElem::zero(ring));
                    if (k < n) acc = acc * f.b;
                }
                p.add_term(0, to_base_ring(acc - f.b));
                if (f.b.is_zero()) {
                    p.add_term(p.full_monomial(), f.a);
                    return;
                }
                const std::uint64_t subsets = require_size(2, n, limits, "product_form expansion");
                for (Monomial m = 1; m < subsets; ++m) p.add_term(m, scaled[n - std::popcount(m)]);
            }
        },
        form);
    return p;
}

/**
 * Algebraic normal form of a Boolean operation: the coefficient of x_S is the
 * XOR of f over the indicator tuples of all subsets of S.
 */
inline MultilinearPoly to_anf(const FiniteOp& f) {
    if (f.k() != 2) throw input_error("algebraic normal form needs k = 2");
    if (f.n() > kMaxPolyVars) throw input_error("too many variables for a polynomial");
    const std::uint32_t n = f.n();
    std::vector<std::uint8_t> t(f.table().begin(), f.table().end());
    for (std::uint32_t bit = 0; bit < n; ++bit) {
        const std::uint64_t step = std::uint64_t{1} << bit;
        for (std::uint64_t idx = 0; idx < t.size(); ++idx) {
            if (idx & step) t[idx] ^= t[idx ^ step];
        }
    }
    const RingSpec gf2 = RingSpec::prime_field(2);
    MultilinearPoly p(gf2, n);
    for (std::uint64_t idx = 0; idx < t.size(); ++idx) {
        if (!t[idx]) continue;
        // Table bit n-i holds argument a_i, i.e. variable x_i.
        Monomial m = 0;
        for (std::uint32_t i = 1; i <= n; ++i) {
            if ((idx >> (n - i)) & 1U) m |= Monomial{1} << (i - 1);
        }
        p.add_term(m, RingElem::one(gf2));
    }
    return p;
}

/// Inverse of to_anf: the Boolean operation computed by a polynomial over GF(2).
inline FiniteOp from_anf(const MultilinearPoly& p, const Limits& limits = {}) {
    if (p.ring() != RingSpec::prime_field(2)) throw input_error("algebraic normal form lives over GF(2)");
    const std::uint32_t n = p.n();
    const std::uint64_t size = require_size(2, n, limits, "Boolean table");
    std::vector<std::uint8_t> t(size, 0);
    for (const auto& [m, c] : p.coeffs()) {
        std::uint64_t idx = 0;
        for (std::uint32_t i = 1; i <= n; ++i) {
            if ((m >> (i - 1)) & 1U) idx |= std::uint64_t{1} << (n - i);
        }
        t[idx] = 1;
    }
    for (std::uint32_t bit = 0; bit < n; ++bit) {
        const std::uint64_t step = std::uint64_t{1} << bit;
        for (std::uint64_t idx = 0; idx < size; ++idx) {
            if (idx & step) t[idx] ^= t[idx ^ step];
        }
    }
    return {2, n, std::vector<Value>(t.begin(), t.end())};
}

}  // namespace nsemi
