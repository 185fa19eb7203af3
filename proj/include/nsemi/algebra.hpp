#pragma once

/**
 * @file algebra.hpp
 * @brief Exact arithmetic over the integers, prime fields and the rationals.
 *
 * Every ring handled here is an integral domain: ℤ or GF(p) for a prime p.
 * Integers are arbitrary precision; residues are kept canonical in [0, p).
 * The fraction field of ℤ is represented by Rational, the fraction field of
 * GF(p) is GF(p) itself.
 */

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "nsemi/error.hpp"

namespace nsemi {

using BigInt = boost::multiprecision::cpp_int;

/// Deterministic trial division; moduli in this library are tiny.
constexpr bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    if (m % 2 == 0) return m == 2;
    for (std::uint64_t d = 3; d <= m / d; d += 2) {
        if (m % d == 0) return false;
    }
    return true;
}

/// Either ℤ or GF(p).
class RingSpec {
public:
    constexpr RingSpec() = default;

    static constexpr RingSpec integers() { return RingSpec{}; }

    static RingSpec prime_field(std::uint64_t p) {
        if (!is_prime(p)) throw input_error("modulus " + std::to_string(p) + " is not prime");
        RingSpec r;
        r.p_ = p;
        return r;
    }

    constexpr bool is_integers() const { return p_ == 0; }
    constexpr bool is_prime_field() const { return p_ != 0; }
    /// The prime p for GF(p), 0 for ℤ.
    constexpr std::uint64_t modulus() const { return p_; }

    std::string to_string() const { return is_integers() ? "Z" : "GF(" + std::to_string(p_) + ")"; }

    friend constexpr bool operator==(RingSpec, RingSpec) = default;

private:
    std::uint64_t p_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, RingSpec r) { return os << r.to_string(); }

namespace detail {

inline BigInt reduce(BigInt v, std::uint64_t p) {
    if (p == 0) return v;
    v %= p;
    if (v < 0) v += p;
    return v;
}

inline BigInt parse_decimal(std::string_view s) {
    std::string_view digits = s;
    bool negative = false;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        negative = digits.front() == '-';
        digits.remove_prefix(1);
    }
    if (digits.empty()) throw input_error("empty integer literal '" + std::string(s) + "'");
    for (char c : digits) {
        if (c < '0' || c > '9') throw input_error("malformed integer literal '" + std::string(s) + "'");
    }
    BigInt v{std::string(digits)};
    return negative ? BigInt(-v) : v;
}

}  // namespace detail

/// An element of a RingSpec. Residues are always reduced into [0, p).
class RingElem {
public:
    RingElem() = default;
    RingElem(RingSpec ring, BigInt value) : ring_(ring), value_(detail::reduce(std::move(value), ring.modulus())) {}
    RingElem(RingSpec ring, long long value) : RingElem(ring, BigInt(value)) {}

    static RingElem zero(RingSpec ring) { return {ring, BigInt(0)}; }
    static RingElem one(RingSpec ring) { return {ring, BigInt(1)}; }

    RingSpec ring() const { return ring_; }
    const BigInt& value() const { return value_; }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    std::string to_string() const { return value_.str(); }

    friend bool operator==(const RingElem& a, const RingElem& b) {
        return a.ring_ == b.ring_ && a.value_ == b.value_;
    }

private:
    RingSpec ring_{};
    BigInt value_{0};
};

inline std::ostream& operator<<(std::ostream& os, const RingElem& x) { return os << x.to_string(); }

inline RingElem parse_ring_elem(std::string_view s, RingSpec ring) { return {ring, detail::parse_decimal(s)}; }

namespace detail {
inline void require_same_ring(const RingElem& x, const RingElem& y) {
    if (x.ring() != y.ring()) {
        throw input_error("mixed ring operands: " + x.ring().to_string() + " and " + y.ring().to_string());
    }
}
}  // namespace detail

inline RingElem ring_add(const RingElem& x, const RingElem& y) {
    detail::require_same_ring(x, y);
    return {x.ring(), x.value() + y.value()};
}

inline RingElem ring_mul(const RingElem& x, const RingElem& y) {
    detail::require_same_ring(x, y);
    return {x.ring(), x.value() * y.value()};
}

inline RingElem ring_neg(const RingElem& x) { return {x.ring(), BigInt(-x.value())}; }

inline RingElem ring_sub(const RingElem& x, const RingElem& y) { return ring_add(x, ring_neg(y)); }

inline RingElem ring_pow(const RingElem& x, std::uint64_t e) {
    RingElem result = RingElem::one(x.ring());
    RingElem base = x;
    while (e > 0) {
        if (e & 1) result = ring_mul(result, base);
        e >>= 1;
        if (e) base = ring_mul(base, base);
    }
    return result;
}

/// Multiplicative inverse in GF(p). Throws for ℤ or zero.
inline RingElem ring_inv(const RingElem& x) {
    if (!x.ring().is_prime_field()) throw input_error("inverse requested outside a prime field");
    if (x.is_zero()) throw input_error("inverse of zero");
    return ring_pow(x, x.ring().modulus() - 2);
}

inline RingElem operator+(const RingElem& x, const RingElem& y) { return ring_add(x, y); }
inline RingElem operator-(const RingElem& x, const RingElem& y) { return ring_sub(x, y); }
inline RingElem operator*(const RingElem& x, const RingElem& y) { return ring_mul(x, y); }
inline RingElem operator-(const RingElem& x) { return ring_neg(x); }

/// A rational number in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(BigInt num) : num_(std::move(num)) {}  // NOLINT(google-explicit-constructor)
    Rational(long long num) : num_(num) {}          // NOLINT(google-explicit-constructor)
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw input_error("rational with zero denominator");
        normalize();
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    /// "num/den", always both parts.
    std::string to_string() const { return num_.str() + "/" + den_.str(); }

    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return {detail::parse_decimal(s)};
        BigInt d = detail::parse_decimal(s.substr(slash + 1));
        return {detail::parse_decimal(s.substr(0, slash)), d};
    }

    friend bool operator==(const Rational&, const Rational&) = default;

    friend Rational operator+(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator-(const Rational& a) {
        Rational r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw input_error("division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_{0};
    BigInt den_{1};
};

inline std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

/**
 * Element of the field of fractions of a RingSpec: a Rational over ℤ, a
 * residue over GF(p).
 */
class FractionElem {
public:
    FractionElem() = default;
    explicit FractionElem(Rational q) : v_(std::move(q)) {}
    explicit FractionElem(RingElem residue) : v_(std::move(residue)) {
        if (!std::get<RingElem>(v_).ring().is_prime_field()) {
            v_ = Rational(std::get<RingElem>(v_).value());
        }
    }

    RingSpec ring() const {
        if (const auto* r = std::get_if<RingElem>(&v_)) return r->ring();
        return RingSpec::integers();
    }

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const RingElem& residue() const { return std::get<RingElem>(v_); }

    bool is_zero() const { return is_rational() ? rational().is_zero() : residue().is_zero(); }

    std::string to_string() const { return is_rational() ? rational().to_string() : residue().to_string(); }

    friend bool operator==(const FractionElem&, const FractionElem&) = default;

    friend FractionElem operator+(const FractionElem& a, const FractionElem& b) {
        return combine(a, b, [](auto& x, auto& y) { return x + y; });
    }
    friend FractionElem operator-(const FractionElem& a, const FractionElem& b) {
        return combine(a, b, [](auto& x, auto& y) { return x - y; });
    }
    friend FractionElem operator*(const FractionElem& a, const FractionElem& b) {
        return combine(a, b, [](auto& x, auto& y) { return x * y; });
    }
    friend FractionElem operator/(const FractionElem& a, const FractionElem& b) {
        if (a.ring() != b.ring()) throw input_error("mixed ring operands in fraction field");
        if (a.is_rational()) return FractionElem(a.rational() / b.rational());
        return FractionElem(a.residue() * ring_inv(b.residue()));
    }

private:
    template <class Op>
    static FractionElem combine(const FractionElem& a, const FractionElem& b, Op op) {
        if (a.ring() != b.ring()) throw input_error("mixed ring operands in fraction field");
        if (a.is_rational()) return FractionElem(op(a.rational(), b.rational()));
        return FractionElem(op(a.residue(), b.residue()));
    }

    std::variant<Rational, RingElem> v_{Rational{}};
};

inline std::ostream& operator<<(std::ostream& os, const FractionElem& x) { return os << x.to_string(); }

/// Embeds x into the field of fractions of its ring.
inline FractionElem fraction_field_elem(const RingElem& x) { return FractionElem(x); }

inline FractionElem fraction_pow(const FractionElem& x, std::uint64_t e) {
    FractionElem result = fraction_field_elem(RingElem::one(x.ring()));
    for (std::uint64_t i = 0; i < e; ++i) result = result * x;
    return result;
}

/// Whether x lies in the base ring (denominator 1 over ℤ; always over GF(p)).
inline bool in_base_ring(const FractionElem& x) { return !x.is_rational() || x.rational().is_integer(); }

/// The base-ring element equal to x; throws when x is not in the base ring.
inline RingElem to_base_ring(const FractionElem& x) {
    if (!in_base_ring(x)) throw input_error(x.to_string() + " is not in the base ring");
    if (x.is_rational()) return {RingSpec::integers(), x.rational().num()};
    return x.residue();
}

/// Parses a fraction-field element: "num/den" or an integer over ℤ, a residue over GF(p).
inline FractionElem parse_fraction_elem(std::string_view s, RingSpec ring) {
    if (ring.is_integers()) return FractionElem(Rational::parse(s));
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return FractionElem(parse_ring_elem(s, ring));
    return FractionElem(parse_ring_elem(s.substr(0, slash), ring)) /
           FractionElem(parse_ring_elem(s.substr(slash + 1), ring));
}

}  // namespace nsemi
