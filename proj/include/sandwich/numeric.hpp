#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace sandwich {

namespace bmp = boost::multiprecision;

using BigInt = bmp::number<bmp::gmp_int, bmp::et_off>;
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;

enum class ErrorCode {
    Underflow,
    InvalidArgument,
    InsufficientLiquidity,
    EmptyPool,
    ZeroInput,
    ExceedsPool,
    NotInitialized,
    AlreadyInitialized,
    InsufficientShares,
    PoolDrained,
    NoProfitableInput,
    InsufficientAdversaryFunds,
    DuplicateNonce,
    NonceOrder,
    ParseError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Underflow: return "Underflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientLiquidity: return "InsufficientLiquidity";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::ExceedsPool: return "ExceedsPool";
    case ErrorCode::NotInitialized: return "NotInitialized";
    case ErrorCode::AlreadyInitialized: return "AlreadyInitialized";
    case ErrorCode::InsufficientShares: return "InsufficientShares";
    case ErrorCode::PoolDrained: return "PoolDrained";
    case ErrorCode::NoProfitableInput: return "NoProfitableInput";
    case ErrorCode::InsufficientAdversaryFunds: return "InsufficientAdversaryFunds";
    case ErrorCode::DuplicateNonce: return "DuplicateNonce";
    case ErrorCode::NonceOrder: return "NonceOrder";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Floor and ceiling division with the sign handled; mpz division truncates.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    bmp::divide_qr(a, b, q, r);
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    bmp::divide_qr(a, b, q, r);
    if (r != 0 && ((r < 0) == (b < 0))) q += 1;
    return q;
}

inline BigInt floor_of(const Rational& r) { return floor_div(bmp::numerator(r), bmp::denominator(r)); }
inline BigInt ceil_of(const Rational& r) { return ceil_div(bmp::numerator(r), bmp::denominator(r)); }

inline BigInt pow10(unsigned n) {
    BigInt v = 1;
    for (unsigned i = 0; i < n; ++i) v *= 10;
    return v;
}

// Parses "12", "-3.25", "0.005" or "3/1000" exactly.
inline Rational parse_rational(std::string_view text) {
    auto bad = [&] { fail(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational n = parse_rational(text.substr(0, slash));
        Rational d = parse_rational(text.substr(slash + 1));
        if (d == 0) bad();
        return n / d;
    }
    bool negative = false;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        i = 1;
    }
    BigInt digits = 0;
    unsigned frac = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) bad();
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits = digits * 10 + (c - '0');
            seen_digit = true;
            if (seen_dot) ++frac;
        } else {
            bad();
        }
    }
    if (!seen_digit) bad();
    Rational r(digits, pow10(frac));
    return negative ? Rational(-r) : r;
}

// Fixed-point decimal rendering, rounding half away from zero.
inline std::string format_fixed(const Rational& v, unsigned places) {
    BigInt scale = pow10(places);
    Rational scaled = v * Rational(scale);
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    BigInt q = floor_of(scaled + Rational(1, 2));
    std::string digits = q.str();
    if (places > 0) {
        if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
        digits.insert(digits.size() - places, ".");
    }
    if (negative && q != 0) digits.insert(0, "-");
    return digits;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

// Non-negative integer quantity in base units. Going below zero is an error.
class Amount {
public:
    Amount() = default;
    Amount(std::uint64_t v) : v_(v) {}
    explicit Amount(BigInt v) : v_(std::move(v)) {
        if (v_ < 0) fail(ErrorCode::Underflow, "negative amount " + v_.str());
    }

    static Amount parse(std::string_view text) {
        if (text.empty()) fail(ErrorCode::ParseError, "empty amount");
        for (char c : text)
            if (c < '0' || c > '9')
                fail(ErrorCode::ParseError, "amount must be a decimal integer of base units: '" +
                                                std::string(text) + "'");
        return Amount(BigInt(std::string(text)));
    }

    // "7377.53" with 18 decimals -> 7377530000000000000000.
    static Amount from_units(std::string_view text, unsigned decimals) {
        Rational r = parse_rational(text) * Rational(pow10(decimals));
        if (bmp::denominator(r) != 1)
            fail(ErrorCode::ParseError, "'" + std::string(text) + "' has more than " +
                                            std::to_string(decimals) + " decimals");
        return Amount(bmp::numerator(r));
    }

    const BigInt& value() const noexcept { return v_; }
    bool is_zero() const { return v_ == 0; }
    std::string str() const { return v_.str(); }

    friend Amount operator+(const Amount& a, const Amount& b) { return Amount(a.v_ + b.v_); }
    friend Amount operator-(const Amount& a, const Amount& b) {
        if (a.v_ < b.v_) fail(ErrorCode::Underflow, a.str() + " - " + b.str());
        return Amount(a.v_ - b.v_);
    }
    friend Amount operator*(const Amount& a, const Amount& b) { return Amount(a.v_ * b.v_); }
    Amount& operator+=(const Amount& o) { return *this = *this + o; }
    Amount& operator-=(const Amount& o) { return *this = *this - o; }

    friend bool operator==(const Amount& a, const Amount& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Amount& a, const Amount& b) {
        return a.v_.compare(b.v_) <=> 0;
    }

private:
    BigInt v_ = 0;
};

inline Rational to_rational(const Amount& a) { return Rational(a.value()); }
inline double to_double(const Amount& a) { return to_double(a.value()); }

inline std::string format_units(const Amount& a, unsigned decimals, unsigned places) {
    return format_fixed(Rational(a.value(), pow10(decimals)), places);
}
inline std::string format_units(const BigInt& a, unsigned decimals, unsigned places) {
    return format_fixed(Rational(a, pow10(decimals)), places);
}
inline std::string format_units(const Rational& a, unsigned decimals, unsigned places) {
    return format_fixed(a / Rational(pow10(decimals)), places);
}

// The two arithmetic modes: integer base units with explicit rounding, and exact rationals.
template <class T>
concept PoolNumber = std::same_as<T, Amount> || std::same_as<T, Rational>;

template <PoolNumber Num>
using signed_t = std::conditional_t<std::is_same_v<Num, Amount>, BigInt, Rational>;

template <PoolNumber Num>
Num lift(const BigInt& v) {
    if constexpr (std::is_same_v<Num, Amount>)
        return Amount(v);
    else
        return Rational(v);
}

template <PoolNumber Num>
Num lift(const Amount& v) {
    if constexpr (std::is_same_v<Num, Amount>)
        return v;
    else
        return Rational(v.value());
}

template <PoolNumber Num>
Num from_signed(const signed_t<Num>& v) {
    if constexpr (std::is_same_v<Num, Amount>)
        return Amount(v);
    else
        return v;
}

// Exact in rational mode, rounded up in integer mode.
inline Amount quotient_up(const Amount& n, const Amount& d) { return Amount(ceil_div(n.value(), d.value())); }
inline Amount quotient_down(const Amount& n, const Amount& d) { return Amount(floor_div(n.value(), d.value())); }
inline Rational quotient_up(const Rational& n, const Rational& d) { return n / d; }
inline Rational quotient_down(const Rational& n, const Rational& d) { return n / d; }

// Multiply by a non-negative rational factor with the given rounding.
inline Amount scale_down(const Amount& v, const Rational& f) { return Amount(floor_of(Rational(v.value()) * f)); }
inline Amount scale_up(const Amount& v, const Rational& f) { return Amount(ceil_of(Rational(v.value()) * f)); }
inline Rational scale_down(const Rational& v, const Rational& f) { return v * f; }
inline Rational scale_up(const Rational& v, const Rational& f) { return v * f; }

inline bool is_zero(const Amount& v) { return v.is_zero(); }
inline bool is_zero(const Rational& v) { return v == 0; }

inline BigInt signed_value(const Amount& v) { return v.value(); }
inline const Rational& signed_value(const Rational& v) { return v; }

inline Rational as_rational(const Amount& v) { return to_rational(v); }
inline const Rational& as_rational(const Rational& v) { return v; }
inline Rational as_rational(const BigInt& v) { return Rational(v); }

}  // namespace sandwich
