#pragma once

#include "sandwich/numeric.hpp"

#include <cstdint>

namespace sandwich {

template <PoolNumber Num>
struct BasicPool {
    Num x{};
    Num y{};

    friend bool operator==(const BasicPool&, const BasicPool&) = default;
};

using PoolState = BasicPool<Amount>;
using ExactPool = BasicPool<Rational>;

inline ExactPool to_exact(const PoolState& s) { return {to_rational(s.x), to_rational(s.y)}; }

template <PoolNumber Num>
BasicPool<Num> flipped(const BasicPool<Num>& s) {
    return {s.y, s.x};
}

// Fee charged on the input asset as num/den of the amount in.
struct FeeSpec {
    std::int64_t num = 3;
    std::int64_t den = 1000;

    static FeeSpec none() { return {0, 1}; }
    Rational rate() const { return Rational(BigInt(num), BigInt(den)); }

    // Equal rates give identical integer results, so 2/1000 == 1/500.
    friend bool operator==(const FeeSpec& a, const FeeSpec& b) { return a.rate() == b.rate(); }
};

inline void validate(const FeeSpec& fee) {
    if (fee.den <= 0 || fee.num < 0 || fee.num >= fee.den)
        fail(ErrorCode::InvalidArgument, "fee must satisfy 0 <= num < den");
}

template <PoolNumber Num>
struct SwapResult {
    BasicPool<Num> state;
    Num amount;  // output for fixed-input swaps, input for exact-output swaps
};

template <PoolNumber Num>
BasicPool<Num> add_liquidity(const BasicPool<Num>& s, const Num& dx, const Num& dy) {
    return {s.x + dx, s.y + dy};
}

template <PoolNumber Num>
BasicPool<Num> remove_liquidity(const BasicPool<Num>& s, const Num& dx, const Num& dy) {
    if (dx > s.x || dy > s.y) fail(ErrorCode::InsufficientLiquidity, "removal exceeds reserves");
    return {s.x - dx, s.y - dy};
}

namespace detail {

template <PoolNumber Num>
void require_reserves(const BasicPool<Num>& s) {
    if (is_zero(s.x) || is_zero(s.y)) fail(ErrorCode::EmptyPool, "pool has an empty reserve");
}

// New output reserve after paying `in` into the input reserve; rounded up in integer mode.
template <PoolNumber Num>
Num reserve_after_input(const Num& r_in, const Num& r_out, const Num& in, const FeeSpec& fee) {
    const Num den = lift<Num>(BigInt(fee.den));
    const Num keep = lift<Num>(BigInt(fee.den - fee.num));
    return quotient_up(r_in * r_out * den, r_in * den + in * keep);
}

// Input needed to take `out` from the output reserve; rounded up in integer mode.
template <PoolNumber Num>
Num input_for_output(const Num& r_in, const Num& r_out, const Num& out, const FeeSpec& fee) {
    const Num den = lift<Num>(BigInt(fee.den));
    const Num keep = lift<Num>(BigInt(fee.den - fee.num));
    return quotient_up(r_in * out * den, (r_out - out) * keep);
}

}  // namespace detail

template <PoolNumber Num>
SwapResult<Num> swap_x_for_y(const BasicPool<Num>& s, const Num& dx, const FeeSpec& fee = {}) {
    detail::require_reserves(s);
    if (is_zero(dx)) fail(ErrorCode::ZeroInput, "swap input is zero");
    Num y_new = detail::reserve_after_input(s.x, s.y, dx, fee);
    return {{s.x + dx, y_new}, s.y - y_new};
}

template <PoolNumber Num>
SwapResult<Num> swap_y_for_x(const BasicPool<Num>& s, const Num& dy, const FeeSpec& fee = {}) {
    auto r = swap_x_for_y(flipped(s), dy, fee);
    return {flipped(r.state), r.amount};
}

template <PoolNumber Num>
SwapResult<Num> swap_x_for_exact_y(const BasicPool<Num>& s, const Num& dy_out, const FeeSpec& fee = {}) {
    detail::require_reserves(s);
    if (is_zero(dy_out)) fail(ErrorCode::ZeroInput, "requested output is zero");
    if (dy_out >= s.y) fail(ErrorCode::ExceedsPool, "requested output drains the pool");
    Num dx = detail::input_for_output(s.x, s.y, dy_out, fee);
    return {{s.x + dx, s.y - dy_out}, dx};
}

template <PoolNumber Num>
SwapResult<Num> swap_y_for_exact_x(const BasicPool<Num>& s, const Num& dx_out, const FeeSpec& fee = {}) {
    auto r = swap_x_for_exact_y(flipped(s), dx_out, fee);
    return {flipped(r.state), r.amount};
}

template <PoolNumber Num>
Num commission(const Num& input, const FeeSpec& fee) {
    return scale_down(input, fee.rate());
}

template <PoolNumber Num>
Rational spot_price(const BasicPool<Num>& s) {
    if (is_zero(s.x)) fail(ErrorCode::EmptyPool, "spot price of empty pool");
    return as_rational(s.y) / as_rational(s.x);
}

}  // namespace sandwich
