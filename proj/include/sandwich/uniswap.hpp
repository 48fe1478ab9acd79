#pragma once

#include "sandwich/numeric.hpp"

namespace sandwich::uniswap {

// Exchange state: ETH reserve, token reserve, liquidity token supply.
struct UniState {
    Amount e;
    Amount t;
    Amount l;

    friend bool operator==(const UniState&, const UniState&) = default;
};

struct UniSwap {
    UniState state;
    Amount amount;  // received for fixed-input calls, paid for exact-output calls
};

struct UniRemove {
    UniState state;
    Amount e_out;
    Amount t_out;
};

inline constexpr std::uint64_t kFeeKeep = 997;
inline constexpr std::uint64_t kFeeDen = 1000;

namespace detail {

inline Amount output_price(const Amount& in, const Amount& r_in, const Amount& r_out) {
    BigInt in_fee = in.value() * kFeeKeep;
    return Amount(in_fee * r_out.value() / (r_in.value() * kFeeDen + in_fee));
}

inline Amount input_price(const Amount& out, const Amount& r_in, const Amount& r_out) {
    BigInt num = r_in.value() * out.value() * kFeeDen;
    BigInt den = (r_out.value() - out.value()) * kFeeKeep;
    return Amount(num / den + 1);
}

}  // namespace detail

inline UniState add_liquidity_initial(const UniState& s, const Amount& de, const Amount& dt) {
    if (!s.l.is_zero()) fail(ErrorCode::AlreadyInitialized, "exchange already has liquidity");
    if (de.is_zero() || dt.is_zero()) fail(ErrorCode::ZeroInput, "initial deposit must be non-zero");
    return {s.e + de, s.t + dt, s.e + de};
}

// Deposits de ETH and the matching token amount; the +1 applies even when de is zero.
inline UniState add_liquidity(const UniState& s, const Amount& de) {
    if (s.l.is_zero() || s.e.is_zero()) fail(ErrorCode::NotInitialized, "exchange has no liquidity");
    Amount dt(de.value() * s.t.value() / s.e.value() + 1);
    Amount dl(de.value() * s.l.value() / s.e.value());
    return {s.e + de, s.t + dt, s.l + dl};
}

inline UniRemove remove_liquidity(const UniState& s, const Amount& dl) {
    if (dl > s.l || s.l.is_zero()) fail(ErrorCode::InsufficientShares, "burning more shares than exist");
    Amount de(dl.value() * s.e.value() / s.l.value());
    Amount dt(dl.value() * s.t.value() / s.l.value());
    return {{s.e - de, s.t - dt, s.l - dl}, de, dt};
}

inline UniSwap transact_eth_for_t(const UniState& s, const Amount& de) {
    if (de.is_zero()) fail(ErrorCode::ZeroInput, "ETH input is zero");
    if (s.e.is_zero() || s.t.is_zero()) fail(ErrorCode::NotInitialized, "exchange has no reserves");
    Amount out = detail::output_price(de, s.e, s.t);
    UniState next{s.e + de, s.t - out, s.l};
    if (next.t.is_zero()) fail(ErrorCode::PoolDrained, "token reserve drained");
    return {next, out};
}

inline UniSwap transact_t_for_eth(const UniState& s, const Amount& dt) {
    if (dt.is_zero()) fail(ErrorCode::ZeroInput, "token input is zero");
    if (s.e.is_zero() || s.t.is_zero()) fail(ErrorCode::NotInitialized, "exchange has no reserves");
    Amount out = detail::output_price(dt, s.t, s.e);
    UniState next{s.e - out, s.t + dt, s.l};
    if (next.e.is_zero()) fail(ErrorCode::PoolDrained, "ETH reserve drained");
    return {next, out};
}

// Buys exactly dt tokens; amount is the ETH paid.
inline UniSwap transact_for_exact_t(const UniState& s, const Amount& dt) {
    if (dt.is_zero()) fail(ErrorCode::ZeroInput, "requested tokens is zero");
    if (dt >= s.t) fail(ErrorCode::ExceedsPool, "requested tokens drain the pool");
    Amount cost = detail::input_price(dt, s.e, s.t);
    return {{s.e + cost, s.t - dt, s.l}, cost};
}

// Buys exactly de ETH; amount is the tokens paid.
inline UniSwap transact_for_exact_eth(const UniState& s, const Amount& de) {
    if (de.is_zero()) fail(ErrorCode::ZeroInput, "requested ETH is zero");
    if (de >= s.e) fail(ErrorCode::ExceedsPool, "requested ETH drains the pool");
    Amount cost = detail::input_price(de, s.t, s.e);
    return {{s.e - de, s.t + cost, s.l}, cost};
}

}  // namespace sandwich::uniswap
