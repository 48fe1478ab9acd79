#pragma once

#include "sandwich/amm.hpp"

#include <string>
#include <string_view>

namespace sandwich {

// XforY / YforX: fixed input, `limit` is the minimum output.
// ExactOutX / ExactOutY: fixed output, `limit` is the maximum input.
enum class Direction { XforY, YforX, ExactOutX, ExactOutY };

inline std::string_view to_string(Direction d) {
    switch (d) {
    case Direction::XforY: return "x_for_y";
    case Direction::YforX: return "y_for_x";
    case Direction::ExactOutX: return "exact_out_x";
    case Direction::ExactOutY: return "exact_out_y";
    }
    return "?";
}

inline Direction parse_direction(std::string_view s) {
    if (s == "x_for_y") return Direction::XforY;
    if (s == "y_for_x") return Direction::YforX;
    if (s == "exact_out_x") return Direction::ExactOutX;
    if (s == "exact_out_y") return Direction::ExactOutY;
    fail(ErrorCode::ParseError, "unknown direction '" + std::string(s) + "'");
}

inline bool is_exact_output(Direction d) { return d == Direction::ExactOutX || d == Direction::ExactOutY; }
inline bool buys_y(Direction d) { return d == Direction::XforY || d == Direction::ExactOutY; }

inline Direction mirrored(Direction d) {
    switch (d) {
    case Direction::XforY: return Direction::YforX;
    case Direction::YforX: return Direction::XforY;
    case Direction::ExactOutX: return Direction::ExactOutY;
    case Direction::ExactOutY: return Direction::ExactOutX;
    }
    return d;
}

struct VictimTx {
    Direction direction = Direction::XforY;
    Amount amount;
    Amount limit;
    Amount gas_price;
    double observed_at = 0.0;
};

// What a victim pays and receives when its trade runs against a pool.
template <PoolNumber Num>
struct VictimFill {
    bool executed = false;
    Num paid{};
    Num received{};
    BasicPool<Num> state{};
};

// Attacks are analysed in a frame where the victim pays X and receives Y.
struct Frame {
    bool flipped = false;

    template <PoolNumber Num>
    BasicPool<Num> apply(const BasicPool<Num>& s) const {
        return flipped ? sandwich::flipped(s) : s;
    }
};

inline Frame frame_for(Direction d) { return {!buys_y(d)}; }

inline VictimTx in_frame(const VictimTx& v, Frame f) {
    VictimTx out = v;
    if (f.flipped) out.direction = mirrored(v.direction);
    return out;
}

// Runs the victim against `s` without a limit check. Returns executed=false when the
// requested exact output cannot be served.
template <PoolNumber Num>
VictimFill<Num> fill_unchecked(const BasicPool<Num>& s, Direction d, const Num& amount, const FeeSpec& fee) {
    VictimFill<Num> fill;
    fill.state = s;
    switch (d) {
    case Direction::XforY: {
        auto r = swap_x_for_y(s, amount, fee);
        return {true, amount, r.amount, r.state};
    }
    case Direction::YforX: {
        auto r = swap_y_for_x(s, amount, fee);
        return {true, amount, r.amount, r.state};
    }
    case Direction::ExactOutY: {
        if (amount >= s.y) return fill;
        auto r = swap_x_for_exact_y(s, amount, fee);
        return {true, r.amount, amount, r.state};
    }
    case Direction::ExactOutX: {
        if (amount >= s.x) return fill;
        auto r = swap_y_for_exact_x(s, amount, fee);
        return {true, r.amount, amount, r.state};
    }
    }
    return fill;
}

// Runs the victim with its slippage limit; a reverted victim leaves the pool unchanged.
template <PoolNumber Num>
VictimFill<Num> execute_victim(const BasicPool<Num>& s, const VictimTx& v, const FeeSpec& fee) {
    VictimFill<Num> fill = fill_unchecked(s, v.direction, lift<Num>(v.amount), fee);
    const Num limit = lift<Num>(v.limit);
    bool ok = fill.executed && (is_exact_output(v.direction) ? fill.paid <= limit : fill.received >= limit);
    if (!ok) return {false, Num{}, Num{}, s};
    return fill;
}

// Builds a victim whose limit allows `tolerance` of adverse movement from the quote at s0.
inline VictimTx victim_with_tolerance(const PoolState& s0, Direction d, const Amount& amount,
                                      const Rational& tolerance, const FeeSpec& fee = {},
                                      const Amount& gas_price = Amount{}) {
    if (amount.is_zero()) fail(ErrorCode::ZeroInput, "victim amount is zero");
    if (tolerance < 0) fail(ErrorCode::InvalidArgument, "negative slippage tolerance");
    auto quote = fill_unchecked(s0, d, amount, fee);
    if (!quote.executed) fail(ErrorCode::ExceedsPool, "victim output exceeds the pool");
    VictimTx v{d, amount, {}, gas_price, 0.0};
    if (is_exact_output(d))
        v.limit = scale_down(quote.paid, Rational(1) + tolerance);
    else if (tolerance < 1)
        v.limit = scale_down(quote.received, Rational(1) - tolerance);
    return v;
}

}  // namespace sandwich
