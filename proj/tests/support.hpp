#pragma once

// Test-side oracles: straight 128-bit re-implementations of the pool rules and exhaustive searches,
// written without the library's search code.

#include "sandwich/provider.hpp"

#include <optional>
#include <random>

namespace sandwich::testing {

using i128 = __int128;

inline i128 to_i128(const Amount& a) { return static_cast<i128>(a.value().convert_to<unsigned long long>()); }
inline i128 to_i128(const BigInt& a) { return static_cast<i128>(a.convert_to<long long>()); }
inline BigInt to_big(i128 v) { return BigInt(static_cast<long long>(v)); }

inline i128 cdiv(i128 a, i128 b) { return (a + b - 1) / b; }
inline i128 fdiv(i128 a, i128 b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

struct P {
    i128 x, y;
};

inline P swapped(P s) { return {s.y, s.x}; }

struct Trade {
    P s;
    i128 amount;  // received, or paid for exact output
};

struct Fee {
    i128 num = 3, den = 1000;
    i128 keep() const { return den - num; }
};

inline Trade sell_x(P s, i128 dx, Fee f) {
    i128 y2 = cdiv(s.x * s.y * f.den, s.x * f.den + dx * f.keep());
    return {{s.x + dx, y2}, s.y - y2};
}

inline Trade sell_y(P s, i128 dy, Fee f) {
    Trade t = sell_x(swapped(s), dy, f);
    return {swapped(t.s), t.amount};
}

inline std::optional<Trade> buy_exact_y(P s, i128 out, Fee f) {
    if (out >= s.y) return std::nullopt;
    i128 dx = cdiv(s.x * out * f.den, (s.y - out) * f.keep());
    return Trade{{s.x + dx, s.y - out}, dx};
}

inline std::optional<Trade> buy_exact_x(P s, i128 out, Fee f) {
    auto t = buy_exact_y(swapped(s), out, f);
    if (!t) return std::nullopt;
    return Trade{swapped(t->s), t->amount};
}

// The victim in the orientation where it pays the first asset.
struct V {
    bool exact = false;
    i128 amount = 0;
    i128 limit = 0;
};

struct VictimRun {
    P s;
    i128 paid;
};

inline std::optional<VictimRun> run_victim(P s, V v, Fee f) {
    if (v.exact) {
        auto t = buy_exact_y(s, v.amount, f);
        if (!t || t->amount > v.limit) return std::nullopt;
        return VictimRun{t->s, t->amount};
    }
    Trade t = sell_x(s, v.amount, f);
    if (t.amount < v.limit) return std::nullopt;
    return VictimRun{t.s, v.amount};
}

struct Oriented {
    bool flipped;
    P s;
    V v;
};

inline Oriented orient(const PoolState& s0, const VictimTx& v) {
    bool flip = !buys_y(v.direction);
    P s{to_i128(s0.x), to_i128(s0.y)};
    return {flip, flip ? swapped(s) : s, {is_exact_output(v.direction), to_i128(v.amount), to_i128(v.limit)}};
}

inline Fee fee_of(const FeeSpec& f) { return {f.num, f.den}; }

struct TakerBest {
    i128 input = 0;
    i128 profit = 0;  // attack asset
    i128 max_input = 0;
    bool flipped = false;
};

// Every front-run input up to well past the last one the victim tolerates, capped at ten times
// the input reserve for unprotected victims.
inline TakerBest brute_taker(const PoolState& s0, const VictimTx& victim, const FeeSpec& fee) {
    const Fee f = fee_of(fee);
    const Oriented o = orient(s0, victim);
    TakerBest best;
    best.flipped = o.flipped;
    bool any = false;
    i128 last = -1;
    const i128 cap = 10 * o.s.x;
    for (i128 in = 0; in <= std::min(2 * last + 1000, cap); ++in) {
        P s1 = o.s;
        i128 got = 0;
        if (in > 0) {
            Trade t = sell_x(o.s, in, f);
            s1 = t.s;
            got = t.amount;
        }
        auto after = run_victim(s1, o.v, f);
        if (!after) continue;
        last = in;
        i128 back = got > 0 ? sell_y(after->s, got, f).amount : 0;
        i128 profit = back - in;
        if (!any || profit > best.profit) {
            best.input = in;
            best.profit = profit;
            any = true;
        }
    }
    best.max_input = last;
    return best;
}

// Profit in the attack asset valued in X base units at the pre-attack spot price.
inline i128 value_in_x(const PoolState& s0, i128 profit, bool flipped) {
    if (!flipped) return profit;
    return fdiv(profit * to_i128(s0.x), to_i128(s0.y));
}

struct ProviderBest {
    i128 k = 0;
    i128 profit = 0;  // victim's output asset
    bool flipped = false;
};

// Every removal k / g with k up to min(share, 1 - 1/g) * g.
inline ProviderBest brute_provider(const PoolState& s0, const VictimTx& victim, const FeeSpec& fee, i128 g,
                                   const Rational& share, ProviderAccounting acc) {
    const Fee f = fee_of(fee);
    const Oriented o = orient(s0, victim);
    const i128 kmax = std::min(to_i128(floor_of(share * Rational(to_big(g)))), g - 1);
    i128 unattacked_paid = o.v.exact ? buy_exact_y(o.s, o.v.amount, f)->amount : o.v.amount;
    ProviderBest best;
    best.flipped = o.flipped;
    bool any = false;
    for (i128 k = 0; k <= kmax; ++k) {
        i128 rin = o.s.x * k / g, rout = o.s.y * k / g;
        P s1{o.s.x - rin, o.s.y - rout};
        auto after = run_victim(s1, o.v, f);
        if (!after) continue;
        P s2 = after->s;
        i128 ain = cdiv(s2.x * k, g - k), aout = cdiv(s2.y * k, g - k);
        P s3{s2.x + ain, s2.y + aout};
        i128 target = ain - rin;
        if (acc == ProviderAccounting::CommissionAdjusted) target += unattacked_paid * k * f.num / (g * f.den);
        i128 rebalance_out = 0;
        if (target > 0) {
            auto t = buy_exact_x(s3, target, f);
            if (!t) continue;
            rebalance_out = t->amount;
        } else if (target < 0) {
            rebalance_out = -sell_x(s3, -target, f).amount;
        }
        i128 profit = rout - aout - rebalance_out;
        if (!any || profit > best.profit) {
            best.k = k;
            best.profit = profit;
            any = true;
        }
    }
    return best;
}

// Deterministic generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
    }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    Direction direction() { return static_cast<Direction>(uniform(0, 3)); }
    Rational tolerance(std::uint64_t max_thousandths = 50) { return Rational(BigInt(uniform(0, max_thousandths)), 1000); }

    PoolState pool(std::uint64_t lo, std::uint64_t hi) { return {Amount(uniform(lo, hi)), Amount(uniform(lo, hi))}; }

    // A victim amount that stays well inside the reserves it touches.
    Amount victim_amount(const PoolState& s, Direction d, std::uint64_t divisor = 5) {
        const Amount& r = (d == Direction::XforY || d == Direction::ExactOutX) ? s.x : s.y;
        std::uint64_t cap = std::max<std::uint64_t>(1, r.value().convert_to<std::uint64_t>() / divisor);
        return Amount(uniform(1, cap));
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace sandwich::testing

namespace sandwich::testing {

template <class F>
std::optional<ErrorCode> error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace sandwich::testing
