#pragma once

#include "sandwich/taker.hpp"

namespace sandwich {

// The adversary's pool share (equal in both assets) and assets held outside the pool.
struct ProviderPosition {
    Rational share_x{0};
    Rational share_y{0};
    Amount x_held;
    Amount y_held;

    friend bool operator==(const ProviderPosition&, const ProviderPosition&) = default;
};

// CommissionAdjusted restores held input-asset balance plus the commission the removed share
// would have earned, so profit is net of that opportunity cost. Gross restores the balance only.
enum class ProviderAccounting { CommissionAdjusted, Gross };

// Amounts named *_in / *_out refer to the victim's input and output asset.
template <PoolNumber Num>
struct BasicProviderOutcome {
    bool flipped = false;  // victim's input asset is the pool's Y
    Rational removal;
    Num removed_in{}, removed_out{};
    Num added_in{}, added_out{};
    signed_t<Num> rebalance_in{};   // bought (+) or sold (-) by the closing swap
    signed_t<Num> rebalance_out{};  // paid (+) or received (-) by the closing swap
    Num commission_in{};            // foregone fee on the victim's input for the removed share
    VictimFill<Num> victim{};
    VictimFill<Num> victim_unattacked{};
    std::array<BasicPool<Num>, 5> states{};  // s0..s4 in the pool's own orientation
    signed_t<Num> profit{};                  // victim's output asset base units
    signed_t<Num> net_profit{};              // numeraire base units, after the attack cost
    ProviderPosition after;
};

using ProviderAttackOutcome = BasicProviderOutcome<Amount>;
using ExactProviderOutcome = BasicProviderOutcome<Rational>;

inline bool is_profitable(const ProviderPosition& before, const ProviderPosition& after) {
    bool none_lower = after.share_x >= before.share_x && after.share_y >= before.share_y &&
                      after.x_held >= before.x_held && after.y_held >= before.y_held;
    bool some_higher = after.share_x > before.share_x || after.share_y > before.share_y ||
                       after.x_held > before.x_held || after.y_held > before.y_held;
    return none_lower && some_higher;
}

namespace detail {

inline void validate_removal(const ProviderPosition& pos, const Rational& removal) {
    if (pos.share_x != pos.share_y) fail(ErrorCode::InvalidArgument, "position shares must match in X and Y");
    if (removal < 0 || removal >= 1) fail(ErrorCode::InvalidArgument, "removal fraction must be in [0, 1)");
    if (removal > pos.share_x) fail(ErrorCode::InsufficientLiquidity, "removal exceeds the adversary's share");
}

// The attack in the frame where the victim pays X. `held_in` / `held_out` are the adversary's
// balances outside the pool; when `check_funds` is false they are not enforced.
template <PoolNumber Num>
BasicProviderOutcome<Num> provider_in_frame(const BasicPool<Num>& s0, const VictimTx& v, const Rational& L,
                                            const FeeSpec& fee, ProviderAccounting acc, bool enforce_limit,
                                            bool check_funds, const Num& held_in, const Num& held_out) {
    BasicProviderOutcome<Num> r;
    r.removal = L;
    r.states[0] = s0;
    r.victim_unattacked = fill_unchecked(s0, v.direction, lift<Num>(v.amount), fee);
    if (r.victim_unattacked.executed) r.commission_in = scale_down(r.victim_unattacked.paid, L * fee.rate());

    r.removed_in = scale_down(s0.x, L);
    r.removed_out = scale_down(s0.y, L);
    r.states[1] = remove_liquidity(s0, r.removed_in, r.removed_out);

    if (enforce_limit) {
        r.victim = execute_victim(r.states[1], v, fee);
    } else {
        r.victim = fill_unchecked(r.states[1], v.direction, lift<Num>(v.amount), fee);
        if (!r.victim.executed) r.victim.state = r.states[1];
    }
    r.states[2] = r.victim.state;

    const Rational grow = L / (Rational(1) - L);
    r.added_in = scale_up(r.states[2].x, grow);
    r.added_out = scale_up(r.states[2].y, grow);
    if (check_funds && (held_in + r.removed_in < r.added_in || held_out + r.removed_out < r.added_out))
        fail(ErrorCode::InsufficientAdversaryFunds, "adversary cannot fund the re-deposit");
    r.states[3] = add_liquidity(r.states[2], r.added_in, r.added_out);

    // Close the input-asset position back to its target with one swap against the pool.
    signed_t<Num> target = signed_value(r.added_in) - signed_value(r.removed_in);
    if (acc == ProviderAccounting::CommissionAdjusted) target += signed_value(r.commission_in);
    r.states[4] = r.states[3];
    if (target > 0) {
        auto swap = swap_y_for_exact_x(r.states[3], from_signed<Num>(target), fee);
        r.rebalance_in = target;
        r.rebalance_out = signed_value(swap.amount);
        r.states[4] = swap.state;
    } else if (target < 0) {
        auto swap = swap_x_for_y(r.states[3], from_signed<Num>(-target), fee);
        r.rebalance_in = target;
        r.rebalance_out = -signed_value(swap.amount);
        r.states[4] = swap.state;
    }
    r.profit = signed_value(r.removed_out) - signed_value(r.added_out) - r.rebalance_out;
    if (check_funds) {
        signed_t<Num> out_after = signed_value(held_out) + r.profit;
        if (out_after < 0) fail(ErrorCode::InsufficientAdversaryFunds, "adversary cannot pay the closing swap");
    }
    return r;
}

template <PoolNumber Num>
void finish(BasicProviderOutcome<Num>& r, Frame f, const ProviderPosition& pos, const CostModel& cost,
            const Valuation& val) {
    r.flipped = f.flipped;
    for (auto& s : r.states) s = f.apply(s);
    r.victim.state = f.apply(r.victim.state);
    r.victim_unattacked.state = f.apply(r.victim_unattacked.state);
    r.net_profit = value_in_numeraire<Num>(r.profit, f.flipped ? val.x_price : val.y_price, cost.attack_cost);

    // Held balances only change in integer base units; rational-mode remainders are dropped.
    auto held_delta = [](const signed_t<Num>& v) -> BigInt {
        if constexpr (std::is_same_v<Num, Amount>)
            return v;
        else
            return floor_of(v);
    };
    BigInt d_in = held_delta(signed_value(r.removed_in) - signed_value(r.added_in) + r.rebalance_in);
    BigInt d_out = held_delta(r.profit);
    r.after = pos;
    Amount& in = f.flipped ? r.after.y_held : r.after.x_held;
    Amount& out = f.flipped ? r.after.x_held : r.after.y_held;
    in = Amount(in.value() + d_in);
    out = Amount(std::max(BigInt(0), out.value() + d_out));
}

}  // namespace detail

template <PoolNumber Num>
BasicProviderOutcome<Num> simulate_provider_attack(const BasicPool<Num>& s0, const ProviderPosition& pos,
                                                   const VictimTx& victim, const Rational& removal,
                                                   const FeeSpec& fee = {}, const CostModel& cost = {},
                                                   const Valuation& val = {},
                                                   ProviderAccounting acc = ProviderAccounting::CommissionAdjusted) {
    detail::validate_removal(pos, removal);
    Frame f = frame_for(victim.direction);
    const Num held_in = lift<Num>(f.flipped ? pos.y_held : pos.x_held);
    const Num held_out = lift<Num>(f.flipped ? pos.x_held : pos.y_held);
    auto r = detail::provider_in_frame(f.apply(s0), in_frame(victim, f), removal, fee, acc, true, true, held_in,
                                       held_out);
    detail::finish(r, f, pos, cost, val);
    return r;
}

struct ProviderSearchOptions {
    ProviderAccounting accounting = ProviderAccounting::CommissionAdjusted;
    BigInt granularity = pow10(12);  // integer mode searches removal fractions k / granularity
    int iterations = 200;
    std::uint64_t scan_radius = 64;
    std::uint64_t max_band = 1 << 16;
};

template <PoolNumber Num>
struct BasicOptimalRemoval {
    Rational removal;
    Rational max_removal;      // largest fraction that keeps the victim executing
    Rational relaxed_removal;  // optimum of the rational relaxation
    bool band_truncated = false;
    BasicProviderOutcome<Num> outcome;
};

using OptimalRemoval = BasicOptimalRemoval<Amount>;

// Removal fraction in [0, share] maximising the adversary's profit while the victim executes.
template <PoolNumber Num>
BasicOptimalRemoval<Num> optimal_liquidity_removal(const BasicPool<Num>& s0, const ProviderPosition& pos,
                                                   const VictimTx& victim, const FeeSpec& fee = {},
                                                   const CostModel& cost = {}, const Valuation& val = {},
                                                   const ProviderSearchOptions& opt = {}) {
    detail::validate_removal(pos, Rational(0));
    Frame f = frame_for(victim.direction);
    const auto s = f.apply(s0);
    const VictimTx v = in_frame(victim, f);
    const BasicPool<Rational> sr{as_rational(s.x), as_rational(s.y)};
    const Num zero{};
    auto relaxed_at = [&](const Rational& L) {
        return detail::provider_in_frame(sr, v, L, fee, opt.accounting, false, false, Rational(0), Rational(0))
            .profit;
    };
    auto survives = [&](const Rational& L) {
        auto s1 = remove_liquidity(s, scale_down(s.x, L), scale_down(s.y, L));
        return execute_victim(s1, v, fee).executed;
    };
    BasicOptimalRemoval<Num> best;
    const bool ok0 = survives(Rational(0));

    if constexpr (std::is_same_v<Num, Amount>) {
        const Rational G(opt.granularity);
        Rational cap = pos.share_x;
        const Rational below_one = Rational(1) - Rational(1) / G;
        if (cap > below_one) cap = below_one;
        const Amount kmax(floor_of(cap * G));
        Amount khat = ok0 ? detail::largest_feasible(kmax, [&](const Amount& k) { return survives(to_rational(k) / G); })
                          : Amount{};
        best.max_removal = to_rational(khat) / G;

        // Flooring the removed reserves makes survival non-monotone in k, so isolated feasible
        // points can sit above khat. Each of them passes the exact test on the pool corner most
        // favourable to the victim, which is monotone in k.
        auto may_survive = [&](const Amount& k) {
            Rational keep = Rational(1) - to_rational(k) / G;
            BasicPool<Rational> corner{sr.x * keep, sr.y * keep + 1};
            return execute_victim(corner, v, fee).executed;
        };
        Amount ktop = khat;
        if (ok0) {
            Amount k = may_survive(kmax) ? kmax : detail::largest_feasible(kmax, may_survive);
            if (k > ktop) ktop = k;
        }
        auto relaxed_k = [&](const Rational& k) { return relaxed_at(k / G); };
        Rational kr = ktop.is_zero() ? Rational(0) : detail::ternary_max(0, to_rational(ktop), opt.iterations, true, relaxed_k);
        best.relaxed_removal = kr / G;
        // Points where the victim reverts are not attacks; they rank below every feasible point.
        const BigInt reverted = -(s.x.value() + s.y.value()) * 4 - 1;
        auto eval = [&](const BigInt& k) {
            auto r = detail::provider_in_frame(s, v, Rational(k) / G, fee, opt.accounting, true, false, zero, zero);
            return r.victim.executed ? r.profit : reverted;
        };
        auto at = detail::provider_in_frame(sr, v, best.relaxed_removal, fee, opt.accounting, false, false,
                                            Rational(0), Rational(0));
        Rational ratio = 0;
        for (const auto& st : at.states)
            if (st.x != 0) ratio = std::max(ratio, st.y / st.x);
        BigInt amplify = ceil_of(Rational(1) / (Rational(1) - to_rational(ktop) / G));
        BigInt bound = 6 * (1 + ceil_of(ratio)) * amplify;
        auto scan = detail::integer_refine(ktop.value(), kr, opt.scan_radius, opt.max_band, bound, eval, relaxed_k);
        best.removal = Rational(scan.best_point) / G;
        best.band_truncated = scan.truncated;
    } else {
        Rational cap = pos.share_x;
        Rational lo = 0, hi = cap;
        if (!ok0) {
            hi = 0;
        } else if (cap < 1 && survives(cap)) {
            lo = cap;
        } else {
            for (int i = 0; i < opt.iterations; ++i) {
                Rational mid = (lo + hi) / 2;
                (survives(mid) ? lo : hi) = mid;
            }
        }
        best.max_removal = lo;
        best.relaxed_removal = lo == 0 ? Rational(0) : detail::ternary_max(0, lo, opt.iterations, false, relaxed_at);
        best.removal = best.relaxed_removal;
        if (best.removal > 0 && relaxed_at(best.removal) <= 0) best.removal = 0;
    }
    best.outcome = simulate_provider_attack(s0, pos, victim, best.removal, fee, cost, val, opt.accounting);
    return best;
}

// Smallest victim amount for which the best removal nets a profit. The adversary is assumed to
// hold `max_share` of the pool and enough outside funds to re-deposit.
inline Amount min_profitable_victim_input_provider(const PoolState& s0, Direction d, const Rational& tolerance,
                                                   const FeeSpec& fee = {}, const CostModel& cost = {},
                                                   const Valuation& val = {},
                                                   const ProviderSearchOptions& search = {},
                                                   const Rational& max_share = Rational(99, 100),
                                                   const MinInputOptions& opt = {}) {
    ProviderPosition pos{max_share, max_share, s0.x + s0.x, s0.y + s0.y};
    Amount upper = opt.upper ? *opt.upper : detail::default_victim_upper(s0, d);
    return detail::smallest_profitable(upper, opt.resolution, [&](const Amount& a) {
        if (a.is_zero()) return false;
        VictimTx v = victim_with_tolerance(s0, d, a, tolerance, fee);
        return optimal_liquidity_removal(s0, pos, v, fee, cost, val, search).outcome.net_profit > 0;
    });
}

}  // namespace sandwich
