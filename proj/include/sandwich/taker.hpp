#pragma once

#include "sandwich/victim.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>

namespace sandwich {

// Fixed cost of mounting an attack, in numeraire base units (wei).
struct CostModel {
    Amount attack_cost = Amount(10'000'000'000'000'000ULL);

    static CostModel free() { return {Amount{}}; }
};

// Numeraire value of one base unit of each pool asset.
struct Valuation {
    Rational x_price{1};
    Rational y_price{1};

    // X is ETH; tokens are valued at the given pool's spot price.
    static Valuation eth_numeraire(const PoolState& s) {
        if (s.y.is_zero()) fail(ErrorCode::EmptyPool, "cannot value an empty token reserve");
        return {Rational(1), to_rational(s.x) / to_rational(s.y)};
    }
};

template <PoolNumber Num>
signed_t<Num> value_in_numeraire(const signed_t<Num>& v, const Rational& price, const Amount& cost) {
    if constexpr (std::is_same_v<Num, Amount>)
        return floor_of(Rational(v) * price) - cost.value();
    else
        return v * price - to_rational(cost);
}

template <PoolNumber Num>
struct BasicAttackOutcome {
    bool flipped = false;  // attack asset is the pool's Y
    Num front_input{};
    Num front_output{};
    Num back_output{};
    VictimFill<Num> victim{};
    std::array<BasicPool<Num>, 4> states{};  // s0..s3 in the pool's own orientation
    signed_t<Num> profit{};                  // attack asset base units
    signed_t<Num> net_profit{};              // numeraire base units, after the attack cost
};

using AttackOutcome = BasicAttackOutcome<Amount>;
using ExactAttackOutcome = BasicAttackOutcome<Rational>;

namespace detail {

// Front-run, victim, back-run in the frame where the victim pays X.
template <PoolNumber Num>
BasicAttackOutcome<Num> sandwich_in_frame(const BasicPool<Num>& s0, const VictimTx& v, const Num& o,
                                          const FeeSpec& fee, bool enforce_limit) {
    BasicAttackOutcome<Num> r;
    r.front_input = o;
    r.states[0] = s0;
    r.states[1] = s0;
    if (!is_zero(o)) {
        auto front = swap_x_for_y(s0, o, fee);
        r.front_output = front.amount;
        r.states[1] = front.state;
    }
    if (enforce_limit) {
        r.victim = execute_victim(r.states[1], v, fee);
    } else {
        r.victim = fill_unchecked(r.states[1], v.direction, lift<Num>(v.amount), fee);
        if (!r.victim.executed) r.victim.state = r.states[1];
    }
    r.states[2] = r.victim.state;
    r.states[3] = r.states[2];
    if (!is_zero(r.front_output)) {
        auto back = swap_y_for_x(r.states[2], r.front_output, fee);
        r.back_output = back.amount;
        r.states[3] = back.state;
    }
    r.profit = signed_value(r.back_output) - signed_value(o);
    return r;
}

template <PoolNumber Num>
BasicPool<Num> in_num(const PoolState& s) {
    return {lift<Num>(s.x), lift<Num>(s.y)};
}

template <PoolNumber Num>
void finish(BasicAttackOutcome<Num>& r, Frame f, const CostModel& cost, const Valuation& val) {
    r.flipped = f.flipped;
    for (auto& s : r.states) s = f.apply(s);
    r.victim.state = f.apply(r.victim.state);
    r.net_profit = value_in_numeraire<Num>(r.profit, f.flipped ? val.y_price : val.x_price, cost.attack_cost);
}

}  // namespace detail

template <PoolNumber Num>
BasicAttackOutcome<Num> simulate_sandwich(const BasicPool<Num>& s0, const VictimTx& victim, const Num& adv_input,
                                          const FeeSpec& fee = {}, const CostModel& cost = {},
                                          const Valuation& val = {}) {
    Frame f = frame_for(victim.direction);
    auto r = detail::sandwich_in_frame(f.apply(s0), in_frame(victim, f), adv_input, fee, true);
    detail::finish(r, f, cost, val);
    return r;
}

struct SearchOptions {
    std::optional<Amount> cap;        // front-run cap for unprotected victims; default 10x the input reserve
    int iterations = 200;             // ternary / bisection iterations on the rational relaxation
    std::uint64_t scan_radius = 64;   // integer points checked either side of the relaxed optimum
    std::uint64_t max_band = 1 << 16; // largest rounding band scanned exhaustively
};

namespace detail {

inline bool victim_survives(const PoolState& s, const VictimTx& v, const Amount& o, const FeeSpec& fee) {
    if (o.is_zero()) return execute_victim(s, v, fee).executed;
    return execute_victim(swap_x_for_y(s, o, fee).state, v, fee).executed;
}

inline bool victim_survives(const ExactPool& s, const VictimTx& v, const Rational& o, const FeeSpec& fee) {
    if (o == 0) return execute_victim(s, v, fee).executed;
    return execute_victim(swap_x_for_y(s, o, fee).state, v, fee).executed;
}

// Largest input for which `ok` holds, assuming ok(0) and monotonicity. Integer mode.
inline Amount largest_feasible(const Amount& cap, const std::function<bool(const Amount&)>& ok) {
    Amount lo{}, hi(1);
    while (hi <= cap && ok(hi)) {
        lo = hi;
        hi = hi + hi;
    }
    if (hi > cap) {
        if (ok(cap)) return cap;
        hi = cap;
    }
    while (hi.value() - lo.value() > 1) {
        Amount mid((lo.value() + hi.value()) / 2);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

// Maximiser of a unimodal function on [lo, hi]. With `snap`, probes stay on integers and the
// search stops once the bracket holds at most three points.
inline Rational ternary_max(Rational lo, Rational hi, int iterations, bool snap,
                            const std::function<Rational(const Rational&)>& f) {
    for (int i = 0; i < iterations; ++i) {
        if (snap && hi - lo <= 2) break;
        Rational third = (hi - lo) / 3;
        Rational m1 = lo + third, m2 = hi - third;
        if (snap) {
            m1 = Rational(floor_of(m1));
            m2 = Rational(ceil_of(m2));
            if (m1 >= m2) break;
        }
        if (f(m1) < f(m2))
            lo = m1;
        else
            hi = m2;
    }
    if (!snap) return (lo + hi) / 2;
    Rational best = lo, best_v = f(lo);
    for (Rational p = lo + 1; p <= hi; p += 1) {
        Rational v = f(p);
        if (v > best_v) best = p, best_v = v;
    }
    return best;
}

// First integer in [a, b] where pred holds, pred monotone false->true; b+1 if none.
inline BigInt first_true(BigInt a, BigInt b, const std::function<bool(const BigInt&)>& pred) {
    BigInt hi = b + 1;
    while (a < hi) {
        BigInt mid = floor_div(a + hi, 2);
        if (pred(mid))
            hi = mid;
        else
            a = mid + 1;
    }
    return hi;
}

// Scans the integer points of the rational relaxation's near-optimal band. `eval` returns the
// integer-mode objective; `relaxed` the rational one. Best value wins, smallest point on ties.
struct BandScan {
    BigInt best_point;
    BigInt best_value;
    bool truncated = false;
};

inline BandScan integer_refine(const BigInt& upper, const Rational& relaxed_opt, std::uint64_t radius,
                               std::uint64_t max_band, const BigInt& bound,
                               const std::function<BigInt(const BigInt&)>& eval,
                               const std::function<Rational(const Rational&)>& relaxed) {
    BandScan s{0, eval(0)};
    auto consider = [&](const BigInt& p) {
        if (p < 0 || p > upper) return;
        BigInt v = eval(p);
        if (v > s.best_value || (v == s.best_value && p < s.best_point)) s.best_point = p, s.best_value = v;
    };
    BigInt centre = floor_of(relaxed_opt);
    BigInt r(radius);
    for (BigInt p = centre - r; p <= centre + r + 1; ++p) consider(p);
    for (BigInt p = upper - r; p <= upper; ++p) consider(p);

    // Any point beating the best integer value must sit where the relaxation exceeds best - bound.
    Rational threshold = Rational(s.best_value - bound);
    BigInt peak = std::clamp(centre, BigInt(0), upper);
    BigInt a = first_true(0, peak, [&](const BigInt& p) { return relaxed(Rational(p)) >= threshold; });
    BigInt b = first_true(peak, upper, [&](const BigInt& p) { return relaxed(Rational(p)) < threshold; }) - 1;
    if (a > b) return s;
    if (b - a + 1 > BigInt(max_band)) {
        s.truncated = true;
        return s;
    }
    for (BigInt p = a; p <= b; ++p) consider(p);
    return s;
}

}  // namespace detail

// Largest front-run input that still lets the victim execute.
template <PoolNumber Num>
Num max_front_run_input(const BasicPool<Num>& s0, const VictimTx& victim, const FeeSpec& fee = {},
                        const SearchOptions& opt = {}) {
    Frame f = frame_for(victim.direction);
    const auto s = f.apply(s0);
    const VictimTx v = in_frame(victim, f);
    if (!detail::victim_survives(s, v, Num{}, fee)) return Num{};
    const Num cap = opt.cap ? lift<Num>(*opt.cap) : s.x * lift<Num>(Amount(10));
    if constexpr (std::is_same_v<Num, Amount>) {
        return detail::largest_feasible(cap, [&](const Amount& o) { return detail::victim_survives(s, v, o, fee); });
    } else {
        if (detail::victim_survives(s, v, cap, fee)) return cap;
        Rational lo = 0, hi = cap;
        for (int i = 0; i < opt.iterations; ++i) {
            Rational mid = (lo + hi) / 2;
            (detail::victim_survives(s, v, mid, fee) ? lo : hi) = mid;
        }
        return lo;
    }
}

template <PoolNumber Num>
struct BasicOptimalAttack {
    Num input{};
    Num max_input{};
    Rational relaxed_input;  // optimum of the rational relaxation
    bool band_truncated = false;
    BasicAttackOutcome<Num> outcome;
};

using OptimalAttack = BasicOptimalAttack<Amount>;

// Front-run input maximising profit subject to the victim still executing.
template <PoolNumber Num>
BasicOptimalAttack<Num> optimal_front_run_input(const BasicPool<Num>& s0, const VictimTx& victim,
                                                const FeeSpec& fee = {}, const CostModel& cost = {},
                                                const Valuation& val = {}, const SearchOptions& opt = {}) {
    Frame f = frame_for(victim.direction);
    const auto s = f.apply(s0);
    const VictimTx v = in_frame(victim, f);
    BasicOptimalAttack<Num> best;
    best.max_input = max_front_run_input(s0, victim, fee, opt);

    const BasicPool<Rational> sr{as_rational(s.x), as_rational(s.y)};
    auto relaxed = [&](const Rational& o) { return detail::sandwich_in_frame(sr, v, o, fee, false).profit; };
    const Rational upper = as_rational(best.max_input);
    best.relaxed_input = upper == 0 ? Rational(0)
                                    : detail::ternary_max(0, upper, opt.iterations,
                                                          std::is_same_v<Num, Amount>, relaxed);

    if constexpr (std::is_same_v<Num, Amount>) {
        auto eval = [&](const BigInt& o) { return detail::sandwich_in_frame(s, v, Amount(o), fee, true).profit; };
        // Rounding moves each leg by at most a unit or two of either asset; price the Y side in X.
        auto at = detail::sandwich_in_frame(sr, v, best.relaxed_input, fee, false);
        Rational ratio = 0;
        for (const auto& st : at.states)
            if (st.y != 0) ratio = std::max(ratio, st.x / st.y);
        BigInt bound = 4 * (1 + ceil_of(ratio));
        auto scan = detail::integer_refine(best.max_input.value(), best.relaxed_input, opt.scan_radius,
                                           opt.max_band, bound, eval, relaxed);
        best.input = Amount(scan.best_point);
        best.band_truncated = scan.truncated;
    } else {
        // Not attacking scores zero; prefer it over a non-positive optimum.
        best.input = best.relaxed_input;
        if (detail::sandwich_in_frame(s, v, best.input, fee, true).profit <= 0) best.input = 0;
    }
    best.outcome = detail::sandwich_in_frame(s, v, best.input, fee, true);
    detail::finish(best.outcome, f, cost, val);
    return best;
}

struct MinInputOptions {
    std::optional<Amount> upper;   // largest victim amount considered
    Amount resolution = Amount(1); // stop once the bracket is this narrow
    SearchOptions search{};
};

namespace detail {

template <class Profitable>
Amount smallest_profitable(const Amount& upper, const Amount& resolution, Profitable&& profitable) {
    if (!profitable(upper)) fail(ErrorCode::NoProfitableInput, "no profitable victim input up to " + upper.str());
    Amount lo{}, hi = upper;
    const BigInt step = std::max(resolution.value(), BigInt(1));
    while (hi.value() - lo.value() > step) {
        Amount mid((lo.value() + hi.value()) / 2);
        (profitable(mid) ? hi : lo) = mid;
    }
    return hi;
}

inline Amount default_victim_upper(const PoolState& s0, Direction d) {
    Frame f = frame_for(d);
    auto s = f.apply(s0);
    return is_exact_output(d) ? Amount(s.y.value() / 2) : s.x;
}

}  // namespace detail

// Smallest victim amount (at the given tolerance) for which the optimal sandwich nets a profit.
inline Amount min_profitable_victim_input(const PoolState& s0, Direction d, const Rational& tolerance,
                                          const FeeSpec& fee = {}, const CostModel& cost = {},
                                          const Valuation& val = {}, const MinInputOptions& opt = {}) {
    Amount upper = opt.upper ? *opt.upper : detail::default_victim_upper(s0, d);
    return detail::smallest_profitable(upper, opt.resolution, [&](const Amount& a) {
        if (a.is_zero()) return false;
        VictimTx v = victim_with_tolerance(s0, d, a, tolerance, fee);
        return optimal_front_run_input(s0, v, fee, cost, val, opt.search).outcome.net_profit > 0;
    });
}

}  // namespace sandwich
