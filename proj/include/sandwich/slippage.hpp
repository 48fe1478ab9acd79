#pragma once

#include "sandwich/victim.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sandwich {

struct Price {
    Rational value;

    friend bool operator==(const Price&, const Price&) = default;
};

// Average price in Y per X of buying exactly dx_out of X with Y.
template <PoolNumber Num>
Price expected_price_exact_output(const BasicPool<Num>& s, const Num& dx_out, const FeeSpec& fee = FeeSpec::none()) {
    auto r = swap_y_for_exact_x(s, dx_out, fee);
    return {as_rational(r.amount) / as_rational(dx_out)};
}

struct SlippageDelta {
    Rational slippage;
    Rational rate;
};

// Signed difference between an executed price and its expectation.
inline SlippageDelta unexpected_slippage(const Price& executed, const Price& expected) {
    if (expected.value == 0) fail(ErrorCode::InvalidArgument, "expected price is zero");
    Rational d = executed.value - expected.value;
    return {d, d / expected.value};
}

// Prices are quoted as received per paid for exact-input trades and paid per received for
// exact-output trades. Slippage figures are adverse magnitudes: positive means worse for the trader.
struct SlippageReport {
    Direction direction = Direction::XforY;
    Price spot;
    Price expected;
    Price worst;
    Rational expected_slippage;
    Rational expected_rate;  // relative to spot
    Rational max_unexpected_slippage;
    Rational max_unexpected_rate;  // relative to the expected price
};

template <PoolNumber Num>
SlippageReport estimate_trade_slippage(const BasicPool<Num>& prev, const VictimTx& v, const FeeSpec& fee = {}) {
    const bool exact_out = is_exact_output(v.direction);
    // The traded pair quoted as (asset paid, asset received).
    const bool pays_x = buys_y(v.direction);
    const Rational r_paid = as_rational(pays_x ? prev.x : prev.y);
    const Rational r_recv = as_rational(pays_x ? prev.y : prev.x);
    if (r_paid == 0 || r_recv == 0) fail(ErrorCode::EmptyPool, "pool has an empty reserve");

    auto quote = fill_unchecked(prev, v.direction, lift<Num>(v.amount), fee);
    if (!quote.executed) fail(ErrorCode::ExceedsPool, "trade cannot be served by the pool");
    const Rational paid = as_rational(quote.paid);
    const Rational recv = as_rational(quote.received);
    const Rational amount = to_rational(v.amount);
    const Rational limit = to_rational(v.limit);

    SlippageReport r;
    r.direction = v.direction;
    if (exact_out) {
        r.spot.value = r_paid / r_recv;
        r.expected.value = paid / recv;
        r.worst.value = limit / amount;
        r.expected_slippage = r.expected.value - r.spot.value;
        r.max_unexpected_slippage = r.worst.value - r.expected.value;
    } else {
        r.spot.value = r_recv / r_paid;
        r.expected.value = recv / paid;
        r.worst.value = limit / amount;
        r.expected_slippage = r.spot.value - r.expected.value;
        r.max_unexpected_slippage = r.expected.value - r.worst.value;
    }
    r.expected_rate = r.expected_slippage / r.spot.value;
    r.max_unexpected_rate = r.max_unexpected_slippage / r.expected.value;
    return r;
}

// Counts of expected and maximum unexpected slippage rates per bin. Bin i covers
// [i*width, (i+1)*width); rates at or above bins*width land in `overflow`, negatives in `underflow`.
struct SlippageHistogram {
    Rational bin_width;
    std::vector<std::size_t> expected;
    std::vector<std::size_t> max_unexpected;
    std::size_t expected_underflow = 0, expected_overflow = 0;
    std::size_t unexpected_underflow = 0, unexpected_overflow = 0;
};

inline SlippageHistogram slippage_histogram(const std::vector<SlippageReport>& reports, const Rational& bin_width,
                                            std::size_t bins) {
    if (bin_width <= 0 || bins == 0) fail(ErrorCode::InvalidArgument, "histogram needs a positive bin width");
    SlippageHistogram h{bin_width, std::vector<std::size_t>(bins), std::vector<std::size_t>(bins)};
    auto place = [&](const Rational& rate, std::vector<std::size_t>& counts, std::size_t& under, std::size_t& over) {
        if (rate < 0) {
            ++under;
            return;
        }
        BigInt i = floor_of(rate / bin_width);
        if (i >= BigInt(bins))
            ++over;
        else
            ++counts[i.convert_to<std::size_t>()];
    };
    for (const auto& r : reports) {
        place(r.expected_rate, h.expected, h.expected_underflow, h.expected_overflow);
        place(r.max_unexpected_rate, h.max_unexpected, h.unexpected_underflow, h.unexpected_overflow);
    }
    return h;
}

}  // namespace sandwich
