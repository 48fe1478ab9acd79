#pragma once

#include "sandwich/auction.hpp"
#include "sandwich/io/records.hpp"
#include "sandwich/provider.hpp"

namespace sandwich {

struct EstimateOptions {
    auction::AttackKind kind = auction::AttackKind::Taker;
    CostModel cost{};
    FeeSpec fee{};
    ProviderSearchOptions provider{ProviderAccounting::Gross};
    Rational position_share{99, 100};
};

// Best gross revenue (numeraire base units, before the attack cost) against one victim.
inline BigInt best_gross_revenue(const PoolState& pool, const VictimTx& victim, const EstimateOptions& opt) {
    const Valuation val = Valuation::eth_numeraire(pool);
    const CostModel free = CostModel::free();
    if (opt.kind == auction::AttackKind::Taker)
        return optimal_front_run_input(pool, victim, opt.fee, free, val).outcome.net_profit;
    ProviderPosition pos{opt.position_share, opt.position_share, pool.x + pool.x, pool.y + pool.y};
    return optimal_liquidity_removal(pool, pos, victim, opt.fee, free, val, opt.provider).outcome.net_profit;
}

struct RecordEstimate {
    io::TradeKind kind = io::TradeKind::EthToToken;
    BigInt revenue;  // wei, gross
    BigInt net;      // wei, after the attack cost
    bool profitable = false;
};

// Token-to-token trades are estimated as two independent sandwiches, one per hop, each allowed the
// trade's whole tolerance; this over-estimates what a single attacker could take.
inline RecordEstimate estimate_record(const io::TradeRecord& r, const EstimateOptions& opt) {
    RecordEstimate e;
    e.kind = r.kind;
    if (r.kind != io::TradeKind::TokenToToken) {
        VictimTx v{r.direction, r.amount, r.limit, r.gas_price, 0.0};
        e.revenue = best_gross_revenue(r.pool_before, v, opt);
    } else {
        auto hop1 = fill_unchecked(r.pool_before, Direction::YforX, r.amount, opt.fee);
        if (hop1.received.is_zero()) fail(ErrorCode::InvalidArgument, "token-to-token trade yields no ETH");
        auto hop2 = fill_unchecked(r.pool_out_before, Direction::XforY, hop1.received, opt.fee);
        if (hop2.received.is_zero()) fail(ErrorCode::InvalidArgument, "token-to-token trade yields no output");
        Rational keep = to_rational(r.limit) / to_rational(hop2.received);
        if (keep > 1) keep = 1;
        VictimTx v1{Direction::YforX, r.amount, scale_down(hop1.received, keep), r.gas_price, 0.0};
        VictimTx v2{Direction::XforY, hop1.received, r.limit, r.gas_price, 0.0};
        e.revenue = best_gross_revenue(r.pool_before, v1, opt) + best_gross_revenue(r.pool_out_before, v2, opt);
    }
    e.net = e.revenue - opt.cost.attack_cost.value();
    e.profitable = e.net > 0;
    return e;
}

}  // namespace sandwich
