#pragma once

#include "sandwich/estimate.hpp"
#include "sandwich/io/config.hpp"
#include "sandwich/io/records.hpp"
#include "sandwich/miner_order.hpp"
#include "sandwich/slippage.hpp"

#include <iostream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace sandwich::cli {

using io::json;

enum class Format { Csv, Json };
enum class Arith { Integer, Oracle };

inline constexpr int kExitProfitable = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotProfitable = 2;

namespace detail {

inline std::string base(const Amount& v) { return v.str(); }
inline std::string base(const BigInt& v) { return v.str(); }
inline std::string base(const Rational& v) { return io::fmt_rational(v); }

// Names and decimals of the two pool assets.
struct Assets {
    std::string x = "ETH";
    std::string y;
    unsigned y_decimals = 18;

    explicit Assets(const io::Market& m) : y(m.name), y_decimals(m.token_decimals) {}

    template <class V>
    std::string x_units(const V& v, unsigned places = 6) const {
        return format_units(v, 18, places) + " " + x;
    }
    template <class V>
    std::string y_units(const V& v, unsigned places = 4) const {
        return format_units(v, y_decimals, places) + " " + y;
    }
    // `is_x` chooses the asset.
    template <class V>
    std::string units(bool is_x, const V& v) const {
        return is_x ? x_units(v) : y_units(v);
    }
};

inline std::string pct(const Rational& r, unsigned places = 4) { return format_fixed(r * 100, places) + "%"; }

template <PoolNumber Num>
std::string pool_text(const Assets& a, const BasicPool<Num>& s) {
    return a.x_units(s.x) + " / " + a.y_units(s.y);
}

template <PoolNumber Num>
BasicPool<Num> pool_as(const PoolState& s) {
    if constexpr (std::is_same_v<Num, Amount>)
        return s;
    else
        return to_exact(s);
}

template <PoolNumber Num>
int attack_taker(const io::Scenario& sc, Format format, std::ostream& out) {
    const auto& m = sc.market;
    const Assets a(m);
    const VictimTx v = sc.victim.build(m);
    auto best = optimal_front_run_input(pool_as<Num>(m.pool()), v, m.fee, sc.attack.cost(), m.valuation());
    const auto& o = best.outcome;
    const bool atk_x = !o.flipped;  // attack asset is ETH unless the victim buys ETH
    const bool profitable = o.net_profit > 0;
    const bool victim_pays_x = buys_y(v.direction);

    if (format == Format::Json) {
        json j{{"kind", "taker"},
               {"market", m.name},
               {"victim", {{"direction", to_string(v.direction)}, {"amount", v.amount.str()}, {"limit", v.limit.str()}}},
               {"max_front_run_input", base(best.max_input)},
               {"front_run_input", base(o.front_input)},
               {"front_run_output", base(o.front_output)},
               {"victim_executed", o.victim.executed},
               {"victim_paid", base(o.victim.paid)},
               {"victim_received", base(o.victim.received)},
               {"back_run_output", base(o.back_output)},
               {"attack_asset", atk_x ? a.x : a.y},
               {"gross_profit", base(o.profit)},
               {"attack_cost_wei", sc.attack.attack_cost.str()},
               {"net_profit_wei", base(o.net_profit)},
               {"final_pool", {{"x", base(o.states[3].x)}, {"y", base(o.states[3].y)}}},
               {"profitable", profitable}};
        out << j.dump(2) << "\n";
    } else {
        out << "market: " << m.name << "  pool " << pool_text(a, o.states[0]) << "  fee " << io::fmt_fee(m.fee) << "\n";
        out << "victim: " << to_string(v.direction) << "  amount "
            << a.units(is_exact_output(v.direction) ? !victim_pays_x : victim_pays_x, v.amount) << "  limit "
            << a.units(is_exact_output(v.direction) ? victim_pays_x : !victim_pays_x, v.limit) << "  tolerance "
            << pct(sc.victim.tolerance, 2) << "\n";
        out << "attack: taker\n";
        out << "max front-run input: " << a.units(atk_x, best.max_input) << "\n";
        out << "T_A1 front-run: pay " << a.units(atk_x, o.front_input) << ", receive " << a.units(!atk_x, o.front_output)
            << "\n";
        if (o.victim.executed)
            out << "T_V victim: pay " << a.units(victim_pays_x, o.victim.paid) << ", receive "
                << a.units(!victim_pays_x, o.victim.received) << "\n";
        else
            out << "T_V victim: reverted (slippage limit)\n";
        out << "T_A2 back-run: pay " << a.units(!atk_x, o.front_output) << ", receive " << a.units(atk_x, o.back_output)
            << "\n";
        out << "final pool: " << pool_text(a, o.states[3]) << "\n";
        out << "gross profit: " << a.units(atk_x, o.profit) << "\n";
        out << "attack cost: " << a.x_units(sc.attack.attack_cost) << "\n";
        out << "net profit: " << a.x_units(o.net_profit) << "\n";
        out << (profitable ? "result: profitable\n" : "result: no profitable attack\n");
    }
    return profitable ? kExitProfitable : kExitNotProfitable;
}

template <PoolNumber Num>
int attack_provider(const io::Scenario& sc, Format format, std::ostream& out) {
    const auto& m = sc.market;
    const Assets a(m);
    const VictimTx v = sc.victim.build(m);
    const ProviderPosition pos = sc.attack.position(m);
    auto best = optimal_liquidity_removal(pool_as<Num>(m.pool()), pos, v, m.fee, sc.attack.cost(), m.valuation(),
                                          sc.attack.provider_search());
    const auto& o = best.outcome;
    const bool in_x = !o.flipped;  // victim's input asset is ETH
    const bool profitable = o.net_profit > 0;

    if (format == Format::Json) {
        json j{{"kind", "provider"},
               {"market", m.name},
               {"accounting", io::accounting_name(sc.attack.accounting)},
               {"victim", {{"direction", to_string(v.direction)}, {"amount", v.amount.str()}, {"limit", v.limit.str()}}},
               {"max_removal", io::fmt_rational(best.max_removal)},
               {"removal", io::fmt_rational(best.removal)},
               {"removed", {{"in", base(o.removed_in)}, {"out", base(o.removed_out)}}},
               {"victim_executed", o.victim.executed},
               {"victim_paid", base(o.victim.paid)},
               {"victim_paid_unattacked", base(o.victim_unattacked.paid)},
               {"added", {{"in", base(o.added_in)}, {"out", base(o.added_out)}}},
               {"rebalance", {{"in", base(o.rebalance_in)}, {"out", base(o.rebalance_out)}}},
               {"foregone_commission", base(o.commission_in)},
               {"profit_asset", in_x ? a.y : a.x},
               {"gross_profit", base(o.profit)},
               {"attack_cost_wei", sc.attack.attack_cost.str()},
               {"net_profit_wei", base(o.net_profit)},
               {"final_pool", {{"x", base(o.states[4].x)}, {"y", base(o.states[4].y)}}},
               {"profitable", profitable}};
        out << j.dump(2) << "\n";
    } else {
        out << "market: " << m.name << "  pool " << pool_text(a, o.states[0]) << "  fee " << io::fmt_fee(m.fee) << "\n";
        out << "victim: " << to_string(v.direction) << "  tolerance " << pct(sc.victim.tolerance, 2) << "\n";
        out << "attack: provider  accounting " << io::accounting_name(sc.attack.accounting) << "  share "
            << pct(pos.share_x, 2) << "\n";
        out << "max removal: " << pct(best.max_removal) << "\n";
        out << "removal: " << pct(best.removal) << "\n";
        out << "T_A1 remove liquidity: " << a.units(in_x, o.removed_in) << ", " << a.units(!in_x, o.removed_out) << "\n";
        if (o.victim.executed)
            out << "T_V victim: pay " << a.units(in_x, o.victim.paid) << " (unattacked "
                << a.units(in_x, o.victim_unattacked.paid) << "), receive " << a.units(!in_x, o.victim.received) << "\n";
        else
            out << "T_V victim: reverted (slippage limit)\n";
        out << "T_A2 add liquidity: " << a.units(in_x, o.added_in) << ", " << a.units(!in_x, o.added_out) << "\n";
        out << "T_A3 rebalance: " << (o.rebalance_in >= 0 ? "buy " : "sell ")
            << a.units(in_x, o.rebalance_in >= 0 ? o.rebalance_in : signed_t<Num>(-o.rebalance_in)) << " for "
            << a.units(!in_x, o.rebalance_out >= 0 ? o.rebalance_out : signed_t<Num>(-o.rebalance_out)) << "\n";
        out << "foregone commission: " << a.units(in_x, o.commission_in) << "\n";
        out << "final pool: " << pool_text(a, o.states[4]) << "\n";
        out << "gross profit: " << a.units(!in_x, o.profit) << "\n";
        out << "attack cost: " << a.x_units(sc.attack.attack_cost) << "\n";
        out << "net profit: " << a.x_units(o.net_profit) << "\n";
        out << (profitable ? "result: profitable\n" : "result: no profitable attack\n");
    }
    return profitable ? kExitProfitable : kExitNotProfitable;
}

}  // namespace detail

inline int cmd_attack(const io::Scenario& sc, Arith arith, Format format, std::ostream& out) {
    const bool taker = sc.attack.kind == auction::AttackKind::Taker;
    if (arith == Arith::Integer)
        return taker ? detail::attack_taker<Amount>(sc, format, out) : detail::attack_provider<Amount>(sc, format, out);
    return taker ? detail::attack_taker<Rational>(sc, format, out) : detail::attack_provider<Rational>(sc, format, out);
}

namespace detail {

template <PoolNumber Num>
void sweep_rows(const io::Scenario& sc, Format format, std::ostream& out) {
    const auto& m = sc.market;
    const auto& sw = *sc.sweep;
    const bool taker = sc.attack.kind == auction::AttackKind::Taker;
    const Direction d = sc.victim.direction;
    // Asset the victim amount is quoted in, and the asset a taker front-runs with.
    const bool amount_is_eth = is_exact_output(d) ? !buys_y(d) : buys_y(d);
    const bool attack_is_eth = buys_y(d);
    const unsigned amount_dec = amount_is_eth ? 18 : m.token_decimals;
    const unsigned attack_dec = attack_is_eth ? 18 : m.token_decimals;
    const std::string amount_unit = amount_is_eth ? "eth" : "token";
    const std::string attack_unit = attack_is_eth ? "eth" : "token";
    const auto pool = pool_as<Num>(m.pool());

    json rows = json::array();
    if (format == Format::Csv) {
        out << "tolerance_pct,victim_amount_" << amount_unit << ",victim_amount_base,";
        if (taker)
            out << "front_run_input_" << attack_unit << ",front_run_input_base,";
        else
            out << "removal_pct,";
        out << "gross_revenue_eth,gross_revenue_wei,net_profit_eth,net_profit_wei\n";
    }
    for (const auto& tol : sw.tolerances) {
        for (Amount amt = sw.amount_min; amt <= sw.amount_max; amt += sw.amount_step) {
            VictimTx v = victim_with_tolerance(m.pool(), d, amt, tol, m.fee);
            std::string input_col, input_base;
            signed_t<Num> net;
            if (taker) {
                auto best = optimal_front_run_input(pool, v, m.fee, sc.attack.cost(), m.valuation());
                input_col = format_units(best.input, attack_dec, 9);
                input_base = base(best.input);
                net = best.outcome.net_profit;
            } else {
                auto best = optimal_liquidity_removal(pool, sc.attack.position(m), v, m.fee, sc.attack.cost(),
                                                      m.valuation(), sc.attack.provider_search());
                input_col = format_fixed(best.removal * 100, 6);
                net = best.outcome.net_profit;
            }
            signed_t<Num> gross = net + signed_t<Num>(sc.attack.attack_cost.value());
            if (format == Format::Csv) {
                out << format_fixed(tol * 100, 4) << "," << format_units(amt, amount_dec, 9) << "," << amt.str() << ","
                    << input_col << ",";
                if (taker) out << input_base << ",";
                out << format_units(gross, 18, 9) << "," << base(gross) << "," << format_units(net, 18, 9) << ","
                    << base(net) << "\n";
            } else {
                json row{{"tolerance", io::fmt_rational(tol)},
                         {"victim_amount", amt.str()},
                         {"gross_revenue_wei", base(gross)},
                         {"net_profit_wei", base(net)}};
                if (taker)
                    row["front_run_input"] = input_base;
                else
                    row["removal_pct"] = input_col;
                rows.push_back(row);
            }
        }
    }
    if (format == Format::Json) out << json{{"market", m.name}, {"rows", rows}}.dump(2) << "\n";
}

}  // namespace detail

inline int cmd_sweep(const io::Scenario& sc, Arith arith, Format format, std::ostream& out) {
    if (!sc.sweep) fail(ErrorCode::InvalidArgument, "scenario has no [sweep] section");
    if (arith == Arith::Integer)
        detail::sweep_rows<Amount>(sc, format, out);
    else
        detail::sweep_rows<Rational>(sc, format, out);
    return 0;
}

struct RevenueTable {
    struct Row {
        std::uint64_t profitable = 0;
        std::uint64_t total = 0;
        BigInt revenue_wei = 0;
    };
    std::array<Row, 3> rows{};
    io::StreamStats stream;
};

inline RevenueTable estimate_revenue(std::istream& in, const EstimateOptions& opt, std::ostream& err) {
    RevenueTable t;
    t.stream = io::read_ndjson(
        in,
        [&](const std::string& line) {
            auto rec = io::parse_trade(line);
            return estimate_record(rec, opt);
        },
        [&](RecordEstimate e) {
            auto& row = t.rows[static_cast<std::size_t>(e.kind)];
            ++row.total;
            if (e.profitable) {
                ++row.profitable;
                row.revenue_wei += e.revenue;
            }
        },
        err);
    return t;
}

inline int cmd_estimate_revenue(std::istream& in, const EstimateOptions& opt, Format format, std::ostream& out,
                                std::ostream& err) {
    RevenueTable t = estimate_revenue(in, opt, err);
    RevenueTable::Row total;
    for (const auto& r : t.rows) {
        total.profitable += r.profitable;
        total.total += r.total;
        total.revenue_wei += r.revenue_wei;
    }
    const char* names[] = {"eth_to_token", "token_to_eth", "token_to_token"};
    if (format == Format::Csv) {
        out << "direction,profitable_txs,total_txs,revenue_eth,revenue_wei\n";
        for (std::size_t i = 0; i < 3; ++i)
            out << names[i] << "," << t.rows[i].profitable << "," << t.rows[i].total << ","
                << format_units(t.rows[i].revenue_wei, 18, 6) << "," << t.rows[i].revenue_wei.str() << "\n";
        out << "total," << total.profitable << "," << total.total << "," << format_units(total.revenue_wei, 18, 6) << ","
            << total.revenue_wei.str() << "\n";
    } else {
        json rows = json::array();
        for (std::size_t i = 0; i < 3; ++i)
            rows.push_back({{"direction", names[i]},
                            {"profitable_txs", t.rows[i].profitable},
                            {"total_txs", t.rows[i].total},
                            {"revenue_wei", t.rows[i].revenue_wei.str()}});
        out << json{{"rows", rows}, {"records", t.stream.records}, {"skipped", t.stream.skipped}}.dump(2) << "\n";
    }
    if (t.stream.skipped * 100 > t.stream.records) {
        err << "error: " << t.stream.skipped << " of " << t.stream.records << " records skipped (more than 1%)\n";
        return kExitError;
    }
    return 0;
}

inline int cmd_classify_blocks(std::istream& in, std::size_t top_k, Format format, std::ostream& out,
                               std::ostream& err) {
    ordering::MinerStats stats;
    std::vector<Amount> prices;
    std::vector<ordering::BlockRecord> kept;
    auto st = io::read_ndjson(
        in,
        [](const std::string& line) {
            auto b = io::parse_block(line);
            auto cls = ordering::classify_block(b);
            return std::make_pair(std::move(b), cls);
        },
        [&](std::pair<ordering::BlockRecord, ordering::OrderingClass> p) {
            stats.add(p.first.miner, p.second);
            if (format == Format::Json) kept.push_back(std::move(p.first));
        },
        err);
    auto rows = stats.top(top_k);
    if (format == Format::Csv) {
        out << "miner,empty,gas_price,parity_default,unknown,total\n";
        auto line = [&](const std::string& name, const ordering::ClassCounts& c) {
            out << name;
            for (auto cls : ordering::kAllClasses) out << "," << c[cls];
            out << "," << c.total() << "\n";
        };
        for (const auto& [miner, c] : rows) line(miner, c);
        line("ALL", stats.global);
    } else {
        auto counts = [](const ordering::ClassCounts& c) {
            json j;
            for (auto cls : ordering::kAllClasses) {
                j[std::string(to_string(cls))] = c[cls];
                j[std::string(to_string(cls)) + "_ratio"] = c.ratio(cls);
            }
            j["total"] = c.total();
            return j;
        };
        json miners = json::array();
        for (const auto& [miner, c] : rows) {
            json j = counts(c);
            j["miner"] = miner;
            miners.push_back(j);
        }
        auto g = ordering::gas_price_stats(kept);
        json gas{{"count", g.count},     {"mean_wei", g.mean},          {"stddev_wei", g.stddev},
                 {"median_wei", g.median}, {"mode_wei", g.mode.str()}, {"mode_count", g.mode_count}};
        out << json{{"miners", miners}, {"global", counts(stats.global)}, {"gas_price", gas}, {"skipped", st.skipped}}
                   .dump(2)
            << "\n";
    }
    return st.skipped == 0 ? 0 : kExitError;
}

// Lone-attacker gross revenue for the configured victim, in wei.
inline Amount lone_attacker_revenue(const io::SimulationConfig& c) {
    EstimateOptions opt;
    opt.kind = c.auction.attack_kind;
    opt.fee = c.market.fee;
    BigInt r = best_gross_revenue(c.market.pool(), c.victim.build(c.market), opt) - c.attack_cost.value();
    return Amount(std::max(BigInt(0), r));
}

inline int cmd_simulate(const io::SimulationConfig& c, Format format, std::ostream& out, unsigned threads = 0) {
    const Amount revenue = lone_attacker_revenue(c);
    auction::MonteCarloOptions mc;
    mc.bucket_width_s = c.bucket_width_s;
    mc.threads = threads;
    std::vector<auction::ProfitCurve> curves;
    for (int n : c.adversaries) {
        auction::AuctionConfig cfg = c.auction;
        cfg.n_adversaries = n;
        curves.push_back(auction::run_monte_carlo(cfg, revenue, c.runs, mc));
    }
    auto mid = [](const auction::CurvePoint& p) { return (p.pending_lo + p.pending_hi) / 2; };
    if (format == Format::Csv) {
        out << "# seed=" << c.auction.seed << " runs=" << c.runs << " lone_revenue_wei=" << revenue.str() << "\n";
        out << "pending_s,n_adv,mean_profit_eth,ci95_lo,ci95_hi,mean_gas_price_gwei,gas_ci95_lo_gwei,"
               "gas_ci95_hi_gwei,runs\n";
        for (const auto& cv : curves)
            for (const auto& p : cv.points) {
                double h = p.profit_eth.half_width95(), g = p.gas_gwei.half_width95();
                out << io::fmt_double(mid(p)) << "," << cv.n_adversaries << "," << io::fmt_double(p.profit_eth.mean)
                    << "," << io::fmt_double(p.profit_eth.mean - h) << "," << io::fmt_double(p.profit_eth.mean + h)
                    << "," << io::fmt_double(p.gas_gwei.mean) << "," << io::fmt_double(p.gas_gwei.mean - g) << ","
                    << io::fmt_double(p.gas_gwei.mean + g) << "," << p.profit_eth.n << "\n";
            }
    } else {
        json jc = json::array();
        for (const auto& cv : curves) {
            json pts = json::array();
            for (const auto& p : cv.points) {
                double h = p.profit_eth.half_width95(), g = p.gas_gwei.half_width95();
                pts.push_back({{"pending_s", mid(p)},
                               {"runs", p.profit_eth.n},
                               {"mean_profit_eth", p.profit_eth.mean},
                               {"ci95_lo", p.profit_eth.mean - h},
                               {"ci95_hi", p.profit_eth.mean + h},
                               {"mean_gas_price_gwei", p.gas_gwei.mean},
                               {"gas_ci95_lo_gwei", p.gas_gwei.mean - g},
                               {"gas_ci95_hi_gwei", p.gas_gwei.mean + g}});
            }
            auto be = cv.break_even();
            jc.push_back({{"n_adv", cv.n_adversaries},
                          {"profit_at_10s_eth", cv.profit_at(10)},
                          {"break_even_s", be ? json(*be) : json(nullptr)},
                          {"points", pts}});
        }
        out << json{{"seed", c.auction.seed}, {"runs", c.runs}, {"lone_revenue_wei", revenue.str()}, {"curves", jc}}
                   .dump(2)
            << "\n";
    }
    return 0;
}

inline int cmd_slippage_report(std::istream& in, const FeeSpec& fee, const Rational& bin_width, std::size_t bins,
                               Format format, std::ostream& out, std::ostream& err) {
    std::vector<SlippageReport> reports;
    std::size_t multi_hop = 0;
    auto st = io::read_ndjson(
        in, [](const std::string& line) { return io::parse_trade(line); },
        [&](io::TradeRecord r) {
            if (r.kind == io::TradeKind::TokenToToken) {
                ++multi_hop;
                return;
            }
            VictimTx v{r.direction, r.amount, r.limit, r.gas_price, 0.0};
            reports.push_back(estimate_trade_slippage(r.pool_before, v, fee));
        },
        err);
    if (multi_hop) err << "note: " << multi_hop << " token-to-token records not included\n";
    auto h = slippage_histogram(reports, bin_width, bins);
    if (format == Format::Csv) {
        out << "bin_lo_pct,bin_hi_pct,expected_count,max_unexpected_count\n";
        out << "-inf,0," << h.expected_underflow << "," << h.unexpected_underflow << "\n";
        for (std::size_t i = 0; i < bins; ++i)
            out << format_fixed(bin_width * 100 * i, 4) << "," << format_fixed(bin_width * 100 * (i + 1), 4) << ","
                << h.expected[i] << "," << h.max_unexpected[i] << "\n";
        out << format_fixed(bin_width * 100 * bins, 4) << ",inf," << h.expected_overflow << "," << h.unexpected_overflow
            << "\n";
    } else {
        out << json{{"bin_width_pct", to_double(bin_width * 100)},
                    {"expected", h.expected},
                    {"max_unexpected", h.max_unexpected},
                    {"expected_underflow", h.expected_underflow},
                    {"expected_overflow", h.expected_overflow},
                    {"unexpected_underflow", h.unexpected_underflow},
                    {"unexpected_overflow", h.unexpected_overflow},
                    {"records", st.records},
                    {"skipped", st.skipped}}
                   .dump(2)
            << "\n";
    }
    return st.skipped * 100 > st.records ? kExitError : 0;
}

}  // namespace sandwich::cli
