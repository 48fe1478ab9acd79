#pragma once

#include "sandwich/auction.hpp"
#include "sandwich/io/ini.hpp"
#include "sandwich/provider.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sandwich::io {

// An ETH/token pool. X is ETH (18 decimals), Y the token. Reserves are base units.
struct Market {
    std::string name = "market";
    Amount eth_reserve;
    Amount token_reserve;
    unsigned token_decimals = 18;
    FeeSpec fee{};

    PoolState pool() const { return {eth_reserve, token_reserve}; }
    Valuation valuation() const { return Valuation::eth_numeraire(pool()); }

    friend bool operator==(const Market&, const Market&) = default;
};

struct VictimSpec {
    Direction direction = Direction::XforY;
    Amount amount;
    Rational tolerance{5, 1000};
    Amount gas_price;

    VictimTx build(const Market& m) const {
        return victim_with_tolerance(m.pool(), direction, amount, tolerance, m.fee, gas_price);
    }

    friend bool operator==(const VictimSpec&, const VictimSpec&) = default;
};

struct AttackSpec {
    auction::AttackKind kind = auction::AttackKind::Taker;
    Amount attack_cost = CostModel{}.attack_cost;
    ProviderAccounting accounting = ProviderAccounting::CommissionAdjusted;
    Rational position_share{99, 100};
    BigInt granularity = pow10(12);

    CostModel cost() const { return {attack_cost}; }
    ProviderPosition position(const Market& m) const {
        return {position_share, position_share, m.eth_reserve + m.eth_reserve, m.token_reserve + m.token_reserve};
    }
    ProviderSearchOptions provider_search() const {
        ProviderSearchOptions o;
        o.accounting = accounting;
        o.granularity = granularity;
        return o;
    }

    friend bool operator==(const AttackSpec&, const AttackSpec&) = default;
};

struct SweepSpec {
    Amount amount_min;
    Amount amount_max;
    Amount amount_step;
    std::vector<Rational> tolerances{Rational(1, 1000), Rational(5, 1000), Rational(1, 100)};

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct Scenario {
    Market market;
    VictimSpec victim;
    AttackSpec attack;
    std::optional<SweepSpec> sweep;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline std::string accounting_name(ProviderAccounting a) {
    return a == ProviderAccounting::Gross ? "gross" : "commission_adjusted";
}

inline ProviderAccounting parse_accounting(const std::string& s) {
    if (s == "gross") return ProviderAccounting::Gross;
    if (s == "commission_adjusted") return ProviderAccounting::CommissionAdjusted;
    fail(ErrorCode::ParseError, "expected gross or commission_adjusted, got '" + s + "'");
}

inline FeeSpec parse_fee(const std::string& s) {
    Rational r = parse_rational(s);
    if (r < 0 || r >= 1) fail(ErrorCode::ParseError, "fee must be in [0, 1)");
    auto num = bmp::numerator(r), den = bmp::denominator(r);
    if (den > BigInt(1'000'000'000)) fail(ErrorCode::ParseError, "fee denominator too large");
    return {num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()};
}

inline std::string fmt_fee(const FeeSpec& f) { return std::to_string(f.num) + "/" + std::to_string(f.den); }

inline Amount parse_amount(const std::string& s) { return Amount::parse(s); }

inline Market read_market(IniDoc& doc) {
    Market m;
    m.name = doc.field_or("market", "name", m.name, [](const std::string& s) { return s; });
    m.eth_reserve = doc.field("market", "eth_reserve", parse_amount);
    m.token_reserve = doc.field("market", "token_reserve", parse_amount);
    m.token_decimals = doc.field_or("market", "token_decimals", m.token_decimals, [](const std::string& s) {
        auto v = parse_u64(s);
        if (v > 36) fail(ErrorCode::ParseError, "token_decimals must be at most 36");
        return static_cast<unsigned>(v);
    });
    m.fee = doc.field_or("market", "fee", m.fee, parse_fee);
    if (m.eth_reserve.is_zero() || m.token_reserve.is_zero())
        fail(ErrorCode::ParseError, doc.where("market", "eth_reserve") + "reserves must be non-zero");
    return m;
}

inline VictimSpec read_victim(IniDoc& doc) {
    VictimSpec v;
    v.direction = doc.field("victim", "direction", [](const std::string& s) { return parse_direction(s); });
    v.amount = doc.field("victim", "amount", [](const std::string& s) {
        Amount a = parse_amount(s);
        if (a.is_zero()) fail(ErrorCode::ParseError, "amount must be non-zero");
        return a;
    });
    v.tolerance = doc.field_or("victim", "tolerance", v.tolerance, [](const std::string& s) {
        Rational r = parse_rational(s);
        if (r < 0) fail(ErrorCode::ParseError, "tolerance must be non-negative");
        return r;
    });
    v.gas_price = doc.field_or("victim", "gas_price", v.gas_price, parse_amount);
    return v;
}

inline void write_market(IniWriter& w, const Market& m) {
    w.section("market")
        .kv("name", m.name)
        .kv("eth_reserve", m.eth_reserve.str())
        .kv("token_reserve", m.token_reserve.str())
        .kv("token_decimals", std::to_string(m.token_decimals))
        .kv("fee", fmt_fee(m.fee));
}

inline void write_victim(IniWriter& w, const VictimSpec& v) {
    w.section("victim")
        .kv("direction", std::string(to_string(v.direction)))
        .kv("amount", v.amount.str())
        .kv("tolerance", fmt_rational(v.tolerance))
        .kv("gas_price", v.gas_price.str());
}

inline Scenario parse_scenario(const std::string& text, const std::string& source = "scenario") {
    IniDoc doc(text, source);
    Scenario sc;
    sc.market = read_market(doc);
    sc.victim = read_victim(doc);
    if (doc.has_section("attack")) {
        auto& a = sc.attack;
        a.kind = doc.field_or("attack", "kind", a.kind, [](const std::string& s) { return auction::parse_attack_kind(s); });
        a.attack_cost = doc.field_or("attack", "attack_cost", a.attack_cost, parse_amount);
        a.accounting = doc.field_or("attack", "accounting", a.accounting, parse_accounting);
        a.position_share = doc.field_or("attack", "position_share", a.position_share, [](const std::string& s) {
            Rational r = parse_rational(s);
            if (r < 0 || r >= 1) fail(ErrorCode::ParseError, "position_share must be in [0, 1)");
            return r;
        });
        a.granularity = doc.field_or("attack", "granularity", a.granularity, [](const std::string& s) {
            Amount g = parse_amount(s);
            if (g.is_zero()) fail(ErrorCode::ParseError, "granularity must be positive");
            return g.value();
        });
    }
    if (doc.has_section("sweep")) {
        SweepSpec sw;
        sw.amount_min = doc.field("sweep", "amount_min", parse_amount);
        sw.amount_max = doc.field("sweep", "amount_max", parse_amount);
        sw.amount_step = doc.field("sweep", "amount_step", parse_amount);
        sw.tolerances = doc.field_or("sweep", "tolerances", sw.tolerances, [](const std::string& s) {
            std::vector<Rational> out;
            for (const auto& p : split(s, ',')) out.push_back(parse_rational(p));
            return out;
        });
        if (sw.amount_step.is_zero() || sw.amount_min.is_zero() || sw.amount_max < sw.amount_min)
            fail(ErrorCode::ParseError, doc.where("sweep", "amount_step") +
                                            "need 0 < amount_min <= amount_max and a positive step");
        sc.sweep = sw;
    }
    doc.reject_unknown();
    return sc;
}

inline std::string dump_scenario(const Scenario& sc) {
    IniWriter w;
    write_market(w, sc.market);
    write_victim(w, sc.victim);
    w.section("attack")
        .kv("kind", std::string(auction::to_string(sc.attack.kind)))
        .kv("attack_cost", sc.attack.attack_cost.str())
        .kv("accounting", accounting_name(sc.attack.accounting))
        .kv("position_share", fmt_rational(sc.attack.position_share))
        .kv("granularity", sc.attack.granularity.str());
    if (sc.sweep) {
        std::string tols;
        for (const auto& t : sc.sweep->tolerances) tols += (tols.empty() ? "" : ",") + fmt_rational(t);
        w.section("sweep")
            .kv("amount_min", sc.sweep->amount_min.str())
            .kv("amount_max", sc.sweep->amount_max.str())
            .kv("amount_step", sc.sweep->amount_step.str())
            .kv("tolerances", tols);
    }
    return w.str();
}

// Monte Carlo configuration: auction parameters plus the victim whose lone-attacker revenue is
// being competed for.
struct SimulationConfig {
    auction::AuctionConfig auction;
    std::vector<int> adversaries{2};
    std::uint64_t runs = 100000;
    double bucket_width_s = 1.0;
    Market market;
    VictimSpec victim;
    Amount attack_cost{};  // lone-attacker revenue is gross

    friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

inline std::string fmt_table(const auction::PercentileTable& t) {
    std::string s;
    for (const auto& [p, v] : t.points()) s += (s.empty() ? "" : ",") + fmt_rational(p) + ":" + fmt_rational(v);
    return s;
}

inline auction::PercentileTable parse_table(const std::string& s) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (const auto& item : split(s, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) fail(ErrorCode::ParseError, "expected percentile:value, got '" + item + "'");
        pts.emplace_back(parse_rational(item.substr(0, colon)), parse_rational(item.substr(colon + 1)));
    }
    return auction::PercentileTable(std::move(pts));
}

inline SimulationConfig parse_simulation(const std::string& text, const std::string& source = "simulation") {
    IniDoc doc(text, source);
    SimulationConfig c;
    auto& a = c.auction;
    c.adversaries = doc.field("auction", "n_adversaries", [](const std::string& s) {
        std::vector<int> out;
        for (const auto& p : split(s, ',')) {
            auto v = parse_u64(p);
            if (v < 1 || v > 10000) fail(ErrorCode::ParseError, "adversary counts must be in [1, 10000]");
            out.push_back(static_cast<int>(v));
        }
        return out;
    });
    a.n_adversaries = c.adversaries.front();
    c.runs = doc.field_or("auction", "runs", c.runs, [](const std::string& s) {
        auto v = parse_u64(s);
        if (v < 1) fail(ErrorCode::ParseError, "runs must be at least 1");
        return v;
    });
    a.seed = doc.field_or("auction", "seed", a.seed, parse_u64);
    a.price_bump = doc.field_or("auction", "price_bump", a.price_bump, [](const std::string& s) {
        Rational r = parse_rational(s);
        if (r < 0) fail(ErrorCode::ParseError, "price_bump must be non-negative");
        return r;
    });
    c.bucket_width_s = doc.field_or("auction", "bucket_width_s", c.bucket_width_s, [](const std::string& s) {
        double v = parse_double(s);
        if (!(v > 0)) fail(ErrorCode::ParseError, "bucket_width_s must be positive");
        return v;
    });
    a.attack_kind = doc.field_or("auction", "attack_kind", a.attack_kind,
                                 [](const std::string& s) { return auction::parse_attack_kind(s); });
    c.attack_cost = doc.field_or("auction", "attack_cost", c.attack_cost, parse_amount);

    auto normal = [&](const std::string& sec, auction::Normal n) {
        n.mean = doc.field_or(sec, "mean", n.mean, parse_double);
        n.stddev = doc.field_or(sec, "stddev", n.stddev, [](const std::string& s) {
            double v = parse_double(s);
            if (v < 0) fail(ErrorCode::ParseError, "stddev must be non-negative");
            return v;
        });
        return n;
    };
    a.victim_gas_price_gwei = normal("victim_gas_price_gwei", a.victim_gas_price_gwei);
    a.gas_consumed = normal("gas_consumed", a.gas_consumed);
    a.gas_consumed_floor = doc.field_or("gas_consumed", "floor", a.gas_consumed_floor, parse_double);
    a.block_interval_s = normal("block_interval_s", a.block_interval_s);
    a.pending_min_s = doc.field_or("pending_s", "min", a.pending_min_s, parse_double);
    a.pending_max_s = doc.field_or("pending_s", "max", a.pending_max_s, parse_double);
    if (a.pending_min_s < 0 || a.pending_max_s < a.pending_min_s)
        fail(ErrorCode::ParseError, doc.where("pending_s", "max") + "need 0 <= min <= max");

    auto& net = a.network;
    net.latency_ms = doc.field_or("network", "latency_ms", net.latency_ms, parse_table);
    net.bandwidth_mbps = doc.field_or("network", "bandwidth_mbps", net.bandwidth_mbps, parse_table);
    net.tx_size_bytes = normal("network_tx_size_bytes", net.tx_size_bytes);
    net.instant = doc.field_or("network", "instant", net.instant, parse_bool);

    c.market = read_market(doc);
    c.victim = read_victim(doc);
    doc.reject_unknown();
    return c;
}

inline std::string dump_simulation(const SimulationConfig& c) {
    const auto& a = c.auction;
    std::string counts;
    for (int n : c.adversaries) counts += (counts.empty() ? "" : ",") + std::to_string(n);
    IniWriter w;
    w.section("auction")
        .kv("n_adversaries", counts)
        .kv("runs", std::to_string(c.runs))
        .kv("seed", std::to_string(a.seed))
        .kv("price_bump", fmt_rational(a.price_bump))
        .kv("bucket_width_s", fmt_double(c.bucket_width_s))
        .kv("attack_kind", std::string(auction::to_string(a.attack_kind)))
        .kv("attack_cost", c.attack_cost.str());
    auto normal = [&](const std::string& sec, const auction::Normal& n) {
        w.section(sec).kv("mean", fmt_double(n.mean)).kv("stddev", fmt_double(n.stddev));
    };
    normal("victim_gas_price_gwei", a.victim_gas_price_gwei);
    normal("gas_consumed", a.gas_consumed);
    w.kv("floor", fmt_double(a.gas_consumed_floor));
    normal("block_interval_s", a.block_interval_s);
    w.section("pending_s").kv("min", fmt_double(a.pending_min_s)).kv("max", fmt_double(a.pending_max_s));
    w.section("network")
        .kv("latency_ms", fmt_table(a.network.latency_ms))
        .kv("bandwidth_mbps", fmt_table(a.network.bandwidth_mbps))
        .kv("instant", a.network.instant ? "true" : "false");
    normal("network_tx_size_bytes", a.network.tx_size_bytes);
    write_market(w, c.market);
    write_victim(w, c.victim);
    return w.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace sandwich::io
