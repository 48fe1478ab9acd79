#pragma once

#include "sandwich/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace sandwich::auction {

// Piecewise-linear inverse CDF through (percentile, value) points, clamped at both ends.
class PercentileTable {
public:
    PercentileTable() = default;
    explicit PercentileTable(std::vector<std::pair<Rational, Rational>> points) : points_(std::move(points)) {
        if (points_.size() < 2) fail(ErrorCode::InvalidArgument, "percentile table needs at least two points");
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto& [p, v] = points_[i];
            if (p <= 0 || p >= 1) fail(ErrorCode::InvalidArgument, "percentiles must lie in (0, 1)");
            if (i > 0 && p <= points_[i - 1].first)
                fail(ErrorCode::InvalidArgument, "percentiles must be strictly increasing");
            fast_.emplace_back(to_double(p), to_double(v));
        }
    }

    const std::vector<std::pair<Rational, Rational>>& points() const { return points_; }

    Rational sample(const Rational& u) const {
        if (u <= points_.front().first) return points_.front().second;
        if (u >= points_.back().first) return points_.back().second;
        auto hi = std::upper_bound(points_.begin(), points_.end(), u,
                                   [](const Rational& x, const auto& pt) { return x < pt.first; });
        auto lo = hi - 1;
        return lo->second + (u - lo->first) / (hi->first - lo->first) * (hi->second - lo->second);
    }

    double sample(double u) const {
        if (u <= fast_.front().first) return fast_.front().second;
        if (u >= fast_.back().first) return fast_.back().second;
        auto hi = std::upper_bound(fast_.begin(), fast_.end(), u,
                                   [](double x, const auto& pt) { return x < pt.first; });
        auto lo = hi - 1;
        return lo->second + (u - lo->first) / (hi->first - lo->first) * (hi->second - lo->second);
    }

    friend bool operator==(const PercentileTable& a, const PercentileTable& b) { return a.points_ == b.points_; }

private:
    std::vector<std::pair<Rational, Rational>> points_;
    std::vector<std::pair<double, double>> fast_;
};

inline PercentileTable table_from(std::initializer_list<std::pair<const char*, const char*>> pts) {
    std::vector<std::pair<Rational, Rational>> v;
    for (auto [p, x] : pts) v.emplace_back(parse_rational(p), parse_rational(x));
    return PercentileTable(std::move(v));
}

inline PercentileTable default_latency_ms() {
    return table_from({{"0.10", "95.5"}, {"0.20", "116"}, {"0.33", "138"}, {"0.50", "180"},
                       {"0.67", "216"}, {"0.80", "247"}, {"0.90", "281"}});
}

inline PercentileTable default_bandwidth_mbps() {
    return table_from({{"0.10", "3.4"}, {"0.20", "6.8"}, {"0.33", "11.2"}, {"0.50", "29.4"},
                       {"0.67", "68.3"}, {"0.80", "111.3"}, {"0.90", "144.4"}});
}

struct Normal {
    double mean = 0;
    double stddev = 0;

    friend bool operator==(const Normal&, const Normal&) = default;
};

// Draws from `n` until `accept` holds; a zero stddev yields the mean.
template <class Rng, class Accept>
double sample_truncated(const Normal& n, Rng& rng, Accept&& accept) {
    if (n.stddev <= 0) return n.mean;
    std::normal_distribution<double> dist(n.mean, n.stddev);
    for (;;) {
        double v = dist(rng);
        if (accept(v)) return v;
    }
}

struct NetworkModel {
    PercentileTable latency_ms = default_latency_ms();
    PercentileTable bandwidth_mbps = default_bandwidth_mbps();
    Normal tx_size_bytes{426.27, 68.94};
    bool instant = false;  // every message arrives with zero delay

    static NetworkModel zero_delay() {
        NetworkModel m;
        m.instant = true;
        return m;
    }

    friend bool operator==(const NetworkModel&, const NetworkModel&) = default;
};

inline double propagation_duration(double size_bytes, double bandwidth_mbps, double latency_ms) {
    return size_bytes * 8.0 / (bandwidth_mbps * 1e6) + latency_ms / 1000.0;
}

template <class Rng>
double propagation_duration(const NetworkModel& m, Rng& rng) {
    if (m.instant) return 0.0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double size = sample_truncated(m.tx_size_bytes, rng, [](double v) { return v >= 0; });
    double bw = m.bandwidth_mbps.sample(unit(rng));
    double lat = m.latency_ms.sample(unit(rng));
    return propagation_duration(size, bw, lat);
}

enum class AttackKind { Taker, Provider };

inline std::string_view to_string(AttackKind k) { return k == AttackKind::Taker ? "taker" : "provider"; }

inline AttackKind parse_attack_kind(std::string_view s) {
    if (s == "taker") return AttackKind::Taker;
    if (s == "provider") return AttackKind::Provider;
    fail(ErrorCode::ParseError, "unknown attack kind '" + std::string(s) + "'");
}

struct AuctionConfig {
    int n_adversaries = 2;
    Rational price_bump{1, 10};
    Normal victim_gas_price_gwei{8.76, 61.18};
    double pending_min_s = 0;
    double pending_max_s = 30;
    Normal gas_consumed{85488, 34782};
    double gas_consumed_floor = 21000;  // exclusive lower bound
    Normal block_interval_s{13.5, 0.12};  // schema only: pending time is sampled directly
    std::uint64_t seed = 1;
    AttackKind attack_kind = AttackKind::Taker;
    NetworkModel network;

    friend bool operator==(const AuctionConfig&, const AuctionConfig&) = default;
};

// Block-order semantics for competing sandwiches. A front-run only succeeds while it is the first
// adversarial front-run ahead of the victim; a back-run only succeeds after its own successful
// front-run and the victim. Every included transaction is charged.
enum class TxKind { Front, Victim, Back };

struct BlockTx {
    TxKind kind;
    int adversary = -1;
};

struct Settlement {
    std::optional<int> winner;
    std::vector<bool> succeeded;  // parallel to the ordering
    std::vector<BigInt> payoffs;  // wei, per adversary
};

inline Settlement settle_block(const std::vector<BlockTx>& order, int n_adversaries, const BigInt& revenue,
                               const std::vector<BigInt>& front_fee, const std::vector<BigInt>& back_fee) {
    Settlement s;
    s.succeeded.resize(order.size());
    s.payoffs.assign(n_adversaries, BigInt(0));
    bool victim_done = false, front_taken = false;
    std::vector<bool> front_ok(n_adversaries), seen_front(n_adversaries), seen_back(n_adversaries);
    std::optional<int> candidate;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const BlockTx& tx = order[i];
        bool ok = false;
        switch (tx.kind) {
        case TxKind::Front:
            ok = !victim_done && !front_taken;
            if (ok) front_taken = true, front_ok[tx.adversary] = true, candidate = tx.adversary;
            seen_front[tx.adversary] = true;
            break;
        case TxKind::Victim:
            ok = true;
            victim_done = true;
            break;
        case TxKind::Back:
            ok = front_ok[tx.adversary] && victim_done;
            if (ok && candidate == tx.adversary) s.winner = tx.adversary;
            seen_back[tx.adversary] = true;
            break;
        }
        s.succeeded[i] = ok;
    }
    for (int a = 0; a < n_adversaries; ++a) {
        if (seen_front[a]) s.payoffs[a] -= front_fee[a];
        if (seen_back[a]) s.payoffs[a] -= back_fee[a];
    }
    if (s.winner) s.payoffs[*s.winner] += revenue;
    return s;
}

struct AuctionResult {
    std::optional<int> winner;
    std::uint64_t final_gas_price = 0;  // wei, winning front-run bid
    std::vector<BigInt> payoffs;        // wei, per adversary
    std::size_t bid_count = 0;
    double victim_mined_at = 0;  // seconds after broadcast
    std::uint64_t victim_gas_price = 0;
};

// Per-run sampled parameters; overriding them makes single runs reproducible in tests.
struct RunDraw {
    std::uint64_t victim_gas_price = 0;  // wei
    double pending_s = 0;
    std::vector<std::uint64_t> gas;  // per adversary
};

template <class Rng>
RunDraw draw_run(const AuctionConfig& cfg, Rng& rng) {
    RunDraw d;
    double g = sample_truncated(cfg.victim_gas_price_gwei, rng, [](double v) { return v * 1e9 >= 1.0; });
    d.victim_gas_price = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(g * 1e9)));
    std::uniform_real_distribution<double> pending(cfg.pending_min_s, cfg.pending_max_s);
    d.pending_s = cfg.pending_max_s > cfg.pending_min_s ? pending(rng) : cfg.pending_min_s;
    for (int i = 0; i < cfg.n_adversaries; ++i) {
        double gas = sample_truncated(cfg.gas_consumed, rng, [&](double v) { return v > cfg.gas_consumed_floor; });
        d.gas.push_back(static_cast<std::uint64_t>(std::llround(gas)));
    }
    return d;
}

namespace detail {

// ceil(price * num / den), saturating.
inline std::uint64_t bump(std::uint64_t price, std::uint64_t num, std::uint64_t den) {
    unsigned __int128 v = (static_cast<unsigned __int128>(price) * num + den - 1) / den;
    return v > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                          : static_cast<std::uint64_t>(v);
}

enum class EventKind { SeeVictim, SeeBid, MinerGetsBid };

struct Event {
    double time;
    std::uint64_t seq;
    EventKind kind;
    int target;  // observing adversary, or bidder for MinerGetsBid
    int bidder;
    std::uint64_t price;

    bool operator>(const Event& o) const { return time != o.time ? time > o.time : seq > o.seq; }
};

}  // namespace detail

// One auction with the given draw. Network delays are sampled from `rng` as messages are sent.
template <class Rng>
AuctionResult run_auction(const AuctionConfig& cfg, const Amount& revenue, const RunDraw& draw, Rng& rng) {
    const int n = cfg.n_adversaries;
    if (n < 1) fail(ErrorCode::InvalidArgument, "need at least one adversary");
    const Rational factor = Rational(1) + cfg.price_bump;
    if (cfg.price_bump < 0 || bmp::denominator(factor) > BigInt(std::numeric_limits<std::uint32_t>::max()) ||
        bmp::numerator(factor) > BigInt(std::numeric_limits<std::uint32_t>::max()))
        fail(ErrorCode::InvalidArgument, "price bump must be a small non-negative fraction");
    const auto bump_num = bmp::numerator(factor).convert_to<std::uint64_t>();
    const auto bump_den = bmp::denominator(factor).convert_to<std::uint64_t>();
    const std::uint64_t gv = draw.victim_gas_price;
    const double tp = draw.pending_s;

    struct Adversary {
        std::uint64_t cap = 0;
        bool seen_victim = false;
        bool stopped = false;
        std::uint64_t bid = 0;       // latest emitted
        std::uint64_t observed = 0;  // highest competing bid seen
        std::uint64_t at_miner = 0;
        double arrived = 0;
        std::uint64_t arrival_seq = 0;
    };
    std::vector<Adversary> adv(n);
    for (int i = 0; i < n; ++i) {
        // Stop raising once both transactions' fees would exceed the revenue.
        BigInt cap = revenue.value() / (2 * BigInt(draw.gas[i]));
        adv[i].cap = cap > BigInt(std::numeric_limits<std::uint64_t>::max()) ? std::numeric_limits<std::uint64_t>::max()
                                                                           : cap.convert_to<std::uint64_t>();
    }

    AuctionResult res;
    res.victim_mined_at = tp;
    res.victim_gas_price = gv;
    std::priority_queue<detail::Event, std::vector<detail::Event>, std::greater<>> q;
    std::uint64_t seq = 0;
    auto send = [&](double t, detail::EventKind kind, int target, int bidder, std::uint64_t price) {
        q.push({t + propagation_duration(cfg.network, rng), seq++, kind, target, bidder, price});
    };
    auto emit = [&](int i, double t, std::uint64_t price) {
        adv[i].bid = price;
        ++res.bid_count;
        for (int j = 0; j < n; ++j)
            if (j != i) send(t, detail::EventKind::SeeBid, j, i, price);
        send(t, detail::EventKind::MinerGetsBid, i, i, price);
    };
    auto try_raise = [&](int i, double t, std::uint64_t over) {
        std::uint64_t next = detail::bump(over, bump_num, bump_den);
        if (next > adv[i].cap) {
            adv[i].stopped = true;
            return;
        }
        emit(i, t, next);
    };

    for (int i = 0; i < n; ++i) send(0.0, detail::EventKind::SeeVictim, i, -1, gv);
    while (!q.empty() && q.top().time <= tp) {
        detail::Event e = q.top();
        q.pop();
        Adversary& a = adv[e.target];
        switch (e.kind) {
        case detail::EventKind::SeeVictim:
            a.seen_victim = true;
            try_raise(e.target, e.time, std::max(gv, a.observed));
            break;
        case detail::EventKind::SeeBid:
            a.observed = std::max(a.observed, e.price);
            if (a.seen_victim && !a.stopped && e.price >= a.bid) try_raise(e.target, e.time, e.price);
            break;
        case detail::EventKind::MinerGetsBid:
            if (e.price > a.at_miner) a.at_miner = e.price, a.arrived = e.time, a.arrival_seq = e.seq;
            break;
        }
    }

    // Block order: front-runs by descending gas price (FIFO on ties), the victim, back-runs at
    // victim price - 1 wei. Bids that missed the block are mined afterwards and fail.
    std::vector<int> in_block, late;
    for (int i = 0; i < n; ++i) {
        if (adv[i].at_miner > gv)
            in_block.push_back(i);
        else if (adv[i].bid > 0)
            late.push_back(i);
    }
    std::sort(in_block.begin(), in_block.end(), [&](int a, int b) {
        if (adv[a].at_miner != adv[b].at_miner) return adv[a].at_miner > adv[b].at_miner;
        return adv[a].arrival_seq < adv[b].arrival_seq;
    });
    std::vector<BlockTx> order;
    for (int i : in_block) order.push_back({TxKind::Front, i});
    order.push_back({TxKind::Victim});
    for (int i : in_block) order.push_back({TxKind::Back, i});
    for (int i : late) order.push_back({TxKind::Front, i});
    for (int i : late) order.push_back({TxKind::Back, i});

    std::vector<BigInt> front_fee(n), back_fee(n);
    for (int i = 0; i < n; ++i) {
        std::uint64_t charged = adv[i].bid;
        front_fee[i] = BigInt(draw.gas[i]) * BigInt(charged);
        back_fee[i] = BigInt(draw.gas[i]) * BigInt(gv - 1);
    }
    // The winner pays the bid the miner included, not a replacement still in flight.
    if (!in_block.empty()) front_fee[in_block.front()] = BigInt(draw.gas[in_block.front()]) * BigInt(adv[in_block.front()].at_miner);

    Settlement s = settle_block(order, n, revenue.value(), front_fee, back_fee);
    res.winner = s.winner;
    res.payoffs = std::move(s.payoffs);
    if (res.winner) res.final_gas_price = adv[*res.winner].at_miner;
    return res;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run_index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(run_index + 0x632be59bd9b4e019ULL));
}

inline AuctionResult run_auction(const AuctionConfig& cfg, const Amount& revenue, std::uint64_t run_index) {
    std::mt19937_64 rng(run_seed(cfg.seed, run_index));
    RunDraw d = draw_run(cfg, rng);
    return run_auction(cfg, revenue, d, rng);
}

// Running mean and variance that merge exactly in a fixed order (Chan et al.).
struct Moments {
    std::uint64_t n = 0;
    double mean = 0;
    double m2 = 0;

    void add(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        double total = static_cast<double>(n + o.n);
        double d = o.mean - mean;
        mean += d * static_cast<double>(o.n) / total;
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
        n += o.n;
    }

    double half_width95() const {
        if (n < 2) return 0;
        return 1.959963984540054 * std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

struct CurvePoint {
    double pending_lo = 0;
    double pending_hi = 0;
    Moments profit_eth;   // mean per-adversary payoff per run
    Moments gas_gwei;     // winning gas price, runs with a winner
};

struct ProfitCurve {
    int n_adversaries = 0;
    std::uint64_t seed = 0;
    std::uint64_t runs = 0;
    double lone_revenue_eth = 0;
    std::vector<CurvePoint> points;

    // Mean profit at pending time t, interpolated between bucket centres.
    double profit_at(double t) const {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : points)
            if (p.profit_eth.n > 0) pts.emplace_back((p.pending_lo + p.pending_hi) / 2, p.profit_eth.mean);
        if (pts.empty()) return 0;
        if (t <= pts.front().first) return pts.front().second;
        if (t >= pts.back().first) return pts.back().second;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (t <= pts[i].first) {
                auto [t0, p0] = pts[i - 1];
                auto [t1, p1] = pts[i];
                return p0 + (t - t0) / (t1 - t0) * (p1 - p0);
            }
        return pts.back().second;
    }

    // First pending time where the mean profit falls to zero, interpolated between bucket centres.
    std::optional<double> break_even() const {
        std::optional<std::pair<double, double>> prev;
        for (const auto& p : points) {
            if (p.profit_eth.n == 0) continue;
            double t = (p.pending_lo + p.pending_hi) / 2, v = p.profit_eth.mean;
            if (prev && prev->second > 0 && v <= 0) return prev->first + prev->second / (prev->second - v) * (t - prev->first);
            if (!prev && v <= 0) return t;
            prev = {t, v};
        }
        return std::nullopt;
    }
};

struct MonteCarloOptions {
    double bucket_width_s = 1.0;
    unsigned threads = 0;  // 0: hardware concurrency
    std::uint64_t chunk = 4096;
};

inline ProfitCurve run_monte_carlo(const AuctionConfig& cfg, const Amount& revenue, std::uint64_t runs,
                                   const MonteCarloOptions& opt = {}) {
    if (runs < 1) fail(ErrorCode::InvalidArgument, "need at least one run");
    if (opt.bucket_width_s <= 0) fail(ErrorCode::InvalidArgument, "bucket width must be positive");
    const double span = std::max(cfg.pending_max_s - cfg.pending_min_s, opt.bucket_width_s);
    const std::size_t buckets = static_cast<std::size_t>(std::ceil(span / opt.bucket_width_s - 1e-9));
    const double revenue_eth = to_double(Rational(revenue.value(), pow10(18)));

    auto empty_curve = [&] {
        std::vector<CurvePoint> pts(buckets);
        for (std::size_t b = 0; b < buckets; ++b) {
            pts[b].pending_lo = cfg.pending_min_s + static_cast<double>(b) * opt.bucket_width_s;
            pts[b].pending_hi = pts[b].pending_lo + opt.bucket_width_s;
        }
        return pts;
    };

    const std::uint64_t chunks = (runs + opt.chunk - 1) / opt.chunk;
    std::vector<std::vector<CurvePoint>> partial(chunks);
    auto work = [&](std::uint64_t c) {
        auto pts = empty_curve();
        for (std::uint64_t r = c * opt.chunk; r < std::min(runs, (c + 1) * opt.chunk); ++r) {
            AuctionResult res = run_auction(cfg, revenue, r);
            auto b = static_cast<std::size_t>((res.victim_mined_at - cfg.pending_min_s) / opt.bucket_width_s);
            b = std::min(b, buckets - 1);
            BigInt total = 0;
            for (const auto& p : res.payoffs) total += p;
            pts[b].profit_eth.add(to_double(Rational(total, pow10(18) * cfg.n_adversaries)));
            if (res.winner) pts[b].gas_gwei.add(static_cast<double>(res.final_gas_price) / 1e9);
        }
        partial[c] = std::move(pts);
    };

    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1 || chunks == 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) work(c);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t c = t; c < chunks; c += threads) work(c);
            });
        for (auto& th : pool) th.join();
    }

    ProfitCurve curve{cfg.n_adversaries, cfg.seed, runs, revenue_eth, empty_curve()};
    for (const auto& pts : partial)
        for (std::size_t b = 0; b < buckets; ++b) {
            curve.points[b].profit_eth.merge(pts[b].profit_eth);
            curve.points[b].gas_gwei.merge(pts[b].gas_gwei);
        }
    return curve;
}

}  // namespace sandwich::auction
