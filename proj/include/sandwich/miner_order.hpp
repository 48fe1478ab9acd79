#pragma once

#include "sandwich/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sandwich::ordering {

struct TxMeta {
    std::string sender;
    std::uint64_t nonce = 0;
    Amount gas_price;
};

struct BlockRecord {
    std::uint64_t number = 0;
    std::string miner;
    std::vector<TxMeta> txs;
};

enum class OrderingClass { Empty, GasPrice, ParityDefault, Unknown };

inline constexpr std::array<OrderingClass, 4> kAllClasses{OrderingClass::Empty, OrderingClass::GasPrice,
                                                          OrderingClass::ParityDefault, OrderingClass::Unknown};

inline std::string_view to_string(OrderingClass c) {
    switch (c) {
    case OrderingClass::Empty: return "empty";
    case OrderingClass::GasPrice: return "gas_price";
    case OrderingClass::ParityDefault: return "parity_default";
    case OrderingClass::Unknown: return "unknown";
    }
    return "?";
}

// Gas price of each sender's lowest-nonce transaction, in order of the sender's first appearance.
// Later transactions of a sender are ordered by nonce, so only the first one competes on price.
inline std::vector<Amount> first_tx_gas_prices(const BlockRecord& block) {
    std::vector<Amount> prices;
    std::unordered_map<std::string_view, std::uint64_t> last_nonce;
    for (const auto& tx : block.txs) {
        auto [it, fresh] = last_nonce.try_emplace(tx.sender, tx.nonce);
        if (fresh) {
            prices.push_back(tx.gas_price);
            continue;
        }
        if (tx.nonce == it->second)
            fail(ErrorCode::DuplicateNonce, "block " + std::to_string(block.number) + ": sender " + tx.sender +
                                                " repeats nonce " + std::to_string(tx.nonce));
        if (tx.nonce < it->second)
            fail(ErrorCode::NonceOrder, "block " + std::to_string(block.number) + ": sender " + tx.sender +
                                            " nonce " + std::to_string(tx.nonce) + " after " +
                                            std::to_string(it->second));
        it->second = tx.nonce;
    }
    return prices;
}

// Number of maximal non-increasing runs, taken greedily left to right.
inline std::size_t count_descending_runs(const std::vector<Amount>& prices) {
    if (prices.empty()) return 0;
    std::size_t runs = 1;
    for (std::size_t i = 1; i < prices.size(); ++i)
        if (prices[i] > prices[i - 1]) ++runs;
    return runs;
}

inline constexpr std::size_t kParityMaxRuns = 4;

inline OrderingClass classify_prices(const std::vector<Amount>& prices) {
    std::size_t runs = count_descending_runs(prices);
    if (runs == 0) return OrderingClass::Empty;
    if (runs == 1) return OrderingClass::GasPrice;
    if (runs <= kParityMaxRuns) return OrderingClass::ParityDefault;
    return OrderingClass::Unknown;
}

inline OrderingClass classify_block(const BlockRecord& block) { return classify_prices(first_tx_gas_prices(block)); }

struct ClassCounts {
    std::array<std::uint64_t, 4> counts{};

    std::uint64_t& operator[](OrderingClass c) { return counts[static_cast<std::size_t>(c)]; }
    std::uint64_t operator[](OrderingClass c) const { return counts[static_cast<std::size_t>(c)]; }
    std::uint64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
    double ratio(OrderingClass c) const {
        auto t = total();
        return t == 0 ? 0.0 : static_cast<double>((*this)[c]) / static_cast<double>(t);
    }
};

struct MinerStats {
    std::map<std::string, ClassCounts> per_miner;
    ClassCounts global;

    void add(const std::string& miner, OrderingClass c) {
        ++per_miner[miner][c];
        ++global[c];
    }

    // Miners by block count descending, name ascending on ties; k == 0 yields none.
    std::vector<std::pair<std::string, ClassCounts>> top(std::size_t k) const {
        std::vector<std::pair<std::string, ClassCounts>> rows(per_miner.begin(), per_miner.end());
        std::stable_sort(rows.begin(), rows.end(),
                         [](const auto& a, const auto& b) { return a.second.total() > b.second.total(); });
        if (rows.size() > k) rows.resize(k);
        return rows;
    }
};

inline MinerStats aggregate(const std::vector<BlockRecord>& blocks) {
    MinerStats stats;
    for (const auto& b : blocks) stats.add(b.miner, classify_block(b));
    return stats;
}

struct GasPriceStats {
    std::size_t count = 0;
    double mean = 0;
    double stddev = 0;  // population
    double median = 0;
    Amount mode;
    std::size_t mode_count = 0;
};

// Summary over all transactions' gas prices, in wei.
inline GasPriceStats gas_price_stats(const std::vector<BlockRecord>& blocks) {
    std::vector<Amount> all;
    for (const auto& b : blocks)
        for (const auto& tx : b.txs) all.push_back(tx.gas_price);
    GasPriceStats s;
    s.count = all.size();
    if (all.empty()) return s;
    std::sort(all.begin(), all.end());

    BigInt sum = 0;
    for (const auto& a : all) sum += a.value();
    Rational mean(sum, BigInt(all.size()));
    Rational sq = 0;
    for (const auto& a : all) {
        Rational d = to_rational(a) - mean;
        sq += d * d;
    }
    s.mean = to_double(mean);
    s.stddev = std::sqrt(to_double(sq / Rational(BigInt(all.size()))));
    std::size_t n = all.size();
    s.median = n % 2 ? to_double(all[n / 2]) : to_double(Rational(all[n / 2 - 1].value() + all[n / 2].value(), 2));

    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && all[j] == all[i]) ++j;
        if (j - i > s.mode_count) s.mode_count = j - i, s.mode = all[i];
        i = j;
    }
    return s;
}

}  // namespace sandwich::ordering
