#pragma once

#include "sandwich/miner_order.hpp"
#include "sandwich/victim.hpp"

#include <json.hpp>

#include <functional>
#include <istream>
#include <optional>
#include <string>

namespace sandwich::io {

using nlohmann::json;

enum class TradeKind { EthToToken, TokenToEth, TokenToToken };

inline std::string_view to_string(TradeKind k) {
    switch (k) {
    case TradeKind::EthToToken: return "eth_to_token";
    case TradeKind::TokenToEth: return "token_to_eth";
    case TradeKind::TokenToToken: return "token_to_token";
    }
    return "?";
}

// One historical trade with the pool state at the previous block. Token-to-token trades sell the
// first market's token for ETH, then buy the second market's token with it; `limit` bounds the
// final output and `pool_out_before` is the second market.
struct TradeRecord {
    std::uint64_t block = 0;
    std::string market;
    PoolState pool_before;
    TradeKind kind = TradeKind::EthToToken;
    Direction direction = Direction::XforY;  // single-market trades
    Amount amount;
    Amount limit;
    Amount gas_price;
    std::string market_out;
    PoolState pool_out_before;
};

inline Amount json_amount(const json& j, const char* key) {
    if (!j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_string()) fail(ErrorCode::ParseError, std::string("field '") + key + "' must be a decimal string");
    return Amount::parse(v.get<std::string>());
}

inline PoolState json_pool(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_object())
        fail(ErrorCode::ParseError, std::string("missing object '") + key + "'");
    const json& p = j.at(key);
    return {json_amount(p, "x"), json_amount(p, "y")};
}

inline TradeRecord parse_trade(const std::string& line) {
    json j = json::parse(line);
    TradeRecord r;
    r.block = j.at("block").get<std::uint64_t>();
    r.market = j.at("market").get<std::string>();
    r.pool_before = json_pool(j, "pool_before");
    std::string dir = j.at("direction").get<std::string>();
    if (dir == "token_to_token") {
        r.kind = TradeKind::TokenToToken;
        r.direction = Direction::YforX;
        r.market_out = j.at("market_out").get<std::string>();
        r.pool_out_before = json_pool(j, "pool_out_before");
    } else {
        r.direction = parse_direction(dir);
        r.kind = buys_y(r.direction) ? TradeKind::EthToToken : TradeKind::TokenToEth;
    }
    r.amount = json_amount(j, "amount");
    r.limit = json_amount(j, "limit");
    r.gas_price = j.contains("gas_price") ? json_amount(j, "gas_price") : Amount{};
    if (r.amount.is_zero()) fail(ErrorCode::ParseError, "amount must be non-zero");
    return r;
}

inline json to_json(const TradeRecord& r) {
    json j;
    j["block"] = r.block;
    j["market"] = r.market;
    j["pool_before"] = {{"x", r.pool_before.x.str()}, {"y", r.pool_before.y.str()}};
    if (r.kind == TradeKind::TokenToToken) {
        j["direction"] = "token_to_token";
        j["market_out"] = r.market_out;
        j["pool_out_before"] = {{"x", r.pool_out_before.x.str()}, {"y", r.pool_out_before.y.str()}};
    } else {
        j["direction"] = std::string(to_string(r.direction));
    }
    j["amount"] = r.amount.str();
    j["limit"] = r.limit.str();
    j["gas_price"] = r.gas_price.str();
    return j;
}

inline ordering::BlockRecord parse_block(const std::string& line) {
    json j = json::parse(line);
    ordering::BlockRecord b;
    b.number = j.at("number").get<std::uint64_t>();
    b.miner = j.at("miner").get<std::string>();
    for (const auto& t : j.at("txs")) {
        ordering::TxMeta tx;
        tx.sender = t.at("sender").get<std::string>();
        tx.nonce = t.at("nonce").get<std::uint64_t>();
        tx.gas_price = json_amount(t, "gas_price");
        b.txs.push_back(std::move(tx));
    }
    return b;
}

inline json to_json(const ordering::BlockRecord& b) {
    json txs = json::array();
    for (const auto& t : b.txs) txs.push_back({{"sender", t.sender}, {"nonce", t.nonce}, {"gas_price", t.gas_price.str()}});
    return {{"number", b.number}, {"miner", b.miner}, {"txs", txs}};
}

struct StreamStats {
    std::size_t records = 0;
    std::size_t skipped = 0;
};

// Feeds each non-blank line to `handle`; lines that fail to parse are reported to `errors` and skipped.
template <class Parse, class Handle>
StreamStats read_ndjson(std::istream& in, Parse&& parse, Handle&& handle, std::ostream& errors) {
    StreamStats st;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++st.records;
        try {
            auto rec = parse(line);
            handle(std::move(rec));
        } catch (const std::exception& e) {
            ++st.skipped;
            errors << "line " << n << ": skipped: " << e.what() << "\n";
        }
    }
    return st;
}

}  // namespace sandwich::io
