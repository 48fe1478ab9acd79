#include "sandwich/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

using namespace sandwich;

namespace {

struct Globals {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string output;
    std::string input = "-";
    cli::Format format = cli::Format::Csv;
    cli::Arith arith = cli::Arith::Integer;
    bool dump_config = false;
};

// Opens --output, or stdout when it is empty or "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) fail(ErrorCode::InvalidArgument, "cannot open output '" + path + "'");
        }
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

class Input {
public:
    explicit Input(const std::string& path) {
        if (path != "-") {
            file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
            if (!*file_) fail(ErrorCode::InvalidArgument, "cannot open input '" + path + "'");
        }
    }
    std::istream& get() { return file_ ? *file_ : std::cin; }

private:
    std::unique_ptr<std::ifstream> file_;
};

io::Scenario load_scenario(const Globals& g) {
    if (g.config.empty()) fail(ErrorCode::InvalidArgument, "--config is required");
    return io::parse_scenario(io::read_file(g.config), g.config);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sandwich attack analysis for constant-product exchanges"};
    app.require_subcommand(1);
    Globals g;
    const std::map<std::string, cli::Format> formats{{"csv", cli::Format::Csv}, {"json", cli::Format::Json}};
    const std::map<std::string, cli::Arith> ariths{{"integer", cli::Arith::Integer}, {"oracle", cli::Arith::Oracle}};
    app.add_option("--config", g.config, "Scenario or simulation INI file");
    app.add_option("--seed", g.seed, "Override the simulation seed");
    app.add_option("--output", g.output, "Write results to this file instead of stdout");
    app.add_option("--format", g.format, "Output format")->transform(CLI::CheckedTransformer(formats));
    app.add_option("--arith", g.arith, "integer: on-chain rounding; oracle: exact rationals")
        ->transform(CLI::CheckedTransformer(ariths));
    app.add_flag("--dump-config", g.dump_config, "Print the validated configuration and exit");
    app.fallthrough();

    auto* attack = app.add_subcommand("attack", "Optimal attack against the scenario's victim");
    auto* sweep = app.add_subcommand("sweep", "Optimal attack over a range of victim inputs and tolerances");

    auto* estimate = app.add_subcommand("estimate-revenue", "Aggregate attack revenue over a trade stream");
    std::string kind = "taker";
    std::string attack_cost = CostModel{}.attack_cost.str();
    std::string fee = "3/1000";
    estimate->add_option("--input", g.input, "NDJSON trade records, '-' for stdin");
    estimate->add_option("--kind", kind, "taker or provider")->check(CLI::IsMember({"taker", "provider"}));
    estimate->add_option("--attack-cost", attack_cost, "Break-even cost per attack in wei");
    estimate->add_option("--fee", fee, "Pool fee as a fraction");

    auto* classify = app.add_subcommand("classify-blocks", "Per-miner transaction ordering classes");
    std::size_t top_k = 10;
    classify->add_option("--input", g.input, "NDJSON block records, '-' for stdin");
    classify->add_option("--top", top_k, "Number of miners listed before the ALL row");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo gas-price auction among adversaries");
    unsigned threads = 0;
    std::optional<std::uint64_t> runs;
    simulate->add_option("--threads", threads, "Worker threads, 0 for hardware concurrency");
    simulate->add_option("--runs", runs, "Override the number of runs");

    auto* slippage = app.add_subcommand("slippage-report", "Histogram of expected and unexpected slippage rates");
    std::string bin_width = "1/1000";
    std::size_t bins = 50;
    slippage->add_option("--input", g.input, "NDJSON trade records, '-' for stdin");
    slippage->add_option("--fee", fee, "Pool fee as a fraction");
    slippage->add_option("--bin-width", bin_width, "Bin width as a fraction");
    slippage->add_option("--bins", bins, "Number of bins");

    CLI11_PARSE(app, argc, argv);

    try {
        Output out(g.output);
        if (*attack || *sweep) {
            io::Scenario sc = load_scenario(g);
            if (g.dump_config) {
                out.get() << io::dump_scenario(sc);
                return 0;
            }
            if (*attack) return cli::cmd_attack(sc, g.arith, g.format, out.get());
            return cli::cmd_sweep(sc, g.arith, g.format, out.get());
        }
        if (*simulate) {
            if (g.config.empty()) fail(ErrorCode::InvalidArgument, "--config is required");
            io::SimulationConfig c = io::parse_simulation(io::read_file(g.config), g.config);
            if (g.seed) c.auction.seed = *g.seed;
            if (runs) {
                if (*runs < 1) fail(ErrorCode::InvalidArgument, "--runs must be at least 1");
                c.runs = *runs;
            }
            if (g.dump_config) {
                out.get() << io::dump_simulation(c);
                return 0;
            }
            return cli::cmd_simulate(c, g.format, out.get(), threads);
        }
        Input in(g.input);
        if (*estimate) {
            EstimateOptions opt;
            opt.kind = auction::parse_attack_kind(kind);
            opt.cost = CostModel{Amount::parse(attack_cost)};
            opt.fee = io::parse_fee(fee);
            return cli::cmd_estimate_revenue(in.get(), opt, g.format, out.get(), std::cerr);
        }
        if (*classify) return cli::cmd_classify_blocks(in.get(), top_k, g.format, out.get(), std::cerr);
        return cli::cmd_slippage_report(in.get(), io::parse_fee(fee), parse_rational(bin_width), bins, g.format,
                                        out.get(), std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitError;
    }
}
