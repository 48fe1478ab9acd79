// Optimal taker attack on a 40 ETH buy of SAI at 0.5% tolerance, using the library directly.
#include "sandwich/taker.hpp"

#include <iostream>

using namespace sandwich;

int main() {
    const PoolState pool{Amount::from_units("7377.53", 18), Amount::from_units("1099040.91", 18)};
    const FeeSpec fee{};
    const VictimTx victim =
        victim_with_tolerance(pool, Direction::XforY, Amount::from_units("40", 18), Rational(5, 1000), fee);

    const auto best = optimal_front_run_input(pool, victim, fee, CostModel{}, Valuation::eth_numeraire(pool));
    const auto& o = best.outcome;
    std::cout << "front-run input  " << format_units(best.input, 18, 6) << " ETH\n"
              << "front-run output " << format_units(o.front_output, 18, 2) << " SAI\n"
              << "back-run output  " << format_units(o.back_output, 18, 6) << " ETH\n"
              << "net profit       " << format_units(o.net_profit, 18, 6) << " ETH\n";
}
