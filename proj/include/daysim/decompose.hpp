#pragma once

#include "daysim/series.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace daysim {

// Per-night simple returns close[k] -> open[k+1], optionally reinvesting the
// dividend that goes ex at open[k+1]. Length n-1 for an n-bar series; throws
// std::invalid_argument for n < 2.
std::vector<double> overnight_returns(const PriceSeries& series, bool include_dividends);

// Per-day simple returns open[k+1] -> close[k+1], aligned one-to-one with
// overnight_returns (day 0's intraday move is excluded so both sequences
// start at the first overnight).
std::vector<double> intraday_returns(const PriceSeries& series);

// Gross compounding factors g[k] = prod_{j<=k} (1 + r[j]). Throws
// std::invalid_argument if any return is <= -1 (a -100% move).
std::vector<double> cumulate(std::span<const double> simple_returns);

struct DecompositionResult {
    std::vector<std::string> dates;  // date of each close->open->close pair's day
    std::vector<double> cumulative_overnight;
    std::vector<double> cumulative_intraday;
    double final_overnight_pct = 0.0;
    double final_intraday_pct = 0.0;
};

// Splits a series into its cumulative overnight and intraday return curves.
// Without dividends the two curves multiply to close[k+1]/close[0] at every
// index.
DecompositionResult decompose(const PriceSeries& series, bool include_dividends);

// CSV with header date,cum_overnight,cum_intraday.
void write_decomposition_csv(std::ostream& out, const DecompositionResult& result);

struct VarianceShares {
    double intraday_share = 0.0;
    double overnight_share = 0.0;  // always 1 - intraday_share
};

// Shares of total daily log-return variance realized intraday vs overnight
// (sample variance, n-1 normalization, dividends excluded). Needs at least
// 3 bars; throws std::domain_error when the total variance is zero.
VarianceShares variance_shares(const PriceSeries& series);

} // namespace daysim
