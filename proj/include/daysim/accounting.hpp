#pragma once

#include "daysim/impact.hpp"

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace daysim {

using PriceMap = std::map<std::string, double>;

struct Portfolio {
    std::map<std::string, double> positions;  // signed shares per asset
    double cash = 0.0;
    double financing_rate = 0.0;  // per-day fraction of gross exposure
};

// cash + sum of position * price. Throws std::invalid_argument naming any
// held asset that has no price. Flat (zero) positions need no price.
double mark_to_market(const Portfolio& portfolio, const PriceMap& prices);

// sum of |position * price| over held assets.
double gross_exposure(const Portfolio& portfolio, const PriceMap& prices);

struct FeeSchedule {
    double commission = 0.0;     // currency per share, each execution
    double exchange_fee = 0.0;   // currency per share, each execution
    double regulator_fee = 0.0;  // fraction of sale proceeds

    void validate() const;
};

// Cost of buying then selling qty shares within one day: both spread
// crossings at their contemporaneous half-spreads, per-share fees on both
// executions, and the regulator fee on the sale proceeds. Takes no
// portfolio; the cost of the round trip does not depend on what else is
// held.
double round_trip_cost(double qty, const LiquidityProfile& profile, double u_buy,
                       double u_sell, const FeeSchedule& fees, double price);

// portfolio_value * daily_nudge: the mark-to-market gain a standing book of
// that value collects from a daily fractional drift of daily_nudge.
double expected_daily_gain(double portfolio_value, double daily_nudge);

// Portfolio value at which the expected daily gain equals the daily trading
// cost. Throws std::domain_error for daily_nudge <= 0.
double breakeven_size(double daily_nudge, double daily_cost);

// One execution, priced at the prevailing mid; the spread crossing is
// itemized separately via half_spread.
struct Fill {
    std::string asset;
    double qty = 0.0;         // signed shares
    double u = 0.0;           // intraday time of execution
    double price = 0.0;       // mid at execution
    double half_spread = 0.0; // half-spread at execution
};

struct LedgerRow {
    long day = 0;
    double mtm_gain = 0.0;
    double spread_cost = 0.0;
    double commission_cost = 0.0;
    double exchange_cost = 0.0;
    double regulator_cost = 0.0;
    double financing_cost = 0.0;

    double total_cost() const {
        return spread_cost + commission_cost + exchange_cost + regulator_cost +
               financing_cost;
    }
    double net_pnl() const { return mtm_gain - total_cost(); }
};

struct Ledger {
    std::vector<LedgerRow> rows;

    void write_csv(std::ostream& out) const;
};

// Books one day: applies the fills to the portfolio at their fill prices,
// itemizes the day's costs (spread, per-share fees, regulator fee on sales,
// financing on gross exposure at the close), and marks the book from
// start_marks to close_marks. mtm_gain is the pure price-move gain, so
// net_pnl equals the change in portfolio equity exactly. Throws
// std::invalid_argument on a fill with non-finite numbers or an asset with
// no mark.
LedgerRow accrue_day(long day, std::span<const Fill> fills, Portfolio& portfolio,
                     const PriceMap& start_marks, const PriceMap& close_marks,
                     const FeeSchedule& fees);

} // namespace daysim
