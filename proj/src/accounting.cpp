#include "daysim/accounting.hpp"

#include "daysim/series.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace daysim {

double mark_to_market(const Portfolio& portfolio, const PriceMap& prices) {
    double value = portfolio.cash;
    for (const auto& [asset, shares] : portfolio.positions) {
        if (shares == 0.0) continue;
        auto it = prices.find(asset);
        if (it == prices.end())
            throw std::invalid_argument("no price for held asset '" + asset + "'");
        value += shares * it->second;
    }
    return value;
}

double gross_exposure(const Portfolio& portfolio, const PriceMap& prices) {
    double gross = 0.0;
    for (const auto& [asset, shares] : portfolio.positions) {
        if (shares == 0.0) continue;
        auto it = prices.find(asset);
        if (it == prices.end())
            throw std::invalid_argument("no price for held asset '" + asset + "'");
        gross += std::abs(shares * it->second);
    }
    return gross;
}

void FeeSchedule::validate() const {
    if (commission < 0.0 || !std::isfinite(commission))
        throw std::invalid_argument("commission must be >= 0");
    if (exchange_fee < 0.0 || !std::isfinite(exchange_fee))
        throw std::invalid_argument("exchange_fee must be >= 0");
    if (regulator_fee < 0.0 || !std::isfinite(regulator_fee))
        throw std::invalid_argument("regulator_fee must be >= 0");
}

double round_trip_cost(double qty, const LiquidityProfile& profile, double u_buy,
                       double u_sell, const FeeSchedule& fees, double price) {
    if (!(qty >= 0.0) || !std::isfinite(qty))
        throw std::domain_error("round-trip quantity must be >= 0");
    const double spread_legs = (half_spread_at(profile, u_buy) +
                                half_spread_at(profile, u_sell)) * qty;
    const double per_share = 2.0 * (fees.commission + fees.exchange_fee) * qty;
    const double sale_fee = fees.regulator_fee * qty * price;
    return spread_legs + per_share + sale_fee;
}

double expected_daily_gain(double portfolio_value, double daily_nudge) {
    return portfolio_value * daily_nudge;
}

double breakeven_size(double daily_nudge, double daily_cost) {
    if (!(daily_nudge > 0.0) || !std::isfinite(daily_nudge))
        throw std::domain_error("daily_nudge must be > 0 for a finite break-even size");
    return daily_cost / daily_nudge;
}

LedgerRow accrue_day(long day, std::span<const Fill> fills, Portfolio& portfolio,
                     const PriceMap& start_marks, const PriceMap& close_marks,
                     const FeeSchedule& fees) {
    fees.validate();
    const double value_start = mark_to_market(portfolio, start_marks);

    LedgerRow row;
    row.day = day;
    for (const Fill& fill : fills) {
        if (!std::isfinite(fill.qty) || !std::isfinite(fill.price) ||
            !(fill.price > 0.0) || fill.half_spread < 0.0)
            throw std::invalid_argument("inconsistent fill for asset '" + fill.asset + "'");
        portfolio.positions[fill.asset] += fill.qty;
        portfolio.cash -= fill.qty * fill.price;
        const double shares = std::abs(fill.qty);
        row.spread_cost += fill.half_spread * shares;
        row.commission_cost += fees.commission * shares;
        row.exchange_cost += fees.exchange_fee * shares;
        if (fill.qty < 0.0) row.regulator_cost += fees.regulator_fee * shares * fill.price;
    }
    row.financing_cost = portfolio.financing_rate * gross_exposure(portfolio, close_marks);
    portfolio.cash -= row.total_cost();

    const double value_end = mark_to_market(portfolio, close_marks);
    row.mtm_gain = value_end - value_start + row.total_cost();
    return row;
}

void Ledger::write_csv(std::ostream& out) const {
    out << "day,mtm_gain,spread_cost,commission_cost,exchange_cost,"
           "regulator_cost,financing_cost,net_pnl\n";
    for (const LedgerRow& row : rows) {
        out << row.day << ',' << csv_number(row.mtm_gain) << ','
            << csv_number(row.spread_cost) << ',' << csv_number(row.commission_cost)
            << ',' << csv_number(row.exchange_cost) << ','
            << csv_number(row.regulator_cost) << ',' << csv_number(row.financing_cost)
            << ',' << csv_number(row.net_pnl()) << '\n';
    }
}

} // namespace daysim
