#include "daysim/decompose.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace daysim {
namespace {

void require_pairs(const PriceSeries& series, std::size_t min_bars) {
    if (series.bars.size() < min_bars)
        throw std::invalid_argument("series '" + series.symbol + "' needs at least " +
                                    std::to_string(min_bars) + " bars");
}

double sample_variance(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double sum_sq = 0.0;
    for (double v : values) sum_sq += (v - mean) * (v - mean);
    return sum_sq / (n - 1.0);
}

} // namespace

std::vector<double> overnight_returns(const PriceSeries& series, bool include_dividends) {
    require_pairs(series, 2);
    std::vector<double> returns;
    returns.reserve(series.bars.size() - 1);
    for (std::size_t k = 0; k + 1 < series.bars.size(); ++k) {
        const Bar& next = series.bars[k + 1];
        const double received = next.open + (include_dividends ? next.dividend : 0.0);
        returns.push_back(received / series.bars[k].close - 1.0);
    }
    return returns;
}

std::vector<double> intraday_returns(const PriceSeries& series) {
    require_pairs(series, 2);
    std::vector<double> returns;
    returns.reserve(series.bars.size() - 1);
    // day 0's open->close move is dropped so this pairs one-to-one with
    // overnight_returns, starting at the first close->open night
    for (std::size_t k = 1; k < series.bars.size(); ++k)
        returns.push_back(series.bars[k].close / series.bars[k].open - 1.0);
    return returns;
}

std::vector<double> cumulate(std::span<const double> simple_returns) {
    std::vector<double> factors;
    factors.reserve(simple_returns.size());
    double gross = 1.0;
    for (std::size_t k = 0; k < simple_returns.size(); ++k) {
        if (!(simple_returns[k] > -1.0))
            throw std::invalid_argument("return at index " + std::to_string(k) +
                                        " is <= -100%");
        gross *= 1.0 + simple_returns[k];
        factors.push_back(gross);
    }
    return factors;
}

DecompositionResult decompose(const PriceSeries& series, bool include_dividends) {
    DecompositionResult result;
    result.cumulative_overnight = cumulate(overnight_returns(series, include_dividends));
    result.cumulative_intraday = cumulate(intraday_returns(series));
    result.dates.reserve(series.bars.size() - 1);
    for (std::size_t k = 1; k < series.bars.size(); ++k)
        result.dates.push_back(series.bars[k].date);
    result.final_overnight_pct = (result.cumulative_overnight.back() - 1.0) * 100.0;
    result.final_intraday_pct = (result.cumulative_intraday.back() - 1.0) * 100.0;
    return result;
}

void write_decomposition_csv(std::ostream& out, const DecompositionResult& result) {
    out << "date,cum_overnight,cum_intraday\n";
    for (std::size_t k = 0; k < result.dates.size(); ++k)
        out << result.dates[k] << ',' << csv_number(result.cumulative_overnight[k])
            << ',' << csv_number(result.cumulative_intraday[k]) << '\n';
}

VarianceShares variance_shares(const PriceSeries& series) {
    require_pairs(series, 3);
    std::vector<double> overnight = overnight_returns(series, false);
    std::vector<double> intraday = intraday_returns(series);
    for (double& r : overnight) r = std::log1p(r);
    for (double& r : intraday) r = std::log1p(r);

    const double intraday_var = sample_variance(intraday);
    const double overnight_var = sample_variance(overnight);
    const double total = intraday_var + overnight_var;
    if (!(total > 0.0))
        throw std::domain_error("total variance is zero; shares undefined");

    VarianceShares shares;
    shares.intraday_share = intraday_var / total;
    shares.overnight_share = 1.0 - shares.intraday_share;
    return shares;
}

} // namespace daysim
