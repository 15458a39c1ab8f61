#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace daysim {

// One trading day of a single symbol. The dividend is the cash paid per
// share to holders over the night ending at this bar's open (ex-dividend at
// the open), so it belongs to the close-to-open leg of a return split.
struct Bar {
    std::string date;  // ISO-8601 YYYY-MM-DD; ordering is lexicographic
    double open = 0.0;
    double close = 0.0;
    double dividend = 0.0;
    std::optional<double> volume;  // shares traded, when the source reports it

    bool operator==(const Bar&) const = default;
};

struct PriceSeries {
    std::string symbol;
    std::vector<Bar> bars;  // strictly increasing dates, at least one bar

    bool operator==(const PriceSeries&) const = default;
};

// Throws std::invalid_argument on any broken invariant: non-positive price,
// negative dividend or volume, malformed or non-increasing dates, empty
// series.
void validate(const PriceSeries& series);

// Parses a header-plus-rows CSV. Required columns: date, open, close.
// Optional: dividend (empty or missing column means zero) and volume. Column
// order is free, header matching is case-insensitive, unknown columns are
// ignored. Rows may arrive in any order; the result is sorted by date.
// Throws std::runtime_error naming the offending line, field, or date.
PriceSeries parse_ohlc_csv(std::istream& in, std::string_view symbol);
PriceSeries load_ohlc_csv(const std::filesystem::path& path, std::string_view symbol);

// Writes the same format back out. Numbers are printed with shortest
// round-trip precision, so write -> parse reproduces the series exactly.
void write_ohlc_csv(std::ostream& out, const PriceSeries& series);
void save_ohlc_csv(const std::filesystem::path& path, const PriceSeries& series);

// Shortest decimal representation that parses back to the same double.
std::string csv_number(double value);

// Gregorian date arithmetic on YYYY-MM-DD labels (days may be negative).
std::string advance_date(const std::string& iso_date, long days);

} // namespace daysim
