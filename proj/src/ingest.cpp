#include "daysim/series.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace daysim {
namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return {};
    std::size_t end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(trim(current));
    return fields;
}

double parse_number(const std::string& field, std::size_t line_no, const char* name) {
    double value{};
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty())
        throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse " +
                                 name + " '" + field + "'");
    return value;
}

bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths{31, 28, 31, 30, 31, 30,
                                                 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return lengths[static_cast<std::size_t>(month - 1)];
}

} // namespace

void validate(const PriceSeries& series) {
    if (series.bars.empty())
        throw std::invalid_argument("series '" + series.symbol + "' has no bars");
    const Bar* prev = nullptr;
    for (const Bar& bar : series.bars) {
        if (!is_iso_date(bar.date))
            throw std::invalid_argument("bar date '" + bar.date + "' is not YYYY-MM-DD");
        if (!(bar.open > 0.0))
            throw std::invalid_argument("bar " + bar.date + ": open must be > 0");
        if (!(bar.close > 0.0))
            throw std::invalid_argument("bar " + bar.date + ": close must be > 0");
        if (bar.dividend < 0.0)
            throw std::invalid_argument("bar " + bar.date + ": dividend must be >= 0");
        if (bar.volume && *bar.volume < 0.0)
            throw std::invalid_argument("bar " + bar.date + ": volume must be >= 0");
        if (prev && !(prev->date < bar.date))
            throw std::invalid_argument("dates not strictly increasing at '" + bar.date + "'");
        prev = &bar;
    }
}

PriceSeries parse_ohlc_csv(std::istream& in, std::string_view symbol) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty input: missing header line");

    const std::vector<std::string> header = split_csv_line(std::move(line));
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t date_col = npos, open_col = npos, close_col = npos;
    std::size_t dividend_col = npos, volume_col = npos;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = lower(header[i]);
        auto assign = [&](std::size_t& slot) {
            if (slot != npos)
                throw std::runtime_error("duplicate column '" + name + "' in header");
            slot = i;
        };
        if (name == "date") assign(date_col);
        else if (name == "open") assign(open_col);
        else if (name == "close") assign(close_col);
        else if (name == "dividend") assign(dividend_col);
        else if (name == "volume") assign(volume_col);
        // anything else is a vendor extra and is ignored
    }
    if (date_col == npos) throw std::runtime_error("missing required column 'date'");
    if (open_col == npos) throw std::runtime_error("missing required column 'open'");
    if (close_col == npos) throw std::runtime_error("missing required column 'close'");

    PriceSeries series{std::string(symbol), {}};
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<std::string> fields = split_csv_line(std::move(line));
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != header.size())
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(header.size()) + " fields, got " +
                                     std::to_string(fields.size()));
        Bar bar;
        bar.date = fields[date_col];
        if (!is_iso_date(bar.date))
            throw std::runtime_error("line " + std::to_string(line_no) + ": date '" +
                                     bar.date + "' is not YYYY-MM-DD");
        bar.open = parse_number(fields[open_col], line_no, "open");
        if (!(bar.open > 0.0))
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": open must be > 0");
        bar.close = parse_number(fields[close_col], line_no, "close");
        if (!(bar.close > 0.0))
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": close must be > 0");
        if (dividend_col != npos && !fields[dividend_col].empty()) {
            bar.dividend = parse_number(fields[dividend_col], line_no, "dividend");
            if (bar.dividend < 0.0)
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": dividend must be >= 0");
        }
        if (volume_col != npos && !fields[volume_col].empty()) {
            const double volume = parse_number(fields[volume_col], line_no, "volume");
            if (volume < 0.0)
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": volume must be >= 0");
            bar.volume = volume;
        }
        series.bars.push_back(std::move(bar));
    }
    if (series.bars.empty()) throw std::runtime_error("no data rows");

    std::stable_sort(series.bars.begin(), series.bars.end(),
                     [](const Bar& a, const Bar& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < series.bars.size(); ++i)
        if (series.bars[i - 1].date == series.bars[i].date)
            throw std::runtime_error("duplicate date '" + series.bars[i].date + "'");

    validate(series);
    return series;
}

PriceSeries load_ohlc_csv(const std::filesystem::path& path, std::string_view symbol) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    return parse_ohlc_csv(in, symbol);
}

std::string csv_number(double value) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

void write_ohlc_csv(std::ostream& out, const PriceSeries& series) {
    const bool any_volume =
        std::any_of(series.bars.begin(), series.bars.end(),
                    [](const Bar& bar) { return bar.volume.has_value(); });
    out << "date,open,close,dividend";
    if (any_volume) out << ",volume";
    out << '\n';
    for (const Bar& bar : series.bars) {
        out << bar.date << ',' << csv_number(bar.open) << ',' << csv_number(bar.close)
            << ',' << csv_number(bar.dividend);
        if (any_volume) {
            out << ',';
            if (bar.volume) out << csv_number(*bar.volume);
        }
        out << '\n';
    }
}

void save_ohlc_csv(const std::filesystem::path& path, const PriceSeries& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    write_ohlc_csv(out, series);
}

std::string advance_date(const std::string& iso_date, long days) {
    if (!is_iso_date(iso_date))
        throw std::invalid_argument("date '" + iso_date + "' is not YYYY-MM-DD");
    int year = std::stoi(iso_date.substr(0, 4));
    int month = std::stoi(iso_date.substr(5, 2));
    int day = std::stoi(iso_date.substr(8, 2));
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
        throw std::invalid_argument("date '" + iso_date + "' is not a calendar date");

    for (; days > 0; --days) {
        if (++day > days_in_month(year, month)) {
            day = 1;
            if (++month > 12) {
                month = 1;
                ++year;
            }
        }
    }
    for (; days < 0; ++days) {
        if (--day < 1) {
            if (--month < 1) {
                month = 12;
                --year;
            }
            day = days_in_month(year, month);
        }
    }

    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d", year, month, day);
    return buffer;
}

} // namespace daysim
