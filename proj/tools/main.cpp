#include "daysim/config.hpp"
#include "daysim/decompose.hpp"
#include "daysim/series.hpp"
#include "daysim/sim.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct SeedRange {
    std::uint64_t first = 0;
    std::uint64_t last = 0;
};

SeedRange parse_seed_range(const std::string& text) {
    const std::size_t sep = text.find("..");
    if (sep == std::string::npos)
        throw std::invalid_argument("--seeds expects a range like 1..8");
    SeedRange range;
    try {
        std::size_t used = 0;
        range.first = std::stoull(text.substr(0, sep), &used);
        if (used != sep) throw std::invalid_argument("");
        const std::string rest = text.substr(sep + 2);
        range.last = std::stoull(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("--seeds expects a range like 1..8, got '" + text +
                                    "'");
    }
    if (range.last < range.first)
        throw std::invalid_argument("--seeds range must be non-decreasing");
    return range;
}

void write_outputs(const daysim::SimResult& result, const fs::path& dir) {
    fs::create_directories(dir);
    for (const daysim::PriceSeries& series : result.series)
        daysim::save_ohlc_csv(dir / (series.symbol + ".csv"), series);
    std::ofstream ledger(dir / "ledger.csv");
    if (!ledger)
        throw std::runtime_error("cannot open file for writing: " +
                                 (dir / "ledger.csv").string());
    result.ledger.write_csv(ledger);
}

int run_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 const std::string& seeds, const std::string& out_override) {
    daysim::RunConfig config = daysim::load_run_config(config_path);
    const fs::path out_dir = out_override.empty() ? fs::path(config.output_dir)
                                                  : fs::path(out_override);

    if (seeds.empty()) {
        const std::uint64_t run_seed = seed.value_or(config.sim.seed);
        write_outputs(daysim::run_sim(config.sim, run_seed), out_dir);
        std::cout << "simulated " << config.sim.days << " days, seed " << run_seed
                  << ", outputs in " << out_dir.string() << "\n";
        return 0;
    }

    // seed sweep: independent runs, each writing its own subdirectory
    const SeedRange range = parse_seed_range(seeds);
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> pending;
    for (std::uint64_t s = range.first; s <= range.last; ++s) {
        pending.push_back(std::async(std::launch::async, [&config, out_dir, s] {
            write_outputs(daysim::run_sim(config.sim, s),
                          out_dir / ("seed-" + std::to_string(s)));
        }));
        if (pending.size() >= workers) {
            for (auto& f : pending) f.get();
            pending.clear();
        }
    }
    for (auto& f : pending) f.get();
    std::cout << "simulated seeds " << range.first << ".." << range.last
              << ", outputs in " << out_dir.string() << "\n";
    return 0;
}

int run_decompose(const std::string& input, bool dividends, const std::string& output,
                  const std::string& symbol) {
    const daysim::PriceSeries series = daysim::load_ohlc_csv(input, symbol);
    const daysim::DecompositionResult result = daysim::decompose(series, dividends);

    const fs::path out_path =
        output.empty() ? fs::path(input).replace_extension(".decomposition.csv")
                       : fs::path(output);
    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot open file for writing: " + out_path.string());
    daysim::write_decomposition_csv(out, result);

    std::printf("%s: cumulative overnight %+.2f%%, cumulative intraday %+.2f%% (%zu days%s)\n",
                series.symbol.c_str(), result.final_overnight_pct,
                result.final_intraday_pct, result.dates.size(),
                dividends ? ", dividends reinvested" : "");
    std::cout << "decomposition written to " << out_path.string() << "\n";
    return 0;
}

int run_breakeven(double nudge, double daily_cost) {
    const double size = daysim::breakeven_size(nudge, daily_cost);
    std::cout << "break-even portfolio value: " << daysim::csv_number(size) << "\n";
    return 0;
}

int run_variance(const std::string& input, const std::string& symbol) {
    const daysim::PriceSeries series = daysim::load_ohlc_csv(input, symbol);
    const daysim::VarianceShares shares = daysim::variance_shares(series);
    std::printf("%s: intraday variance share %.4f, overnight variance share %.4f\n",
                series.symbol.c_str(), shares.intraday_share, shares.overnight_share);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"daysim: intraday market simulator and overnight/intraday return "
                 "decomposition"};
    app.require_subcommand(1);

    std::string config_path, seeds, out_override;
    std::optional<std::uint64_t> seed;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "run the market simulation from a JSON config");
    simulate->add_option("--config", config_path, "experiment config file")->required();
    simulate->add_option("--seed", seed, "override the config seed");
    simulate->add_option("--seeds", seeds, "seed sweep, e.g. 1..8");
    simulate->add_option("--out", out_override, "override the output directory");

    std::string dec_input, dec_output, dec_symbol = "SERIES";
    bool dividends = false;
    CLI::App* decompose = app.add_subcommand(
        "decompose", "split a daily OHLC CSV into cumulative overnight/intraday curves");
    decompose->add_option("--input", dec_input, "OHLC CSV file")->required();
    decompose->add_flag("--dividends", dividends, "reinvest dividends in the overnight leg");
    decompose->add_option("--output", dec_output, "decomposition CSV path");
    decompose->add_option("--symbol", dec_symbol, "label for the series");

    double nudge = 0.0, daily_cost = 0.0;
    CLI::App* breakeven = app.add_subcommand(
        "breakeven", "portfolio value where the daily gain covers the daily cost");
    breakeven->add_option("--nudge", nudge, "daily fractional price nudge")->required();
    breakeven->add_option("--daily-cost", daily_cost, "daily round-trip trading cost")
        ->required();

    std::string var_input, var_symbol = "SERIES";
    CLI::App* variance = app.add_subcommand(
        "variance", "intraday vs overnight shares of daily log-return variance");
    variance->add_option("--input", var_input, "OHLC CSV file")->required();
    variance->add_option("--symbol", var_symbol, "label for the series");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed())
            return run_simulate(config_path, seed, seeds, out_override);
        if (decompose->parsed())
            return run_decompose(dec_input, dividends, dec_output, dec_symbol);
        if (breakeven->parsed()) return run_breakeven(nudge, daily_cost);
        if (variance->parsed()) return run_variance(var_input, var_symbol);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
