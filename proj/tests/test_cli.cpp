#include "daysim/series.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

// end-to-end checks against the real binary; the path arrives via the
// DAYSIM_CLI environment variable set by ctest
const char* cli_path() { return std::getenv("DAYSIM_CLI"); }

int run_cli(const std::string& args, std::string* output = nullptr) {
    const std::string command = std::string(cli_path()) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string captured;
    char buffer[512];
    while (std::fgets(buffer, sizeof(buffer), pipe)) captured += buffer;
    const int status = pclose(pipe);
    if (output) *output = captured;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag)
        : path(fs::temp_directory_path() / (std::string("daysim_") + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const char* kSimConfig = R"json({
  "days": 10,
  "seed": 4,
  "assets": [
    {"symbol": "LNG", "profile": {"half_spread_open": 0.10, "half_spread_close": 0.03,
     "depth_open": 2e5, "depth_close": 3e5, "shape": 2.0}, "decay_rate": 8.0},
    {"symbol": "SHT", "profile": {"half_spread_open": 0.10, "half_spread_close": 0.03,
     "depth_open": 2e5, "depth_close": 3e5, "shape": 2.0}, "decay_rate": 8.0}
  ],
  "strategy": {"enabled": true, "round_trip_fraction": 0.005,
               "legs": [{"asset": 0, "target_value": 5e7},
                        {"asset": 1, "target_value": -5e7}],
               "morning_time": 0.05, "afternoon_time": 0.95},
  "noise": {"intensity": 6.0, "size_scale": 500.0}
})json";

} // namespace

TEST_CASE("cli end-to-end" * doctest::skip(cli_path() == nullptr)) {
    REQUIRE(cli_path() != nullptr);

    SUBCASE("breakeven prints the threshold") {
        std::string output;
        CHECK(run_cli("breakeven --nudge 0.0004 --daily-cost 400000", &output) == 0);
        CHECK(output.find("1e+09") != std::string::npos);
    }

    SUBCASE("decompose reports the split and writes the curve file") {
        TempDir dir("decompose");
        const fs::path input = dir.path / "two_day.csv";
        write_file(input, "date,open,close\n2000-01-03,100,100\n2000-01-04,101,101\n");
        std::string output;
        CHECK(run_cli("decompose --input " + input.string() + " --dividends --symbol DEMO",
                      &output) == 0);
        CHECK(output.find("+1.00%") != std::string::npos);
        CHECK(output.find("+0.00%") != std::string::npos);
        const fs::path curve = dir.path / "two_day.decomposition.csv";
        REQUIRE(fs::exists(curve));
        CHECK(slurp(curve) == "date,cum_overnight,cum_intraday\n2000-01-04,1.01,1\n");
    }

    SUBCASE("variance prints both shares") {
        TempDir dir("variance");
        const fs::path input = dir.path / "series.csv";
        write_file(input, "date,open,close\n"
                          "2000-01-03,100,101\n2000-01-04,100,99\n2000-01-05,101,102\n");
        std::string output;
        CHECK(run_cli("variance --input " + input.string(), &output) == 0);
        CHECK(output.find("intraday variance share") != std::string::npos);
        CHECK(output.find("overnight variance share") != std::string::npos);
    }

    SUBCASE("simulate twice is byte-identical and re-ingests cleanly") {
        TempDir dir("simulate");
        const fs::path config = dir.path / "experiment.json";
        write_file(config, kSimConfig);
        const std::string base = "simulate --config " + config.string() + " --out ";
        CHECK(run_cli(base + (dir.path / "run1").string()) == 0);
        CHECK(run_cli(base + (dir.path / "run2").string()) == 0);

        for (const char* name : {"LNG.csv", "SHT.csv", "ledger.csv"}) {
            const std::string first = slurp(dir.path / "run1" / name);
            CHECK(first == slurp(dir.path / "run2" / name));
            CHECK(!first.empty());
        }
        // closure: simulator output flows back through the ingest path
        const daysim::PriceSeries series =
            daysim::load_ohlc_csv(dir.path / "run1" / "LNG.csv", "LNG");
        CHECK(series.bars.size() == 10);

        SUBCASE("an explicit seed overrides the config") {
            CHECK(run_cli(base + (dir.path / "run3").string() + " --seed 5") == 0);
            CHECK(slurp(dir.path / "run3" / "LNG.csv") !=
                  slurp(dir.path / "run1" / "LNG.csv"));
        }
    }

    SUBCASE("a seed sweep writes one directory per seed") {
        TempDir dir("sweep");
        const fs::path config = dir.path / "experiment.json";
        write_file(config, kSimConfig);
        CHECK(run_cli("simulate --config " + config.string() + " --seeds 1..3 --out " +
                      (dir.path / "sweep").string()) == 0);
        for (int seed = 1; seed <= 3; ++seed)
            CHECK(fs::exists(dir.path / "sweep" / ("seed-" + std::to_string(seed)) /
                             "LNG.csv"));
    }

    SUBCASE("a rejected config produces no output files") {
        TempDir dir("reject");
        const fs::path config = dir.path / "bad.json";
        write_file(config, R"({"days": 0})");
        std::string output;
        CHECK(run_cli("simulate --config " + config.string() + " --out " +
                          (dir.path / "never").string(),
                      &output) != 0);
        CHECK(output.find("days must be >= 1") != std::string::npos);
        CHECK_FALSE(fs::exists(dir.path / "never"));
    }

    SUBCASE("unknown flags fail loudly") {
        std::string output;
        CHECK(run_cli("decompose --input x.csv --frobnicate", &output) != 0);
    }

    SUBCASE("unreadable input files are named") {
        std::string output;
        CHECK(run_cli("decompose --input /nonexistent/prices.csv", &output) != 0);
        CHECK(output.find("cannot open file") != std::string::npos);
    }
}
