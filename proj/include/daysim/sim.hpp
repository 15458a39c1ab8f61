#pragma once

#include "daysim/accounting.hpp"
#include "daysim/impact.hpp"
#include "daysim/rng.hpp"
#include "daysim/series.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace daysim {

struct AssetConfig {
    std::string symbol = "SIM0";
    double initial_price = 100.0;
    double typical_daily_volume = 1e6;  // shares
    LiquidityProfile profile;
    double permanent_fraction = 0.5;
    double decay_rate = 5.0;

    void validate() const;
};

struct StrategyLeg {
    int asset = 0;
    double target_value = 0.0;  // signed currency value of the standing leg
};

struct StrategyConfig {
    bool enabled = false;
    std::vector<StrategyLeg> legs;      // values must net to ~zero across legs
    double round_trip_fraction = 0.01;  // of typical daily volume, per side, <= 0.05
    double morning_time = 0.1;          // in [0, 0.5)
    double afternoon_time = 0.9;        // in (0.5, 1]
    double jitter = 0.0;                // relative sd applied to trade size and time
    long rotation_period = 0;           // days between leg rotations; 0 disables

    void validate(std::size_t n_assets) const;
};

struct ArbitrageurConfig {
    bool enabled = false;
    long lookback = 20;      // days of history behind the drift estimate
    double threshold = 0.01; // price units required beyond the round-trip cost
    double fraction = 0.01;  // of typical daily volume per order

    void validate() const;
};

struct NoiseConfig {
    double intensity = 0.0;     // expected orders per asset per day
    double size_scale = 1000.0; // shares; order sizes are size_scale * N(0,1)

    void validate() const;
};

// Execution priority for simultaneous orders: noise, then strategy, then
// arbitrageur.
enum class AgentKind { noise = 0, strategy = 1, arbitrageur = 2 };
inline constexpr std::size_t kAgentCount = 3;

struct Order {
    double u = 0.0;  // intraday time
    AgentKind agent = AgentKind::noise;
    int asset = 0;
    double qty = 0.0;  // signed shares
};

struct SimConfig {
    long days = 250;
    std::uint64_t seed = 1;
    std::string start_date = "2000-01-03";
    double tick_floor = 0.01;
    double fundamental_volatility = 0.0;         // daily log-vol of the fundamental walk
    double overnight_transient_retention = 0.0;  // transient multiplier across the night
    std::vector<AssetConfig> assets{AssetConfig{}};
    StrategyConfig strategy;
    ArbitrageurConfig arbitrageur;
    NoiseConfig noise;
    FeeSchedule fees;
    double financing_rate = 0.0;

    void validate() const;  // throws std::invalid_argument naming the field
};

// Live state of one asset: an exogenous fundamental midprice plus impact
// displacement kept per agent class, so every price move can be attributed
// to whoever caused it.
struct AssetState {
    double fundamental = 100.0;
    LiquidityProfile profile;
    double typical_daily_volume = 1e6;
    std::array<ImpactState, kAgentCount> impact{};  // indexed by AgentKind

    double displacement() const;
    double displacement_of(AgentKind kind) const;
};

struct MarketState {
    std::vector<AssetState> assets;
    double tick_floor = 0.01;

    // fundamental + total displacement, floored at the tick
    double observed_mid(std::size_t asset) const;
};

// Per-agent slice of one day's record; every vector is indexed by asset.
struct AgentDay {
    std::vector<double> net_qty;
    std::vector<double> cash_flow;           // at fill mids, sign opposite the qty
    std::vector<double> open_displacement;   // this agent's carried mid displacement at the open
    std::vector<double> close_displacement;  // and at the close

    bool operator==(const AgentDay&) const = default;
};

struct DayRecord {
    long day = 0;
    std::string date;
    std::vector<double> open;   // observed mid at u=0, before any trade
    std::vector<double> close;  // observed mid at u=1, after all trades and decay
    std::array<AgentDay, kAgentCount> agents;

    bool operator==(const DayRecord&) const = default;
};

// Zero-mean background order flow at uniformly random intraday times.
std::vector<Order> noise_plan(const NoiseConfig& cfg, const MarketState& market, Rng& rng);

// Emits an open/close order pair against any asset whose recent open-to-close
// drift exceeds the round trip's cost (both spread crossings at the open)
// plus the threshold; strict inequality, sized at fraction * typical volume.
std::vector<Order> arbitrageur_plan(const ArbitrageurConfig& cfg, const MarketState& market,
                                    std::span<const DayRecord> history);

// The round-trip trader: expands every leg in its held direction in the
// morning and unwinds it in the afternoon. On rotation days one leg starts
// migrating to a spare asset, throttled so the agent's total daily traded
// quantity per asset stays within 5% of typical daily volume.
class StrategyAgent {
public:
    StrategyAgent(const StrategyConfig& cfg, const MarketState& market);

    struct DayPlan {
        std::vector<Order> morning;
        std::vector<Order> afternoon;
    };
    DayPlan plan_day(const MarketState& market, long day, Rng& rng);

    void on_fill(int asset, double qty);

    struct LegState {
        int asset = 0;
        double target_value = 0.0;
        bool migrating = false;
        int migrate_from = -1;
    };
    const std::vector<LegState>& legs() const { return legs_; }
    double position(int asset) const { return positions_.at(static_cast<std::size_t>(asset)); }

    static constexpr double kVolumeCap = 0.05;  // of typical daily volume, per asset per day

private:
    int pick_replacement() const;

    StrategyConfig cfg_;
    std::vector<LegState> legs_;
    std::vector<double> positions_;  // per asset, shares
    long rotations_done_ = 0;
    int rotation_cursor_ = 0;
};

struct SimResult {
    std::vector<PriceSeries> series;  // one per asset
    Ledger ledger;                    // the strategy agent's books
    std::vector<DayRecord> days;
    Portfolio portfolio;              // strategy book after the last day
};

// One simulation run. Owns all state; strictly sequential within a run, and
// independent runs are safe to execute concurrently.
class Simulation {
public:
    Simulation(SimConfig cfg, std::uint64_t seed);

    DayRecord step();  // one trading day plus the overnight transition
    SimResult run();   // steps through cfg.days and packages the outputs

    const MarketState& market() const { return market_; }
    const Portfolio& portfolio() const { return portfolio_; }
    const Ledger& ledger() const { return ledger_; }
    const std::vector<DayRecord>& history() const { return history_; }

private:
    void decay_all(double dt);

    SimConfig cfg_;
    MarketState market_;
    Rng rng_;
    std::optional<StrategyAgent> strategy_;
    Portfolio portfolio_;
    Ledger ledger_;
    std::vector<DayRecord> history_;
    std::vector<std::vector<Bar>> bars_;  // per asset
    PriceMap last_marks_;                 // previous close, or today's open on day 0
    long day_ = 0;
    std::string date_;

    friend SimResult run_sim(const SimConfig&, std::uint64_t);
};

// Validates the whole config before day 1, then runs it to completion.
// Identical (config, seed) pairs produce identical results.
SimResult run_sim(const SimConfig& cfg, std::uint64_t seed);

} // namespace daysim
