#include "daysim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace daysim {

namespace {

constexpr double kShareEps = 1e-9;

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

} // namespace

void AssetConfig::validate() const {
    require(!symbol.empty(), "asset symbol must be non-empty");
    require(initial_price > 0.0 && std::isfinite(initial_price),
            "initial_price must be > 0");
    require(typical_daily_volume > 0.0 && std::isfinite(typical_daily_volume),
            "typical_daily_volume must be > 0");
    profile.validate();
    ImpactState probe;
    probe.decay_rate = decay_rate;
    probe.permanent_fraction = permanent_fraction;
    probe.validate();
}

void StrategyConfig::validate(std::size_t n_assets) const {
    require(legs.size() >= 2, "strategy needs at least 2 legs for a long/short book");
    std::set<int> seen;
    double net = 0.0, gross = 0.0;
    for (const StrategyLeg& leg : legs) {
        require(leg.asset >= 0 && static_cast<std::size_t>(leg.asset) < n_assets,
                "strategy leg references an unknown asset");
        require(seen.insert(leg.asset).second, "strategy legs must use distinct assets");
        require(leg.target_value != 0.0 && std::isfinite(leg.target_value),
                "strategy leg target_value must be nonzero");
        net += leg.target_value;
        gross += std::abs(leg.target_value);
    }
    require(std::abs(net) <= 0.01 * gross,
            "strategy legs must be market-neutral: values must net to ~zero");
    require(round_trip_fraction > 0.0 && round_trip_fraction <= 0.05,
            "round_trip_fraction must be in (0, 0.05]");
    require(morning_time >= 0.0 && morning_time < 0.5, "morning_time must be in [0, 0.5)");
    require(afternoon_time > 0.5 && afternoon_time <= 1.0,
            "afternoon_time must be in (0.5, 1]");
    require(jitter >= 0.0 && std::isfinite(jitter), "jitter must be >= 0");
    require(rotation_period >= 0, "rotation_period must be >= 0");
    if (rotation_period > 0)
        require(n_assets > legs.size(), "rotation needs a spare asset to rotate into");
}

void ArbitrageurConfig::validate() const {
    require(lookback >= 1, "arbitrageur lookback must be >= 1");
    require(threshold >= 0.0 && std::isfinite(threshold),
            "arbitrageur threshold must be >= 0");
    require(fraction > 0.0 && fraction <= 1.0, "arbitrageur fraction must be in (0, 1]");
}

void NoiseConfig::validate() const {
    require(intensity >= 0.0 && std::isfinite(intensity), "noise intensity must be >= 0");
    require(size_scale >= 0.0 && std::isfinite(size_scale), "noise size_scale must be >= 0");
}

void SimConfig::validate() const {
    require(days >= 1, "days must be >= 1");
    require(tick_floor > 0.0 && std::isfinite(tick_floor), "tick_floor must be > 0");
    require(fundamental_volatility >= 0.0 && std::isfinite(fundamental_volatility),
            "fundamental_volatility must be >= 0");
    require(overnight_transient_retention >= 0.0 && overnight_transient_retention <= 1.0,
            "overnight_transient_retention must be in [0, 1]");
    require(!assets.empty(), "at least one asset is required");
    std::set<std::string> symbols;
    for (const AssetConfig& asset : assets) {
        asset.validate();
        require(symbols.insert(asset.symbol).second, "asset symbols must be distinct");
    }
    if (strategy.enabled) strategy.validate(assets.size());
    arbitrageur.validate();
    noise.validate();
    fees.validate();
    require(financing_rate >= 0.0 && std::isfinite(financing_rate),
            "financing_rate must be >= 0");
    advance_date(start_date, 0);  // rejects malformed start dates
}

double AssetState::displacement() const {
    double total = 0.0;
    for (const ImpactState& component : impact) total += mid_displacement(component);
    return total;
}

double AssetState::displacement_of(AgentKind kind) const {
    return mid_displacement(impact[static_cast<std::size_t>(kind)]);
}

double MarketState::observed_mid(std::size_t asset) const {
    const AssetState& state = assets[asset];
    return std::max(state.fundamental + state.displacement(), tick_floor);
}

std::vector<Order> noise_plan(const NoiseConfig& cfg, const MarketState& market, Rng& rng) {
    std::vector<Order> orders;
    if (cfg.intensity <= 0.0) return orders;
    for (std::size_t i = 0; i < market.assets.size(); ++i) {
        const long count = rng.poisson(cfg.intensity);
        for (long j = 0; j < count; ++j) {
            const double u = rng.uniform();
            const double qty = cfg.size_scale * rng.gaussian();
            orders.push_back({u, AgentKind::noise, static_cast<int>(i), qty});
        }
    }
    return orders;
}

std::vector<Order> arbitrageur_plan(const ArbitrageurConfig& cfg, const MarketState& market,
                                    std::span<const DayRecord> history) {
    std::vector<Order> orders;
    if (!cfg.enabled) return orders;
    const std::size_t lookback = static_cast<std::size_t>(cfg.lookback);
    if (history.size() < lookback) return orders;

    for (std::size_t i = 0; i < market.assets.size(); ++i) {
        double drift = 0.0;  // mean open-to-close move, price units
        for (std::size_t k = history.size() - lookback; k < history.size(); ++k)
            drift += history[k].close[i] - history[k].open[i];
        drift /= static_cast<double>(lookback);

        const AssetState& asset = market.assets[i];
        const double cost = 2.0 * half_spread_at(asset.profile, 0.0);
        const double qty = cfg.fraction * asset.typical_daily_volume;
        if (-drift > cost + cfg.threshold) {
            // prices fade from open to close: sell the open, buy the close back
            orders.push_back({0.0, AgentKind::arbitrageur, static_cast<int>(i), -qty});
            orders.push_back({1.0, AgentKind::arbitrageur, static_cast<int>(i), qty});
        } else if (drift > cost + cfg.threshold) {
            orders.push_back({0.0, AgentKind::arbitrageur, static_cast<int>(i), qty});
            orders.push_back({1.0, AgentKind::arbitrageur, static_cast<int>(i), -qty});
        }
    }
    return orders;
}

StrategyAgent::StrategyAgent(const StrategyConfig& cfg, const MarketState& market)
    : cfg_(cfg), positions_(market.assets.size(), 0.0) {
    cfg_.validate(market.assets.size());
    legs_.reserve(cfg_.legs.size());
    for (const StrategyLeg& leg : cfg_.legs) {
        legs_.push_back({leg.asset, leg.target_value, false, -1});
        positions_[static_cast<std::size_t>(leg.asset)] =
            leg.target_value / market.observed_mid(static_cast<std::size_t>(leg.asset));
    }
}

int StrategyAgent::pick_replacement() const {
    std::set<int> occupied;
    for (const LegState& leg : legs_) {
        occupied.insert(leg.asset);
        if (leg.migrating) occupied.insert(leg.migrate_from);
    }
    const int n = static_cast<int>(positions_.size());
    for (int offset = 0; offset < n; ++offset) {
        const int candidate = (rotation_cursor_ + offset) % n;
        if (!occupied.contains(candidate)) return candidate;
    }
    return -1;
}

StrategyAgent::DayPlan StrategyAgent::plan_day(const MarketState& market, long day,
                                               Rng& rng) {
    DayPlan plan;

    if (cfg_.rotation_period > 0 && day > 0 && day % cfg_.rotation_period == 0) {
        LegState& leg = legs_[static_cast<std::size_t>(rotations_done_) % legs_.size()];
        if (!leg.migrating) {
            const int replacement = pick_replacement();
            if (replacement >= 0) {
                leg.migrate_from = leg.asset;
                leg.migrating = true;
                leg.asset = replacement;
                rotation_cursor_ = (replacement + 1) % static_cast<int>(positions_.size());
            }
        }
        ++rotations_done_;
    }

    std::vector<double> used(positions_.size(), 0.0);  // shares planned today, per asset

    for (const LegState& leg : legs_) {
        const std::size_t asset = static_cast<std::size_t>(leg.asset);
        const AssetState& state = market.assets[asset];
        const double direction = leg.target_value >= 0.0 ? 1.0 : -1.0;
        double size_m = cfg_.round_trip_fraction * state.typical_daily_volume;
        double size_a = size_m;
        double u_m = cfg_.morning_time;
        double u_a = cfg_.afternoon_time;
        if (cfg_.jitter > 0.0) {
            size_m *= std::max(0.0, 1.0 + cfg_.jitter * rng.gaussian());
            u_m = std::clamp(u_m * (1.0 + cfg_.jitter * rng.gaussian()), 0.0, 0.5 - 1e-9);
            size_a = size_m * std::max(0.0, 1.0 + cfg_.jitter * rng.gaussian());
            u_a = std::clamp(u_a * (1.0 + cfg_.jitter * rng.gaussian()), 0.5 + 1e-9, 1.0);
        }
        const double budget = kVolumeCap * state.typical_daily_volume;
        const double total = size_m + size_a;
        if (total > budget) {
            const double scale = budget / total;
            size_m *= scale;
            size_a *= scale;
        }
        used[asset] += size_m + size_a;
        plan.morning.push_back({u_m, AgentKind::strategy, leg.asset, direction * size_m});
        plan.afternoon.push_back({u_a, AgentKind::strategy, leg.asset, -direction * size_a});
    }

    // Migrations run beside the round trips, throttled by whatever volume
    // budget the round trips left on the two assets involved.
    for (LegState& leg : legs_) {
        if (!leg.migrating) continue;
        const std::size_t from = static_cast<std::size_t>(leg.migrate_from);
        const std::size_t to = static_cast<std::size_t>(leg.asset);

        const double residual = positions_[from];
        if (std::abs(residual) > kShareEps) {
            const double budget =
                kVolumeCap * market.assets[from].typical_daily_volume - used[from];
            const double qty =
                -std::copysign(std::min(std::abs(residual), std::max(budget, 0.0)), residual);
            if (std::abs(qty) > kShareEps) {
                used[from] += std::abs(qty);
                plan.morning.push_back(
                    {cfg_.morning_time, AgentKind::strategy, leg.migrate_from, qty});
            }
        }

        const double target_shares = leg.target_value / market.observed_mid(to);
        const double gap = target_shares - positions_[to];
        const double gap_value = std::abs(gap) * market.observed_mid(to);
        if (gap_value > 1e-6 * std::abs(leg.target_value)) {
            const double budget =
                kVolumeCap * market.assets[to].typical_daily_volume - used[to];
            const double qty = std::copysign(std::min(std::abs(gap), std::max(budget, 0.0)), gap);
            if (std::abs(qty) > kShareEps) {
                used[to] += std::abs(qty);
                plan.morning.push_back({cfg_.morning_time, AgentKind::strategy, leg.asset, qty});
            }
        } else if (std::abs(residual) <= kShareEps) {
            leg.migrating = false;
            leg.migrate_from = -1;
        }
    }

    return plan;
}

void StrategyAgent::on_fill(int asset, double qty) {
    positions_[static_cast<std::size_t>(asset)] += qty;
}

Simulation::Simulation(SimConfig cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)), rng_(seed) {
    cfg_.seed = seed;
    cfg_.validate();

    market_.tick_floor = cfg_.tick_floor;
    market_.assets.reserve(cfg_.assets.size());
    for (const AssetConfig& asset : cfg_.assets) {
        AssetState state;
        state.fundamental = asset.initial_price;
        state.profile = asset.profile;
        state.typical_daily_volume = asset.typical_daily_volume;
        for (ImpactState& component : state.impact) {
            component.decay_rate = asset.decay_rate;
            component.permanent_fraction = asset.permanent_fraction;
        }
        market_.assets.push_back(state);
    }

    portfolio_.financing_rate = cfg_.financing_rate;
    if (cfg_.strategy.enabled) {
        strategy_.emplace(cfg_.strategy, market_);
        // the standing book predates the run: acquired at the initial marks,
        // off-market, with no impact or trading costs
        for (std::size_t i = 0; i < market_.assets.size(); ++i) {
            const double shares = strategy_->position(static_cast<int>(i));
            if (shares == 0.0) continue;
            portfolio_.positions[cfg_.assets[i].symbol] = shares;
            portfolio_.cash -= shares * market_.observed_mid(i);
        }
    }

    bars_.resize(cfg_.assets.size());
    date_ = cfg_.start_date;
}

void Simulation::decay_all(double dt) {
    if (dt <= 0.0) return;
    for (AssetState& asset : market_.assets)
        for (ImpactState& component : asset.impact) component = decay(component, dt);
}

DayRecord Simulation::step() {
    const std::size_t n = market_.assets.size();
    DayRecord rec;
    rec.day = day_;
    rec.date = date_;
    rec.open.resize(n);
    rec.close.resize(n);
    for (AgentDay& slice : rec.agents) {
        slice.net_qty.assign(n, 0.0);
        slice.cash_flow.assign(n, 0.0);
        slice.open_displacement.assign(n, 0.0);
        slice.close_displacement.assign(n, 0.0);
    }

    // plan phase; draw order is fixed: strategy, then noise
    std::vector<Order> orders;
    if (strategy_) {
        StrategyAgent::DayPlan plan = strategy_->plan_day(market_, day_, rng_);
        orders.insert(orders.end(), plan.morning.begin(), plan.morning.end());
        orders.insert(orders.end(), plan.afternoon.begin(), plan.afternoon.end());
    }
    {
        std::vector<Order> arb = arbitrageur_plan(cfg_.arbitrageur, market_, history_);
        orders.insert(orders.end(), arb.begin(), arb.end());
    }
    {
        std::vector<Order> noise = noise_plan(cfg_.noise, market_, rng_);
        orders.insert(orders.end(), noise.begin(), noise.end());
    }
    std::stable_sort(orders.begin(), orders.end(), [](const Order& a, const Order& b) {
        if (a.u != b.u) return a.u < b.u;
        return static_cast<int>(a.agent) < static_cast<int>(b.agent);
    });

    // the open is the mid before anyone trades
    for (std::size_t i = 0; i < n; ++i) {
        rec.open[i] = market_.observed_mid(i);
        for (std::size_t kind = 0; kind < kAgentCount; ++kind)
            rec.agents[kind].open_displacement[i] =
                market_.assets[i].displacement_of(static_cast<AgentKind>(kind));
    }
    PriceMap open_marks;
    for (std::size_t i = 0; i < n; ++i) open_marks[cfg_.assets[i].symbol] = rec.open[i];
    if (day_ == 0) last_marks_ = open_marks;

    std::vector<Fill> fills;
    std::vector<double> traded(n, 0.0);
    double t = 0.0;
    for (const Order& order : orders) {
        decay_all(order.u - t);
        t = order.u;
        const std::size_t asset_index = static_cast<std::size_t>(order.asset);
        AssetState& asset = market_.assets[asset_index];
        const std::size_t kind = static_cast<std::size_t>(order.agent);
        const double fill_mid = market_.observed_mid(asset_index);
        const double hs = half_spread_at(asset.profile, order.u);
        const TradeImpact result =
            apply_trade(asset.impact[kind], asset.profile, order.qty, order.u);
        asset.impact[kind] = result.state;

        AgentDay& slice = rec.agents[kind];
        slice.net_qty[asset_index] += order.qty;
        slice.cash_flow[asset_index] -= order.qty * fill_mid;
        traded[asset_index] += std::abs(order.qty);
        if (order.agent == AgentKind::strategy) {
            fills.push_back({cfg_.assets[asset_index].symbol, order.qty, order.u, fill_mid, hs});
            strategy_->on_fill(order.asset, order.qty);
        }
    }
    decay_all(1.0 - t);

    for (std::size_t i = 0; i < n; ++i) {
        rec.close[i] = market_.observed_mid(i);
        for (std::size_t kind = 0; kind < kAgentCount; ++kind)
            rec.agents[kind].close_displacement[i] =
                market_.assets[i].displacement_of(static_cast<AgentKind>(kind));
    }

    PriceMap close_marks;
    for (std::size_t i = 0; i < n; ++i) close_marks[cfg_.assets[i].symbol] = rec.close[i];
    ledger_.rows.push_back(
        accrue_day(day_, fills, portfolio_, last_marks_, close_marks, cfg_.fees));
    last_marks_ = std::move(close_marks);

    for (std::size_t i = 0; i < n; ++i)
        bars_[i].push_back({date_, rec.open[i], rec.close[i], 0.0, traded[i]});

    history_.push_back(rec);

    // overnight transition: the transient impact mostly dies, the permanent
    // part carries, and the fundamental takes its exogenous step
    for (AssetState& asset : market_.assets)
        for (ImpactState& component : asset.impact)
            component.transient *= cfg_.overnight_transient_retention;
    if (cfg_.fundamental_volatility > 0.0) {
        const double vol = cfg_.fundamental_volatility;
        for (AssetState& asset : market_.assets)
            asset.fundamental *= std::exp(vol * rng_.gaussian() - 0.5 * vol * vol);
    }

    ++day_;
    date_ = advance_date(date_, 1);
    return history_.back();
}

SimResult Simulation::run() {
    while (day_ < cfg_.days) step();

    SimResult result;
    result.series.reserve(cfg_.assets.size());
    for (std::size_t i = 0; i < cfg_.assets.size(); ++i)
        result.series.push_back({cfg_.assets[i].symbol, bars_[i]});
    result.ledger = ledger_;
    result.days = history_;
    result.portfolio = portfolio_;
    return result;
}

SimResult run_sim(const SimConfig& cfg, std::uint64_t seed) {
    Simulation sim(cfg, seed);
    return sim.run();
}

} // namespace daysim
