#include "daysim/config.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace daysim {
namespace {

using nlohmann::json;

void check_keys(const json& block, std::initializer_list<const char*> allowed,
                const char* where) {
    for (auto it = block.begin(); it != block.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
    }
}

template <class T>
void read(const json& block, const char* key, T& out) {
    if (block.contains(key)) block.at(key).get_to(out);
}

LiquidityProfile read_profile(const json& block) {
    check_keys(block,
               {"half_spread_open", "half_spread_close", "depth_open", "depth_close",
                "shape"},
               "profile");
    LiquidityProfile profile;
    read(block, "half_spread_open", profile.half_spread_open);
    read(block, "half_spread_close", profile.half_spread_close);
    read(block, "depth_open", profile.depth_open);
    read(block, "depth_close", profile.depth_close);
    read(block, "shape", profile.shape);
    return profile;
}

AssetConfig read_asset(const json& block) {
    check_keys(block,
               {"symbol", "initial_price", "typical_daily_volume", "profile",
                "permanent_fraction", "decay_rate"},
               "asset");
    AssetConfig asset;
    read(block, "symbol", asset.symbol);
    read(block, "initial_price", asset.initial_price);
    read(block, "typical_daily_volume", asset.typical_daily_volume);
    if (block.contains("profile")) asset.profile = read_profile(block.at("profile"));
    read(block, "permanent_fraction", asset.permanent_fraction);
    read(block, "decay_rate", asset.decay_rate);
    return asset;
}

StrategyConfig read_strategy(const json& block) {
    check_keys(block,
               {"enabled", "legs", "round_trip_fraction", "morning_time",
                "afternoon_time", "jitter", "rotation_period"},
               "strategy");
    StrategyConfig strategy;
    read(block, "enabled", strategy.enabled);
    if (block.contains("legs")) {
        strategy.legs.clear();
        for (const json& item : block.at("legs")) {
            check_keys(item, {"asset", "target_value"}, "strategy leg");
            StrategyLeg leg;
            read(item, "asset", leg.asset);
            read(item, "target_value", leg.target_value);
            strategy.legs.push_back(leg);
        }
    }
    read(block, "round_trip_fraction", strategy.round_trip_fraction);
    read(block, "morning_time", strategy.morning_time);
    read(block, "afternoon_time", strategy.afternoon_time);
    read(block, "jitter", strategy.jitter);
    read(block, "rotation_period", strategy.rotation_period);
    return strategy;
}

} // namespace

RunConfig parse_run_config(std::istream& in) {
    const json root = json::parse(in);
    if (!root.is_object()) throw std::invalid_argument("config must be a JSON object");
    check_keys(root,
               {"days", "seed", "start_date", "tick_floor", "fundamental_volatility",
                "overnight_transient_retention", "assets", "strategy", "arbitrageur",
                "noise", "fees", "financing_rate", "output_dir"},
               "config");

    RunConfig config;
    SimConfig& sim = config.sim;
    read(root, "days", sim.days);
    read(root, "seed", sim.seed);
    read(root, "start_date", sim.start_date);
    read(root, "tick_floor", sim.tick_floor);
    read(root, "fundamental_volatility", sim.fundamental_volatility);
    read(root, "overnight_transient_retention", sim.overnight_transient_retention);
    read(root, "financing_rate", sim.financing_rate);
    read(root, "output_dir", config.output_dir);

    if (root.contains("assets")) {
        sim.assets.clear();
        for (const json& item : root.at("assets")) sim.assets.push_back(read_asset(item));
    }
    if (root.contains("strategy")) sim.strategy = read_strategy(root.at("strategy"));
    if (root.contains("arbitrageur")) {
        const json& block = root.at("arbitrageur");
        check_keys(block, {"enabled", "lookback", "threshold", "fraction"}, "arbitrageur");
        read(block, "enabled", sim.arbitrageur.enabled);
        read(block, "lookback", sim.arbitrageur.lookback);
        read(block, "threshold", sim.arbitrageur.threshold);
        read(block, "fraction", sim.arbitrageur.fraction);
    }
    if (root.contains("noise")) {
        const json& block = root.at("noise");
        check_keys(block, {"intensity", "size_scale"}, "noise");
        read(block, "intensity", sim.noise.intensity);
        read(block, "size_scale", sim.noise.size_scale);
    }
    if (root.contains("fees")) {
        const json& block = root.at("fees");
        check_keys(block, {"commission", "exchange_fee", "regulator_fee"}, "fees");
        read(block, "commission", sim.fees.commission);
        read(block, "exchange_fee", sim.fees.exchange_fee);
        read(block, "regulator_fee", sim.fees.regulator_fee);
    }

    sim.validate();
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    return parse_run_config(in);
}

} // namespace daysim
