#include "daysim/impact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace daysim {
namespace {

void check_time(double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("intraday time " + std::to_string(u) +
                                " outside [0, 1]");
}

} // namespace

void LiquidityProfile::validate() const {
    if (!(half_spread_open > 0.0) || !std::isfinite(half_spread_open))
        throw std::invalid_argument("half_spread_open must be > 0");
    if (!(half_spread_close > 0.0) || !std::isfinite(half_spread_close))
        throw std::invalid_argument("half_spread_close must be > 0");
    if (half_spread_close > half_spread_open)
        throw std::invalid_argument("half_spread_close must not exceed half_spread_open");
    if (!(depth_open > 0.0) || !std::isfinite(depth_open))
        throw std::invalid_argument("depth_open must be > 0");
    if (!std::isfinite(depth_close) || depth_close < depth_open)
        throw std::invalid_argument("depth_close must be at least depth_open");
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw std::invalid_argument("shape must be > 0");
}

double half_spread_at(const LiquidityProfile& profile, double u) {
    check_time(u);
    const double w = std::pow(u, profile.shape);
    // convex-combination form so both endpoints are hit exactly
    return (1.0 - w) * profile.half_spread_open + w * profile.half_spread_close;
}

double depth_at(const LiquidityProfile& profile, double u) {
    check_time(u);
    const double w = std::pow(u, profile.shape);
    return (1.0 - w) * profile.depth_open + w * profile.depth_close;
}

void ImpactState::validate() const {
    if (!std::isfinite(permanent) || !std::isfinite(transient))
        throw std::invalid_argument("impact components must be finite");
    if (!(decay_rate >= 0.0) || !std::isfinite(decay_rate))
        throw std::invalid_argument("decay_rate must be >= 0");
    if (!(permanent_fraction >= 0.0 && permanent_fraction <= 1.0))
        throw std::invalid_argument("permanent_fraction must be in [0, 1]");
}

TradeImpact apply_trade(ImpactState state, const LiquidityProfile& profile,
                        double signed_qty, double u) {
    if (!std::isfinite(signed_qty))
        throw std::domain_error("trade quantity must be finite");
    const double cap = half_spread_at(profile, u);
    const double raw = signed_qty / depth_at(profile, u);
    const double displacement = std::clamp(raw, -cap, cap);
    state.permanent += state.permanent_fraction * displacement;
    state.transient += (1.0 - state.permanent_fraction) * displacement;
    return {state, displacement};
}

ImpactState decay(ImpactState state, double dt) {
    if (!(dt >= 0.0) || !std::isfinite(dt))
        throw std::domain_error("decay interval must be >= 0");
    state.transient *= std::exp(-state.decay_rate * dt);
    return state;
}

double mid_displacement(const ImpactState& state) noexcept {
    return state.permanent + state.transient;
}

} // namespace daysim
