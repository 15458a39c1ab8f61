#pragma once

namespace daysim {

// Intraday liquidity as a function of clock time u in [0, 1] (open to
// close). The half-spread shrinks and the depth grows through the day, each
// interpolated between its endpoints as endpoint_open + span * u^shape.
// Depth is quoted as shares of aggressive trading per unit of midprice move.
struct LiquidityProfile {
    double half_spread_open = 0.10;
    double half_spread_close = 0.02;  // must not exceed half_spread_open
    double depth_open = 1e4;
    double depth_close = 5e4;         // must be at least depth_open
    double shape = 2.0;               // interpolation exponent, > 0

    void validate() const;  // throws std::invalid_argument naming the field
};

// Throw std::domain_error for u outside [0, 1].
double half_spread_at(const LiquidityProfile& profile, double u);
double depth_at(const LiquidityProfile& profile, double u);

// Midprice displacement for one asset, split into a component that persists
// indefinitely and one that decays exponentially at decay_rate per unit of
// intraday time.
struct ImpactState {
    double permanent = 0.0;
    double transient = 0.0;
    double decay_rate = 5.0;
    double permanent_fraction = 0.5;  // share of each trade's move that never decays

    void validate() const;
};

struct TradeImpact {
    ImpactState state;
    double displacement = 0.0;  // realized mid move of this trade
};

// An aggressive trade of signed_qty shares at time u moves the mid by
// signed_qty / depth(u), clamped to +-half_spread(u). The permanent fraction
// of the move is added to the permanent component, the rest to the
// transient one. Throws std::domain_error on non-finite qty or u out of
// range.
TradeImpact apply_trade(ImpactState state, const LiquidityProfile& profile,
                        double signed_qty, double u);

// Shrinks the transient component by exp(-decay_rate * dt); the permanent
// component never decays. Throws std::domain_error for dt < 0.
ImpactState decay(ImpactState state, double dt);

double mid_displacement(const ImpactState& state) noexcept;

} // namespace daysim
