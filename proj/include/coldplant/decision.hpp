#pragma once

#include "coldplant/plant_model.hpp"

#include <cstddef>
#include <vector>

namespace coldplant {

/// Full horizon trajectory: one PeriodDecision per period.
struct DecisionVector {
    std::vector<PeriodDecision> periods;

    std::size_t horizon() const { return periods.size(); }
    bool operator==(const DecisionVector&) const = default;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;

    double from_unit(double u) const { return lo + (hi - lo) * u; }
    double to_unit(double v) const { return (v - lo) / (hi - lo); }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Box bounds of the continuous decision variables.
struct DecisionBounds {
    PerChiller<Range> m_dot;
    PerChiller<Range> t_out;
    Range m_dot_load{9.5, 268.4};
    Range m_dot_tes{1.0, 50.0};

    std::size_t chillers() const { return m_dot.size(); }
    void validate() const;
};

DecisionBounds default_bounds(const PlantConfig& plant);

/// Checks length, box bounds and the at-least-one-on rule; throws Error(Precondition).
void check_decision_vector(const DecisionVector& x, const DecisionBounds& bounds, std::size_t horizon);

}  // namespace coldplant
