#include "coldplant/decision.hpp"

#include "coldplant/error.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace coldplant {

void DecisionBounds::validate() const
{
    if (m_dot.size() != t_out.size() || m_dot.empty()) {
        throw Error(ErrorCode::Config, "decision bounds need one flow and one temperature range per chiller");
    }
    auto ok = [](const Range& r) { return r.lo < r.hi; };
    if (!std::all_of(m_dot.begin(), m_dot.end(), ok) || !std::all_of(t_out.begin(), t_out.end(), ok)
        || !ok(m_dot_load) || !ok(m_dot_tes) || m_dot_load.lo <= 0.0 || m_dot_tes.lo < 0.0) {
        throw Error(ErrorCode::Config, "decision bounds must satisfy lo < hi with positive flows");
    }
}

DecisionBounds default_bounds(const PlantConfig& plant)
{
    DecisionBounds b;
    for (const auto& c : plant.chillers) {
        b.m_dot.push_back({c.flow_min, c.flow_max});
        b.t_out.push_back({c.t_out_min, c.t_out_max});
    }
    b.validate();
    return b;
}

void check_decision_vector(const DecisionVector& x, const DecisionBounds& bounds, std::size_t horizon)
{
    if (x.horizon() != horizon) {
        throw Error(ErrorCode::Precondition, fmt::format("trajectory has {} periods, expected {}", x.horizon(), horizon));
    }
    const std::size_t n = bounds.chillers();
    for (std::size_t k = 0; k < horizon; ++k) {
        const PeriodDecision& d = x.periods[k];
        if (d.m_dot.size() != n || d.t_out_ref.size() != n || d.on.size() != n) {
            throw Error(ErrorCode::Precondition, fmt::format("period {}: wrong chiller count", k + 1));
        }
        if (std::none_of(d.on.begin(), d.on.end(), [](bool b) { return b; })) {
            throw Error(ErrorCode::Precondition, fmt::format("period {}: every chiller is off", k + 1));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!bounds.m_dot[i].contains(d.m_dot[i]) || !bounds.t_out[i].contains(d.t_out_ref[i])) {
                throw Error(ErrorCode::Precondition, fmt::format("period {}: chiller {} outside bounds", k + 1, i + 1));
            }
        }
        if (!bounds.m_dot_load.contains(d.m_dot_load) || !bounds.m_dot_tes.contains(d.m_dot_tes)) {
            throw Error(ErrorCode::Precondition, fmt::format("period {}: load or tank flow outside bounds", k + 1));
        }
    }
}

}  // namespace coldplant
