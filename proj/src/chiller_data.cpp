#include "coldplant/chiller_data.hpp"

#include "coldplant/error.hpp"
#include "coldplant/text_config.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace coldplant {

namespace {

namespace rd = reference_data;

// Full-load COP on the 3x3 (ELWT, CAET) grid: the four catalogue corners,
// the part-load table's 100% value at its rating point, and straight-line
// values on the remaining edge nodes.
double full_load_cop(std::size_t unit, std::size_t e, std::size_t c)
{
    const auto& t1 = rd::kFullLoadCop[unit];
    const double along_caet = (rd::kPartLoadCaet - rd::kCaet[0]) / (rd::kCaet[1] - rd::kCaet[0]);
    const double along_elwt = (rd::kPartLoadElwt - rd::kElwt[0]) / (rd::kElwt[1] - rd::kElwt[0]);
    auto caet_edge = [&](std::size_t ei) { return (1.0 - along_caet) * t1[ei][0] + along_caet * t1[ei][1]; };
    auto elwt_edge = [&](std::size_t ci) { return (1.0 - along_elwt) * t1[0][ci] + along_elwt * t1[1][ci]; };

    const bool e_mid = e == 1;
    const bool c_mid = c == 1;
    const std::size_t ei = e == 2 ? 1 : 0;
    const std::size_t ci = c == 2 ? 1 : 0;
    if (e_mid && c_mid) {
        return rd::kPartLoadCop[unit][3];
    }
    if (e_mid) {
        return elwt_edge(ci);
    }
    if (c_mid) {
        return caet_edge(ei);
    }
    return t1[ei][ci];
}

ChillerSpec make_reference_chiller(std::size_t unit)
{
    ChillerSpec spec;
    spec.id = static_cast<int>(unit) + 1;
    spec.name = std::string(rd::kNames[unit]);
    spec.q_nominal = rd::kFullLoadKw[unit][0][0] * 1000.0;
    spec.flow_min = rd::kFlowMin[unit];
    spec.flow_max = rd::kFlowMax[unit];
    spec.t_out_min = rd::kTOutMin;
    spec.t_out_max = rd::kTOutMax;

    const std::vector<double> plr(rd::kPlr.begin(), rd::kPlr.end());
    const std::vector<double> elwt = {rd::kElwt[0], rd::kPartLoadElwt, rd::kElwt[1]};
    const std::vector<double> caet = {rd::kCaet[0], rd::kPartLoadCaet, rd::kCaet[1]};
    const double cop_full_at_rating = rd::kPartLoadCop[unit][3];

    std::vector<double> cop;
    for (std::size_t p = 0; p < plr.size(); ++p) {
        for (std::size_t e = 0; e < elwt.size(); ++e) {
            for (std::size_t c = 0; c < caet.size(); ++c) {
                const double full = full_load_cop(unit, e, c);
                if (p == plr.size() - 1) {
                    cop.push_back(full);
                } else if (e == 1 && c == 1) {
                    cop.push_back(rd::kPartLoadCop[unit][p]);
                } else {
                    cop.push_back(full / cop_full_at_rating * rd::kPartLoadCop[unit][p]);
                }
            }
        }
    }
    spec.cop_grid = MultilinearTable<3>({plr, elwt, caet}, std::move(cop));

    std::vector<double> capacity;
    for (std::size_t e = 0; e < 2; ++e) {
        for (std::size_t c = 0; c < 2; ++c) {
            capacity.push_back(rd::kFullLoadKw[unit][e][c] * 1000.0);
        }
    }
    spec.capacity_grid = MultilinearTable<2>({std::vector<double>(rd::kElwt.begin(), rd::kElwt.end()),
                                              std::vector<double>(rd::kCaet.begin(), rd::kCaet.end())},
                                             std::move(capacity));
    spec.validate();
    return spec;
}

std::string join(const std::vector<double>& v)
{
    return fmt::format("{}", fmt::join(v, " "));
}

}  // namespace

std::vector<ChillerSpec> default_chillers()
{
    std::vector<ChillerSpec> out;
    for (std::size_t u = 0; u < rd::kUnits; ++u) {
        out.push_back(make_reference_chiller(u));
    }
    return out;
}

PlantConfig default_plant()
{
    PlantConfig plant;
    plant.chillers = default_chillers();
    return plant;
}

std::string format_chiller_config(const std::vector<ChillerSpec>& chillers)
{
    std::string out = "# coldplant chiller curves v1\n"
                      "# cop rows: one line per PLR axis value, ELWT-major then CAET\n";
    for (const auto& c : chillers) {
        out += "\n[chiller]\n";
        out += fmt::format("id = {}\nname = {}\nnominal_w = {}\n", c.id, c.name, c.q_nominal);
        out += fmt::format("flow_kg_s = {} {}\nt_out_c = {} {}\n", c.flow_min, c.flow_max, c.t_out_min, c.t_out_max);
        out += fmt::format("plr_axis = {}\nelwt_axis_c = {}\ncaet_axis_c = {}\n", join(c.cop_grid.axis(0)),
                           join(c.cop_grid.axis(1)), join(c.cop_grid.axis(2)));
        const std::size_t row = c.cop_grid.axis(1).size() * c.cop_grid.axis(2).size();
        const auto& values = c.cop_grid.values();
        for (std::size_t start = 0; start < values.size(); start += row) {
            out += fmt::format("cop = {}\n", join(std::vector<double>(values.begin() + static_cast<long>(start),
                                                                      values.begin() + static_cast<long>(start + row))));
        }
        out += fmt::format("capacity_elwt_axis_c = {}\ncapacity_caet_axis_c = {}\ncapacity_w = {}\n",
                           join(c.capacity_grid.axis(0)), join(c.capacity_grid.axis(1)),
                           join(c.capacity_grid.values()));
    }
    return out;
}

std::vector<ChillerSpec> parse_chiller_config(std::string_view text, std::string_view source)
{
    const ConfigDocument doc = parse_config(text, source);
    std::vector<ChillerSpec> out;
    for (const auto& e : doc.entries) {
        if (e.section != "chiller") {
            entry_error(doc, e, fmt::format("unexpected section '[{}]'", e.section));
        }
    }
    for (int block : doc.blocks_named("chiller")) {
        const auto entries = doc.block(block);
        std::map<std::string, const ConfigEntry*> single;
        std::vector<double> cop;
        std::vector<double> capacity;
        for (const ConfigEntry* e : entries) {
            if (e->key == "cop") {
                const auto v = entry_numbers(doc, *e);
                cop.insert(cop.end(), v.begin(), v.end());
            } else if (e->key == "capacity_w") {
                const auto v = entry_numbers(doc, *e);
                capacity.insert(capacity.end(), v.begin(), v.end());
            } else if (single.contains(e->key)) {
                entry_error(doc, *e, "duplicate field");
            } else {
                single[e->key] = e;
            }
        }
        const int line = entries.empty() ? 0 : entries.front()->line;
        auto need = [&](const char* key) -> const ConfigEntry& {
            auto it = single.find(key);
            if (it == single.end()) {
                throw Error(ErrorCode::Parse,
                            fmt::format("{}: chiller block near line {}: missing field '{}'", doc.source, line, key));
            }
            return *it->second;
        };
        auto pair = [&](const char* key) {
            const auto& e = need(key);
            auto v = entry_numbers(doc, e);
            if (v.size() != 2) {
                entry_error(doc, e, "expected two numbers");
            }
            return v;
        };

        ChillerSpec spec;
        spec.id = static_cast<int>(entry_integer(doc, need("id")));
        spec.name = need("name").value;
        spec.q_nominal = entry_number(doc, need("nominal_w"));
        const auto flow = pair("flow_kg_s");
        spec.flow_min = flow[0];
        spec.flow_max = flow[1];
        const auto tout = pair("t_out_c");
        spec.t_out_min = tout[0];
        spec.t_out_max = tout[1];
        static constexpr const char* kKnown[] = {"id", "name", "nominal_w", "flow_kg_s", "t_out_c",
                                                 "plr_axis", "elwt_axis_c", "caet_axis_c",
                                                 "capacity_elwt_axis_c", "capacity_caet_axis_c"};
        for (const auto& [key, e] : single) {
            if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
                entry_error(doc, *e, "unknown field");
            }
        }
        try {
            spec.cop_grid = MultilinearTable<3>({entry_numbers(doc, need("plr_axis")),
                                                 entry_numbers(doc, need("elwt_axis_c")),
                                                 entry_numbers(doc, need("caet_axis_c"))},
                                                cop);
            spec.capacity_grid = MultilinearTable<2>({entry_numbers(doc, need("capacity_elwt_axis_c")),
                                                      entry_numbers(doc, need("capacity_caet_axis_c"))},
                                                     capacity);
            spec.validate();
        } catch (const Error& err) {
            if (err.code() == ErrorCode::Parse) {
                throw;
            }
            throw Error(err.code(), fmt::format("{}: chiller block near line {} ('{}'): {}", doc.source, line,
                                                spec.name, err.what()));
        }
        out.push_back(std::move(spec));
    }
    if (out.empty()) {
        throw Error(ErrorCode::Parse, fmt::format("{}: no [chiller] blocks", doc.source));
    }
    if (out.size() > kMaxChillers) {
        throw Error(ErrorCode::Config, fmt::format("{}: at most {} chillers supported", doc.source, kMaxChillers));
    }
    return out;
}

}  // namespace coldplant
