#include "coldplant/text_config.hpp"

#include "coldplant/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace coldplant {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Precondition: return "precondition violation";
    case ErrorCode::InfeasibleLoad: return "infeasible load";
    case ErrorCode::MalformedGrid: return "malformed grid";
    case ErrorCode::DivisionByZeroCop: return "division by zero COP";
    case ErrorCode::AllFlowsZero: return "all flows zero";
    case ErrorCode::MassImbalance: return "mass imbalance";
    case ErrorCode::LoopDivergence: return "loop divergence";
    case ErrorCode::UnmappedTimestamp: return "unmapped timestamp";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::LayoutMismatch: return "layout mismatch";
    case ErrorCode::ScenarioMismatch: return "scenario mismatch";
    case ErrorCode::Config: return "config error";
    case ErrorCode::Io: return "I/O error";
    }
    return "error";
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<const ConfigEntry*> ConfigDocument::block(int index) const
{
    std::vector<const ConfigEntry*> out;
    for (const auto& e : entries) {
        if (e.block == index) {
            out.push_back(&e);
        }
    }
    return out;
}

std::vector<int> ConfigDocument::blocks_named(std::string_view section) const
{
    std::vector<int> out;
    for (const auto& e : entries) {
        if (e.section == section && (out.empty() || out.back() != e.block)) {
            out.push_back(e.block);
        }
    }
    return out;
}

ConfigDocument parse_config(std::string_view text, std::string_view source)
{
    ConfigDocument doc;
    doc.source = std::string(source);
    std::string section;
    int block = -1;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw Error(ErrorCode::Parse,
                            fmt::format("{}:{}: malformed section header '{}'", doc.source, line_no, line));
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            block = doc.block_count++;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::Parse,
                        fmt::format("{}:{}: expected 'key = value', got '{}'", doc.source, line_no, line));
        }
        ConfigEntry e;
        e.section = section;
        e.block = block;
        e.key = std::string(trim(line.substr(0, eq)));
        e.value = std::string(trim(line.substr(eq + 1)));
        e.line = line_no;
        if (e.key.empty()) {
            throw Error(ErrorCode::Parse, fmt::format("{}:{}: empty key", doc.source, line_no));
        }
        doc.entries.push_back(std::move(e));
        if (end == text.size()) {
            break;
        }
    }
    return doc;
}

std::vector<std::string> split_tokens(std::string_view text, char extra_separator)
{
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == extra_separator) {
            if (!current.empty()) {
                out.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) {
        out.push_back(std::move(current));
    }
    return out;
}

double parse_double(std::string_view token, std::string_view context)
{
    token = trim(token);
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    if (!token.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw Error(ErrorCode::Parse, fmt::format("{}: '{}' is not a finite number", context, token));
    }
    return value;
}

void entry_error(const ConfigDocument& doc, const ConfigEntry& e, std::string_view why)
{
    throw Error(ErrorCode::Parse, fmt::format("{}:{}: field '{}': {}", doc.source, e.line, e.key, why));
}

double entry_number(const ConfigDocument& doc, const ConfigEntry& e)
{
    return parse_double(e.value, fmt::format("{}:{}: field '{}'", doc.source, e.line, e.key));
}

std::vector<double> entry_numbers(const ConfigDocument& doc, const ConfigEntry& e)
{
    std::vector<double> out;
    for (const auto& tok : split_tokens(e.value)) {
        out.push_back(parse_double(tok, fmt::format("{}:{}: field '{}'", doc.source, e.line, e.key)));
    }
    return out;
}

long entry_integer(const ConfigDocument& doc, const ConfigEntry& e)
{
    const double v = entry_number(doc, e);
    if (std::floor(v) != v) {
        entry_error(doc, e, "expected an integer");
    }
    return static_cast<long>(v);
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, fmt::format("cannot open '{}' for reading", path));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, fmt::format("cannot open '{}' for writing", path));
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw Error(ErrorCode::Io, fmt::format("write to '{}' failed", path));
    }
}

}  // namespace coldplant
