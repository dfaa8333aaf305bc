#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace coldplant {

// Line-oriented "key = value" text with [section] headers; '#' starts a
// comment. Sections may repeat, each occurrence gets its own block index.
struct ConfigEntry {
    std::string section;
    int block = -1;
    std::string key;
    std::string value;
    int line = 0;
};

struct ConfigDocument {
    std::string source;
    std::vector<ConfigEntry> entries;
    int block_count = 0;

    std::vector<const ConfigEntry*> block(int index) const;
    std::vector<int> blocks_named(std::string_view section) const;
};

ConfigDocument parse_config(std::string_view text, std::string_view source = "<config>");

std::vector<std::string> split_tokens(std::string_view text, char extra_separator = ',');

// Field-level converters. Failures throw Error(Parse) naming source, line and key.
double entry_number(const ConfigDocument& doc, const ConfigEntry& e);
std::vector<double> entry_numbers(const ConfigDocument& doc, const ConfigEntry& e);
long entry_integer(const ConfigDocument& doc, const ConfigEntry& e);
[[noreturn]] void entry_error(const ConfigDocument& doc, const ConfigEntry& e, std::string_view why);

double parse_double(std::string_view token, std::string_view context);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace coldplant
