#include "collapse/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace collapse {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    cfg.hash_ = fnv1a64(text);

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        Entry e;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = line_no;
        if (e.key.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        if (e.value.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty value for key '" +
                              e.key + "'");
        if (cfg.find(e.key))
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                              e.key + "' (first at line " +
                              std::to_string(cfg.line_of(e.key)) + ")");
        cfg.entries_.push_back(std::move(e));
    }
    return cfg;
}

Config::Entry* Config::find(const std::string& key) {
    for (auto& e : entries_)
        if (e.key == key) return &e;
    return nullptr;
}

const Config::Entry* Config::find(const std::string& key) const {
    for (const auto& e : entries_)
        if (e.key == key) return &e;
    return nullptr;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

int Config::line_of(const std::string& key) const {
    const Entry* e = find(key);
    return e ? e->line : -1;
}

std::optional<std::string> Config::take_string(const std::string& key) {
    Entry* e = find(key);
    if (!e) return std::nullopt;
    e->consumed = true;
    return e->value;
}

std::optional<double> Config::take_number(const std::string& key) {
    Entry* e = find(key);
    if (!e) return std::nullopt;
    e->consumed = true;
    const char* s = e->value.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw ConfigError(origin_ + ":" + std::to_string(e->line) + ": key '" + key +
                          "': not a number: '" + e->value + "'");
    return v;
}

std::optional<std::uint64_t> Config::take_u64(const std::string& key) {
    Entry* e = find(key);
    if (!e) return std::nullopt;
    e->consumed = true;
    const char* s = e->value.c_str();
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0')
        throw ConfigError(origin_ + ":" + std::to_string(e->line) + ": key '" + key +
                          "': not an unsigned integer: '" + e->value + "'");
    return static_cast<std::uint64_t>(v);
}

std::string Config::require_string(const std::string& key) {
    auto v = take_string(key);
    if (!v) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    return *v;
}

double Config::require_number(const std::string& key) {
    auto v = take_number(key);
    if (!v) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    return *v;
}

void Config::reject_unconsumed() const {
    std::string msg;
    for (const auto& e : entries_) {
        if (!e.consumed) {
            if (!msg.empty()) msg += "; ";
            msg += "unknown key '" + e.key + "' at line " + std::to_string(e.line);
        }
    }
    if (!msg.empty()) throw ConfigError(origin_ + ": " + msg);
}

}  // namespace collapse
