#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace collapse {

/// Flat `key = value` config file. Lines starting with '#' and blank lines
/// are ignored. Duplicate keys are an error. Consumers mark keys as used via
/// the take_* accessors; any key left unconsumed is a hard error reported
/// with its line number.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;
    int line_of(const std::string& key) const;

    std::optional<std::string> take_string(const std::string& key);
    std::optional<double> take_number(const std::string& key);
    std::optional<std::uint64_t> take_u64(const std::string& key);

    std::string require_string(const std::string& key);
    double require_number(const std::string& key);

    /// Throws if any key was never consumed, listing keys with line numbers.
    void reject_unconsumed() const;

    std::uint64_t content_hash() const { return hash_; }
    const std::string& origin() const { return origin_; }

  private:
    struct Entry {
        std::string key;
        std::string value;
        int line = 0;
        bool consumed = false;
    };
    Entry* find(const std::string& key);
    const Entry* find(const std::string& key) const;

    std::vector<Entry> entries_;
    std::string origin_;
    std::uint64_t hash_ = 0;
};

/// error type for malformed configs; message carries line/key diagnostics.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(const std::string& data);

}  // namespace collapse
