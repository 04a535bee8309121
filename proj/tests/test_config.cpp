#include <doctest.h>

#include "collapse/config.hpp"

using namespace collapse;

TEST_CASE("parses key = value with comments and blanks") {
    auto cfg = Config::parse_string(
        "# a comment\n"
        "model = dp\n"
        "\n"
        "  sigma_m = 1e-10  \n"
        "seed = 42\n");
    CHECK(cfg.require_string("model") == "dp");
    CHECK(cfg.require_number("sigma_m") == 1e-10);
    CHECK(*cfg.take_u64("seed") == 42);
    cfg.reject_unconsumed();
}

TEST_CASE("unknown keys are a hard error with line numbers") {
    auto cfg = Config::parse_string("model = dp\nbogus_key = 1\n");
    cfg.take_string("model");
    CHECK_THROWS_WITH_AS(cfg.reject_unconsumed(),
                         "<string>: unknown key 'bogus_key' at line 2", ConfigError);
}

TEST_CASE("duplicate keys rejected at parse time") {
    CHECK_THROWS_AS(Config::parse_string("a = 1\na = 2\n"), ConfigError);
}

TEST_CASE("malformed lines and values") {
    CHECK_THROWS_AS(Config::parse_string("just a line\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("key =\n"), ConfigError);
    auto cfg = Config::parse_string("x = not_a_number\n");
    CHECK_THROWS_AS(cfg.take_number("x"), ConfigError);
    auto cfg2 = Config::parse_string("s = 12abc\n");
    CHECK_THROWS_AS(cfg2.take_u64("s"), ConfigError);
}

TEST_CASE("missing required key names the key") {
    auto cfg = Config::parse_string("model = dp\n");
    CHECK_THROWS_WITH_AS(cfg.require_number("sigma_m"),
                         "<string>: missing required key 'sigma_m'", ConfigError);
}

TEST_CASE("content hash is stable and content sensitive") {
    const auto a = Config::parse_string("a = 1\n");
    const auto b = Config::parse_string("a = 1\n");
    const auto c = Config::parse_string("a = 2\n");
    CHECK(a.content_hash() == b.content_hash());
    CHECK(a.content_hash() != c.content_hash());
}
