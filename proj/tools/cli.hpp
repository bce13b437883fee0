#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace klsf::cli {

enum ExitCode : int {
    kOk = 0,
    kRuntimeError = 1,
    kUsageError = 2,
    kParseError = 3,
    kNotFound = 4,
};

// "60s", "1ms", "250us", "5m", "1h", "1.5s"; a bare number means seconds.
// Throws std::invalid_argument on malformed or non-positive input.
std::chrono::nanoseconds parse_duration(std::string_view text);

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;
};
// "4/3", "0.5", "10". Throws std::invalid_argument unless strictly positive.
Fraction parse_fraction(std::string_view text);

// Entry point shared by the binary and the tests. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace klsf::cli
