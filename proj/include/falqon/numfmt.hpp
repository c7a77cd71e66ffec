#pragma once

#include <cstdint>
#include <string>

namespace falqon {

/// Shortest decimal string that parses back to exactly `v`; always carries a
/// decimal point or exponent so the value reads as floating point.
std::string format_shortest(double v);

/// printf "%.<digits>g".
std::string format_sig(double v, int digits);

double parse_double(const std::string& text);
std::uint64_t parse_u64(const std::string& text);
int parse_int(const std::string& text);

}  // namespace falqon
