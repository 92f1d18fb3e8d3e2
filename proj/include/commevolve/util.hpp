#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace commevolve {

// FNV-1a over raw bytes; used for artifact/config fingerprints, not security.
std::uint64_t fnv1a64(std::string_view bytes);

std::string to_hex(std::uint64_t value);

// Lossless text form of a double ("%.17g"), stable across runs.
std::string format_double(double value);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// splitmix64-style combinator for deriving independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

}  // namespace commevolve
