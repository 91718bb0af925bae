#pragma once

// Internal helpers for line-oriented TSV files.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcp::io {

std::vector<std::string_view> SplitTabs(std::string_view line);

// Strips one trailing '\r' so CRLF files parse like LF files.
std::string_view ChompCr(std::string_view line);

std::ifstream OpenInput(const std::filesystem::path& path);
std::ofstream OpenOutput(const std::filesystem::path& path);

std::optional<double> ParseDouble(std::string_view field);
std::optional<std::uint64_t> ParseCount(std::string_view field);

// Shortest decimal form that reads back to the same double.
std::string FormatDouble(double value);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace lcp::io
