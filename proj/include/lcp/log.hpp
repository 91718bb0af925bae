#pragma once

#include <functional>
#include <string_view>

namespace lcp {

enum class LogLevel { kInfo = 0, kWarning = 1 };

using LogSink = std::function<void(LogLevel, std::string_view)>;

// Replaces the process-wide sink. Passing an empty function restores the
// default, which writes to stderr.
void SetLogSink(LogSink sink);

void Log(LogLevel level, std::string_view message);
inline void LogWarning(std::string_view message) { Log(LogLevel::kWarning, message); }
inline void LogInfo(std::string_view message) { Log(LogLevel::kInfo, message); }

}  // namespace lcp
