#include "lcp/error.hpp"

#include <iostream>
#include <mutex>

#include "lcp/log.hpp"

namespace lcp {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kResource: return "resource";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kConfig: return "configuration";
    case ErrorCode::kData: return "data";
    case ErrorCode::kInconsistentCounts: return "inconsistent-counts";
    case ErrorCode::kTraining: return "training";
    case ErrorCode::kUndefinedCorrelation: return "undefined-correlation";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

namespace {

std::mutex& SinkMutex() {
  static std::mutex m;
  return m;
}

LogSink& Sink() {
  static LogSink sink;
  return sink;
}

}  // namespace

void SetLogSink(LogSink sink) {
  std::lock_guard<std::mutex> lock(SinkMutex());
  Sink() = std::move(sink);
}

void Log(LogLevel level, std::string_view message) {
  std::lock_guard<std::mutex> lock(SinkMutex());
  if (Sink()) {
    Sink()(level, message);
    return;
  }
  std::cerr << (level == LogLevel::kWarning ? "warning: " : "") << message << '\n';
}

}  // namespace lcp
