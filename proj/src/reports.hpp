#pragma once

// Text renderings of harness results, shared by the C API and tests.

#include <iosfwd>
#include <string>

#include "lcp/harness.hpp"

namespace lcp::reports {

struct CvInfo {
  std::string fold_mode;  // instance, group-by-target or stratified
  bool pooled = false;
};

void WriteCvJson(const harness::CvResult& cv, const harness::FoldAssignment& folds, const CvInfo& info,
                 std::ostream& out);
void WriteAblationTsv(const harness::AblationReport& report, std::ostream& out);
void WriteRepetitionJson(const harness::RepetitionReport& report, std::ostream& out);
void WriteAssocHeader(std::ostream& out);

}  // namespace lcp::reports
