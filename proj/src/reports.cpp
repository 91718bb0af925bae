#include "reports.hpp"

#include <ostream>

#include <json.hpp>

#include "lcp/assoc.hpp"
#include "text_io.hpp"

namespace lcp::reports {
namespace {

using Json = nlohmann::ordered_json;

Json OptionalNumber(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string Field(const std::optional<double>& v) { return v ? io::FormatDouble(*v) : std::string(); }

}  // namespace

void WriteCvJson(const harness::CvResult& cv, const harness::FoldAssignment& folds, const CvInfo& info,
                 std::ostream& out) {
  Json doc;
  doc["folds"] = folds.k;
  doc["seed"] = folds.seed;
  doc["fold_assignment"] = info.fold_mode;
  doc["mode"] = info.pooled ? "pooled" : "mean";
  doc["r"] = info.pooled ? cv.pooled_r : cv.mean_r;
  doc["mean_r"] = cv.mean_r;
  doc["pooled_r"] = cv.pooled_r;
  doc["fold_r"] = cv.fold_r;
  doc["fold_sizes"] = cv.fold_sizes;
  out << doc.dump(2) << '\n';
}

void WriteAblationTsv(const harness::AblationReport& report, std::ostream& out) {
  const bool has_test = report.full_test_r.has_value();
  out << "config\tremoved_columns\t" << (report.pooled ? "cv_pooled_r" : "cv_mean_r") << "\tcv_diff";
  if (has_test) out << "\ttest_r\ttest_diff";
  out << '\n';
  out << "full\t\t" << io::FormatDouble(report.full_r) << '\t';
  if (has_test) out << '\t' << io::FormatDouble(*report.full_test_r) << '\t';
  out << '\n';
  for (const auto& row : report.rows) {
    std::string columns;
    for (const auto& c : row.columns) {
      if (!columns.empty()) columns += ',';
      columns += c;
    }
    const double r = report.pooled ? row.cv.pooled_r : row.cv.mean_r;
    out << '-' << row.removed << '\t' << columns << '\t' << io::FormatDouble(r) << '\t'
        << io::FormatDouble(row.cv_diff);
    if (has_test) out << '\t' << Field(row.test_r) << '\t' << Field(row.test_diff);
    out << '\n';
  }
}

void WriteRepetitionJson(const harness::RepetitionReport& report, std::ostream& out) {
  Json counts = Json::object();
  Json percent = Json::object();
  for (std::size_t i = 0; i < report.kBuckets.size(); ++i) {
    counts[report.kBuckets[i]] = report.targets_by_count[i];
    percent[report.kBuckets[i]] = report.percent[i];
  }
  Json doc;
  doc["distinct_targets"] = report.distinct_targets;
  doc["targets_by_count"] = std::move(counts);
  doc["percent_by_count"] = std::move(percent);
  doc["repeated_targets"] = report.repeated_targets;
  doc["mean_range"] = OptionalNumber(report.mean_range);
  doc["range_deciles"] = report.range_deciles;
  doc["share_above_p90"] = OptionalNumber(report.share_above_p90);
  out << doc.dump(2) << '\n';
}

void WriteAssocHeader(std::ostream& out) {
  out << "word1\tword2";
  for (auto name : AssocScores::kNames) out << '\t' << name;
  out << '\n';
}

}  // namespace lcp::reports
