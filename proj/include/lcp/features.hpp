#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcp/lexicon.hpp"

namespace lcp {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool IsMissing(double v) { return std::isnan(v); }

enum class Corpus { kBible = 0, kBiomed = 1, kEuroparl = 2 };
inline constexpr std::size_t kNumCorpora = 3;
const char* CorpusName(Corpus c);
Corpus ParseCorpus(std::string_view name);

enum class Task { kSingle, kMulti };
const char* TaskName(Task t);
Task ParseTask(std::string_view name);

struct ScoreInterval {
  double lo = 0.0;
  double hi = 1.0;
};

struct TargetInstance {
  std::string id;
  Corpus corpus = Corpus::kBible;
  std::vector<std::string> sentence;
  std::vector<std::string> target;  // one or two tokens
  std::optional<double> gold;

  Task task() const { return target.size() == 2 ? Task::kMulti : Task::kSingle; }
  std::string TargetKey() const;
};

std::size_t SentenceLength(const TargetInstance& instance);

// Dataset TSV with header `id corpus sentence token [complexity]`. Sentence and
// target go through Tokenize; a target must yield one or two tokens.
std::vector<TargetInstance> LoadDataset(const std::filesystem::path& path,
                                        ScoreInterval interval = {});

enum class FeatureGroup { kLength, kCorpusId, kFrequency, kNorm, kPsychometric, kAssociation };
inline constexpr std::size_t kNumFeatureGroups = 6;
const char* FeatureGroupName(FeatureGroup g);

// Accepts canonical group names and the short aliases used on the command
// line: corpus, freq, norms (norm + psychometric), psych, assoc.
std::vector<FeatureGroup> ParseGroupSelector(std::string_view name);

enum class Aggregation { kSingle, kMin, kMax };

struct FeatureDescriptor {
  std::string name;
  FeatureGroup group = FeatureGroup::kLength;
  Aggregation aggregation = Aggregation::kSingle;
  std::string source;      // table or frequency model name
  std::size_t index = 0;   // corpus id or association measure index
};

struct FeatureSchema {
  Task task = Task::kSingle;
  std::vector<FeatureDescriptor> features;

  std::size_t size() const { return features.size(); }
  std::vector<std::string> Names() const;
  std::vector<std::size_t> ColumnsInGroups(std::span<const FeatureGroup> groups) const;
  bool HasGroup(FeatureGroup g) const;
  FeatureSchema Select(std::span<const std::size_t> columns) const;
};

// JSON feature configuration:
//   { "task": "single"|"multi", "manifest": "manifest.json",
//     "groups": ["length", "corpus_id", ...], "score_interval": [0, 1] }
struct SchemaConfig {
  Task task = Task::kSingle;
  std::vector<FeatureGroup> groups;
  std::optional<std::filesystem::path> manifest;
  ScoreInterval interval;

  bool Enabled(FeatureGroup g) const;
  static SchemaConfig Load(const std::filesystem::path& path);
  static SchemaConfig FromJson(std::string_view json_text, const std::filesystem::path& base = {});
};

// Column order: sentence length, corpus one-hot, one column per lexicon table
// (min and max columns for the multi-word task), then for the multi-word task
// eight association measures per frequency model.
FeatureSchema BuildSchema(const SchemaConfig& config, const Resources& resources);

// Missing cells are kMissing; nothing is imputed here.
std::vector<double> Featurize(const TargetInstance& instance, const Resources& resources,
                              const FeatureSchema& schema);

class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(FeatureSchema schema, std::size_t rows);

  const FeatureSchema& schema() const { return schema_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return schema_.size(); }

  double at(std::size_t row, std::size_t col) const { return values_[row * cols() + col]; }
  double& at(std::size_t row, std::size_t col) { return values_[row * cols() + col]; }
  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols(), cols()}; }
  std::span<double> row(std::size_t r) { return {values_.data() + r * cols(), cols()}; }

  const std::vector<std::string>& ids() const { return ids_; }
  std::vector<std::string>& ids() { return ids_; }
  const std::optional<std::vector<double>>& targets() const { return targets_; }
  void set_targets(std::optional<std::vector<double>> t) { targets_ = std::move(t); }

  FeatureMatrix SelectColumns(std::span<const std::size_t> columns) const;
  FeatureMatrix SelectRows(std::span<const std::size_t> rows) const;

 private:
  FeatureSchema schema_;
  std::size_t rows_ = 0;
  std::vector<double> values_;
  std::vector<std::string> ids_;
  std::optional<std::vector<double>> targets_;
};

// Rows follow instance order. Targets are attached when every instance has a
// gold score. All instances must belong to the schema's task.
FeatureMatrix AssembleMatrix(std::span<const TargetInstance> instances, const Resources& resources,
                             const FeatureSchema& schema, std::size_t workers = 1);

// Header is the schema names, missing cells are empty fields.
void WriteMatrixTsv(const FeatureMatrix& m, std::ostream& out);
FeatureMatrix ReadMatrixTsv(const std::filesystem::path& path);

}  // namespace lcp
