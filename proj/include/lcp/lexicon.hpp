#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lcp/corpus_stats.hpp"

namespace lcp {

enum class LexiconGroup { kFrequency, kNorm, kPsychometric };

const char* LexiconGroupName(LexiconGroup group);
LexiconGroup ParseLexiconGroup(std::string_view name);

// One numeric column of an external word list, keyed by lowercase form.
struct LexiconTable {
  std::string name;
  LexiconGroup group = LexiconGroup::kFrequency;
  std::unordered_map<std::string, double> entries;
};

// Reads a TSV with a header row. Columns are 0-based. Keys are lowercased;
// the first occurrence of a duplicate key wins and rows whose value does not
// parse as a finite number are skipped, both with a warning.
LexiconTable LoadLexicon(const std::filesystem::path& path, std::string name, LexiconGroup group,
                         std::size_t key_column, std::size_t value_column);

// Value for the surface form if listed, else for the lemma, else nothing.
std::optional<double> Lookup(const LexiconTable& table, std::string_view surface,
                             std::optional<std::string_view> lemma = std::nullopt);

class LemmaDictionary {
 public:
  LemmaDictionary() = default;
  explicit LemmaDictionary(std::unordered_map<std::string, std::string> entries);

  static LemmaDictionary Load(const std::filesystem::path& path);

  // Unknown surface forms are their own lemma.
  std::string_view LemmaOf(std::string_view surface) const;

  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::string> entries_;
};

struct FrequencyModelRef {
  std::string name;
  std::string prefix;
};

struct TableSpec {
  std::string name;
  LexiconGroup group = LexiconGroup::kFrequency;
  std::filesystem::path path;
  std::size_t key_column = 0;
  std::size_t value_column = 1;
};

// Resource manifest (JSON). Relative paths resolve against the manifest's
// directory.
//   { "tables": [ {"name", "group", "path", "key_column", "value_column"} ],
//     "lemmas": "lemmas.tsv",                         (optional)
//     "frequency_models": [ {"name", "prefix"} ] }    (optional)
struct Manifest {
  std::filesystem::path source;
  std::vector<TableSpec> tables;
  std::optional<std::filesystem::path> lemmas;
  std::vector<FrequencyModelRef> frequency_models;

  static Manifest Load(const std::filesystem::path& path);
};

struct NamedFrequencyModel {
  std::string name;
  FrequencyModel model;
};

// Everything feature extraction needs, loaded once and shared read-only.
struct Resources {
  std::vector<LexiconTable> tables;
  LemmaDictionary lemmas;
  std::vector<NamedFrequencyModel> frequency_models;

  static Resources Load(const Manifest& manifest);
};

}  // namespace lcp
