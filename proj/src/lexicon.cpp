#include "lcp/lexicon.hpp"

#include <unordered_set>

#include <json.hpp>

#include "lcp/error.hpp"
#include "lcp/log.hpp"
#include "text_io.hpp"

namespace lcp {

const char* LexiconGroupName(LexiconGroup group) {
  switch (group) {
    case LexiconGroup::kFrequency: return "frequency";
    case LexiconGroup::kNorm: return "norm";
    case LexiconGroup::kPsychometric: return "psychometric";
  }
  return "?";
}

LexiconGroup ParseLexiconGroup(std::string_view name) {
  if (name == "frequency") return LexiconGroup::kFrequency;
  if (name == "norm") return LexiconGroup::kNorm;
  if (name == "psychometric") return LexiconGroup::kPsychometric;
  Fail(ErrorCode::kConfig, "unknown lexicon group '" + std::string(name) + "'");
}

LexiconTable LoadLexicon(const std::filesystem::path& path, std::string name, LexiconGroup group,
                         std::size_t key_column, std::size_t value_column) {
  std::ifstream in = io::OpenInput(path);
  LexiconTable table{std::move(name), group, {}};
  const std::string where = path.string();
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kFormat, where + ": empty file");
  std::size_t lineno = 1, duplicates = 0, unparsable = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = io::SplitTabs(io::ChompCr(line));
    if (fields.size() <= std::max(key_column, value_column)) {
      if (!(fields.size() == 1 && fields[0].empty())) ++unparsable;
      continue;
    }
    std::string key = ToLower(fields[key_column]);
    if (key.empty()) {
      ++unparsable;
      continue;
    }
    auto value = io::ParseDouble(fields[value_column]);
    if (!value) {
      ++unparsable;
      continue;
    }
    if (!table.entries.emplace(std::move(key), *value).second) ++duplicates;
  }
  if (duplicates > 0) {
    LogWarning(where + ": " + std::to_string(duplicates) + " duplicate key(s), kept first occurrence");
  }
  if (unparsable > 0) {
    LogWarning(where + ": table '" + table.name + "': skipped " + std::to_string(unparsable) +
               " row(s) without a numeric value in column " + std::to_string(value_column));
  }
  if (table.entries.empty()) {
    Fail(ErrorCode::kFormat, where + ": no parsable rows for table '" + table.name + "'");
  }
  return table;
}

std::optional<double> Lookup(const LexiconTable& table, std::string_view surface,
                             std::optional<std::string_view> lemma) {
  if (auto it = table.entries.find(std::string(surface)); it != table.entries.end()) {
    return it->second;
  }
  if (lemma) {
    if (auto it = table.entries.find(std::string(*lemma)); it != table.entries.end()) {
      return it->second;
    }
  }
  return std::nullopt;
}

LemmaDictionary::LemmaDictionary(std::unordered_map<std::string, std::string> entries)
    : entries_(std::move(entries)) {}

LemmaDictionary LemmaDictionary::Load(const std::filesystem::path& path) {
  std::ifstream in = io::OpenInput(path);
  std::unordered_map<std::string, std::string> entries;
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kFormat, path.string() + ": empty file");
  while (std::getline(in, line)) {
    auto fields = io::SplitTabs(io::ChompCr(line));
    if (fields.size() < 2) continue;
    std::string surface = ToLower(fields[0]);
    std::string lemma = ToLower(fields[1]);
    if (surface.empty() || lemma.empty()) continue;
    entries.emplace(std::move(surface), std::move(lemma));
  }
  return LemmaDictionary(std::move(entries));
}

std::string_view LemmaDictionary::LemmaOf(std::string_view surface) const {
  auto it = entries_.find(std::string(surface));
  return it == entries_.end() ? surface : std::string_view(it->second);
}

Manifest Manifest::Load(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(io::ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  Manifest m;
  m.source = path;
  try {
    std::unordered_set<std::string> names;
    for (const auto& t : doc.value("tables", nlohmann::json::array())) {
      TableSpec spec;
      spec.name = t.at("name").get<std::string>();
      spec.group = ParseLexiconGroup(t.at("group").get<std::string>());
      spec.path = resolve(t.at("path").get<std::string>());
      spec.key_column = t.value("key_column", std::size_t{0});
      spec.value_column = t.value("value_column", std::size_t{1});
      if (spec.name.empty() || !names.insert(spec.name).second) {
        Fail(ErrorCode::kConfig, path.string() + ": table names must be unique and nonempty");
      }
      m.tables.push_back(std::move(spec));
    }
    if (doc.contains("lemmas") && !doc["lemmas"].is_null()) {
      m.lemmas = resolve(doc["lemmas"].get<std::string>());
    }
    std::unordered_set<std::string> model_names;
    for (const auto& f : doc.value("frequency_models", nlohmann::json::array())) {
      FrequencyModelRef ref{f.at("name").get<std::string>(),
                            resolve(f.at("prefix").get<std::string>()).string()};
      if (ref.name.empty() || !model_names.insert(ref.name).second) {
        Fail(ErrorCode::kConfig, path.string() + ": frequency model names must be unique and nonempty");
      }
      m.frequency_models.push_back(std::move(ref));
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kConfig, path.string() + ": " + e.what());
  }
  return m;
}

Resources Resources::Load(const Manifest& manifest) {
  Resources r;
  for (const auto& spec : manifest.tables) {
    r.tables.push_back(LoadLexicon(spec.path, spec.name, spec.group, spec.key_column, spec.value_column));
  }
  if (manifest.lemmas) r.lemmas = LemmaDictionary::Load(*manifest.lemmas);
  for (const auto& ref : manifest.frequency_models) {
    r.frequency_models.push_back({ref.name, FrequencyModel::Load(ref.prefix)});
  }
  return r;
}

}  // namespace lcp
