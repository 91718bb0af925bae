#include "lcp/features.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "lcp/assoc.hpp"
#include "lcp/error.hpp"
#include "lcp/log.hpp"
#include "lcp/thread_pool.hpp"
#include "text_io.hpp"

namespace lcp {

const char* CorpusName(Corpus c) {
  switch (c) {
    case Corpus::kBible: return "bible";
    case Corpus::kBiomed: return "biomed";
    case Corpus::kEuroparl: return "europarl";
  }
  return "?";
}

Corpus ParseCorpus(std::string_view name) {
  std::string lower = ToLower(name);
  if (lower == "bible") return Corpus::kBible;
  if (lower == "biomed") return Corpus::kBiomed;
  if (lower == "europarl") return Corpus::kEuroparl;
  Fail(ErrorCode::kData, "unknown corpus '" + std::string(name) + "'");
}

const char* TaskName(Task t) { return t == Task::kSingle ? "single" : "multi"; }

Task ParseTask(std::string_view name) {
  if (name == "single") return Task::kSingle;
  if (name == "multi") return Task::kMulti;
  Fail(ErrorCode::kConfig, "unknown task '" + std::string(name) + "' (expected single or multi)");
}

std::string TargetInstance::TargetKey() const {
  std::string key;
  for (const auto& t : target) {
    if (!key.empty()) key.push_back(' ');
    key += t;
  }
  return key;
}

std::size_t SentenceLength(const TargetInstance& instance) { return instance.sentence.size(); }

std::vector<TargetInstance> LoadDataset(const std::filesystem::path& path, ScoreInterval interval) {
  std::ifstream in = io::OpenInput(path);
  const std::string where = path.string();
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kFormat, where + ": empty file");
  auto header = io::SplitTabs(io::ChompCr(line));
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  };
  auto id_col = column("id"), corpus_col = column("corpus"), sentence_col = column("sentence"),
       token_col = column("token");
  auto gold_col = column("complexity");
  if (!id_col || !corpus_col || !sentence_col || !token_col) {
    Fail(ErrorCode::kFormat, where + ": header must contain id, corpus, sentence and token");
  }
  std::vector<TargetInstance> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = io::ChompCr(line);
    if (text.empty()) continue;
    auto fields = io::SplitTabs(text);
    const std::string at = where + ":" + std::to_string(lineno);
    std::size_t needed = std::max({*id_col, *corpus_col, *sentence_col, *token_col}) + 1;
    if (fields.size() < needed) Fail(ErrorCode::kFormat, at + ": too few columns");
    TargetInstance inst;
    inst.id = std::string(fields[*id_col]);
    try {
      inst.corpus = ParseCorpus(fields[*corpus_col]);
    } catch (const Error& e) {
      Fail(ErrorCode::kData, at + ": " + e.what());
    }
    inst.sentence = Tokenize(fields[*sentence_col]);
    inst.target = Tokenize(fields[*token_col]);
    if (inst.target.empty() || inst.target.size() > 2) {
      Fail(ErrorCode::kData, at + ": target '" + std::string(fields[*token_col]) +
                                 "' must be one or two tokens");
    }
    if (gold_col && *gold_col < fields.size() && !fields[*gold_col].empty()) {
      auto gold = io::ParseDouble(fields[*gold_col]);
      if (!gold) Fail(ErrorCode::kData, at + ": complexity is not a finite number");
      if (*gold < interval.lo || *gold > interval.hi) {
        Fail(ErrorCode::kData, at + ": complexity " + io::FormatDouble(*gold) + " outside [" +
                                   io::FormatDouble(interval.lo) + ", " + io::FormatDouble(interval.hi) + "]");
      }
      inst.gold = *gold;
    }
    out.push_back(std::move(inst));
  }
  return out;
}

const char* FeatureGroupName(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::kLength: return "length";
    case FeatureGroup::kCorpusId: return "corpus_id";
    case FeatureGroup::kFrequency: return "frequency";
    case FeatureGroup::kNorm: return "norm";
    case FeatureGroup::kPsychometric: return "psychometric";
    case FeatureGroup::kAssociation: return "association";
  }
  return "?";
}

std::vector<FeatureGroup> ParseGroupSelector(std::string_view name) {
  std::string n = ToLower(name);
  if (n == "length") return {FeatureGroup::kLength};
  if (n == "corpus" || n == "corpus_id") return {FeatureGroup::kCorpusId};
  if (n == "freq" || n == "frequency" || n == "frequencies") return {FeatureGroup::kFrequency};
  if (n == "norm") return {FeatureGroup::kNorm};
  if (n == "psych" || n == "psychometric") return {FeatureGroup::kPsychometric};
  if (n == "norms") return {FeatureGroup::kNorm, FeatureGroup::kPsychometric};
  if (n == "assoc" || n == "association" || n == "bigram") return {FeatureGroup::kAssociation};
  Fail(ErrorCode::kConfig, "unknown feature group '" + std::string(name) + "'");
}

std::vector<std::string> FeatureSchema::Names() const {
  std::vector<std::string> names;
  names.reserve(features.size());
  for (const auto& f : features) names.push_back(f.name);
  return names;
}

std::vector<std::size_t> FeatureSchema::ColumnsInGroups(std::span<const FeatureGroup> groups) const {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (std::find(groups.begin(), groups.end(), features[i].group) != groups.end()) cols.push_back(i);
  }
  return cols;
}

bool FeatureSchema::HasGroup(FeatureGroup g) const {
  return std::any_of(features.begin(), features.end(), [g](const auto& f) { return f.group == g; });
}

FeatureSchema FeatureSchema::Select(std::span<const std::size_t> columns) const {
  FeatureSchema out{task, {}};
  for (std::size_t c : columns) out.features.push_back(features.at(c));
  return out;
}

bool SchemaConfig::Enabled(FeatureGroup g) const {
  return std::find(groups.begin(), groups.end(), g) != groups.end();
}

SchemaConfig SchemaConfig::FromJson(std::string_view json_text, const std::filesystem::path& base) {
  SchemaConfig c;
  try {
    auto doc = nlohmann::json::parse(json_text);
    c.task = ParseTask(doc.value("task", std::string("single")));
    if (doc.contains("groups")) {
      for (const auto& g : doc["groups"]) {
        for (FeatureGroup fg : ParseGroupSelector(g.get<std::string>())) {
          if (!c.Enabled(fg)) c.groups.push_back(fg);
        }
      }
    } else {
      c.groups = {FeatureGroup::kLength, FeatureGroup::kCorpusId, FeatureGroup::kFrequency,
                  FeatureGroup::kNorm, FeatureGroup::kPsychometric, FeatureGroup::kAssociation};
    }
    if (doc.contains("manifest") && !doc["manifest"].is_null()) {
      std::filesystem::path p(doc["manifest"].get<std::string>());
      c.manifest = p.is_absolute() ? p : base / p;
    }
    if (doc.contains("score_interval")) {
      const auto& si = doc["score_interval"];
      c.interval = {si.at(0).get<double>(), si.at(1).get<double>()};
      if (!(c.interval.lo < c.interval.hi)) Fail(ErrorCode::kConfig, "score_interval must be [lo, hi] with lo < hi");
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kConfig, std::string("schema config: ") + e.what());
  }
  return c;
}

SchemaConfig SchemaConfig::Load(const std::filesystem::path& path) {
  return FromJson(io::ReadFile(path), path.parent_path());
}

FeatureSchema BuildSchema(const SchemaConfig& config, const Resources& resources) {
  FeatureSchema schema{config.task, {}};
  auto& fs = schema.features;
  if (config.Enabled(FeatureGroup::kLength)) {
    fs.push_back({"sentence_length", FeatureGroup::kLength, Aggregation::kSingle, "", 0});
  }
  if (config.Enabled(FeatureGroup::kCorpusId)) {
    for (std::size_t c = 0; c < kNumCorpora; ++c) {
      fs.push_back({std::string("corpus_") + CorpusName(static_cast<Corpus>(c)), FeatureGroup::kCorpusId,
                    Aggregation::kSingle, "", c});
    }
  }
  for (const auto& table : resources.tables) {
    FeatureGroup g = table.group == LexiconGroup::kFrequency ? FeatureGroup::kFrequency
                     : table.group == LexiconGroup::kNorm    ? FeatureGroup::kNorm
                                                             : FeatureGroup::kPsychometric;
    if (!config.Enabled(g)) continue;
    if (config.task == Task::kSingle) {
      fs.push_back({table.name, g, Aggregation::kSingle, table.name, 0});
    } else {
      fs.push_back({table.name + "_min", g, Aggregation::kMin, table.name, 0});
      fs.push_back({table.name + "_max", g, Aggregation::kMax, table.name, 0});
    }
  }
  if (config.task == Task::kMulti && config.Enabled(FeatureGroup::kAssociation)) {
    if (resources.frequency_models.empty()) {
      LogWarning("association features enabled but the manifest lists no frequency models");
    }
    for (const auto& fm : resources.frequency_models) {
      for (std::size_t m = 0; m < AssocScores::kCount; ++m) {
        fs.push_back({"assoc_" + fm.name + "_" + std::string(AssocScores::kNames[m]),
                      FeatureGroup::kAssociation, Aggregation::kSingle, fm.name, m});
      }
    }
  }
  std::unordered_set<std::string> seen;
  for (const auto& f : fs) {
    if (!seen.insert(f.name).second) Fail(ErrorCode::kConfig, "duplicate feature name '" + f.name + "'");
  }
  return schema;
}

namespace {

const LexiconTable& FindTable(const Resources& r, const std::string& name) {
  for (const auto& t : r.tables) {
    if (t.name == name) return t;
  }
  Fail(ErrorCode::kConfig, "schema references lexicon table '" + name + "' not present in resources");
}

const FrequencyModel& FindModel(const Resources& r, const std::string& name) {
  for (const auto& m : r.frequency_models) {
    if (m.name == name) return m.model;
  }
  Fail(ErrorCode::kConfig, "schema references frequency model '" + name + "' not present in resources");
}


}  // namespace

std::vector<double> Featurize(const TargetInstance& instance, const Resources& resources,
                              const FeatureSchema& schema) {
  if (instance.task() != schema.task) {
    Fail(ErrorCode::kConfig, "instance '" + instance.id + "' is a " + TaskName(instance.task()) +
                                 "-word target but the schema is for the " + TaskName(schema.task) + " task");
  }
  std::vector<double> row(schema.size(), kMissing);
  // per-call caches keyed by source name; schemas list each table twice for bigrams
  const LexiconTable* last_table = nullptr;
  std::vector<double> word_values;
  const FrequencyModel* last_model = nullptr;
  std::array<std::optional<double>, AssocScores::kCount> scores;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const auto& f = schema.features[i];
    switch (f.group) {
      case FeatureGroup::kLength:
        row[i] = static_cast<double>(SentenceLength(instance));
        break;
      case FeatureGroup::kCorpusId:
        row[i] = static_cast<std::size_t>(instance.corpus) == f.index ? 1.0 : 0.0;
        break;
      case FeatureGroup::kFrequency:
      case FeatureGroup::kNorm:
      case FeatureGroup::kPsychometric: {
        const LexiconTable& table = FindTable(resources, f.source);
        if (&table != last_table) {
          word_values.clear();
          for (const auto& w : instance.target) {
            if (auto v = Lookup(table, w, resources.lemmas.LemmaOf(w))) word_values.push_back(*v);
          }
          last_table = &table;
        }
        if (word_values.empty()) break;
        if (f.aggregation == Aggregation::kMin) {
          row[i] = *std::min_element(word_values.begin(), word_values.end());
        } else if (f.aggregation == Aggregation::kMax) {
          row[i] = *std::max_element(word_values.begin(), word_values.end());
        } else {
          row[i] = word_values.front();
        }
        break;
      }
      case FeatureGroup::kAssociation: {
        if (instance.target.size() != 2) break;
        const FrequencyModel& model = FindModel(resources, f.source);
        if (&model != last_model) {
          scores = ScorePair(model, instance.target[0], instance.target[1]).AsArray();
          last_model = &model;
        }
        if (f.index < scores.size() && scores[f.index]) row[i] = *scores[f.index];
        break;
      }
    }
  }
  return row;
}

FeatureMatrix::FeatureMatrix(FeatureSchema schema, std::size_t rows)
    : schema_(std::move(schema)), rows_(rows), values_(rows * schema_.size(), kMissing), ids_(rows) {}

FeatureMatrix FeatureMatrix::SelectColumns(std::span<const std::size_t> columns) const {
  FeatureMatrix out(schema_.Select(columns), rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < columns.size(); ++j) out.at(r, j) = at(r, columns[j]);
  }
  out.ids_ = ids_;
  out.targets_ = targets_;
  return out;
}

FeatureMatrix FeatureMatrix::SelectRows(std::span<const std::size_t> rows) const {
  FeatureMatrix out(schema_, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
    out.ids_[i] = ids_.at(rows[i]);
  }
  if (targets_) {
    std::vector<double> t(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) t[i] = (*targets_)[rows[i]];
    out.targets_ = std::move(t);
  }
  return out;
}

namespace {

bool TargetInSentence(const TargetInstance& inst) {
  const auto& s = inst.sentence;
  const auto& t = inst.target;
  return std::search(s.begin(), s.end(), t.begin(), t.end()) != s.end();
}

}  // namespace

FeatureMatrix AssembleMatrix(std::span<const TargetInstance> instances, const Resources& resources,
                             const FeatureSchema& schema, std::size_t workers) {
  for (const auto& inst : instances) {
    if (inst.task() != instances.front().task()) {
      Fail(ErrorCode::kConfig, "dataset mixes single-word and two-word targets");
    }
  }
  FeatureMatrix m(schema, instances.size());
  std::size_t unmatched = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    m.ids()[i] = instances[i].id;
    if (!TargetInSentence(instances[i])) ++unmatched;
  }
  if (unmatched > 0) {
    LogWarning(std::to_string(unmatched) + " target(s) do not occur in their sentence");
  }
  if (!instances.empty() && instances.front().task() != schema.task) {
    Fail(ErrorCode::kConfig, std::string("dataset holds ") + TaskName(instances.front().task()) +
                                 "-word targets but the schema is for the " + TaskName(schema.task) + " task");
  }
  ThreadPool pool(workers);
  pool.ParallelFor(instances.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto values = Featurize(instances[i], resources, schema);
      std::copy(values.begin(), values.end(), m.row(i).begin());
    }
  });
  bool labeled = !instances.empty() &&
                 std::all_of(instances.begin(), instances.end(), [](const auto& x) { return x.gold.has_value(); });
  if (labeled) {
    std::vector<double> t;
    t.reserve(instances.size());
    for (const auto& inst : instances) t.push_back(*inst.gold);
    m.set_targets(std::move(t));
  }
  return m;
}

void WriteMatrixTsv(const FeatureMatrix& m, std::ostream& out) {
  const auto names = m.schema().Names();
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "\t" : "") << names[c];
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << '\t';
      double v = m.at(r, c);
      if (!IsMissing(v)) out << io::FormatDouble(v);
    }
    out << '\n';
  }
}

FeatureMatrix ReadMatrixTsv(const std::filesystem::path& path) {
  std::ifstream in = io::OpenInput(path);
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kFormat, path.string() + ": empty file");
  FeatureSchema schema;
  for (auto name : io::SplitTabs(io::ChompCr(line))) {
    schema.features.push_back({std::string(name), FeatureGroup::kLength, Aggregation::kSingle, "", 0});
  }
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto text = io::ChompCr(line);
    if (text.empty() && schema.size() > 1) continue;
    auto fields = io::SplitTabs(text);
    if (fields.size() != schema.size()) {
      Fail(ErrorCode::kFormat, path.string() + ":" + std::to_string(lineno) + ": expected " +
                                   std::to_string(schema.size()) + " fields");
    }
    std::vector<double> row(fields.size(), kMissing);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c].empty()) continue;
      auto v = io::ParseDouble(fields[c]);
      if (!v) Fail(ErrorCode::kFormat, path.string() + ":" + std::to_string(lineno) + ": bad number");
      row[c] = *v;
    }
    rows.push_back(std::move(row));
  }
  FeatureMatrix m(std::move(schema), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    m.ids()[r] = std::to_string(r);
  }
  return m;
}

}  // namespace lcp
