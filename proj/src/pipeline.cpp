#include "lcp/pipeline.hpp"

#include <json.hpp>

#include "lcp/error.hpp"
#include "text_io.hpp"

namespace lcp {

Pipeline Pipeline::Build(SchemaConfig config, const std::filesystem::path& manifest_path) {
  Pipeline p;
  p.config_ = std::move(config);
  p.manifest_ = Manifest::Load(manifest_path);
  p.resources_ = Resources::Load(p.manifest_);
  p.schema_ = BuildSchema(p.config_, p.resources_);
  return p;
}

Pipeline Pipeline::Open(const std::filesystem::path& schema_path, const std::filesystem::path& manifest_path) {
  SchemaConfig config = SchemaConfig::Load(schema_path);
  std::filesystem::path manifest = manifest_path;
  if (manifest.empty()) {
    if (!config.manifest) {
      Fail(ErrorCode::kConfig, "no manifest given and " + schema_path.string() + " names none");
    }
    manifest = *config.manifest;
  }
  manifest = std::filesystem::absolute(manifest);
  config.manifest = manifest;
  return Build(std::move(config), manifest);
}

std::string Pipeline::ToJson() const {
  nlohmann::ordered_json schema;
  schema["task"] = TaskName(config_.task);
  std::vector<std::string> groups;
  for (FeatureGroup g : config_.groups) groups.push_back(FeatureGroupName(g));
  schema["groups"] = groups;
  schema["score_interval"] = {config_.interval.lo, config_.interval.hi};
  nlohmann::ordered_json doc;
  doc["manifest"] = std::filesystem::absolute(manifest_.source).string();
  doc["schema"] = std::move(schema);
  doc["features"] = schema_.Names();
  return doc.dump();
}

Pipeline Pipeline::FromJson(std::string_view json_text) {
  nlohmann::json doc;
  std::filesystem::path manifest;
  try {
    doc = nlohmann::json::parse(json_text);
    manifest = doc.at("manifest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kConfig, std::string("pipeline: ") + e.what());
  }
  Pipeline p = Build(SchemaConfig::FromJson(doc["schema"].dump()), manifest);
  p.config_.manifest = manifest;
  if (doc.contains("features") && doc["features"].get<std::vector<std::string>>() != p.schema_.Names()) {
    Fail(ErrorCode::kConfig, "resources changed since training: feature schema differs");
  }
  return p;
}

std::vector<TargetInstance> Pipeline::LoadInstances(const std::filesystem::path& data_path) const {
  return LoadDataset(data_path, config_.interval);
}

FeatureMatrix Pipeline::Featurize(std::span<const TargetInstance> instances, std::size_t workers) const {
  return AssembleMatrix(instances, resources_, schema_, workers);
}

bool IsDatasetFile(const std::filesystem::path& path) {
  std::ifstream in = io::OpenInput(path);
  std::string line;
  if (!std::getline(in, line)) return false;
  bool id = false, sentence = false, token = false;
  for (auto f : io::SplitTabs(io::ChompCr(line))) {
    id |= f == "id";
    sentence |= f == "sentence";
    token |= f == "token";
  }
  return id && sentence && token;
}

}  // namespace lcp
