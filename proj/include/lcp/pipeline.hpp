#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcp/features.hpp"
#include "lcp/lexicon.hpp"

namespace lcp {

// Loaded feature configuration: schema config, manifest, resources and the
// resulting schema. Immutable after construction.
class Pipeline {
 public:
  // The manifest argument wins over the schema config's "manifest" entry; one
  // of the two must be given.
  static Pipeline Open(const std::filesystem::path& schema_path,
                       const std::filesystem::path& manifest_path = {});
  // Inverse of ToJson.
  static Pipeline FromJson(std::string_view json_text);

  // {"manifest": <absolute path>, "schema": <config object>}
  std::string ToJson() const;

  const SchemaConfig& config() const { return config_; }
  const Manifest& manifest() const { return manifest_; }
  const Resources& resources() const { return resources_; }
  const FeatureSchema& schema() const { return schema_; }

  std::vector<TargetInstance> LoadInstances(const std::filesystem::path& data_path) const;
  FeatureMatrix Featurize(std::span<const TargetInstance> instances, std::size_t workers = 1) const;

 private:
  static Pipeline Build(SchemaConfig config, const std::filesystem::path& manifest_path);

  SchemaConfig config_;
  Manifest manifest_;
  Resources resources_;
  FeatureSchema schema_;
};

// True when the file's header looks like a dataset (id/corpus/sentence/token)
// rather than a feature matrix.
bool IsDatasetFile(const std::filesystem::path& path);

}  // namespace lcp
