#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "lcp/corpus_stats.hpp"
#include "lcp/features.hpp"
#include "lcp/rng.hpp"

namespace lcp::test {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::uint64_t counter = 0;
    Rng rng(reinterpret_cast<std::uintptr_t>(this) ^ ++counter);
    path_ = std::filesystem::temp_directory_path() / ("lcp_test_" + std::to_string(rng.Next()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void WriteText(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline FeatureSchema PlainSchema(std::size_t cols) {
  FeatureSchema s;
  for (std::size_t c = 0; c < cols; ++c) {
    s.features.push_back({"f" + std::to_string(c), FeatureGroup::kLength, Aggregation::kSingle, "", 0});
  }
  return s;
}

// Row-major values, one target per row.
inline FeatureMatrix MakeMatrix(const std::vector<std::vector<double>>& rows, const std::vector<double>& y,
                                FeatureSchema schema = {}) {
  const std::size_t cols = rows.empty() ? schema.size() : rows[0].size();
  if (schema.features.empty()) schema = PlainSchema(cols);
  FeatureMatrix m(schema, rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.ids()[r] = std::to_string(r);
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  m.set_targets(y);
  return m;
}

inline std::vector<double> Column(const FeatureMatrix& m, std::size_t c) {
  std::vector<double> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = m.at(r, c);
  return out;
}

// Copy of the bundled mini dataset with its reference counts in place.
inline void PrepareMini(const std::filesystem::path& dir) {
  std::filesystem::copy(LCP_TEST_DATA_DIR "/mini", dir, std::filesystem::copy_options::recursive);
  FrequencyModel::CountFile(dir / "corpus.txt").Dump((dir / "ref").string());
}

}  // namespace lcp::test
