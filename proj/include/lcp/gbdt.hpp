#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcp/features.hpp"

namespace lcp::gbdt {

// Defaults are the tuned values used for both lexical complexity tasks.
struct Params {
  int num_iterations = 4800;
  double learning_rate = 0.0035;
  int num_leaves = 11;
  int max_depth = 7;  // <= 0 means unlimited
  int min_data_in_leaf = 7;
  double lambda_l2 = 0.0175;
  int bagging_freq = 5;
  double bagging_fraction = 0.66;
  double feature_fraction = 0.09;
  int max_bin = 64;
  int min_data_in_bin = 10;
  std::uint64_t seed = 0;

  void Validate() const;

  // Keys not present keep their default; unknown keys are rejected.
  static Params FromJson(std::string_view json_text);
  static Params Load(const std::filesystem::path& path);
  std::string ToJson() const;

  friend bool operator==(const Params&, const Params&) = default;
};

// Quantile binning of one feature column. Bin of x is the index of the first
// boundary > x; missing values go to the reserved bin num_bins().
class BinMapper {
 public:
  using Bin = std::uint16_t;
  static constexpr int kMaxBins = 65535;

  BinMapper() = default;

  // Cut points fall at value ranks so non-missing rows spread as evenly as the
  // data allows over at most max_bin bins. Equal values share a bin and every
  // bin holds at least min_data_in_bin rows where the column has that many.
  // Each boundary is the smallest value of the bin above it, so a strictly
  // increasing transform of the column maps bins onto the same rows.
  static BinMapper Build(std::span<const double> column, int max_bin, int min_data_in_bin);
  static BinMapper FromBoundaries(std::vector<double> boundaries, bool degenerate);

  Bin BinOf(double x) const;
  int num_bins() const { return degenerate_ ? 0 : static_cast<int>(boundaries_.size()) + 1; }
  Bin missing_bin() const { return static_cast<Bin>(num_bins()); }
  bool degenerate() const { return degenerate_; }
  const std::vector<double>& boundaries() const { return boundaries_; }

 private:
  std::vector<double> boundaries_;
  bool degenerate_ = true;
};

// Feature-major binned copy of a matrix.
struct BinnedData {
  std::size_t rows = 0;
  std::vector<BinMapper> mappers;
  std::vector<std::vector<BinMapper::Bin>> bins;  // [feature][row]

  static BinnedData Build(const FeatureMatrix& m, int max_bin, int min_data_in_bin);
};

struct Split {
  int feature = -1;
  BinMapper::Bin threshold = 0;  // bins <= threshold go left
  bool default_left = true;      // direction for the missing bin
  double gain = 0.0;
  double left_sum = 0.0, right_sum = 0.0;
  std::size_t left_count = 0, right_count = 0;
};

// Per-bin gradient sums and row counts for one feature; the last slot is the
// missing bin.
struct Histogram {
  std::vector<double> grad;
  std::vector<std::size_t> count;
};

// Best split of one leaf for squared error with unit curvature:
//   gain = GL^2/(HL+l2) + GR^2/(HR+l2) - GP^2/(HP+l2)
// with H the row counts. Missing rows are tried on both sides. Ties go to the
// lowest feature, then the lowest threshold, then missing-left. Returns
// nothing when no candidate has positive gain while leaving min_data_in_leaf
// rows on each side. `features` must be ascending.
std::optional<Split> FindBestSplit(std::span<const Histogram> histograms,
                                   std::span<const int> features, double parent_sum,
                                   std::size_t parent_count, const Params& params);

struct Tree {
  // Internal nodes. Child indices >= 0 are nodes, < 0 encode leaf ~child.
  std::vector<int> split_feature;
  std::vector<BinMapper::Bin> threshold_bin;
  std::vector<std::uint8_t> default_left;
  std::vector<int> left_child;
  std::vector<int> right_child;
  std::vector<double> split_gain;
  // Leaves.
  std::vector<double> leaf_value;
  std::vector<std::size_t> leaf_count;
  std::vector<int> leaf_depth;

  int num_leaves() const { return static_cast<int>(leaf_value.size()); }
  int depth() const;

  template <typename BinFn>
  int LeafIndex(BinFn&& bin_of_feature, std::span<const BinMapper> mappers) const {
    if (split_feature.empty()) return 0;
    int node = 0;
    for (;;) {
      const int f = split_feature[node];
      const BinMapper::Bin b = bin_of_feature(f);
      bool left = b == mappers[f].missing_bin() ? default_left[node] != 0 : b <= threshold_bin[node];
      int next = left ? left_child[node] : right_child[node];
      if (next < 0) return ~next;
      node = next;
    }
  }
};

class Model {
 public:
  Model() = default;

  double base_score() const { return base_score_; }
  const std::vector<Tree>& trees() const { return trees_; }
  const std::vector<BinMapper>& mappers() const { return mappers_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const Params& params() const { return params_; }

  // Optional opaque JSON object carried through persistence (feature pipeline
  // configuration for prediction from raw datasets).
  const std::string& pipeline_json() const { return pipeline_json_; }
  void set_pipeline_json(std::string json) { pipeline_json_ = std::move(json); }

  double Predict(std::span<const double> row) const;
  // Columns must match the training schema by name and order.
  std::vector<double> Predict(const FeatureMatrix& m, std::size_t workers = 1) const;

  std::string ToJson() const;
  static Model FromJson(std::string_view json_text);
  void Save(const std::filesystem::path& path) const;
  static Model Load(const std::filesystem::path& path);

 private:
  friend class Trainer;

  Params params_;
  std::vector<std::string> feature_names_;
  std::vector<BinMapper> mappers_;
  double base_score_ = 0.0;
  std::vector<Tree> trees_;
  std::string pipeline_json_;
};

struct TrainOptions {
  std::size_t workers = 1;
  // When set, receives full-data training MSE after each iteration.
  std::vector<double>* loss_history = nullptr;
};

// Gradient boosting with leaf-wise growth. Base score is the gold mean. Every
// bagging_freq iterations (from iteration 0) a fresh row sample of
// floor(bagging_fraction * n) rows is drawn and reused until the next
// refresh; each tree sees max(1, floor(feature_fraction * F)) features.
// Samples come from Rng(seed + iteration) on separate streams.
// Results do not depend on options.workers.
Model Train(const FeatureMatrix& m, const Params& params, const TrainOptions& options = {});

}  // namespace lcp::gbdt
