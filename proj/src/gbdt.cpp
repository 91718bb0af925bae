#include "lcp/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <json.hpp>

#include "lcp/error.hpp"
#include "lcp/rng.hpp"
#include "lcp/thread_pool.hpp"
#include "text_io.hpp"

namespace lcp::gbdt {

namespace {

constexpr double kMinGain = 1e-15;
constexpr std::uint64_t kBaggingStream = 1;
constexpr std::uint64_t kFeatureStream = 2;
// Below this many (row x feature) cells a parallel region costs more than it saves.
constexpr std::size_t kParallelCells = 1 << 14;

using Json = nlohmann::ordered_json;

}  // namespace

// ---------------------------------------------------------------- Params

void Params::Validate() const {
  auto bad = [](const std::string& what) { Fail(ErrorCode::kConfig, "invalid parameter: " + what); };
  if (num_iterations < 0) bad("num_iterations must be >= 0");
  if (!(learning_rate > 0) || !std::isfinite(learning_rate)) bad("learning_rate must be > 0");
  if (num_leaves < 2) bad("num_leaves must be >= 2");
  if (min_data_in_leaf < 0) bad("min_data_in_leaf must be >= 0");
  if (!(lambda_l2 >= 0) || !std::isfinite(lambda_l2)) bad("lambda_l2 must be >= 0");
  if (bagging_freq < 0) bad("bagging_freq must be >= 0");
  if (!(bagging_fraction > 0 && bagging_fraction <= 1)) bad("bagging_fraction must be in (0, 1]");
  if (!(feature_fraction > 0 && feature_fraction <= 1)) bad("feature_fraction must be in (0, 1]");
  if (max_bin < 2 || max_bin > BinMapper::kMaxBins - 1) bad("max_bin must be in [2, 65534]");
  if (min_data_in_bin < 1) bad("min_data_in_bin must be >= 1");
}

Params Params::FromJson(std::string_view json_text) {
  Params p;
  try {
    auto doc = nlohmann::json::parse(json_text);
    if (!doc.is_object()) Fail(ErrorCode::kConfig, "params must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (key == "num_iterations") p.num_iterations = value.get<int>();
      else if (key == "learning_rate") p.learning_rate = value.get<double>();
      else if (key == "num_leaves") p.num_leaves = value.get<int>();
      else if (key == "max_depth") p.max_depth = value.get<int>();
      else if (key == "min_data_in_leaf") p.min_data_in_leaf = value.get<int>();
      else if (key == "lambda_l2") p.lambda_l2 = value.get<double>();
      else if (key == "bagging_freq") p.bagging_freq = value.get<int>();
      else if (key == "bagging_fraction") p.bagging_fraction = value.get<double>();
      else if (key == "feature_fraction") p.feature_fraction = value.get<double>();
      else if (key == "max_bin") p.max_bin = value.get<int>();
      else if (key == "min_data_in_bin") p.min_data_in_bin = value.get<int>();
      else if (key == "seed") p.seed = value.get<std::uint64_t>();
      else Fail(ErrorCode::kConfig, "unknown parameter '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kConfig, std::string("params: ") + e.what());
  }
  p.Validate();
  return p;
}

Params Params::Load(const std::filesystem::path& path) { return FromJson(io::ReadFile(path)); }

namespace {

Json ParamsToJson(const Params& p) {
  Json j;
  j["num_iterations"] = p.num_iterations;
  j["learning_rate"] = p.learning_rate;
  j["num_leaves"] = p.num_leaves;
  j["max_depth"] = p.max_depth;
  j["min_data_in_leaf"] = p.min_data_in_leaf;
  j["lambda_l2"] = p.lambda_l2;
  j["bagging_freq"] = p.bagging_freq;
  j["bagging_fraction"] = p.bagging_fraction;
  j["feature_fraction"] = p.feature_fraction;
  j["max_bin"] = p.max_bin;
  j["min_data_in_bin"] = p.min_data_in_bin;
  j["seed"] = p.seed;
  return j;
}

}  // namespace

std::string Params::ToJson() const { return ParamsToJson(*this).dump(2); }

// ---------------------------------------------------------------- binning

BinMapper BinMapper::Build(std::span<const double> column, int max_bin, int min_data_in_bin) {
  std::vector<double> values;
  values.reserve(column.size());
  for (double v : column) {
    if (!IsMissing(v)) values.push_back(v);
  }
  BinMapper mapper;
  if (values.empty()) return mapper;
  mapper.degenerate_ = false;
  std::sort(values.begin(), values.end());

  std::vector<double> distinct;
  std::vector<std::size_t> counts;
  for (double v : values) {
    if (distinct.empty() || v != distinct.back()) {
      distinct.push_back(v);
      counts.push_back(1);
    } else {
      ++counts.back();
    }
  }

  const std::size_t d = distinct.size();
  const auto min_rows = static_cast<std::size_t>(std::max(min_data_in_bin, 1));
  const bool one_per_value = d <= static_cast<std::size_t>(max_bin);
  double remaining_rows = static_cast<double>(values.size());
  int remaining_bins = max_bin;
  std::size_t acc = 0;
  for (std::size_t i = 0; i < d; ++i) {
    acc += counts[i];
    if (i + 1 == d || remaining_bins <= 1 || acc < min_rows) continue;
    bool cut = one_per_value;
    if (!cut) {
      const double target = remaining_rows / remaining_bins;
      const double here = static_cast<double>(acc);
      const double next = here + static_cast<double>(counts[i + 1]);
      // cut once the bin is full, or now if taking the next value would
      // overshoot the target by more than we currently fall short
      cut = here >= target || (next > target && next - target > target - here);
    }
    if (cut) {
      mapper.boundaries_.push_back(distinct[i + 1]);
      remaining_rows -= static_cast<double>(acc);
      --remaining_bins;
      acc = 0;
    }
  }
  // last bin too small: fold it into its left neighbour
  if (!mapper.boundaries_.empty() && acc < min_rows) mapper.boundaries_.pop_back();
  return mapper;
}

BinMapper BinMapper::FromBoundaries(std::vector<double> boundaries, bool degenerate) {
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (!(boundaries[i - 1] < boundaries[i])) {
      Fail(ErrorCode::kFormat, "bin boundaries must be strictly increasing");
    }
  }
  if (degenerate && !boundaries.empty()) Fail(ErrorCode::kFormat, "degenerate bin mapper with boundaries");
  if (boundaries.size() + 1 >= static_cast<std::size_t>(kMaxBins)) Fail(ErrorCode::kFormat, "too many bins");
  BinMapper m;
  m.boundaries_ = std::move(boundaries);
  m.degenerate_ = degenerate;
  return m;
}

BinMapper::Bin BinMapper::BinOf(double x) const {
  if (degenerate_ || IsMissing(x)) return missing_bin();
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), x);
  return static_cast<Bin>(it - boundaries_.begin());
}

BinnedData BinnedData::Build(const FeatureMatrix& m, int max_bin, int min_data_in_bin) {
  BinnedData data;
  data.rows = m.rows();
  data.mappers.resize(m.cols());
  data.bins.resize(m.cols());
  std::vector<double> column(m.rows());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    for (std::size_t r = 0; r < m.rows(); ++r) column[r] = m.at(r, f);
    data.mappers[f] = BinMapper::Build(column, max_bin, min_data_in_bin);
    auto& b = data.bins[f];
    b.resize(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) b[r] = data.mappers[f].BinOf(column[r]);
  }
  return data;
}

// ---------------------------------------------------------------- splits

std::optional<Split> FindBestSplit(std::span<const Histogram> histograms, std::span<const int> features,
                                   double parent_sum, std::size_t parent_count, const Params& params) {
  const double l2 = params.lambda_l2;
  const auto min_leaf = static_cast<std::size_t>(std::max(params.min_data_in_leaf, 1));
  if (parent_count < 2 * min_leaf) return std::nullopt;
  const double parent_score = parent_sum * parent_sum / (static_cast<double>(parent_count) + l2);

  Split best;
  best.gain = kMinGain;
  bool found = false;
  for (std::size_t j = 0; j < features.size(); ++j) {
    const Histogram& h = histograms[j];
    if (h.grad.size() < 2) continue;
    const std::size_t real_bins = h.grad.size() - 1;
    const double miss_sum = h.grad[real_bins];
    const std::size_t miss_count = h.count[real_bins];
    double acc_sum = 0.0;
    std::size_t acc_count = 0;
    for (std::size_t t = 0; t < real_bins; ++t) {
      acc_sum += h.grad[t];
      acc_count += h.count[t];
      for (int dir = 0; dir < 2; ++dir) {
        const bool missing_left = dir == 0;
        if (!missing_left && miss_count == 0) continue;
        const double left_sum = acc_sum + (missing_left ? miss_sum : 0.0);
        const std::size_t left_count = acc_count + (missing_left ? miss_count : 0);
        if (left_count < min_leaf || left_count > parent_count - min_leaf) continue;
        const std::size_t right_count = parent_count - left_count;
        const double right_sum = parent_sum - left_sum;
        const double gain = left_sum * left_sum / (static_cast<double>(left_count) + l2) +
                            right_sum * right_sum / (static_cast<double>(right_count) + l2) - parent_score;
        if (gain > best.gain) {
          found = true;
          best.feature = features[j];
          best.threshold = static_cast<BinMapper::Bin>(t);
          best.default_left = missing_left;
          best.gain = gain;
          best.left_sum = left_sum;
          best.right_sum = right_sum;
          best.left_count = left_count;
          best.right_count = right_count;
        }
      }
    }
  }
  if (!found) return std::nullopt;
  return best;
}

int Tree::depth() const {
  int d = 0;
  for (int x : leaf_depth) d = std::max(d, x);
  return d;
}

// ---------------------------------------------------------------- training

class Trainer {
 public:
  Trainer(const BinnedData& data, const Params& params, ThreadPool& pool)
      : data_(data), params_(params), pool_(pool) {}

  Tree Grow(const std::vector<std::size_t>& sample, const std::vector<double>& grad,
            const std::vector<int>& features);

  static Model Run(const FeatureMatrix& m, const Params& params, const TrainOptions& options);

 private:
  struct Leaf {
    std::vector<std::size_t> rows;
    double sum = 0.0;
    int depth = 0;
    int parent = -1;  // node index, -1 for the root leaf
    bool is_left = true;
    std::optional<Split> best;
  };

  void Evaluate(Leaf& leaf, const std::vector<double>& grad, const std::vector<int>& features);

  const BinnedData& data_;
  const Params& params_;
  ThreadPool& pool_;
  std::vector<Histogram> hist_;
};

void Trainer::Evaluate(Leaf& leaf, const std::vector<double>& grad, const std::vector<int>& features) {
  leaf.best.reset();
  const auto min_leaf = static_cast<std::size_t>(std::max(params_.min_data_in_leaf, 1));
  if (leaf.rows.size() < 2 * min_leaf) return;
  if (params_.max_depth > 0 && leaf.depth >= params_.max_depth) return;

  hist_.resize(features.size());
  auto build = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const int f = features[j];
      const auto slots = static_cast<std::size_t>(data_.mappers[f].num_bins()) + 1;
      Histogram& h = hist_[j];
      h.grad.assign(slots, 0.0);
      h.count.assign(slots, 0);
      const auto& bins = data_.bins[f];
      for (std::size_t r : leaf.rows) {
        const auto b = bins[r];
        h.grad[b] += grad[r];
        ++h.count[b];
      }
    }
  };
  // each feature's histogram is summed by one thread in row order
  if (leaf.rows.size() * features.size() >= kParallelCells) {
    pool_.ParallelFor(features.size(), build);
  } else {
    build(0, features.size());
  }
  leaf.best = FindBestSplit(hist_, features, leaf.sum, leaf.rows.size(), params_);
}

Tree Trainer::Grow(const std::vector<std::size_t>& sample, const std::vector<double>& grad,
                   const std::vector<int>& features) {
  std::vector<Leaf> leaves(1);
  leaves[0].rows = sample;
  for (std::size_t r : sample) leaves[0].sum += grad[r];
  Evaluate(leaves[0], grad, features);

  Tree tree;
  while (static_cast<int>(leaves.size()) < params_.num_leaves) {
    int pick = -1;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (leaves[i].best && (pick < 0 || leaves[i].best->gain > leaves[pick].best->gain)) {
        pick = static_cast<int>(i);
      }
    }
    if (pick < 0) break;

    const Split split = *leaves[pick].best;
    const int node = static_cast<int>(tree.split_feature.size());
    tree.split_feature.push_back(split.feature);
    tree.threshold_bin.push_back(split.threshold);
    tree.default_left.push_back(split.default_left ? 1 : 0);
    tree.split_gain.push_back(split.gain);
    const int right_index = static_cast<int>(leaves.size());
    tree.left_child.push_back(~pick);
    tree.right_child.push_back(~right_index);
    if (Leaf& l = leaves[pick]; l.parent >= 0) {
      (l.is_left ? tree.left_child : tree.right_child)[l.parent] = node;
    }

    Leaf right;
    {
      Leaf& left = leaves[pick];
      const auto& bins = data_.bins[split.feature];
      const auto missing = data_.mappers[split.feature].missing_bin();
      std::vector<std::size_t> keep;
      keep.reserve(split.left_count);
      right.rows.reserve(split.right_count);
      for (std::size_t r : left.rows) {
        const auto b = bins[r];
        const bool go_left = b == missing ? split.default_left : b <= split.threshold;
        (go_left ? keep : right.rows).push_back(r);
      }
      left.rows = std::move(keep);
      left.sum = 0.0;
      for (std::size_t r : left.rows) left.sum += grad[r];
      for (std::size_t r : right.rows) right.sum += grad[r];
      left.depth += 1;
      right.depth = left.depth;
      left.parent = node;
      left.is_left = true;
      right.parent = node;
      right.is_left = false;
    }
    leaves.push_back(std::move(right));
    Evaluate(leaves[pick], grad, features);
    Evaluate(leaves.back(), grad, features);
  }

  const auto min_leaf = static_cast<std::size_t>(std::max(params_.min_data_in_leaf, 0));
  for (const Leaf& leaf : leaves) {
    if (leaf.rows.size() < min_leaf || leaf.rows.empty()) {
      Fail(ErrorCode::kInternal, "leaf covers fewer than min_data_in_leaf rows");
    }
    const double h = static_cast<double>(leaf.rows.size());
    tree.leaf_value.push_back(-leaf.sum / (h + params_.lambda_l2) * params_.learning_rate);
    tree.leaf_count.push_back(leaf.rows.size());
    tree.leaf_depth.push_back(leaf.depth);
  }
  return tree;
}

Model Trainer::Run(const FeatureMatrix& m, const Params& params, const TrainOptions& options) {
  params.Validate();
  if (m.rows() == 0) Fail(ErrorCode::kTraining, "cannot train on an empty matrix");
  if (!m.targets()) Fail(ErrorCode::kData, "training matrix has no gold scores");
  const auto& y = *m.targets();
  for (double v : y) {
    if (!std::isfinite(v)) Fail(ErrorCode::kData, "gold scores must be finite");
  }
  const std::size_t n = m.rows();
  if (n < 2) Fail(ErrorCode::kTraining, "need at least 2 training rows");

  const bool bagging = params.bagging_fraction < 1.0 && params.bagging_freq > 0;
  const std::size_t bag_size =
      bagging ? static_cast<std::size_t>(std::floor(params.bagging_fraction * static_cast<double>(n))) : n;
  const auto min_leaf = static_cast<std::size_t>(std::max(params.min_data_in_leaf, 1));
  if (bag_size < min_leaf) {
    Fail(ErrorCode::kTraining, "cannot satisfy min_data_in_leaf=" + std::to_string(params.min_data_in_leaf) +
                                   " with " + std::to_string(bag_size) + " sampled rows of " + std::to_string(n));
  }

  Model model;
  model.params_ = params;
  model.feature_names_ = m.schema().Names();
  BinnedData data = BinnedData::Build(m, params.max_bin, params.min_data_in_bin);
  model.mappers_ = data.mappers;

  // shifted mean: exact for constant targets
  double shift_sum = 0.0;
  for (double v : y) shift_sum += v - y[0];
  model.base_score_ = y[0] + shift_sum / static_cast<double>(n);

  const std::size_t num_features = m.cols();
  const std::size_t per_tree =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(params.feature_fraction *
                                                                    static_cast<double>(num_features))));

  ThreadPool pool(options.workers);
  Trainer trainer(data, params, pool);
  std::vector<double> pred(n, model.base_score_);
  std::vector<double> grad(n);
  std::vector<std::size_t> sample(n);
  for (std::size_t i = 0; i < n; ++i) sample[i] = i;
  std::vector<int> features;
  const bool rows_parallel = n * std::max<std::size_t>(1, num_features) >= kParallelCells;

  model.trees_.reserve(static_cast<std::size_t>(params.num_iterations));
  for (int it = 0; it < params.num_iterations; ++it) {
    const std::uint64_t iter_seed = params.seed + static_cast<std::uint64_t>(it);
    if (bagging && it % params.bagging_freq == 0) {
      Rng rng(iter_seed, kBaggingStream);
      sample = SampleWithoutReplacement(n, bag_size, rng);
    }
    features.clear();
    if (num_features > 0) {
      if (per_tree >= num_features) {
        for (std::size_t f = 0; f < num_features; ++f) features.push_back(static_cast<int>(f));
      } else {
        Rng rng(iter_seed, kFeatureStream);
        for (std::size_t f : SampleWithoutReplacement(num_features, per_tree, rng)) {
          features.push_back(static_cast<int>(f));
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) grad[i] = pred[i] - y[i];

    Tree tree = trainer.Grow(sample, grad, features);
    auto update = [&](std::size_t begin, std::size_t end) {
      for (std::size_t r = begin; r < end; ++r) {
        int leaf = tree.LeafIndex([&](int f) { return data.bins[f][r]; }, data.mappers);
        pred[r] += tree.leaf_value[leaf];
      }
    };
    if (rows_parallel) {
      pool.ParallelFor(n, update);
    } else {
      update(0, n);
    }
    model.trees_.push_back(std::move(tree));

    if (options.loss_history) {
      double sse = 0.0;
      for (std::size_t i = 0; i < n; ++i) sse += (pred[i] - y[i]) * (pred[i] - y[i]);
      options.loss_history->push_back(sse / static_cast<double>(n));
    }
  }
  return model;
}

Model Train(const FeatureMatrix& m, const Params& params, const TrainOptions& options) {
  return Trainer::Run(m, params, options);
}

// ---------------------------------------------------------------- prediction

double Model::Predict(std::span<const double> row) const {
  if (row.size() != mappers_.size()) {
    Fail(ErrorCode::kConfig, "row has " + std::to_string(row.size()) + " features, model expects " +
                                 std::to_string(mappers_.size()));
  }
  double out = base_score_;
  for (const Tree& tree : trees_) {
    out += tree.leaf_value[tree.LeafIndex([&](int f) { return mappers_[f].BinOf(row[f]); }, mappers_)];
  }
  return out;
}

std::vector<double> Model::Predict(const FeatureMatrix& m, std::size_t workers) const {
  const auto names = m.schema().Names();
  if (names != feature_names_) {
    std::string detail = names.size() != feature_names_.size()
                             ? std::to_string(names.size()) + " columns vs " + std::to_string(feature_names_.size())
                             : "column names differ";
    Fail(ErrorCode::kConfig, "feature matrix does not match the model schema (" + detail + ")");
  }
  std::vector<double> out(m.rows());
  ThreadPool pool(workers);
  pool.ParallelFor(m.rows(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) out[r] = Predict(m.row(r));
  });
  return out;
}

// ---------------------------------------------------------------- persistence

std::string Model::ToJson() const {
  Json doc;
  doc["format"] = "lcp-gbdt";
  doc["version"] = 1;
  doc["objective"] = "regression_l2";
  doc["params"] = ParamsToJson(params_);
  doc["features"] = feature_names_;
  Json bins = Json::array();
  for (const auto& m : mappers_) {
    Json b;
    b["num_bins"] = m.num_bins();
    b["boundaries"] = m.boundaries();
    bins.push_back(std::move(b));
  }
  doc["bin_mappers"] = std::move(bins);
  doc["base_score"] = base_score_;
  Json trees = Json::array();
  for (const auto& t : trees_) {
    Json j;
    j["num_leaves"] = t.num_leaves();
    j["split_feature"] = t.split_feature;
    j["threshold_bin"] = t.threshold_bin;
    j["default_left"] = t.default_left;
    j["left_child"] = t.left_child;
    j["right_child"] = t.right_child;
    j["split_gain"] = t.split_gain;
    j["leaf_value"] = t.leaf_value;
    j["leaf_count"] = t.leaf_count;
    j["leaf_depth"] = t.leaf_depth;
    trees.push_back(std::move(j));
  }
  doc["trees"] = std::move(trees);
  if (!pipeline_json_.empty()) doc["pipeline"] = Json::parse(pipeline_json_);
  return doc.dump();
}

Model Model::FromJson(std::string_view json_text) {
  Model model;
  try {
    auto doc = Json::parse(json_text);
    if (doc.value("format", std::string()) != "lcp-gbdt") Fail(ErrorCode::kFormat, "not an lcp-gbdt model");
    if (doc.value("version", 0) != 1) Fail(ErrorCode::kFormat, "unsupported model version");
    model.params_ = Params::FromJson(doc.at("params").dump());
    model.feature_names_ = doc.at("features").get<std::vector<std::string>>();
    for (const auto& b : doc.at("bin_mappers")) {
      const int num_bins = b.at("num_bins").get<int>();
      auto boundaries = b.at("boundaries").get<std::vector<double>>();
      const bool degenerate = num_bins == 0;
      if (!degenerate && static_cast<std::size_t>(num_bins) != boundaries.size() + 1) {
        Fail(ErrorCode::kFormat, "bin mapper num_bins does not match its boundaries");
      }
      model.mappers_.push_back(BinMapper::FromBoundaries(std::move(boundaries), degenerate));
    }
    if (model.mappers_.size() != model.feature_names_.size()) {
      Fail(ErrorCode::kFormat, "bin mapper count does not match feature count");
    }
    model.base_score_ = doc.at("base_score").get<double>();
    const int num_features = static_cast<int>(model.feature_names_.size());
    for (const auto& j : doc.at("trees")) {
      Tree t;
      t.split_feature = j.at("split_feature").get<std::vector<int>>();
      t.threshold_bin = j.at("threshold_bin").get<std::vector<BinMapper::Bin>>();
      t.default_left = j.at("default_left").get<std::vector<std::uint8_t>>();
      t.left_child = j.at("left_child").get<std::vector<int>>();
      t.right_child = j.at("right_child").get<std::vector<int>>();
      t.split_gain = j.at("split_gain").get<std::vector<double>>();
      t.leaf_value = j.at("leaf_value").get<std::vector<double>>();
      t.leaf_count = j.at("leaf_count").get<std::vector<std::size_t>>();
      t.leaf_depth = j.at("leaf_depth").get<std::vector<int>>();
      const std::size_t nodes = t.split_feature.size();
      const auto leaves = static_cast<int>(t.leaf_value.size());
      if (t.threshold_bin.size() != nodes || t.default_left.size() != nodes || t.left_child.size() != nodes ||
          t.right_child.size() != nodes || t.split_gain.size() != nodes || leaves != static_cast<int>(nodes) + 1 ||
          t.leaf_count.size() != t.leaf_value.size() || t.leaf_depth.size() != t.leaf_value.size()) {
        Fail(ErrorCode::kFormat, "inconsistent tree arrays");
      }
      for (std::size_t k = 0; k < nodes; ++k) {
        if (t.split_feature[k] < 0 || t.split_feature[k] >= num_features) {
          Fail(ErrorCode::kFormat, "split feature out of range");
        }
        for (int c : {t.left_child[k], t.right_child[k]}) {
          // children are created after their parent, so node links only point forward
          if (c >= static_cast<int>(nodes) || (c < 0 && ~c >= leaves) || (c >= 0 && c <= static_cast<int>(k))) {
            Fail(ErrorCode::kFormat, "tree child index out of range");
          }
        }
      }
      model.trees_.push_back(std::move(t));
    }
    if (doc.contains("pipeline")) model.pipeline_json_ = doc["pipeline"].dump();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kFormat, std::string("model: ") + e.what());
  }
  return model;
}

void Model::Save(const std::filesystem::path& path) const {
  std::ofstream out = io::OpenOutput(path);
  out << ToJson() << '\n';
}

Model Model::Load(const std::filesystem::path& path) { return FromJson(io::ReadFile(path)); }

}  // namespace lcp::gbdt
