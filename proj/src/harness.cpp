#include "lcp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "lcp/error.hpp"
#include "lcp/rng.hpp"
#include "lcp/thread_pool.hpp"

namespace lcp::harness {

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    Fail(ErrorCode::kData, "pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                               std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) Fail(ErrorCode::kData, "pearson: need at least 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) Fail(ErrorCode::kUndefinedCorrelation, "pearson: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<std::size_t> FoldAssignment::Members(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold.size(); ++i) {
    if (fold[i] == f) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::Complement(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold.size(); ++i) {
    if (fold[i] != f) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::Sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t f : fold) ++sizes[f];
  return sizes;
}

namespace {

void CheckFoldCount(std::size_t n, std::size_t k) {
  if (k < 2) Fail(ErrorCode::kData, "need at least 2 folds");
  if (n < k) Fail(ErrorCode::kData, "cannot split " + std::to_string(n) + " instances into " + std::to_string(k) + " folds");
}

}  // namespace

FoldAssignment KFoldSplit(std::size_t n, std::size_t k, std::uint64_t seed) {
  CheckFoldCount(n, k);
  Rng rng(seed);
  auto order = ShuffledIndices(n, rng);
  FoldAssignment a{k, seed, std::vector<std::size_t>(n)};
  for (std::size_t pos = 0; pos < n; ++pos) a.fold[order[pos]] = pos % k;
  return a;
}

FoldAssignment KFoldSplitGrouped(std::span<const std::string> keys, std::size_t k, std::uint64_t seed) {
  CheckFoldCount(keys.size(), k);
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < keys.size(); ++i) groups[keys[i]].push_back(i);
  if (groups.size() < k) {
    Fail(ErrorCode::kData, "only " + std::to_string(groups.size()) + " distinct targets for " + std::to_string(k) + " folds");
  }
  std::vector<const std::vector<std::size_t>*> list;
  for (const auto& [key, members] : groups) list.push_back(&members);
  Rng rng(seed);
  auto order = ShuffledIndices(list.size(), rng);
  FoldAssignment a{k, seed, std::vector<std::size_t>(keys.size())};
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t g : order) {
    std::size_t f = static_cast<std::size_t>(std::min_element(sizes.begin(), sizes.end()) - sizes.begin());
    for (std::size_t i : *list[g]) a.fold[i] = f;
    sizes[f] += list[g]->size();
  }
  return a;
}

FoldAssignment KFoldSplitStratified(std::span<const std::size_t> strata, std::size_t k, std::uint64_t seed) {
  CheckFoldCount(strata.size(), k);
  std::map<std::size_t, std::vector<std::size_t>> by_stratum;
  for (std::size_t i = 0; i < strata.size(); ++i) by_stratum[strata[i]].push_back(i);
  Rng rng(seed);
  FoldAssignment a{k, seed, std::vector<std::size_t>(strata.size())};
  std::size_t pos = 0;
  for (const auto& [s, members] : by_stratum) {
    for (std::size_t j : ShuffledIndices(members.size(), rng)) a.fold[members[j]] = pos++ % k;
  }
  return a;
}

CvResult RunCv(const FeatureMatrix& m, const gbdt::Params& params, const FoldAssignment& folds,
               const CvOptions& options) {
  if (!m.targets()) Fail(ErrorCode::kData, "cross-validation needs gold scores");
  if (folds.fold.size() != m.rows()) Fail(ErrorCode::kData, "fold assignment does not match the dataset size");
  const auto& y = *m.targets();
  CvResult result;
  result.fold_r.assign(folds.k, 0.0);
  result.fold_sizes = folds.Sizes();
  result.predictions.assign(m.rows(), 0.0);
  std::vector<std::optional<Error>> errors(folds.k);

  ThreadPool pool(std::min(options.workers, folds.k));
  pool.ParallelFor(folds.k, [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      try {
        auto test_rows = folds.Members(f);
        auto train = m.SelectRows(folds.Complement(f));
        auto test = m.SelectRows(test_rows);
        auto model = gbdt::Train(train, params);
        auto pred = model.Predict(test);
        for (std::size_t i = 0; i < test_rows.size(); ++i) result.predictions[test_rows[i]] = pred[i];
        result.fold_r[f] = Pearson(pred, *test.targets());
      } catch (const Error& e) {
        errors[f] = Error(e.code(), "fold " + std::to_string(f) + ": " + e.what());
      }
    }
  });
  for (const auto& e : errors) {
    if (e) throw *e;
  }
  double sum = 0.0;
  for (double r : result.fold_r) sum += r;
  result.mean_r = sum / static_cast<double>(folds.k);
  result.pooled_r = Pearson(result.predictions, y);
  return result;
}

AblationReport Ablate(const FeatureMatrix& train, std::span<const std::string> groups, const gbdt::Params& params,
                      const FoldAssignment& folds, const CvOptions& options, const FeatureMatrix* test,
                      bool pooled) {
  const auto& schema = train.schema();
  std::vector<std::vector<std::size_t>> keep_columns;
  std::vector<std::vector<std::string>> removed_names;
  for (const auto& g : groups) {
    auto selected = ParseGroupSelector(g);
    auto removed = schema.ColumnsInGroups(selected);
    if (removed.empty()) Fail(ErrorCode::kConfig, "feature group '" + g + "' is not in the schema");
    std::vector<std::size_t> keep;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < schema.size(); ++c) {
      if (std::find(removed.begin(), removed.end(), c) == removed.end()) {
        keep.push_back(c);
      } else {
        names.push_back(schema.features[c].name);
      }
    }
    keep_columns.push_back(std::move(keep));
    removed_names.push_back(std::move(names));
  }
  if (test) {
    if (!test->targets()) Fail(ErrorCode::kData, "ablation test set needs gold scores");
    if (test->schema().Names() != schema.Names()) Fail(ErrorCode::kConfig, "test matrix schema differs from training schema");
  }

  auto score_test = [&](const FeatureMatrix& tr, const FeatureMatrix& te) {
    auto model = gbdt::Train(tr, params);
    return Pearson(model.Predict(te), *te.targets());
  };

  AblationReport report;
  report.pooled = pooled;
  report.full_cv = RunCv(train, params, folds, options);
  report.full_r = pooled ? report.full_cv.pooled_r : report.full_cv.mean_r;
  if (test) report.full_test_r = score_test(train, *test);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    AblationRow row;
    row.removed = groups[i];
    row.columns = removed_names[i];
    auto sub = train.SelectColumns(keep_columns[i]);
    row.cv = RunCv(sub, params, folds, options);
    row.cv_diff = (pooled ? row.cv.pooled_r : row.cv.mean_r) - report.full_r;
    if (test) {
      row.test_r = score_test(sub, test->SelectColumns(keep_columns[i]));
      row.test_diff = *row.test_r - *report.full_test_r;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

// Linear interpolation between order statistics (the common "type 7" rule).
double Quantile(const std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

RepetitionReport MakeRepetitionReport(std::span<const TargetInstance> instances) {
  std::map<std::string, std::vector<double>> golds;
  for (const auto& inst : instances) {
    if (!inst.gold) Fail(ErrorCode::kData, "repetition report needs gold scores (instance '" + inst.id + "')");
    golds[inst.TargetKey()].push_back(*inst.gold);
  }
  RepetitionReport rep;
  rep.distinct_targets = golds.size();
  std::vector<double> ranges;
  for (const auto& [key, g] : golds) {
    rep.targets_by_count[std::min<std::size_t>(g.size(), 6) - 1]++;
    if (g.size() >= 2) {
      auto [lo, hi] = std::minmax_element(g.begin(), g.end());
      ranges.push_back(*hi - *lo);
    }
  }
  rep.repeated_targets = ranges.size();
  for (std::size_t b = 0; b < rep.percent.size(); ++b) {
    rep.percent[b] = rep.distinct_targets == 0
                         ? 0.0
                         : 100.0 * static_cast<double>(rep.targets_by_count[b]) / static_cast<double>(rep.distinct_targets);
  }
  if (!ranges.empty()) {
    double sum = 0.0;
    for (double r : ranges) sum += r;
    rep.mean_range = sum / static_cast<double>(ranges.size());
    std::sort(ranges.begin(), ranges.end());
    for (int d = 1; d <= 9; ++d) rep.range_deciles.push_back(Quantile(ranges, d / 10.0));
    const double p90 = rep.range_deciles.back();
    const auto above = std::count_if(ranges.begin(), ranges.end(), [p90](double r) { return r > p90; });
    rep.share_above_p90 = static_cast<double>(above) / static_cast<double>(ranges.size());
  }
  return rep;
}

}  // namespace lcp::harness
