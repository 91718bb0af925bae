#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcp/features.hpp"
#include "lcp/gbdt.hpp"

namespace lcp::harness {

// Product-moment correlation. Throws kData on length mismatch or fewer than
// two points and kUndefinedCorrelation when either vector is constant.
double Pearson(std::span<const double> x, std::span<const double> y);

struct FoldAssignment {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> fold;  // per instance, in 0..k-1

  std::vector<std::size_t> Members(std::size_t f) const;
  std::vector<std::size_t> Complement(std::size_t f) const;
  std::vector<std::size_t> Sizes() const;
};

// Seeded shuffle, then round-robin: fold sizes differ by at most one.
FoldAssignment KFoldSplit(std::size_t n, std::size_t k, std::uint64_t seed);

// Keeps instances with the same key in one fold. Shuffled groups go to the
// currently smallest fold, so sizes are only approximately balanced.
FoldAssignment KFoldSplitGrouped(std::span<const std::string> keys, std::size_t k, std::uint64_t seed);

// Round-robin over a per-stratum shuffle so each fold gets a near-equal share
// of every stratum. Sizes still differ by at most one.
FoldAssignment KFoldSplitStratified(std::span<const std::size_t> strata, std::size_t k, std::uint64_t seed);

struct CvOptions {
  // Folds run concurrently when > 1; each fold's model trains single-threaded.
  std::size_t workers = 1;
};

struct CvResult {
  std::vector<double> fold_r;
  std::vector<std::size_t> fold_sizes;
  double mean_r = 0.0;     // unweighted mean of fold_r
  double pooled_r = 0.0;   // over all out-of-fold predictions together
  std::vector<double> predictions;  // out-of-fold, instance order
};

// Trains on each fold's complement and scores the held-out fold. Errors are
// rethrown with the failing fold's index; the lowest failing fold wins.
CvResult RunCv(const FeatureMatrix& m, const gbdt::Params& params, const FoldAssignment& folds,
               const CvOptions& options = {});

struct AblationRow {
  std::string removed;            // group selector as given
  std::vector<std::string> columns;
  CvResult cv;
  double cv_diff = 0.0;           // ablated r - full r (mean or pooled per report mode)
  std::optional<double> test_r;
  std::optional<double> test_diff;
};

struct AblationReport {
  bool pooled = false;
  CvResult full_cv;
  double full_r = 0.0;
  std::optional<double> full_test_r;
  std::vector<AblationRow> rows;
};

// Full schema once, then once per group with that group's columns removed, on
// the same folds and params. With a labeled test matrix each configuration is
// also trained on all of `train` and scored on `test`.
AblationReport Ablate(const FeatureMatrix& train, std::span<const std::string> groups,
                      const gbdt::Params& params, const FoldAssignment& folds, const CvOptions& options = {},
                      const FeatureMatrix* test = nullptr, bool pooled = false);

struct RepetitionReport {
  static constexpr std::array<const char*, 6> kBuckets = {"1", "2", "3", "4", "5", "6+"};
  std::array<std::size_t, 6> targets_by_count{};
  std::array<double, 6> percent{};
  std::size_t distinct_targets = 0;
  std::size_t repeated_targets = 0;
  std::optional<double> mean_range;
  std::vector<double> range_deciles;            // 10th..90th percentile
  std::optional<double> share_above_p90;        // fraction of repeated targets with range > 90th pct
};

// Groups instances by normalized target string. Ranges (max - min gold) are
// computed over targets seen at least twice; instances must be labeled.
RepetitionReport MakeRepetitionReport(std::span<const TargetInstance> instances);

}  // namespace lcp::harness
