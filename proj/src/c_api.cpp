#include "lcp/lcp.h"

#include <cstring>
#include <fstream>
#include <limits>
#include <iostream>
#include <new>
#include <string>
#include <utility>

#include <json.hpp>

#include "lcp/assoc.hpp"
#include "lcp/corpus_stats.hpp"
#include "lcp/error.hpp"
#include "lcp/features.hpp"
#include "lcp/gbdt.hpp"
#include "lcp/harness.hpp"
#include "lcp/log.hpp"
#include "lcp/pipeline.hpp"
#include "reports.hpp"
#include "text_io.hpp"

struct lcp_pipeline {
  lcp::Pipeline pipeline;
};

struct lcp_params {
  lcp::gbdt::Params params;
};

struct lcp_model {
  lcp::gbdt::Model model;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
lcp_status Guard(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return LCP_OK;
  } catch (const lcp::Error& e) {
    g_last_error = e.what();
    return static_cast<lcp_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LCP_ERR_RESOURCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LCP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LCP_ERR_INTERNAL;
  }
}

void Require(const void* p, const char* what) {
  if (p == nullptr) lcp::Fail(lcp::ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

bool IsStdout(const char* path) { return path == nullptr || std::strcmp(path, "-") == 0; }

template <typename Fn>
void WithOutput(const char* path, Fn&& fn) {
  if (IsStdout(path)) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out = lcp::io::OpenOutput(path);
  fn(out);
  out.flush();
  if (!out) lcp::Fail(lcp::ErrorCode::kResource, std::string("write failed: ") + path);
}

lcp::gbdt::Params ParamsOrDefault(const lcp_params* p) { return p ? p->params : lcp::gbdt::Params{}; }

std::size_t Workers(std::size_t w) { return w == 0 ? 1 : w; }

lcp_cv_options OptionsOrDefault(const lcp_cv_options* o) {
  if (o) return *o;
  lcp_cv_options d;
  lcp_cv_options_init(&d);
  return d;
}

struct Folds {
  lcp::harness::FoldAssignment assignment;
  std::string mode;
};

Folds MakeFolds(const std::vector<lcp::TargetInstance>& instances, const lcp_cv_options& o) {
  if (o.group_by_target && o.stratify_corpus) {
    lcp::Fail(lcp::ErrorCode::kConfig, "group-by-target and stratified folds cannot be combined");
  }
  if (o.group_by_target) {
    std::vector<std::string> keys;
    keys.reserve(instances.size());
    for (const auto& inst : instances) keys.push_back(inst.TargetKey());
    return {lcp::harness::KFoldSplitGrouped(keys, o.folds, o.seed), "group-by-target"};
  }
  if (o.stratify_corpus) {
    std::vector<std::size_t> strata;
    strata.reserve(instances.size());
    for (const auto& inst : instances) strata.push_back(static_cast<std::size_t>(inst.corpus));
    return {lcp::harness::KFoldSplitStratified(strata, o.folds, o.seed), "stratified"};
  }
  return {lcp::harness::KFoldSplit(instances.size(), o.folds, o.seed), "instance"};
}

lcp::FeatureMatrix LabeledMatrix(const lcp::Pipeline& p, const char* data_path, std::size_t workers) {
  auto instances = p.LoadInstances(data_path);
  auto m = p.Featurize(instances, workers);
  if (!m.targets()) lcp::Fail(lcp::ErrorCode::kData, std::string(data_path) + ": every row needs a gold score");
  return m;
}

lcp_log_fn g_log_fn = nullptr;
void* g_log_user = nullptr;

}  // namespace

extern "C" {

const char* lcp_version(void) { return "1.0.0"; }

const char* lcp_status_name(lcp_status status) {
  if (status == LCP_OK) return "ok";
  if (status < LCP_ERR_INVALID_ARGUMENT || status > LCP_ERR_INTERNAL) return "unknown";
  return lcp::ErrorCodeName(static_cast<lcp::ErrorCode>(status));
}

const char* lcp_last_error(void) { return g_last_error.c_str(); }

void lcp_set_log_callback(lcp_log_fn fn, void* user) {
  g_log_fn = fn;
  g_log_user = user;
  if (fn == nullptr) {
    lcp::SetLogSink({});
    return;
  }
  lcp::SetLogSink([](lcp::LogLevel level, std::string_view message) {
    std::string text(message);
    g_log_fn(static_cast<int>(level), text.c_str(), g_log_user);
  });
}

void lcp_string_free(char* s) { delete[] s; }

lcp_status lcp_count_corpus(const char* input_path, const char* out_prefix, size_t workers) {
  return Guard([&] {
    Require(input_path, "input_path");
    Require(out_prefix, "out_prefix");
    lcp::FrequencyModel::CountFile(input_path, Workers(workers)).Dump(out_prefix);
  });
}

const char* lcp_assoc_measure_name(size_t index) {
  if (index >= lcp::AssocScores::kCount) return nullptr;
  return lcp::AssocScores::kNames[index].data();
}

lcp_status lcp_assoc_from_counts(double f1, double f2, double f12, double n, lcp_assoc_scores* out) {
  return Guard([&] {
    Require(out, "out");
    auto scores = lcp::ComputeAssociationMeasures(lcp::MakeContingency(f1, f2, f12, n)).AsArray();
    for (std::size_t i = 0; i < scores.size(); ++i) {
      out->present[i] = scores[i].has_value();
      out->value[i] = scores[i].value_or(lcp::kMissing);
    }
  });
}

lcp_status lcp_assoc_batch(const char* counts_prefix, const char* pairs_path, const char* out_path) {
  return Guard([&] {
    Require(counts_prefix, "counts_prefix");
    Require(pairs_path, "pairs_path");
    auto model = lcp::FrequencyModel::Load(counts_prefix);
    std::ifstream in = lcp::io::OpenInput(pairs_path);
    std::string text;
    std::size_t lineno = 0;
    std::string rows;
    while (std::getline(in, text)) {
      ++lineno;
      auto line = lcp::io::ChompCr(text);
      if (line.empty()) continue;
      auto fields = lcp::io::SplitTabs(line);
      if (fields.size() < 2) {
        lcp::Fail(lcp::ErrorCode::kFormat,
                  std::string(pairs_path) + ":" + std::to_string(lineno) + ": expected word1<TAB>word2");
      }
      if (lineno == 1 && fields[0] == "word1" && fields[1] == "word2") continue;
      std::string w1 = lcp::ToLower(fields[0]);
      std::string w2 = lcp::ToLower(fields[1]);
      rows += w1 + '\t' + w2;
      for (const auto& v : lcp::ScorePair(model, w1, w2).AsArray()) {
        rows += '\t';
        if (v) rows += lcp::io::FormatDouble(*v);
      }
      rows += '\n';
    }
    WithOutput(out_path, [&](std::ostream& out) {
      lcp::reports::WriteAssocHeader(out);
      out << rows;
    });
  });
}

lcp_status lcp_pipeline_open(const char* schema_path, const char* manifest_path, lcp_pipeline** out) {
  return Guard([&] {
    Require(schema_path, "schema_path");
    Require(out, "out");
    *out = nullptr;
    auto p = lcp::Pipeline::Open(schema_path, manifest_path ? manifest_path : "");
    *out = new lcp_pipeline{std::move(p)};
  });
}

void lcp_pipeline_free(lcp_pipeline* pipeline) { delete pipeline; }

size_t lcp_pipeline_num_features(const lcp_pipeline* pipeline) {
  return pipeline ? pipeline->pipeline.schema().size() : 0;
}

const char* lcp_pipeline_feature_name(const lcp_pipeline* pipeline, size_t index) {
  if (pipeline == nullptr || index >= pipeline->pipeline.schema().size()) return nullptr;
  return pipeline->pipeline.schema().features[index].name.c_str();
}

lcp_status lcp_featurize(const lcp_pipeline* pipeline, const char* data_path, const char* out_path,
                         size_t workers) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(data_path, "data_path");
    auto instances = pipeline->pipeline.LoadInstances(data_path);
    auto m = pipeline->pipeline.Featurize(instances, Workers(workers));
    WithOutput(out_path, [&](std::ostream& out) { lcp::WriteMatrixTsv(m, out); });
  });
}

lcp_status lcp_params_create(lcp_params** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new lcp_params{};
  });
}

lcp_status lcp_params_load(const char* json_path, lcp_params** out) {
  return Guard([&] {
    Require(json_path, "json_path");
    Require(out, "out");
    *out = nullptr;
    auto params = lcp::gbdt::Params::Load(json_path);
    *out = new lcp_params{params};
  });
}

lcp_status lcp_params_set(lcp_params* params, const char* key, const char* value) {
  return Guard([&] {
    Require(params, "params");
    Require(key, "key");
    Require(value, "value");
    nlohmann::json doc = nlohmann::json::parse(params->params.ToJson());
    nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_number()) {
      lcp::Fail(lcp::ErrorCode::kConfig, std::string("parameter ") + key + ": '" + value + "' is not a number");
    }
    doc[key] = parsed;
    params->params = lcp::gbdt::Params::FromJson(doc.dump());
  });
}

void lcp_params_free(lcp_params* params) { delete params; }

lcp_status lcp_train(const lcp_pipeline* pipeline, const char* data_path, const lcp_params* params,
                     size_t workers, lcp_model** out) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(data_path, "data_path");
    Require(out, "out");
    *out = nullptr;
    auto m = LabeledMatrix(pipeline->pipeline, data_path, Workers(workers));
    lcp::gbdt::TrainOptions options;
    options.workers = Workers(workers);
    auto model = lcp::gbdt::Train(m, ParamsOrDefault(params), options);
    model.set_pipeline_json(pipeline->pipeline.ToJson());
    *out = new lcp_model{std::move(model)};
  });
}

lcp_status lcp_train_matrix(const double* values, size_t rows, size_t cols, const char* const* feature_names,
                            const double* targets, const lcp_params* params, size_t workers, lcp_model** out) {
  return Guard([&] {
    Require(out, "out");
    *out = nullptr;
    if (rows > 0 && cols > 0) Require(values, "values");
    if (rows > 0) Require(targets, "targets");
    lcp::FeatureSchema schema;
    for (std::size_t c = 0; c < cols; ++c) {
      std::string name = feature_names && feature_names[c] ? feature_names[c] : "f" + std::to_string(c);
      schema.features.push_back({name, lcp::FeatureGroup::kLength, lcp::Aggregation::kSingle, "", 0});
    }
    lcp::FeatureMatrix m(schema, rows);
    for (std::size_t r = 0; r < rows; ++r) {
      m.ids()[r] = std::to_string(r);
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = values[r * cols + c];
    }
    m.set_targets(std::vector<double>(targets, targets + rows));
    lcp::gbdt::TrainOptions options;
    options.workers = Workers(workers);
    *out = new lcp_model{lcp::gbdt::Train(m, ParamsOrDefault(params), options)};
  });
}

lcp_status lcp_model_load(const char* path, lcp_model** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = nullptr;
    auto model = lcp::gbdt::Model::Load(path);
    *out = new lcp_model{std::move(model)};
  });
}

lcp_status lcp_model_save(const lcp_model* model, const char* path) {
  return Guard([&] {
    Require(model, "model");
    if (IsStdout(path)) {
      std::cout << model->model.ToJson() << '\n';
      return;
    }
    model->model.Save(path);
  });
}

lcp_status lcp_model_to_json(const lcp_model* model, char** out) {
  return Guard([&] {
    Require(model, "model");
    Require(out, "out");
    std::string json = model->model.ToJson();
    char* buf = new char[json.size() + 1];
    std::memcpy(buf, json.c_str(), json.size() + 1);
    *out = buf;
  });
}

void lcp_model_free(lcp_model* model) { delete model; }

size_t lcp_model_num_trees(const lcp_model* model) { return model ? model->model.trees().size() : 0; }

size_t lcp_model_num_features(const lcp_model* model) { return model ? model->model.feature_names().size() : 0; }

lcp_status lcp_model_predict_row(const lcp_model* model, const double* row, size_t n, double* out) {
  return Guard([&] {
    Require(model, "model");
    Require(out, "out");
    if (n != model->model.feature_names().size()) {
      lcp::Fail(lcp::ErrorCode::kInvalidArgument, "row has " + std::to_string(n) + " values, model expects " +
                                                      std::to_string(model->model.feature_names().size()));
    }
    if (n > 0) Require(row, "row");
    *out = model->model.Predict(std::span<const double>(row, n));
  });
}

lcp_status lcp_predict(const lcp_model* model, const lcp_pipeline* pipeline, const char* data_path,
                       const char* out_path, size_t workers) {
  return Guard([&] {
    Require(model, "model");
    Require(data_path, "data_path");
    lcp::FeatureMatrix m;
    if (lcp::IsDatasetFile(data_path)) {
      if (pipeline) {
        m = pipeline->pipeline.Featurize(pipeline->pipeline.LoadInstances(data_path), Workers(workers));
      } else {
        if (model->model.pipeline_json().empty()) {
          lcp::Fail(lcp::ErrorCode::kConfig,
                    "model carries no feature pipeline; pass a feature matrix or a manifest and schema");
        }
        auto p = lcp::Pipeline::FromJson(model->model.pipeline_json());
        m = p.Featurize(p.LoadInstances(data_path), Workers(workers));
      }
    } else {
      m = lcp::ReadMatrixTsv(data_path);
    }
    auto predictions = model->model.Predict(m, Workers(workers));
    WithOutput(out_path, [&](std::ostream& out) {
      out << "id\tprediction\n";
      for (std::size_t r = 0; r < m.rows(); ++r) {
        out << m.ids()[r] << '\t' << lcp::io::FormatDouble(predictions[r]) << '\n';
      }
    });
  });
}

void lcp_cv_options_init(lcp_cv_options* options) {
  if (options == nullptr) return;
  options->folds = 9;
  options->seed = 0;
  options->workers = 1;
  options->pooled = 0;
  options->group_by_target = 0;
  options->stratify_corpus = 0;
}

lcp_status lcp_cv(const lcp_pipeline* pipeline, const char* data_path, const lcp_params* params,
                  const lcp_cv_options* options, const char* out_path) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(data_path, "data_path");
    const auto o = OptionsOrDefault(options);
    auto instances = pipeline->pipeline.LoadInstances(data_path);
    auto m = pipeline->pipeline.Featurize(instances, Workers(o.workers));
    if (!m.targets()) lcp::Fail(lcp::ErrorCode::kData, std::string(data_path) + ": every row needs a gold score");
    auto folds = MakeFolds(instances, o);
    auto cv = lcp::harness::RunCv(m, ParamsOrDefault(params), folds.assignment, {Workers(o.workers)});
    WithOutput(out_path, [&](std::ostream& out) {
      lcp::reports::WriteCvJson(cv, folds.assignment, {folds.mode, o.pooled != 0}, out);
    });
  });
}

lcp_status lcp_ablate(const lcp_pipeline* pipeline, const char* data_path, const char* groups,
                      const char* test_path, const lcp_params* params, const lcp_cv_options* options,
                      const char* out_path) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(data_path, "data_path");
    const auto o = OptionsOrDefault(options);
    std::vector<std::string> group_list;
    if (groups) {
      std::string_view rest(groups);
      while (!rest.empty()) {
        auto comma = rest.find(',');
        auto item = rest.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) group_list.emplace_back(item);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    const auto& p = pipeline->pipeline;
    auto instances = p.LoadInstances(data_path);
    auto m = p.Featurize(instances, Workers(o.workers));
    if (!m.targets()) lcp::Fail(lcp::ErrorCode::kData, std::string(data_path) + ": every row needs a gold score");
    std::optional<lcp::FeatureMatrix> test;
    if (test_path) test = LabeledMatrix(p, test_path, Workers(o.workers));
    auto folds = MakeFolds(instances, o);
    auto report = lcp::harness::Ablate(m, group_list, ParamsOrDefault(params), folds.assignment,
                                       {Workers(o.workers)}, test ? &*test : nullptr, o.pooled != 0);
    WithOutput(out_path, [&](std::ostream& out) { lcp::reports::WriteAblationTsv(report, out); });
  });
}

lcp_status lcp_repetition_report(const char* data_path, const char* out_path) {
  return Guard([&] {
    Require(data_path, "data_path");
    const double inf = std::numeric_limits<double>::infinity();
    auto instances = lcp::LoadDataset(data_path, {-inf, inf});
    auto report = lcp::harness::MakeRepetitionReport(instances);
    WithOutput(out_path, [&](std::ostream& out) { lcp::reports::WriteRepetitionJson(report, out); });
  });
}

}  // extern "C"
