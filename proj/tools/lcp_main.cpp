// lcp: command-line front end over the C API.

#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "lcp/lcp.h"

namespace {

struct Common {
  std::string out = "-";
  std::size_t workers = 1;
};

struct PipelineArgs {
  std::string data;
  std::string manifest;
  std::string schema;
  std::string params;
};

struct CvArgs {
  std::size_t folds = 9;
  std::uint64_t seed = 0;
  bool pooled = false;
  bool group_by_target = false;
  bool stratify = false;
};

using PipelinePtr = std::unique_ptr<lcp_pipeline, decltype(&lcp_pipeline_free)>;
using ParamsPtr = std::unique_ptr<lcp_params, decltype(&lcp_params_free)>;
using ModelPtr = std::unique_ptr<lcp_model, decltype(&lcp_model_free)>;

class Failure {
 public:
  explicit Failure(lcp_status s) : status(s) {}
  lcp_status status;
};

void Check(lcp_status s) {
  if (s != LCP_OK) throw Failure(s);
}

const char* OutPath(const Common& c) { return c.out.empty() || c.out == "-" ? nullptr : c.out.c_str(); }

PipelinePtr OpenPipeline(const PipelineArgs& a) {
  lcp_pipeline* p = nullptr;
  Check(lcp_pipeline_open(a.schema.c_str(), a.manifest.empty() ? nullptr : a.manifest.c_str(), &p));
  return {p, &lcp_pipeline_free};
}

ParamsPtr LoadParams(const PipelineArgs& a) {
  lcp_params* p = nullptr;
  if (a.params.empty()) {
    Check(lcp_params_create(&p));
  } else {
    Check(lcp_params_load(a.params.c_str(), &p));
  }
  return {p, &lcp_params_free};
}

lcp_cv_options CvOptions(const CvArgs& a, const Common& c) {
  lcp_cv_options o;
  lcp_cv_options_init(&o);
  o.folds = a.folds;
  o.seed = a.seed;
  o.workers = c.workers;
  o.pooled = a.pooled;
  o.group_by_target = a.group_by_target;
  o.stratify_corpus = a.stratify;
  return o;
}

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--out,-o", c.out, "Output path, '-' for stdout");
  cmd->add_option("--workers,-j", c.workers, "Worker threads")->check(CLI::PositiveNumber);
}

void AddPipeline(CLI::App* cmd, PipelineArgs& a, bool with_params) {
  cmd->add_option("--data", a.data, "Dataset TSV")->required()->check(CLI::ExistingFile);
  cmd->add_option("--manifest", a.manifest, "Resource manifest JSON (default: the schema's)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--schema", a.schema, "Feature schema JSON")->required()->check(CLI::ExistingFile);
  if (with_params) cmd->add_option("--params", a.params, "Model parameter JSON")->check(CLI::ExistingFile);
}

void AddCv(CLI::App* cmd, CvArgs& a) {
  cmd->add_option("--folds", a.folds, "Number of folds")->check(CLI::Range(2, 1000000));
  cmd->add_option("--seed", a.seed, "Fold assignment seed");
  cmd->add_flag("--pooled", a.pooled, "Report r over pooled out-of-fold predictions");
  cmd->add_flag("--group-by-target", a.group_by_target, "Keep repeated targets in one fold");
  cmd->add_flag("--stratify", a.stratify, "Balance corpora across folds");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexical complexity prediction toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lcp_version()));

  Common common;
  PipelineArgs pargs;
  CvArgs cvargs;

  std::string input, prefix, counts, pairs, model_path, model_out, groups, test;
  bool repeats = false;

  auto* count = app.add_subcommand("count", "Count unigrams and bigrams of a corpus");
  count->add_option("--input", input, "Text file, one sentence per line")->required()->check(CLI::ExistingFile);
  count->add_option("--out,-o", prefix, "Output prefix")->required();
  count->add_option("--workers,-j", common.workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* assoc = app.add_subcommand("assoc", "Association measures for word pairs");
  assoc->add_option("--counts", counts, "Count dump prefix")->required();
  assoc->add_option("--pairs", pairs, "TSV of word1<TAB>word2")->required()->check(CLI::ExistingFile);
  AddCommon(assoc, common);

  auto* featurize = app.add_subcommand("featurize", "Write the feature matrix of a dataset");
  AddPipeline(featurize, pargs, false);
  AddCommon(featurize, common);

  auto* train = app.add_subcommand("train", "Train a model");
  AddPipeline(train, pargs, true);
  train->add_option("--model-out", model_out, "Model JSON path")->required();
  train->add_option("--workers,-j", common.workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* predict = app.add_subcommand("predict", "Predict with a trained model");
  predict->add_option("--model", model_path, "Model JSON")->required()->check(CLI::ExistingFile);
  predict->add_option("--data", pargs.data, "Dataset or feature matrix TSV")->required()->check(CLI::ExistingFile);
  predict->add_option("--manifest", pargs.manifest, "Resource manifest overriding the model's")
      ->check(CLI::ExistingFile);
  predict->add_option("--schema", pargs.schema, "Feature schema overriding the model's")->check(CLI::ExistingFile);
  AddCommon(predict, common);

  auto* cv = app.add_subcommand("cv", "K-fold cross-validation");
  AddPipeline(cv, pargs, true);
  AddCv(cv, cvargs);
  AddCommon(cv, common);

  auto* ablate = app.add_subcommand("ablate", "Feature-group ablation");
  AddPipeline(ablate, pargs, true);
  AddCv(ablate, cvargs);
  ablate->add_option("--groups", groups, "Comma-separated groups: length,corpus,freq,norms,psych,assoc");
  ablate->add_option("--test", test, "Labeled held-out dataset TSV")->check(CLI::ExistingFile);
  AddCommon(ablate, common);

  auto* report = app.add_subcommand("report", "Descriptive dataset reports");
  report->add_option("--data", pargs.data, "Labeled dataset TSV")->required()->check(CLI::ExistingFile);
  report->add_flag("--repeats", repeats, "Target repetition statistics");
  AddCommon(report, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*count) {
      Check(lcp_count_corpus(input.c_str(), prefix.c_str(), common.workers));
    } else if (*assoc) {
      Check(lcp_assoc_batch(counts.c_str(), pairs.c_str(), OutPath(common)));
    } else if (*featurize) {
      auto p = OpenPipeline(pargs);
      Check(lcp_featurize(p.get(), pargs.data.c_str(), OutPath(common), common.workers));
    } else if (*train) {
      auto p = OpenPipeline(pargs);
      auto params = LoadParams(pargs);
      lcp_model* m = nullptr;
      Check(lcp_train(p.get(), pargs.data.c_str(), params.get(), common.workers, &m));
      ModelPtr model(m, &lcp_model_free);
      Check(lcp_model_save(model.get(), model_out.c_str()));
    } else if (*predict) {
      lcp_model* m = nullptr;
      Check(lcp_model_load(model_path.c_str(), &m));
      ModelPtr model(m, &lcp_model_free);
      PipelinePtr p(nullptr, &lcp_pipeline_free);
      if (!pargs.schema.empty()) {
        p = OpenPipeline(pargs);
      } else if (!pargs.manifest.empty()) {
        std::fprintf(stderr, "lcp: --manifest needs --schema\n");
        return 2;
      }
      Check(lcp_predict(model.get(), p.get(), pargs.data.c_str(), OutPath(common), common.workers));
    } else if (*cv) {
      auto p = OpenPipeline(pargs);
      auto params = LoadParams(pargs);
      auto o = CvOptions(cvargs, common);
      Check(lcp_cv(p.get(), pargs.data.c_str(), params.get(), &o, OutPath(common)));
    } else if (*ablate) {
      auto p = OpenPipeline(pargs);
      auto params = LoadParams(pargs);
      auto o = CvOptions(cvargs, common);
      Check(lcp_ablate(p.get(), pargs.data.c_str(), groups.c_str(), test.empty() ? nullptr : test.c_str(),
                       params.get(), &o, OutPath(common)));
    } else if (*report) {
      if (!repeats) {
        std::fprintf(stderr, "lcp: report: choose a report (--repeats)\n");
        return 2;
      }
      Check(lcp_repetition_report(pargs.data.c_str(), OutPath(common)));
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "lcp: %s error: %s\n", lcp_status_name(f.status), lcp_last_error());
    return 1;
  }
  return 0;
}
