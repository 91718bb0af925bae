#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lcp/lcp.h"

namespace fs = std::filesystem;

namespace {

struct Scratch {
  Scratch() {
    path = fs::temp_directory_path() / ("lcp_capi_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path path;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path Mini(const Scratch& s) {
  const fs::path dir = s.path / "mini";
  fs::copy(LCP_TEST_DATA_DIR "/mini", dir, fs::copy_options::recursive);
  REQUIRE(lcp_count_corpus((dir / "corpus.txt").c_str(), (dir / "ref").c_str(), 2) == LCP_OK);
  return dir;
}

lcp_params* QuickParams() {
  lcp_params* p = nullptr;
  REQUIRE(lcp_params_create(&p) == LCP_OK);
  REQUIRE(lcp_params_set(p, "num_iterations", "150") == LCP_OK);
  REQUIRE(lcp_params_set(p, "learning_rate", "0.05") == LCP_OK);
  REQUIRE(lcp_params_set(p, "feature_fraction", "1") == LCP_OK);
  return p;
}

struct Captured {
  std::vector<std::string> messages;
};

void Capture(int, const char* message, void* user) { static_cast<Captured*>(user)->messages.emplace_back(message); }

}  // namespace

TEST_CASE("status names and last error") {
  CHECK(std::string(lcp_status_name(LCP_OK)) == "ok");
  CHECK(std::string(lcp_status_name(LCP_ERR_CONFIG)) == "configuration");
  CHECK(std::strlen(lcp_version()) > 0);
  lcp_assoc_scores s;
  CHECK(lcp_assoc_from_counts(1, 1, 2, 10, &s) == LCP_ERR_INCONSISTENT_COUNTS);
  CHECK(std::string(lcp_last_error()).find("f12") != std::string::npos);
  CHECK(lcp_assoc_from_counts(4, 3, 2, 20, &s) == LCP_OK);
  CHECK(std::string(lcp_last_error()).empty());
}

TEST_CASE("null arguments") {
  lcp_model* m = nullptr;
  CHECK(lcp_model_load(nullptr, &m) == LCP_ERR_INVALID_ARGUMENT);
  CHECK(lcp_model_load("x", nullptr) == LCP_ERR_INVALID_ARGUMENT);
  CHECK(lcp_assoc_from_counts(1, 1, 1, 1, nullptr) == LCP_ERR_INVALID_ARGUMENT);
  CHECK(lcp_pipeline_open(nullptr, nullptr, nullptr) == LCP_ERR_INVALID_ARGUMENT);
  CHECK(lcp_params_set(nullptr, "seed", "1") == LCP_ERR_INVALID_ARGUMENT);
  CHECK(lcp_pipeline_num_features(nullptr) == 0);
  CHECK(lcp_model_num_trees(nullptr) == 0);
  lcp_model_free(nullptr);
  lcp_pipeline_free(nullptr);
  lcp_params_free(nullptr);
  lcp_string_free(nullptr);
}

TEST_CASE("association from counts") {
  lcp_assoc_scores s;
  REQUIRE(lcp_assoc_from_counts(4, 3, 2, 20, &s) == LCP_OK);
  CHECK(std::string(lcp_assoc_measure_name(0)) == "pmi");
  CHECK(std::string(lcp_assoc_measure_name(7)) == "dp_1_given_2");
  CHECK(lcp_assoc_measure_name(8) == nullptr);
  for (int i = 0; i < LCP_NUM_ASSOC_MEASURES; ++i) CHECK(s.present[i] == 1);
  CHECK(s.value[0] == doctest::Approx(1.736965594166).epsilon(1e-11));
  CHECK(s.value[5] == doctest::Approx(4.0 / 7.0).epsilon(1e-12));

  REQUIRE(lcp_assoc_from_counts(3, 4, 0, 20, &s) == LCP_OK);
  CHECK(s.present[0] == 0);
  CHECK(s.present[2] == 1);
}

TEST_CASE("params") {
  lcp_params* p = nullptr;
  REQUIRE(lcp_params_create(&p) == LCP_OK);
  CHECK(lcp_params_set(p, "num_leaves", "31") == LCP_OK);
  CHECK(lcp_params_set(p, "num_leaves", "many") == LCP_ERR_CONFIG);
  CHECK(lcp_params_set(p, "no_such_key", "1") == LCP_ERR_CONFIG);
  CHECK(lcp_params_set(p, "learning_rate", "-1") == LCP_ERR_CONFIG);
  lcp_params_free(p);

  Scratch s;
  std::ofstream(s.path / "p.json") << "{\"num_leaves\": 1}";
  CHECK(lcp_params_load((s.path / "p.json").c_str(), &p) == LCP_ERR_CONFIG);
  std::ofstream(s.path / "q.json") << "{not json";
  CHECK(lcp_params_load((s.path / "q.json").c_str(), &p) != LCP_OK);
}

TEST_CASE("matrix training, row prediction and persistence") {
  const std::size_t rows = 200, cols = 3;
  std::vector<double> x(rows * cols), y(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) x[r * cols + c] = std::sin(0.37 * r * (c + 1));
    y[r] = x[r * cols] + 0.5 * x[r * cols + 1];
  }
  x[5] = NAN;
  const char* names[] = {"a", "b", "c"};
  lcp_params* p = QuickParams();
  lcp_model* m1 = nullptr;
  lcp_model* m4 = nullptr;
  REQUIRE(lcp_train_matrix(x.data(), rows, cols, names, y.data(), p, 1, &m1) == LCP_OK);
  REQUIRE(lcp_train_matrix(x.data(), rows, cols, names, y.data(), p, 4, &m4) == LCP_OK);
  CHECK(lcp_model_num_trees(m1) == 150);
  CHECK(lcp_model_num_features(m1) == 3);

  char* j1 = nullptr;
  char* j4 = nullptr;
  REQUIRE(lcp_model_to_json(m1, &j1) == LCP_OK);
  REQUIRE(lcp_model_to_json(m4, &j4) == LCP_OK);
  CHECK(std::string(j1) == std::string(j4));
  lcp_string_free(j4);

  Scratch s;
  const auto path = (s.path / "model.json").string();
  REQUIRE(lcp_model_save(m1, path.c_str()) == LCP_OK);
  CHECK(Slurp(path) == std::string(j1) + "\n");
  lcp_string_free(j1);
  lcp_model* loaded = nullptr;
  REQUIRE(lcp_model_load(path.c_str(), &loaded) == LCP_OK);
  for (std::size_t r = 0; r < rows; r += 7) {
    double a = 0, b = 0;
    REQUIRE(lcp_model_predict_row(m1, &x[r * cols], cols, &a) == LCP_OK);
    REQUIRE(lcp_model_predict_row(loaded, &x[r * cols], cols, &b) == LCP_OK);
    CHECK(a == b);
  }
  double out = 0;
  CHECK(lcp_model_predict_row(m1, x.data(), 2, &out) == LCP_ERR_INVALID_ARGUMENT);

  // matrix file prediction needs no pipeline
  {
    std::ofstream tsv(s.path / "m.tsv");
    tsv << "a\tb\tc\n1\t0.5\t\n-1\t0\t0.2\n";
  }
  const auto pred = (s.path / "pred.tsv").string();
  REQUIRE(lcp_predict(loaded, nullptr, (s.path / "m.tsv").c_str(), pred.c_str(), 1) == LCP_OK);
  std::istringstream lines(Slurp(pred));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "id\tprediction");
  std::getline(lines, line);
  CHECK(line.rfind("0\t", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("1\t", 0) == 0);

  CHECK(lcp_predict(loaded, nullptr, (s.path / "missing.tsv").c_str(), pred.c_str(), 1) == LCP_ERR_RESOURCE);

  lcp_model_free(loaded);
  lcp_model_free(m1);
  lcp_model_free(m4);
  lcp_params_free(p);
}

TEST_CASE("pipeline workflow on the mini dataset") {
  Scratch s;
  const auto dir = Mini(s);
  Captured captured;
  lcp_set_log_callback(&Capture, &captured);

  lcp_pipeline* pipe = nullptr;
  REQUIRE(lcp_pipeline_open((dir / "schema_multi.json").c_str(), nullptr, &pipe) == LCP_OK);
  const std::size_t nf = lcp_pipeline_num_features(pipe);
  CHECK(nf > 10);
  CHECK(std::string(lcp_pipeline_feature_name(pipe, 0)) == "sentence_length");
  CHECK(lcp_pipeline_feature_name(pipe, nf) == nullptr);

  const auto features = s.path / "features.tsv";
  REQUIRE(lcp_featurize(pipe, (dir / "multi.tsv").c_str(), features.c_str(), 2) == LCP_OK);
  std::istringstream fl(Slurp(features));
  std::string header;
  std::getline(fl, header);
  CHECK(header.rfind("sentence_length\t", 0) == 0);

  lcp_params* p = QuickParams();
  lcp_cv_options o;
  lcp_cv_options_init(&o);
  CHECK(o.folds == 9);
  o.folds = 5;
  o.workers = 3;
  const auto cv = s.path / "cv.json";
  REQUIRE(lcp_cv(pipe, (dir / "multi.tsv").c_str(), p, &o, cv.c_str()) == LCP_OK);
  CHECK(Slurp(cv).find("\"fold_r\"") != std::string::npos);

  o.group_by_target = 1;
  o.stratify_corpus = 1;
  CHECK(lcp_cv(pipe, (dir / "multi.tsv").c_str(), p, &o, cv.c_str()) == LCP_ERR_CONFIG);
  o.stratify_corpus = 0;
  CHECK(lcp_cv(pipe, (dir / "multi.tsv").c_str(), p, &o, cv.c_str()) == LCP_OK);
  CHECK(Slurp(cv).find("group-by-target") != std::string::npos);
  o.group_by_target = 0;

  const auto ablation = s.path / "ablate.tsv";
  REQUIRE(lcp_ablate(pipe, (dir / "multi.tsv").c_str(), "assoc, norms", (dir / "multi_test.tsv").c_str(), p, &o,
                     ablation.c_str()) == LCP_OK);
  std::istringstream al(Slurp(ablation));
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(al, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "config\tremoved_columns\tcv_mean_r\tcv_diff\ttest_r\ttest_diff");
  CHECK(rows[2].rfind("-assoc\t", 0) == 0);
  CHECK(rows[3].rfind("-norms\t", 0) == 0);
  CHECK(lcp_ablate(pipe, (dir / "multi.tsv").c_str(), "nothing", nullptr, p, &o, ablation.c_str()) ==
        LCP_ERR_CONFIG);

  lcp_model* m = nullptr;
  REQUIRE(lcp_train(pipe, (dir / "multi.tsv").c_str(), p, 2, &m) == LCP_OK);
  const auto model_path = s.path / "model.json";
  REQUIRE(lcp_model_save(m, model_path.c_str()) == LCP_OK);
  lcp_model* loaded = nullptr;
  REQUIRE(lcp_model_load(model_path.c_str(), &loaded) == LCP_OK);
  const auto a = s.path / "a.tsv";
  const auto b = s.path / "b.tsv";
  const auto c = s.path / "c.tsv";
  REQUIRE(lcp_predict(m, nullptr, (dir / "multi_test.tsv").c_str(), a.c_str(), 1) == LCP_OK);
  REQUIRE(lcp_predict(loaded, nullptr, (dir / "multi_test.tsv").c_str(), b.c_str(), 3) == LCP_OK);
  REQUIRE(lcp_predict(loaded, pipe, (dir / "multi_test.tsv").c_str(), c.c_str(), 1) == LCP_OK);
  const auto predictions = Slurp(a);
  CHECK(predictions == Slurp(b));
  CHECK(predictions == Slurp(c));
  CHECK(std::count(predictions.begin(), predictions.end(), '\n') == 61);

  lcp_pipeline* single = nullptr;
  REQUIRE(lcp_pipeline_open((dir / "schema_single.json").c_str(), (dir / "manifest.json").c_str(), &single) ==
          LCP_OK);
  CHECK(lcp_predict(loaded, single, (dir / "multi_test.tsv").c_str(), c.c_str(), 1) != LCP_OK);
  CHECK(lcp_cv(single, (dir / "multi.tsv").c_str(), p, &o, cv.c_str()) == LCP_ERR_CONFIG);

  const auto rep = s.path / "rep.json";
  REQUIRE(lcp_repetition_report((dir / "single.tsv").c_str(), rep.c_str()) == LCP_OK);
  CHECK(Slurp(rep).find("\"distinct_targets\"") != std::string::npos);

  const auto assoc = s.path / "assoc.tsv";
  {
    std::ofstream pairs(s.path / "pairs.tsv");
    pairs << "word1\tword2\nPomgou nal\nzz qq\n";
  }
  CHECK(lcp_assoc_batch((dir / "ref").c_str(), (s.path / "pairs.tsv").c_str(), assoc.c_str()) == LCP_ERR_FORMAT);
  {
    std::ofstream pairs(s.path / "pairs.tsv");
    pairs << "word1\tword2\nPomgou\tnal\nzz\tqq\n";
  }
  REQUIRE(lcp_assoc_batch((dir / "ref").c_str(), (s.path / "pairs.tsv").c_str(), assoc.c_str()) == LCP_OK);
  std::istringstream as(Slurp(assoc));
  std::getline(as, line);
  CHECK(line.rfind("word1\tword2\tpmi\t", 0) == 0);
  std::getline(as, line);
  CHECK(line.rfind("pomgou\tnal\t", 0) == 0);
  std::getline(as, line);
  CHECK(line.rfind("zz\tqq\t\t", 0) == 0);

  lcp_set_log_callback(nullptr, nullptr);
  lcp_model_free(loaded);
  lcp_model_free(m);
  lcp_params_free(p);
  lcp_pipeline_free(single);
  lcp_pipeline_free(pipe);
}

TEST_CASE("log callback receives warnings") {
  Scratch s;
  const auto dir = Mini(s);
  {
    std::ofstream bad(dir / "norms.tsv", std::ios::app);
    bad << "zzzword\tnot_a_number\t1\t1\n";
  }
  Captured captured;
  lcp_set_log_callback(&Capture, &captured);
  lcp_pipeline* pipe = nullptr;
  REQUIRE(lcp_pipeline_open((dir / "schema_single.json").c_str(), nullptr, &pipe) == LCP_OK);
  lcp_set_log_callback(nullptr, nullptr);
  bool found = false;
  for (const auto& m : captured.messages) found = found || m.find("table 'aoa'") != std::string::npos;
  CHECK(found);
  lcp_pipeline_free(pipe);
}
