#include "lcp/corpus_stats.hpp"

#include <algorithm>
#include <utility>

#include <json.hpp>

#include "lcp/error.hpp"
#include "lcp/thread_pool.hpp"
#include "text_io.hpp"

namespace lcp {

namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;
};

CodePoint Decode(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) -> int {
    if (i + k >= s.size()) return -1;
    auto b = static_cast<unsigned char>(s[i + k]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) return {b0, 1};
  if ((b0 & 0xE0) == 0xC0) {
    int c1 = cont(1);
    if (c1 >= 0) return {static_cast<char32_t>(((b0 & 0x1F) << 6) | c1), 2};
  } else if ((b0 & 0xF0) == 0xE0) {
    int c1 = cont(1), c2 = cont(2);
    if (c1 >= 0 && c2 >= 0) {
      return {static_cast<char32_t>(((b0 & 0x0F) << 12) | (c1 << 6) | c2), 3};
    }
  } else if ((b0 & 0xF8) == 0xF0) {
    int c1 = cont(1), c2 = cont(2), c3 = cont(3);
    if (c1 >= 0 && c2 >= 0 && c3 >= 0) {
      return {static_cast<char32_t>(((b0 & 0x07) << 18) | (c1 << 12) | (c2 << 6) | c3), 4};
    }
  }
  // invalid byte: pass it through untouched
  return {0xFFFD, 1};
}

void Encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsSpace(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F ||
         c == 0x205F || c == 0x3000;
}

bool IsPunct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
           (c >= 0x7B && c <= 0x7E);
  }
  return c == 0xA1 || c == 0xA7 || c == 0xAB || c == 0xB6 || c == 0xB7 || c == 0xBB ||
         c == 0xBF || (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
         (c >= 0x3001 && c <= 0x3003) || (c >= 0x3008 && c <= 0x3011);
}

char32_t Lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 0x20;
  if (c < 0xC0) return c;
  if (c <= 0xDE) return c == 0xD7 ? c : c + 0x20;
  if (c >= 0x100 && c <= 0x137) return c | 1;
  if (c >= 0x139 && c <= 0x148) return (c & 1) ? c + 1 : c;
  if (c >= 0x14A && c <= 0x177) return c | 1;
  if (c == 0x178) return 0xFF;
  if (c >= 0x179 && c <= 0x17E) return (c & 1) ? c + 1 : c;
  if (c >= 0x391 && c <= 0x3AB && c != 0x3A2) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  return c;
}

// Lowercases one whitespace-free piece after trimming punctuation at both ends.
std::string NormalizePiece(std::string_view piece) {
  std::vector<CodePoint> cps;
  std::vector<std::size_t> offsets;
  for (std::size_t i = 0; i < piece.size();) {
    CodePoint cp = Decode(piece, i);
    cps.push_back(cp);
    offsets.push_back(i);
    i += cp.length;
  }
  std::size_t lo = 0, hi = cps.size();
  while (lo < hi && IsPunct(cps[lo].value)) ++lo;
  while (hi > lo && IsPunct(cps[hi - 1].value)) --hi;
  std::string out;
  out.reserve(piece.size());
  for (std::size_t k = lo; k < hi; ++k) {
    char32_t lowered = Lower(cps[k].value);
    if (lowered != cps[k].value) {
      Encode(lowered, out);
    } else {
      out.append(piece.substr(offsets[k], cps[k].length));
    }
  }
  return out;
}

}  // namespace

std::string ToLower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    CodePoint cp = Decode(text, i);
    char32_t lowered = Lower(cp.value);
    if (lowered != cp.value) {
      Encode(lowered, out);
    } else {
      out.append(text.substr(i, cp.length));
    }
    i += cp.length;
  }
  return out;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t start = std::string_view::npos;
  auto flush = [&](std::size_t end) {
    if (start == std::string_view::npos) return;
    std::string tok = NormalizePiece(text.substr(start, end - start));
    if (!tok.empty()) tokens.push_back(std::move(tok));
    start = std::string_view::npos;
  };
  for (std::size_t i = 0; i < text.size();) {
    CodePoint cp = Decode(text, i);
    if (IsSpace(cp.value)) {
      flush(i);
    } else if (start == std::string_view::npos) {
      start = i;
    }
    i += cp.length;
  }
  flush(text.size());
  return tokens;
}

std::string FrequencyModel::BigramKey(std::string_view first, std::string_view second) {
  std::string key;
  key.reserve(first.size() + second.size() + 1);
  key.append(first);
  key.push_back('\t');
  key.append(second);
  return key;
}

std::uint64_t FrequencyModel::Unigram(std::string_view form) const {
  auto it = unigrams_.find(std::string(form));
  return it == unigrams_.end() ? 0 : it->second;
}

std::uint64_t FrequencyModel::Bigram(std::string_view first, std::string_view second) const {
  auto it = bigrams_.find(BigramKey(first, second));
  return it == bigrams_.end() ? 0 : it->second;
}

std::uint64_t FrequencyModel::FirstMarginal(std::string_view form) const {
  auto it = first_marginals_.find(std::string(form));
  return it == first_marginals_.end() ? 0 : it->second;
}

std::uint64_t FrequencyModel::SecondMarginal(std::string_view form) const {
  auto it = second_marginals_.find(std::string(form));
  return it == second_marginals_.end() ? 0 : it->second;
}

void FrequencyModel::AddSentence(std::span<const std::string> tokens) {
  ++sentences_;
  if (tokens.empty()) return;
  ++nonempty_sentences_;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    ++unigrams_[tokens[i]];
    if (i + 1 < tokens.size()) {
      ++bigrams_[BigramKey(tokens[i], tokens[i + 1])];
      ++first_marginals_[tokens[i]];
      ++second_marginals_[tokens[i + 1]];
    }
  }
  total_unigrams_ += tokens.size();
  total_bigrams_ += tokens.size() - 1;
}

void FrequencyModel::Merge(const FrequencyModel& other) {
  for (const auto& [k, v] : other.unigrams_) unigrams_[k] += v;
  for (const auto& [k, v] : other.bigrams_) bigrams_[k] += v;
  for (const auto& [k, v] : other.first_marginals_) first_marginals_[k] += v;
  for (const auto& [k, v] : other.second_marginals_) second_marginals_[k] += v;
  total_unigrams_ += other.total_unigrams_;
  total_bigrams_ += other.total_bigrams_;
  sentences_ += other.sentences_;
  nonempty_sentences_ += other.nonempty_sentences_;
}

FrequencyModel FrequencyModel::Count(std::span<const Sentence> sentences, std::size_t workers) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(sentences.size(), 1));
  if (workers == 1) {
    FrequencyModel model;
    for (const auto& s : sentences) model.AddSentence(s);
    return model;
  }
  std::vector<FrequencyModel> parts(workers);
  ThreadPool pool(workers);
  pool.ParallelFor(workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) {
      std::size_t lo = sentences.size() * w / workers;
      std::size_t hi = sentences.size() * (w + 1) / workers;
      for (std::size_t i = lo; i < hi; ++i) parts[w].AddSentence(sentences[i]);
    }
  });
  FrequencyModel model = std::move(parts[0]);
  for (std::size_t w = 1; w < workers; ++w) model.Merge(parts[w]);
  return model;
}

FrequencyModel FrequencyModel::CountFile(const std::filesystem::path& path, std::size_t workers) {
  constexpr std::size_t kBatchLines = 1 << 16;
  std::ifstream in = io::OpenInput(path);
  FrequencyModel model;
  std::vector<std::string> lines;
  std::vector<Sentence> batch;
  auto process = [&] {
    batch.assign(lines.size(), {});
    for (std::size_t i = 0; i < lines.size(); ++i) batch[i] = Tokenize(lines[i]);
    model.Merge(Count(batch, workers));
    lines.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    lines.emplace_back(io::ChompCr(line));
    if (lines.size() == kBatchLines) process();
  }
  if (!lines.empty()) process();
  return model;
}

namespace {

template <typename Map>
std::vector<std::pair<std::string, std::uint64_t>> SortedByCount(const Map& m) {
  std::vector<std::pair<std::string, std::uint64_t>> v(m.begin(), m.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return v;
}

}  // namespace

void FrequencyModel::Dump(const std::string& prefix) const {
  {
    std::ofstream out = io::OpenOutput(prefix + ".unigrams.tsv");
    out << "form\tcount\n";
    for (const auto& [form, count] : SortedByCount(unigrams_)) out << form << '\t' << count << '\n';
  }
  {
    std::ofstream out = io::OpenOutput(prefix + ".bigrams.tsv");
    out << "form1\tform2\tcount\n";
    for (const auto& [key, count] : SortedByCount(bigrams_)) out << key << '\t' << count << '\n';
  }
  nlohmann::ordered_json meta;
  meta["format"] = "lcp-counts";
  meta["version"] = 1;
  meta["unigrams"] = std::filesystem::path(prefix + ".unigrams.tsv").filename().string();
  meta["bigrams"] = std::filesystem::path(prefix + ".bigrams.tsv").filename().string();
  meta["total_unigrams"] = total_unigrams_;
  meta["total_bigrams"] = total_bigrams_;
  meta["sentences"] = sentences_;
  meta["nonempty_sentences"] = nonempty_sentences_;
  meta["distinct_unigrams"] = unigrams_.size();
  meta["distinct_bigrams"] = bigrams_.size();
  std::ofstream out = io::OpenOutput(prefix + ".meta.json");
  out << meta.dump(2) << '\n';
}

FrequencyModel FrequencyModel::Load(const std::string& prefix) {
  const std::string meta_path = prefix + ".meta.json";
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(io::ReadFile(meta_path));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kFormat, meta_path + ": " + e.what());
  }

  FrequencyModel model;
  auto read_table = [&](const std::string& path, std::size_t key_fields, auto&& store) {
    std::ifstream in = io::OpenInput(path);
    std::string line;
    if (!std::getline(in, line)) Fail(ErrorCode::kFormat, path + ": missing header");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      auto fields = io::SplitTabs(io::ChompCr(line));
      if (fields.size() == 1 && fields[0].empty()) continue;
      if (fields.size() != key_fields + 1) {
        Fail(ErrorCode::kFormat, path + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(key_fields + 1) + " columns");
      }
      auto count = io::ParseCount(fields.back());
      if (!count) Fail(ErrorCode::kFormat, path + ":" + std::to_string(lineno) + ": bad count");
      store(fields, *count);
    }
  };
  read_table(prefix + ".unigrams.tsv", 1, [&](const auto& f, std::uint64_t c) {
    model.unigrams_[std::string(f[0])] += c;
    model.total_unigrams_ += c;
  });
  read_table(prefix + ".bigrams.tsv", 2, [&](const auto& f, std::uint64_t c) {
    model.bigrams_[BigramKey(f[0], f[1])] += c;
    model.first_marginals_[std::string(f[0])] += c;
    model.second_marginals_[std::string(f[1])] += c;
    model.total_bigrams_ += c;
  });
  try {
    if (meta.at("total_unigrams").get<std::uint64_t>() != model.total_unigrams_ ||
        meta.at("total_bigrams").get<std::uint64_t>() != model.total_bigrams_) {
      Fail(ErrorCode::kFormat, meta_path + ": totals do not match the count files");
    }
    model.sentences_ = meta.value("sentences", std::uint64_t{0});
    model.nonempty_sentences_ = meta.value("nonempty_sentences", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kFormat, meta_path + ": " + e.what());
  }
  return model;
}

}  // namespace lcp
