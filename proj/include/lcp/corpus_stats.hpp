#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lcp {

using Sentence = std::vector<std::string>;

// Splits on Unicode whitespace, strips leading and trailing punctuation from
// each piece and lowercases the rest. Hyphens and apostrophes inside a piece
// are kept, so "state-of-the-art," yields "state-of-the-art". Case folding
// covers ASCII, Latin-1, Latin Extended-A, basic Greek and Cyrillic.
std::vector<std::string> Tokenize(std::string_view text);

std::string ToLower(std::string_view text);

// Unigram and adjacent-bigram counts over a sentence-split corpus. Bigrams are
// never formed across sentence boundaries. Immutable once built.
class FrequencyModel {
 public:
  FrequencyModel() = default;

  std::uint64_t Unigram(std::string_view form) const;
  std::uint64_t Bigram(std::string_view first, std::string_view second) const;

  // Occurrences of a form as the first / second element of a counted bigram.
  // These are the row and column totals of the bigram table, so any pair's
  // contingency table built from them with n = total_bigrams() is consistent.
  std::uint64_t FirstMarginal(std::string_view form) const;
  std::uint64_t SecondMarginal(std::string_view form) const;

  std::uint64_t total_unigrams() const { return total_unigrams_; }
  std::uint64_t total_bigrams() const { return total_bigrams_; }
  std::uint64_t sentences() const { return sentences_; }
  std::uint64_t nonempty_sentences() const { return nonempty_sentences_; }

  // Bigram keys are "first\tsecond"; tokens never contain whitespace.
  const std::unordered_map<std::string, std::uint64_t>& unigrams() const { return unigrams_; }
  const std::unordered_map<std::string, std::uint64_t>& bigrams() const { return bigrams_; }

  static std::string BigramKey(std::string_view first, std::string_view second);

  // Counts every token and every adjacent within-sentence pair. With more than
  // one worker the sentence list is partitioned and partial counts merged; the
  // result is identical to the sequential count.
  static FrequencyModel Count(std::span<const Sentence> sentences, std::size_t workers = 1);

  // Streams a UTF-8 text file with one sentence per line.
  static FrequencyModel CountFile(const std::filesystem::path& path, std::size_t workers = 1);

  // Writes <prefix>.unigrams.tsv, <prefix>.bigrams.tsv and <prefix>.meta.json.
  void Dump(const std::string& prefix) const;
  static FrequencyModel Load(const std::string& prefix);

  void Merge(const FrequencyModel& other);

  friend bool operator==(const FrequencyModel&, const FrequencyModel&) = default;

 private:
  void AddSentence(std::span<const std::string> tokens);

  std::unordered_map<std::string, std::uint64_t> unigrams_;
  std::unordered_map<std::string, std::uint64_t> bigrams_;
  std::unordered_map<std::string, std::uint64_t> first_marginals_;
  std::unordered_map<std::string, std::uint64_t> second_marginals_;
  std::uint64_t total_unigrams_ = 0;
  std::uint64_t total_bigrams_ = 0;
  std::uint64_t sentences_ = 0;
  std::uint64_t nonempty_sentences_ = 0;
};

}  // namespace lcp
