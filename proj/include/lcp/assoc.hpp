#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace lcp {

// 2x2 table for a word pair (w1, w2):
//            w2     !w2
//   w1      o11     o12
//   !w1     o21     o22
struct ContingencyTable {
  double o11 = 0, o12 = 0, o21 = 0, o22 = 0;

  double n() const { return o11 + o12 + o21 + o22; }
  double r1() const { return o11 + o12; }
  double r2() const { return o21 + o22; }
  double c1() const { return o11 + o21; }
  double c2() const { return o12 + o22; }
  double e11() const { return r1() * c1() / n(); }
};

// Builds the table from the two word frequencies, the pair frequency and the
// number of bigram tokens. Throws kInconsistentCounts naming the violated
// inequality when f12 > min(f1, f2), f1 + f2 - f12 > n or n <= 0.
ContingencyTable MakeContingency(double f1, double f2, double f12, double n);

// Measures that are undefined for a table (division by zero, log of zero) are
// left empty rather than infinite.
struct AssocScores {
  std::optional<double> pmi;           // log2(o11 / E11)
  std::optional<double> t_score;       // (o11 - E11) / sqrt(o11)
  std::optional<double> z_score;       // (o11 - E11) / sqrt(E11)
  std::optional<double> g2;            // 2 * sum o ln(o / e), unsigned
  std::optional<double> simple_ll;     // 2 * (o11 ln(o11 / E11) - (o11 - E11))
  std::optional<double> dice;          // 2 o11 / (r1 + c1)
  std::optional<double> dp_2_given_1;  // o11 / R1 - o21 / R2
  std::optional<double> dp_1_given_2;  // o11 / C1 - o12 / C2

  static constexpr std::size_t kCount = 8;
  static constexpr std::array<std::string_view, kCount> kNames = {
      "pmi", "t_score", "z_score", "g2", "simple_ll", "dice", "dp_2_given_1", "dp_1_given_2"};

  std::array<std::optional<double>, kCount> AsArray() const {
    return {pmi, t_score, z_score, g2, simple_ll, dice, dp_2_given_1, dp_1_given_2};
  }
};

AssocScores ComputeAssociationMeasures(const ContingencyTable& t);

class FrequencyModel;

// Scores the adjacent pair (w1, w2) against a reference model, using the
// model's bigram marginals and n = total bigrams. All measures are missing
// when the model has no bigrams.
AssocScores ScorePair(const FrequencyModel& model, std::string_view w1, std::string_view w2);

}  // namespace lcp
