#include "lcp/assoc.hpp"

#include <cmath>
#include <string>

#include "lcp/corpus_stats.hpp"
#include "lcp/error.hpp"
#include "text_io.hpp"

namespace lcp {

ContingencyTable MakeContingency(double f1, double f2, double f12, double n) {
  auto num = [](double v) { return io::FormatDouble(v); };
  if (!(std::isfinite(f1) && std::isfinite(f2) && std::isfinite(f12) && std::isfinite(n)) ||
      f1 < 0 || f2 < 0 || f12 < 0) {
    Fail(ErrorCode::kInconsistentCounts, "counts must be finite and nonnegative");
  }
  if (!(n > 0)) Fail(ErrorCode::kInconsistentCounts, "n > 0 violated (n=" + num(n) + ")");
  if (f12 > f1 || f12 > f2) {
    Fail(ErrorCode::kInconsistentCounts, "f12 <= min(f1, f2) violated (f12=" + num(f12) + ", f1=" +
                                             num(f1) + ", f2=" + num(f2) + ")");
  }
  if (f1 + f2 - f12 > n) {
    Fail(ErrorCode::kInconsistentCounts,
         "f1 + f2 - f12 <= n violated (" + num(f1 + f2 - f12) + " > " + num(n) + ")");
  }
  return {f12, f1 - f12, f2 - f12, n - f1 - f2 + f12};
}

namespace {

double XLogXOverE(double o, double e) { return o > 0 ? o * std::log(o / e) : 0.0; }

}  // namespace

AssocScores ComputeAssociationMeasures(const ContingencyTable& t) {
  const double n = t.n();
  const double r1 = t.r1(), r2 = t.r2(), c1 = t.c1(), c2 = t.c2();
  AssocScores s;
  if (!(n > 0)) return s;
  const double e11 = r1 * c1 / n;

  if (t.o11 > 0) {
    s.pmi = std::log2(t.o11 / e11);
    s.t_score = (t.o11 - e11) / std::sqrt(t.o11);
    s.simple_ll = 2.0 * (t.o11 * std::log(t.o11 / e11) - (t.o11 - e11));
  }
  if (e11 > 0) s.z_score = (t.o11 - e11) / std::sqrt(e11);

  // a cell with o > 0 always has a nonzero expected count
  double g = XLogXOverE(t.o11, e11) + XLogXOverE(t.o12, r1 * c2 / n) +
             XLogXOverE(t.o21, r2 * c1 / n) + XLogXOverE(t.o22, r2 * c2 / n);
  s.g2 = std::fabs(2.0 * g);

  if (r1 + c1 > 0) s.dice = 2.0 * t.o11 / (r1 + c1);
  if (r1 > 0 && r2 > 0) s.dp_2_given_1 = t.o11 / r1 - t.o21 / r2;
  if (c1 > 0 && c2 > 0) s.dp_1_given_2 = t.o11 / c1 - t.o12 / c2;
  return s;
}

AssocScores ScorePair(const FrequencyModel& model, std::string_view w1, std::string_view w2) {
  if (model.total_bigrams() == 0) return {};
  auto t = MakeContingency(static_cast<double>(model.FirstMarginal(w1)),
                           static_cast<double>(model.SecondMarginal(w2)),
                           static_cast<double>(model.Bigram(w1, w2)),
                           static_cast<double>(model.total_bigrams()));
  return ComputeAssociationMeasures(t);
}

}  // namespace lcp
