#include <doctest.h>

#include <cmath>
#include <string>

#include "assoc_oracle.hpp"
#include "lcp/assoc.hpp"
#include "lcp/corpus_stats.hpp"
#include "lcp/error.hpp"
#include "lcp/rng.hpp"

using lcp::AssocScores;
using lcp::ComputeAssociationMeasures;
using lcp::ContingencyTable;
using lcp::MakeContingency;

namespace {

void ExpectInconsistent(double f1, double f2, double f12, double n, const std::string& names) {
  try {
    MakeContingency(f1, f2, f12, n);
    FAIL("expected inconsistent counts for " << f1 << "," << f2 << "," << f12 << "," << n);
  } catch (const lcp::Error& e) {
    CHECK(e.code() == lcp::ErrorCode::kInconsistentCounts);
    CHECK(std::string(e.what()).find(names) != std::string::npos);
  }
}

}  // namespace

TEST_SUITE("assoc") {
  TEST_CASE("contingency examples") {
    auto t = MakeContingency(4, 3, 2, 20);
    CHECK(t.o11 == 2);
    CHECK(t.o12 == 2);
    CHECK(t.o21 == 1);
    CHECK(t.o22 == 15);
    auto p = MakeContingency(2, 2, 2, 2);
    CHECK(p.o11 == 2);
    CHECK(p.o12 == 0);
    CHECK(p.o21 == 0);
    CHECK(p.o22 == 0);
    ExpectInconsistent(5, 1, 3, 20, "f12 <= min(f1, f2)");
    ExpectInconsistent(10, 12, 1, 20, "f1 + f2 - f12 <= n");
    ExpectInconsistent(0, 0, 0, 0, "n > 0");
    ExpectInconsistent(-1, 2, 0, 5, "nonnegative");
  }

  TEST_CASE("independence gives zeros") {
    auto s = ComputeAssociationMeasures({2, 2, 2, 2});
    CHECK(*s.pmi == 0.0);
    CHECK(*s.t_score == 0.0);
    CHECK(*s.z_score == 0.0);
    CHECK(*s.g2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(*s.simple_ll == 0.0);
    CHECK(*s.dp_2_given_1 == 0.0);
    CHECK(*s.dp_1_given_2 == 0.0);
    CHECK(*s.dice == 0.5);
  }

  TEST_CASE("reference table") {
    auto s = ComputeAssociationMeasures({2, 2, 1, 15});
    CHECK(*s.pmi == doctest::Approx(1.736965594166).epsilon(1e-11));
    CHECK(*s.t_score == doctest::Approx(0.989949493661).epsilon(1e-11));
    CHECK(*s.z_score == doctest::Approx(1.807392228230).epsilon(1e-11));
    CHECK(*s.g2 == doctest::Approx(3.881852989153).epsilon(1e-11));
    CHECK(*s.simple_ll == doctest::Approx(2.015891217304).epsilon(1e-11));
    CHECK(*s.dice == doctest::Approx(0.571428571429).epsilon(1e-11));
    CHECK(*s.dp_2_given_1 == doctest::Approx(0.4375).epsilon(1e-15));
    CHECK(*s.dp_1_given_2 == doctest::Approx(0.549019607843).epsilon(1e-11));
  }

  TEST_CASE("zero co-occurrence leaves log measures missing") {
    auto s = ComputeAssociationMeasures({0, 4, 3, 13});
    CHECK_FALSE(s.pmi.has_value());
    CHECK_FALSE(s.t_score.has_value());
    CHECK_FALSE(s.simple_ll.has_value());
    CHECK(*s.dice == 0.0);
    CHECK(*s.dp_2_given_1 == -0.1875);
    CHECK(*s.z_score == doctest::Approx(-0.774596669241).epsilon(1e-11));
    CHECK(*s.g2 == doctest::Approx(1.465881426575).epsilon(1e-11));
    CHECK(*s.dp_1_given_2 == doctest::Approx(-0.235294117647).epsilon(1e-11));
  }

  TEST_CASE("degenerate margins give missing ratios") {
    auto s = ComputeAssociationMeasures({3, 0, 0, 0});
    CHECK(*s.dice == 1.0);
    CHECK_FALSE(s.dp_2_given_1.has_value());
    CHECK_FALSE(s.dp_1_given_2.has_value());
    CHECK(*s.pmi == 0.0);
    auto empty = ComputeAssociationMeasures({0, 0, 0, 5});
    CHECK_FALSE(empty.dice.has_value());
    CHECK_FALSE(empty.z_score.has_value());
    CHECK(*empty.g2 == 0.0);
  }

  TEST_CASE("matches the direct-formula oracle on random tables") {
    lcp::Rng rng(21);
    for (int i = 0; i < 5000; ++i) {
      ContingencyTable t{double(rng.Below(1000)), double(rng.Below(1000)), double(rng.Below(1000)),
                         double(1 + rng.Below(100000))};
      auto got = ComputeAssociationMeasures(t).AsArray();
      auto want = lcp::test::OracleAssoc(t.o11, t.o12, t.o21, t.o22);
      for (std::size_t m = 0; m < AssocScores::kCount; ++m) {
        REQUIRE(got[m].has_value() == want[m].has_value());
        if (got[m]) {
          CHECK(std::fabs(*got[m] - static_cast<double>(*want[m])) <= 1e-9 * std::max(1.0, std::fabs(*got[m])));
        }
      }
    }
  }

  TEST_CASE("g2 is nonnegative and dice is 1 exactly when off-diagonal row and column cells are empty") {
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b)
        for (int c = 0; c <= 6; ++c)
          for (int d = 0; d <= 6; ++d) {
            if (a + b + c + d == 0) continue;
            auto s = ComputeAssociationMeasures({double(a), double(b), double(c), double(d)});
            CHECK(*s.g2 >= -1e-12);
            if (s.dice) {
              CHECK(*s.dice >= 0.0);
              CHECK(*s.dice <= 1.0);
              CHECK((*s.dice == 1.0) == (b == 0 && c == 0));
            }
          }
  }

  TEST_CASE("scaling all cells keeps pmi, dice and delta-p") {
    lcp::Rng rng(22);
    for (int i = 0; i < 2000; ++i) {
      ContingencyTable t{double(1 + rng.Below(50)), double(rng.Below(50)), double(rng.Below(50)),
                         double(1 + rng.Below(50))};
      ContingencyTable k{t.o11 * 10, t.o12 * 10, t.o21 * 10, t.o22 * 10};
      auto a = ComputeAssociationMeasures(t), b = ComputeAssociationMeasures(k);
      CHECK(*b.pmi == doctest::Approx(*a.pmi).epsilon(1e-12));
      CHECK(*b.dice == doctest::Approx(*a.dice).epsilon(1e-12));
      REQUIRE(a.dp_2_given_1.has_value() == b.dp_2_given_1.has_value());
      if (a.dp_2_given_1) CHECK(*b.dp_2_given_1 == doctest::Approx(*a.dp_2_given_1).epsilon(1e-12));
      REQUIRE(a.dp_1_given_2.has_value() == b.dp_1_given_2.has_value());
      if (a.dp_1_given_2) CHECK(*b.dp_1_given_2 == doctest::Approx(*a.dp_1_given_2).epsilon(1e-12));
    }
  }

  TEST_CASE("exact independence tables give zeros") {
    lcp::Rng rng(23);
    int checked = 0;
    for (int i = 0; i < 3000 && checked < 500; ++i) {
      // (p*r, p*s, q*r, q*s) is always independent
      double p = 1 + rng.Below(9), q = 1 + rng.Below(9), r = 1 + rng.Below(9), s = 1 + rng.Below(9);
      auto sc = ComputeAssociationMeasures({p * r, p * s, q * r, q * s});
      CHECK(std::fabs(*sc.pmi) <= 1e-12);
      CHECK(std::fabs(*sc.t_score) <= 1e-12);
      CHECK(std::fabs(*sc.z_score) <= 1e-12);
      CHECK(std::fabs(*sc.g2) <= 1e-12);
      CHECK(std::fabs(*sc.simple_ll) <= 1e-12);
      CHECK(std::fabs(*sc.dp_2_given_1) <= 1e-12);
      CHECK(std::fabs(*sc.dp_1_given_2) <= 1e-12);
      ++checked;
    }
  }

  TEST_CASE("random consistent counts give nonnegative cells with exact margins") {
    lcp::Rng rng(24);
    for (int i = 0; i < 10000; ++i) {
      double n = double(1 + rng.Below(1000));
      double f1 = double(rng.Below(std::uint64_t(n) + 1));
      double f12 = double(rng.Below(std::uint64_t(f1) + 1));
      double f2 = f12 + double(rng.Below(std::uint64_t(n - f1) + 1));
      auto t = MakeContingency(f1, f2, f12, n);
      CHECK(t.o11 >= 0);
      CHECK(t.o12 >= 0);
      CHECK(t.o21 >= 0);
      CHECK(t.o22 >= 0);
      CHECK(t.r1() == f1);
      CHECK(t.c1() == f2);
      CHECK(t.n() == n);
    }
  }

  TEST_CASE("score pair from a frequency model") {
    auto m = lcp::FrequencyModel::Count(std::vector<lcp::Sentence>{{"a", "b"}, {"a", "b", "c"}, {"c", "a"}});
    // bigrams: (a,b)x2, (b,c), (c,a); n = 4
    auto s = lcp::ScorePair(m, "a", "b");
    auto direct = ComputeAssociationMeasures(MakeContingency(2, 2, 2, 4));
    CHECK(s.AsArray() == direct.AsArray());
    auto none = lcp::ScorePair(m, "b", "a");
    CHECK_FALSE(none.pmi.has_value());
    auto unknown = lcp::ScorePair(m, "x", "y");
    CHECK_FALSE(unknown.pmi.has_value());
    CHECK(*unknown.g2 == 0.0);
    CHECK_FALSE(lcp::ScorePair(lcp::FrequencyModel{}, "a", "b").g2.has_value());
  }
}
