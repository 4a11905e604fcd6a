#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "cubics/angle.hpp"

using namespace cubics;

namespace {

// Independent oracle: (preperiod, period) by plain orbit enumeration with a
// first-visit table.
AngleClass classify_by_orbit(const Angle& t) {
  std::map<std::pair<std::string, std::string>, long> seen;
  Angle cur = t;
  long n = 0;
  while (true) {
    auto key = std::make_pair(cur.num().str(), cur.den().str());
    auto it = seen.find(key);
    if (it != seen.end()) return AngleClass{it->second, n - it->second};
    seen.emplace(key, n);
    cur = triple(cur);
    ++n;
  }
}

}  // namespace

TEST_CASE("triple") {
  CHECK(triple(Angle(1, 8)) == Angle(3, 8));
  CHECK(triple(Angle(19, 30)) == Angle(9, 10));
  CHECK(triple(Angle(2, 3)) == Angle(0, 1));
  CHECK(Angle(2, 3).str() == "2/3");
  CHECK(triple(Angle(2, 3)).str() == "0/1");
}

TEST_CASE("parse and canonical form") {
  CHECK(Angle::parse("6/8") == Angle(3, 4));
  CHECK(Angle::parse("-1/4") == Angle(3, 4));  // reduced mod 1
  CHECK(Angle::parse("7/3") == Angle(1, 3));
  CHECK(Angle::parse("2") == Angle(0, 1));
  CHECK_THROWS_AS(Angle(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Angle::parse("x/3"), std::invalid_argument);
}

TEST_CASE("classify examples") {
  CHECK(classify(Angle(1, 8)) == AngleClass{0, 2});
  CHECK(classify(Angle(1, 3)) == AngleClass{1, 1});
  CHECK(classify(Angle(1, 26)) == AngleClass{0, 3});
  CHECK(classify(Angle(0, 1)) == AngleClass{0, 1});
}

TEST_CASE("classify matches orbit enumeration oracle") {
  for (long den = 1; den <= 120; ++den)
    for (long num = 0; num < den; ++num) {
      Angle t(num, den);
      AngleClass got = classify(t);
      AngleClass want = classify_by_orbit(t);
      CAPTURE(t.str());
      REQUIRE(got == want);
    }
}

TEST_CASE("classify is compatible with triple") {
  for (long den = 1; den <= 90; ++den)
    for (long num = 0; num < den; ++num) {
      Angle t(num, den);
      AngleClass c = classify(t);
      AngleClass ct = classify(triple(t));
      CHECK(ct.period == c.period);
      if (c.preperiod > 0) CHECK(ct.preperiod == c.preperiod - 1);
    }
}

TEST_CASE("alpha_beta") {
  auto [a2, b2] = alpha_beta(2);
  CHECK(a2 == Angle(5, 24));
  CHECK(b2 == Angle(7, 24));
  auto [a3, b3] = alpha_beta(3);
  CHECK(a3 == Angle(23, 78));
  CHECK(b3 == Angle(25, 78));
  CHECK_THROWS_AS(alpha_beta(1), std::domain_error);
}

TEST_CASE("cyclic_member") {
  CHECK(cyclic_member(Angle(1, 2), Angle(1, 3), Angle(2, 3), IntervalKind::closed_open));
  CHECK(cyclic_member(Angle(1, 10), Angle(2, 3), Angle(1, 3), IntervalKind::open_open));
  CHECK_FALSE(cyclic_member(Angle(1, 2), Angle(2, 3), Angle(1, 3), IntervalKind::open_open));
  // endpoint conventions
  CHECK(cyclic_member(Angle(1, 3), Angle(1, 3), Angle(2, 3), IntervalKind::closed_open));
  CHECK_FALSE(cyclic_member(Angle(1, 3), Angle(1, 3), Angle(2, 3), IntervalKind::open_open));
  CHECK(cyclic_member(Angle(2, 3), Angle(1, 3), Angle(2, 3), IntervalKind::open_closed));
  CHECK_FALSE(cyclic_member(Angle(2, 3), Angle(1, 3), Angle(2, 3), IntervalKind::closed_open));
}

TEST_CASE("itinerary examples") {
  CHECK(itinerary(Angle(3, 10), Angle(19, 30), PartitionSide::minus, 4) == "0110");
  CHECK(itinerary(Angle(3, 10), Angle(29, 30), PartitionSide::plus, 4) == "0110");
  CHECK(itinerary(Angle(1, 4), Angle(0, 1), PartitionSide::plus, 4) == "0000");
}

TEST_CASE("itinerary is shift equivariant") {
  long checked = 0;
  for (long den = 1; den <= 40; ++den)
    for (long num = 0; num < den; ++num) {
      Angle theta(3, 10);
      Angle t(num, den);
      std::string w = itinerary(theta, t, PartitionSide::minus, 6);
      std::string ws = itinerary(theta, triple(t), PartitionSide::minus, 5);
      REQUIRE(w.substr(1) == ws);
      ++checked;
    }
  CHECK(checked > 500);
}

TEST_CASE("partition covers the circle exactly once") {
  ThetaPartition plus{Angle(3, 10), PartitionSide::plus};
  ThetaPartition minus{Angle(3, 10), PartitionSide::minus};
  for (long den = 1; den <= 60; ++den)
    for (long num = 0; num < den; ++num) {
      Angle t(num, den);
      // in_zero and its complement partition R/Z for either side convention
      bool p0 = plus.in_zero(t);
      bool m0 = minus.in_zero(t);
      Angle lo = Angle(3, 10) - Angle(1, 3), hi = Angle(3, 10) + Angle(1, 3);
      CHECK(p0 == cyclic_member(t, lo, hi, IntervalKind::closed_open));
      CHECK(m0 == cyclic_member(t, lo, hi, IntervalKind::open_closed));
    }
}

// Exact-arithmetic check of the itinerary prefix lemma on a reduced angle
// set; the acceptance suite runs the full denominator range.
TEST_CASE("itinerary prefix lemma, small denominators") {
  const long max_den = 81;
  for (long ell = 2; ell <= 4; ++ell) {
    auto [alpha, beta] = alpha_beta(ell);
    Angle third(1, 3);
    std::string expect_outer = "0" + std::string(ell, '1');
    std::string expect_inner = "0" + std::string(ell - 1, '1') + "0";
    for (long den = 2; den <= max_den; ++den) {
      for (long num = 0; num < den; ++num) {
        Angle theta(num, den);
        Angle mtheta = Angle(0, 1) - theta;
        // theta in ]beta, 1/3[ (and mirror): both prefixes 0 1^ell
        if (cyclic_member(theta, beta, third, IntervalKind::open_open)) {
          CHECK(itinerary(theta, theta + third, PartitionSide::minus, ell + 1) == expect_outer);
          CHECK(itinerary(theta, theta - third, PartitionSide::plus, ell + 1) == expect_outer);
          CHECK(itinerary(mtheta, mtheta + third, PartitionSide::minus, ell + 1) == expect_outer);
          CHECK(itinerary(mtheta, mtheta - third, PartitionSide::plus, ell + 1) == expect_outer);
        }
        // theta in ]alpha, beta[ (and mirror): both prefixes 0 1^{ell-1} 0
        if (cyclic_member(theta, alpha, beta, IntervalKind::open_open)) {
          CHECK(itinerary(theta, theta + third, PartitionSide::minus, ell + 1) == expect_inner);
          CHECK(itinerary(theta, theta - third, PartitionSide::plus, ell + 1) == expect_inner);
          CHECK(itinerary(mtheta, mtheta + third, PartitionSide::minus, ell + 1) == expect_inner);
          CHECK(itinerary(mtheta, mtheta - third, PartitionSide::plus, ell + 1) == expect_inner);
        }
      }
    }
  }
}
