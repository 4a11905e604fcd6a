#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cubics/kneading.hpp"

using namespace cubics;

namespace {

// Independent successor oracle: filter every word of length p against the
// move definitions stated on prefixes, with no constructive enumeration.
std::vector<std::string> all_words(long p) {
  std::vector<std::string> out;
  for (long m = 0; m < (1L << (p - 1)); ++m) {
    std::string w;
    for (long j = 0; j < p - 1; ++j) w.push_back(((m >> j) & 1) ? '1' : '0');
    w.push_back('0');
    out.push_back(w);
  }
  return out;
}

long oracle_mu(const std::string& w) {
  long longest = 0, run = 0;
  for (char c : w) {
    run = (c == '1') ? run + 1 : 0;
    longest = std::max(longest, run);
  }
  return longest + 1;
}

bool oracle_type_a_edge(const std::string& w, const std::string& w2) {
  const long p = static_cast<long>(w.size());
  const long mu = oracle_mu(w);
  std::string from_prefix = std::string(mu - 1, '1') + "0";
  std::string to_prefix = std::string(mu - 1, '0') + "1";
  if (static_cast<long>(from_prefix.size()) > p) return false;
  return w.substr(0, mu) == from_prefix && w2.substr(0, std::min<long>(mu, p)) == to_prefix &&
         w2.back() == '0';
}

bool oracle_type_b_edge(const std::string& w, const std::string& w2, long* kout = nullptr) {
  const long p = static_cast<long>(w.size());
  const long mu = oracle_mu(w);
  long diff = -1;
  for (long i = 0; i < p; ++i)
    if (w[i] != w2[i]) {
      if (diff >= 0) return false;
      diff = i;
    }
  if (diff < 0) return false;
  const long k = diff + 1;  // 1-based
  if (k > p - 1 || w[diff] != '0' || w2[diff] != '1') return false;
  if (k + mu > p) return false;
  for (long j = k + 1; j <= k + mu - 1; ++j)
    if (w[j - 1] != '1') return false;
  if (kout) *kout = k;
  return true;
}

}  // namespace

TEST_CASE("max_return_time") {
  CHECK(max_return_time(KneadingWord::parse("000")) == 1);
  CHECK(max_return_time(KneadingWord::parse("110")) == 3);
  CHECK(max_return_time(KneadingWord::parse("0100")) == 2);
}

TEST_CASE("word validation") {
  CHECK_THROWS_AS(KneadingWord::parse("011"), std::invalid_argument);  // last must be 0
  CHECK_THROWS_AS(KneadingWord::parse("0"), std::invalid_argument);    // p >= 2
  CHECK_THROWS_AS(KneadingWord::parse("01x0"), std::invalid_argument);
  CHECK(KneadingWord::distinguished(4).str() == "1110");
  CHECK(KneadingWord::all_zero(3).str() == "000");
}

TEST_CASE("order_key") {
  CHECK(order_key(KneadingWord::parse("000")) == std::pair<long, long>{0, 0});
  CHECK(order_key(KneadingWord::parse("1010")) == std::pair<long, long>{2, 2});
  CHECK(order_key(KneadingWord::parse("110")) == std::pair<long, long>{3, 2});
}

TEST_CASE("type_a_successors examples") {
  auto strs = [](const std::vector<KneadingWord>& ws) {
    std::set<std::string> out;
    for (const auto& w : ws) out.insert(w.str());
    return out;
  };
  CHECK(strs(type_a_successors(KneadingWord::parse("1010"))) ==
        std::set<std::string>{"0100", "0110"});
  CHECK(strs(type_a_successors(KneadingWord::parse("000"))) ==
        std::set<std::string>{"100", "110"});
  CHECK(type_a_successors(KneadingWord::parse("110")).empty());
}

TEST_CASE("type_b_successors examples") {
  auto edges = type_b_successors(KneadingWord::parse("0110"));
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].to.str() == "1110");
  CHECK(edges[0].position == 1);

  edges = type_b_successors(KneadingWord::parse("0010"));
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].to.str() == "0110");
  CHECK(edges[0].position == 2);

  CHECK(type_b_successors(KneadingWord::parse("110")).empty());
}

TEST_CASE("successors match the filter oracle") {
  for (long p = 2; p <= 8; ++p) {
    for (const std::string& w : all_words(p)) {
      KneadingWord kw = KneadingWord::parse(w);
      std::set<std::string> got_a, want_a;
      for (const auto& s : type_a_successors(kw)) got_a.insert(s.str());
      std::set<std::pair<std::string, long>> got_b, want_b;
      for (const auto& e : type_b_successors(kw)) got_b.insert({e.to.str(), *e.position});
      for (const std::string& w2 : all_words(p)) {
        if (oracle_type_a_edge(w, w2)) want_a.insert(w2);
        long k = 0;
        if (oracle_type_b_edge(w, w2, &k)) want_b.insert({w2, k});
      }
      CAPTURE(w);
      REQUIRE(got_a == want_a);
      REQUIRE(got_b == want_b);
    }
  }
}

TEST_CASE("move edges increase the order key strictly") {
  for (long p = 2; p <= 9; ++p)
    for (const std::string& w : all_words(p)) {
      KneadingWord kw = KneadingWord::parse(w);
      auto key = order_key(kw);
      for (const auto& s : type_a_successors(kw)) CHECK(order_key(s) > key);
      for (const auto& e : type_b_successors(kw)) CHECK(order_key(e.to) > key);
    }
}

TEST_CASE("path_to_distinguished examples") {
  auto path = path_to_distinguished(KneadingWord::parse("0010"));
  REQUIRE(path.size() == 2);
  CHECK(path[0].from.str() == "0010");
  CHECK(path[0].to.str() == "0110");
  CHECK(path[0].kind == MoveKind::B);
  CHECK(path[1].to.str() == "1110");
  CHECK(path[1].kind == MoveKind::B);

  path = path_to_distinguished(KneadingWord::parse("000"));
  REQUIRE(path.size() == 1);
  CHECK(path[0].kind == MoveKind::A);
  CHECK(path[0].to.str() == "110");

  CHECK(path_to_distinguished(KneadingWord::parse("110")).empty());
}

TEST_CASE("paths are valid move chains within the bound") {
  for (long p = 2; p <= 9; ++p)
    for (const std::string& w : all_words(p)) {
      auto path = path_to_distinguished(KneadingWord::parse(w));
      CHECK(static_cast<long>(path.size()) <= p * p + p);
      std::string cur = w;
      for (const auto& e : path) {
        REQUIRE(e.from.str() == cur);
        if (e.kind == MoveKind::A)
          CHECK(oracle_type_a_edge(e.from.str(), e.to.str()));
        else
          CHECK(oracle_type_b_edge(e.from.str(), e.to.str()));
        cur = e.to.str();
      }
      CHECK(cur == KneadingWord::distinguished(p).str());
    }
}

TEST_CASE("verify_move_lemma small p") {
  auto r2 = verify_move_lemma(2);
  CHECK(r2.max_chain == 1);
  CHECK(r2.bound == 6);
  CHECK(r2.ok);

  auto r3 = verify_move_lemma(3);
  CHECK(r3.max_chain == 3);  // 000 -> 100 -> 010 -> 110
  CHECK(r3.max_chain <= 12);
  CHECK(r3.ok);

  auto r4 = verify_move_lemma(4);
  CHECK(r4.ok);
  CHECK(r4.monotone);
  CHECK(r4.unique_sink);

  CHECK_THROWS_AS(verify_move_lemma(1), std::domain_error);
  CHECK_THROWS_AS(verify_move_lemma(kMoveLemmaMaxP + 1), std::length_error);
}
