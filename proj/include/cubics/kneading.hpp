#pragma once

// Kneading words of the marked critical orbit and the rewriting moves that
// drive every word to 1^{p-1}0.  Words are binary, length p >= 2, last
// symbol 0 (the p-th orbit point is the marked critical point itself).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubics {

class KneadingWord {
 public:
  explicit KneadingWord(std::vector<uint8_t> bits);
  static KneadingWord parse(const std::string& text);
  static KneadingWord distinguished(long p);  // 1^{p-1}0
  static KneadingWord all_zero(long p);       // 0^p

  long p() const { return static_cast<long>(bits_.size()); }
  // 1-based access matching the usual index convention iota_1..iota_p.
  uint8_t at(long j) const { return bits_[static_cast<size_t>(j - 1)]; }
  const std::vector<uint8_t>& bits() const { return bits_; }

  std::string str() const;
  bool operator==(const KneadingWord& o) const { return bits_ == o.bits_; }
  bool operator!=(const KneadingWord& o) const { return !(*this == o); }
  bool operator<(const KneadingWord& o) const { return bits_ < o.bits_; }

 private:
  std::vector<uint8_t> bits_;
};

enum class MoveKind { A, B };

struct MoveEdge {
  KneadingWord from;
  KneadingWord to;
  MoveKind kind;
  std::optional<long> position;  // the flipped index k of a type B move
};

// mu = 1 + (length of the longest run of 1s); mu = 1 for 0^p.
long max_return_time(const KneadingWord& k);

// The strictly increasing invariant (b, w) of the move system:
// w = number of 1s; for k = 0^n 1^m 0..., b = n + m + 1, and b(0^p) = 0.
std::pair<long, long> order_key(const KneadingWord& k);

// All words reachable by a type A move: requires the prefix 1^{mu-1}0; the
// successors are the words with prefix 0^{mu-1}1 and free tail.  Empty when
// the prefix fails or when the successor prefix would collide with the
// final 0 (exactly the distinguished word).
std::vector<KneadingWord> type_a_successors(const KneadingWord& k);

// One edge per admissible flip position k: iota_k = 0 followed by mu-1
// ones, with k + mu <= p.
std::vector<MoveEdge> type_b_successors(const KneadingWord& k);

// A shortest move sequence to 1^{p-1}0 (breadth-first over the move graph);
// empty when the word is already distinguished.
std::vector<MoveEdge> path_to_distinguished(const KneadingWord& k);

struct MoveLemmaReport {
  long max_chain = 0;  // longest move chain (number of moves) over all words
  long bound = 0;      // p^2 + p
  bool ok = false;     // max_chain <= bound
  bool monotone = false;     // (b,w) strictly increases along every edge
  bool unique_sink = false;  // only 1^{p-1}0 has no successor
};

// Exhaustive check over all 2^{p-1} words; p is capped (the word count and
// type A out-degrees grow exponentially).
MoveLemmaReport verify_move_lemma(long p);

inline constexpr long kMoveLemmaMaxP = 14;

}  // namespace cubics
