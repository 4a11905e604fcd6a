#include "cubics/kneading.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace cubics {

KneadingWord::KneadingWord(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.size() < 2) throw std::invalid_argument("KneadingWord: length must be >= 2");
  for (uint8_t b : bits_)
    if (b > 1) throw std::invalid_argument("KneadingWord: symbols must be 0 or 1");
  if (bits_.back() != 0) throw std::invalid_argument("KneadingWord: last symbol must be 0");
}

KneadingWord KneadingWord::parse(const std::string& text) {
  std::vector<uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("KneadingWord: cannot parse \"" + text + "\"");
    bits.push_back(static_cast<uint8_t>(c - '0'));
  }
  return KneadingWord(std::move(bits));
}

KneadingWord KneadingWord::distinguished(long p) {
  if (p < 2) throw std::invalid_argument("KneadingWord: length must be >= 2");
  std::vector<uint8_t> bits(static_cast<size_t>(p), 1);
  bits.back() = 0;
  return KneadingWord(std::move(bits));
}

KneadingWord KneadingWord::all_zero(long p) {
  if (p < 2) throw std::invalid_argument("KneadingWord: length must be >= 2");
  return KneadingWord(std::vector<uint8_t>(static_cast<size_t>(p), 0));
}

std::string KneadingWord::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (uint8_t b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

long max_return_time(const KneadingWord& k) {
  long longest = 0, run = 0;
  for (uint8_t b : k.bits()) {
    run = b ? run + 1 : 0;
    longest = std::max(longest, run);
  }
  return longest + 1;
}

std::pair<long, long> order_key(const KneadingWord& k) {
  long w = 0;
  for (uint8_t b : k.bits()) w += b;
  if (w == 0) return {0, 0};
  long n = 0;
  while (k.at(n + 1) == 0) ++n;
  long m = 0;
  while (n + m + 1 <= k.p() && k.at(n + m + 1) == 1) ++m;
  return {n + m + 1, w};
}

namespace {

// Packed form: bits iota_1..iota_{p-1} (iota_p = 0 always), iota_1 in bit 0.
uint32_t pack(const KneadingWord& k) {
  uint32_t m = 0;
  for (long j = 1; j < k.p(); ++j) m |= static_cast<uint32_t>(k.at(j)) << (j - 1);
  return m;
}

KneadingWord unpack(uint32_t m, long p) {
  std::vector<uint8_t> bits(static_cast<size_t>(p), 0);
  for (long j = 1; j < p; ++j) bits[static_cast<size_t>(j - 1)] = (m >> (j - 1)) & 1u;
  return KneadingWord(std::move(bits));
}

long packed_mu(uint32_t m, long p) {
  long longest = 0, run = 0;
  for (long j = 1; j < p; ++j) {
    run = ((m >> (j - 1)) & 1u) ? run + 1 : 0;
    longest = std::max(longest, run);
  }
  return longest + 1;
}

// Enumerates successors of a packed word, calling fn(to, kind, position).
template <typename Fn>
void for_each_successor(uint32_t m, long p, Fn&& fn) {
  const long mu = packed_mu(m, p);
  // type A: prefix 1^{mu-1}0 and mu < p (mu == p only for the distinguished word)
  if (mu < p) {
    bool prefix_ok = true;
    for (long j = 1; j < mu && prefix_ok; ++j) prefix_ok = (m >> (j - 1)) & 1u;
    if (prefix_ok) prefix_ok = !((m >> (mu - 1)) & 1u);
    if (prefix_ok) {
      // successor prefix 0^{mu-1}1 in positions 1..mu, free tail in mu+1..p-1
      const uint32_t head = 1u << (mu - 1);
      const long free_bits = p - 1 - mu;
      for (uint32_t tail = 0; tail < (1u << free_bits); ++tail)
        fn(head | (tail << mu), MoveKind::A, std::optional<long>{});
    }
  }
  // type B: flip a 0 at position k followed by mu-1 ones, k + mu <= p
  for (long k = 1; k + mu <= p; ++k) {
    if ((m >> (k - 1)) & 1u) continue;
    bool ones = true;
    for (long j = k + 1; j <= k + mu - 1 && ones; ++j) ones = (m >> (j - 1)) & 1u;
    if (ones) fn(m | (1u << (k - 1)), MoveKind::B, std::optional<long>{k});
  }
}

}  // namespace

std::vector<KneadingWord> type_a_successors(const KneadingWord& k) {
  std::vector<KneadingWord> out;
  for_each_successor(pack(k), k.p(), [&](uint32_t to, MoveKind kind, std::optional<long>) {
    if (kind == MoveKind::A) out.push_back(unpack(to, k.p()));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MoveEdge> type_b_successors(const KneadingWord& k) {
  std::vector<MoveEdge> out;
  for_each_successor(pack(k), k.p(), [&](uint32_t to, MoveKind kind, std::optional<long> pos) {
    if (kind == MoveKind::B) out.push_back(MoveEdge{k, unpack(to, k.p()), kind, pos});
  });
  return out;
}

std::vector<MoveEdge> path_to_distinguished(const KneadingWord& k) {
  const long p = k.p();
  if (p > 20) throw std::length_error("path_to_distinguished: p too large for search");
  const uint32_t start = pack(k);
  const uint32_t goal = pack(KneadingWord::distinguished(p));
  if (start == goal) return {};

  struct Prev {
    uint32_t from;
    MoveKind kind;
    std::optional<long> position;
  };
  std::unordered_map<uint32_t, Prev> prev;
  std::deque<uint32_t> queue{start};
  prev.emplace(start, Prev{start, MoveKind::A, std::nullopt});
  while (!queue.empty()) {
    uint32_t cur = queue.front();
    queue.pop_front();
    bool done = false;
    for_each_successor(cur, p, [&](uint32_t to, MoveKind kind, std::optional<long> pos) {
      if (done || prev.count(to)) return;
      prev.emplace(to, Prev{cur, kind, pos});
      if (to == goal) {
        done = true;
        return;
      }
      queue.push_back(to);
    });
    if (done) break;
  }
  if (!prev.count(goal))
    throw std::logic_error("path_to_distinguished: no path found");  // cannot happen

  std::vector<MoveEdge> path;
  for (uint32_t cur = goal; cur != start;) {
    const Prev& pr = prev.at(cur);
    path.push_back(MoveEdge{unpack(pr.from, p), unpack(cur, p), pr.kind, pr.position});
    cur = pr.from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

MoveLemmaReport verify_move_lemma(long p) {
  if (p < 2) throw std::domain_error("verify_move_lemma: p must be >= 2");
  if (p > kMoveLemmaMaxP)
    throw std::length_error("verify_move_lemma: p exceeds the exhaustive limit");

  MoveLemmaReport rep;
  rep.bound = p * p + p;
  rep.monotone = true;
  rep.unique_sink = true;

  const uint32_t count = 1u << (p - 1);
  const uint32_t goal = pack(KneadingWord::distinguished(p));
  // longest[m] = longest move chain starting at m; -1 = not yet computed.
  std::vector<long> longest(count, -1);
  std::vector<uint8_t> on_stack(count, 0);

  // iterative DFS; the move graph is acyclic because (b,w) strictly increases
  struct Frame {
    uint32_t word;
    std::vector<uint32_t> succ;
    size_t next = 0;
  };
  for (uint32_t s = 0; s < count; ++s) {
    if (longest[s] >= 0) continue;
    std::vector<Frame> stack;
    auto push = [&](uint32_t w) {
      Frame f{w, {}, 0};
      auto key_from = order_key(unpack(w, p));
      for_each_successor(w, p, [&](uint32_t to, MoveKind, std::optional<long>) {
        f.succ.push_back(to);
        if (order_key(unpack(to, p)) <= key_from) rep.monotone = false;
        if (on_stack[to]) throw std::logic_error("verify_move_lemma: cycle in move graph");
      });
      if (f.succ.empty() && w != goal) rep.unique_sink = false;
      on_stack[w] = 1;
      stack.push_back(std::move(f));
    };
    push(s);
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < f.succ.size()) {
        uint32_t to = f.succ[f.next++];
        if (longest[to] < 0) push(to);
      } else {
        long best = 0;
        for (uint32_t to : f.succ) best = std::max(best, 1 + longest[to]);
        longest[f.word] = best;
        on_stack[f.word] = 0;
        stack.pop_back();
      }
    }
  }
  rep.max_chain = *std::max_element(longest.begin(), longest.end());
  rep.ok = rep.max_chain <= rep.bound && rep.monotone && rep.unique_sink;
  return rep;
}

}  // namespace cubics
