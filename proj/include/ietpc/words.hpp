#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ietpc/error.hpp"

namespace ietpc {

using Letter = int;

// Finite prefix of an infinite word over {0..alphabet_size}. Codings of maps
// use letters 1..n; the reference Fibonacci word uses {0, 1}.
class Word {
 public:
  Word(std::vector<Letter> symbols, int alphabet_size, std::string provenance = {});

  const std::vector<Letter>& symbols() const { return symbols_; }
  std::span<const Letter> view() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  Letter operator[](std::size_t i) const { return symbols_[i]; }
  int alphabet_size() const { return alphabet_size_; }
  const std::string& provenance() const { return provenance_; }

  Word prefix(std::size_t length) const;
  Word suffix_from(std::size_t start) const;
  // Adds `delta` to every letter, e.g. +1 to move the Fibonacci word to {1,2}.
  Word shifted(int delta) const;

  // Digit string when every letter is < 10, comma separated otherwise.
  std::string to_text() const;
  static Word parse(const std::string& text, int alphabet_size = 0, std::string provenance = {});

  friend bool operator==(const Word& x, const Word& y) { return x.symbols_ == y.symbols_; }

 private:
  std::vector<Letter> symbols_;
  int alphabet_size_;
  std::string provenance_;
};

struct AffineFit {
  long alpha = 0;
  long beta = 0;
  int k0 = 1;

  friend bool operator==(const AffineFit&, const AffineFit&) = default;
};

// Factor counts p(k) of a finite prefix. Prefix counts are lower bounds for
// the infinite word; `prefix_length` records how much of it was seen.
struct ComplexityTable {
  std::vector<long> values;  // values[k-1] = p(k)
  std::optional<AffineFit> fit;
  std::size_t prefix_length = 0;
  // Set by prefix_stability(): whether halving the prefix twice changed p.
  std::optional<bool> stable_under_doubling;

  int k_max() const { return static_cast<int>(values.size()); }
  long p(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }

  std::string to_csv() const;
};

// Exact affine fit on the last ceil(K/2) entries (at least two); absent when
// those entries are not exactly affine.
std::optional<AffineFit> fit_affine_tail(const std::vector<long>& values);

std::set<std::vector<Letter>> factors(const Word& w, std::size_t k);

// `force` lifts the k_max <= length/4 guard.
ComplexityTable complexity(const Word& w, int k_max, bool force = false);

// Recomputes the table on prefixes of length L/4 and L/2 and records whether
// all three agree.
ComplexityTable prefix_stability(const Word& w, int k_max);

std::optional<std::map<Letter, Letter>> isomorphic(const Word& w1, const Word& w2);

struct EventualPeriod {
  std::size_t preperiod = 0;
  std::size_t period = 0;

  friend bool operator==(const EventualPeriod&, const EventualPeriod&) = default;
};

// Candidates (q, p) with w[i] == w[i+p] for all q <= i < len-p, with at least
// three full periods after q.
std::optional<EventualPeriod> detect_eventual_period(const Word& w);
// Every candidate period p with its minimal preperiod, ordered by p.
std::vector<EventualPeriod> eventual_period_candidates(std::span<const Letter> w);

Word fibonacci_word(std::size_t length);

bool morse_hedlund_flag(const ComplexityTable& table);

}  // namespace ietpc
