#include "ietpc/words.hpp"

#include <algorithm>
#include <sstream>
#include <string_view>
#include <unordered_set>

namespace ietpc {

Word::Word(std::vector<Letter> symbols, int alphabet_size, std::string provenance)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size), provenance_(std::move(provenance)) {
  if (symbols_.empty()) throw Error(ErrorKind::InvalidArgument, "word must be non-empty");
  for (Letter s : symbols_) {
    if (s < 0 || s > alphabet_size_)
      throw Error(ErrorKind::BadAlphabet,
                  "letter " + std::to_string(s) + " outside alphabet of size " + std::to_string(alphabet_size_));
  }
}

Word Word::prefix(std::size_t length) const {
  length = std::min(length, symbols_.size());
  return Word({symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(length)}, alphabet_size_,
              provenance_);
}

Word Word::suffix_from(std::size_t start) const {
  if (start >= symbols_.size()) throw Error(ErrorKind::KTooLarge, "suffix start beyond word");
  return Word({symbols_.begin() + static_cast<std::ptrdiff_t>(start), symbols_.end()}, alphabet_size_,
              provenance_);
}

Word Word::shifted(int delta) const {
  std::vector<Letter> out(symbols_);
  for (Letter& s : out) s += delta;
  return Word(std::move(out), alphabet_size_ + delta, provenance_);
}

std::string Word::to_text() const {
  const bool compact = std::all_of(symbols_.begin(), symbols_.end(), [](Letter s) { return s < 10; });
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (compact) {
      out.push_back(static_cast<char>('0' + symbols_[i]));
    } else {
      if (i > 0) out.push_back(',');
      out += std::to_string(symbols_[i]);
    }
  }
  return out;
}

Word Word::parse(const std::string& text, int alphabet_size, std::string provenance) {
  std::vector<Letter> symbols;
  if (text.find(',') != std::string::npos) {
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        symbols.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad letter '" + item + "'");
      }
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw Error(ErrorKind::ParseError, std::string("bad letter '") + c + "'");
      symbols.push_back(c - '0');
    }
  }
  if (symbols.empty()) throw Error(ErrorKind::ParseError, "empty word");
  if (alphabet_size <= 0) alphabet_size = *std::max_element(symbols.begin(), symbols.end());
  return Word(std::move(symbols), alphabet_size, std::move(provenance));
}

std::string ComplexityTable::to_csv() const {
  std::string out = "k,p\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    out += std::to_string(i + 1) + "," + std::to_string(values[i]) + "\n";
  return out;
}

std::optional<AffineFit> fit_affine_tail(const std::vector<long>& values) {
  const int k_max = static_cast<int>(values.size());
  const int tail = std::max(2, (k_max + 1) / 2);
  if (k_max < 2) return std::nullopt;
  const int first = std::max(1, k_max - tail + 1);
  const long alpha = values[k_max - 1] - values[k_max - 2];
  const long beta = values[k_max - 1] - alpha * k_max;
  auto fits = [&](int k) { return values[k - 1] == alpha * k + beta; };
  for (int k = first; k <= k_max; ++k) {
    if (!fits(k)) return std::nullopt;
  }
  int k0 = first;
  while (k0 > 1 && fits(k0 - 1)) --k0;
  return AffineFit{alpha, beta, k0};
}

std::set<std::vector<Letter>> factors(const Word& w, std::size_t k) {
  if (k < 1 || k > w.size()) throw Error(ErrorKind::KTooLarge, "factor length out of range");
  std::set<std::vector<Letter>> out;
  const auto& s = w.symbols();
  for (std::size_t i = 0; i + k <= s.size(); ++i) out.emplace(s.begin() + i, s.begin() + i + k);
  return out;
}

namespace {

std::vector<long> count_factors(const Word& w, int k_max) {
  std::u32string text;
  text.reserve(w.size());
  for (Letter s : w.symbols()) text.push_back(static_cast<char32_t>(s));
  const std::u32string_view view(text);
  std::vector<long> values;
  values.reserve(static_cast<std::size_t>(k_max));
  std::unordered_set<std::u32string_view> seen;
  for (int k = 1; k <= k_max; ++k) {
    seen.clear();
    for (std::size_t i = 0; i + k <= view.size(); ++i) seen.insert(view.substr(i, k));
    values.push_back(static_cast<long>(seen.size()));
  }
  return values;
}

}  // namespace

ComplexityTable complexity(const Word& w, int k_max, bool force) {
  if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 1");
  if (static_cast<std::size_t>(k_max) > w.size())
    throw Error(ErrorKind::KTooLarge, "k_max exceeds word length");
  if (!force && static_cast<std::size_t>(k_max) * 4 > w.size())
    throw Error(ErrorKind::PrefixTooShort,
                "k_max=" + std::to_string(k_max) + " needs a prefix of at least " + std::to_string(4 * k_max));
  ComplexityTable table;
  table.values = count_factors(w, k_max);
  table.fit = fit_affine_tail(table.values);
  table.prefix_length = w.size();
  return table;
}

ComplexityTable prefix_stability(const Word& w, int k_max) {
  ComplexityTable table = complexity(w, k_max);
  bool stable = true;
  for (std::size_t len : {w.size() / 2, w.size() / 4}) {
    if (len < static_cast<std::size_t>(k_max)) {
      stable = false;
      break;
    }
    if (count_factors(w.prefix(len), k_max) != table.values) stable = false;
  }
  table.stable_under_doubling = stable;
  return table;
}

std::optional<std::map<Letter, Letter>> isomorphic(const Word& w1, const Word& w2) {
  if (w1.size() != w2.size()) throw Error(ErrorKind::LengthMismatch, "words differ in length");
  std::map<Letter, Letter> forward;
  std::map<Letter, Letter> backward;
  for (std::size_t i = 0; i < w1.size(); ++i) {
    const auto [f, f_new] = forward.emplace(w1[i], w2[i]);
    const auto [b, b_new] = backward.emplace(w2[i], w1[i]);
    if (f->second != w2[i] || b->second != w1[i]) return std::nullopt;
  }
  return forward;
}

std::vector<EventualPeriod> eventual_period_candidates(std::span<const Letter> w) {
  std::vector<EventualPeriod> out;
  const std::size_t n = w.size();
  for (std::size_t p = 1; 3 * p <= n; ++p) {
    // Smallest q with w[i] == w[i+p] for q <= i < n-p: one past the last
    // mismatch, found scanning from the end.
    std::size_t q = 0;
    for (std::size_t i = n - p; i-- > 0;) {
      if (w[i] != w[i + p]) {
        q = i + 1;
        break;
      }
    }
    if (n - q >= 3 * p) out.push_back({q, p});
  }
  return out;
}

std::optional<EventualPeriod> detect_eventual_period(const Word& w) {
  if (w.size() < 8) return std::nullopt;
  const auto candidates = eventual_period_candidates(w.view());
  if (candidates.empty()) return std::nullopt;
  return *std::min_element(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
    return x.preperiod != y.preperiod ? x.preperiod < y.preperiod : x.period < y.period;
  });
}

Word fibonacci_word(std::size_t length) {
  if (length < 1) throw Error(ErrorKind::InvalidArgument, "length must be >= 1");
  // Fixed point of 0 -> 01, 1 -> 0 via the standard words s_{n+1} = s_n s_{n-1}.
  std::vector<Letter> previous{0};
  std::vector<Letter> s{0, 1};
  while (s.size() < length) {
    std::vector<Letter> next = s;
    next.insert(next.end(), previous.begin(), previous.end());
    previous = std::move(s);
    s = std::move(next);
  }
  s.resize(length);
  return Word(std::move(s), 1, "fibonacci");
}

bool morse_hedlund_flag(const ComplexityTable& table) {
  for (int k = 1; k <= table.k_max(); ++k) {
    if (table.p(k) <= k) return true;
  }
  return false;
}

}  // namespace ietpc
