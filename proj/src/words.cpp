#include "rigidity/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace rigidity {

namespace {

bool cancels(Letter x, Letter y) { return x == -y; }

bool key_less(std::span<const Letter> a, std::span<const Letter> b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](Letter x, Letter y) { return letter_key(x) < letter_key(y); });
}

// True when no rotation of w is smaller than w itself.
bool is_least_rotation(const std::vector<Letter>& w) {
  const std::size_t n = w.size();
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const int a = letter_key(w[(i + s) % n]);
      const int b = letter_key(w[i]);
      if (a < b) return false;
      if (a > b) break;
    }
  }
  return true;
}

}  // namespace

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (Letter l : letters_)
    if (l == 0) throw std::invalid_argument("Word: zero is not a letter");
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> out;
  for (char c : text) {
    if (c >= 'a' && c <= 'z')
      out.push_back(c - 'a' + 1);
    else if (c >= 'A' && c <= 'Z')
      out.push_back(-(c - 'A' + 1));
    else if (std::isspace(static_cast<unsigned char>(c)))
      continue;
    else
      throw std::invalid_argument("Word::parse: unexpected character '" + std::string(1, c) + "'");
  }
  return Word(std::move(out));
}

int Word::max_generator() const {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, l < 0 ? -l : l);
  return m;
}

bool Word::is_reduced() const {
  for (std::size_t i = 1; i < letters_.size(); ++i)
    if (cancels(letters_[i - 1], letters_[i])) return false;
  return true;
}

bool Word::is_cyclically_reduced() const {
  if (!is_reduced()) return false;
  return letters_.size() < 2 || !cancels(letters_.front(), letters_.back());
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = -l;
  return Word(std::move(out));
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(l > 0 ? char('a' + l - 1) : char('A' - l - 1));
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  if (key_less(a.letters_, b.letters_)) return std::strong_ordering::less;
  if (key_less(b.letters_, a.letters_)) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Word free_reduce(std::span<const Letter> raw) {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw std::invalid_argument("free_reduce: zero is not a letter");
    if (!stack.empty() && cancels(stack.back(), l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

Word multiply(const Word& a, const Word& b) {
  std::vector<Letter> raw = a.letters();
  raw.insert(raw.end(), b.letters().begin(), b.letters().end());
  return free_reduce(raw);
}

Word cyclic_reduce(std::span<const Letter> raw) {
  const Word reduced = free_reduce(raw);
  const auto& l = reduced.letters();
  std::size_t lo = 0, hi = l.size();
  while (hi - lo >= 2 && cancels(l[lo], l[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(l.begin() + lo, l.begin() + hi));
}

Word least_rotation(const Word& w) {
  const auto& l = w.letters();
  const std::size_t n = l.size();
  std::vector<Letter> best = l;
  std::vector<Letter> cand(n);
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) cand[i] = l[(i + s) % n];
    if (key_less(cand, best)) best = cand;
  }
  return Word(std::move(best));
}

Word conjugacy_representative(std::span<const Letter> raw) {
  return least_rotation(cyclic_reduce(raw));
}

std::vector<Word> enumerate_conjugacy_classes(int rank, int max_len) {
  if (rank < 1) throw std::invalid_argument("enumerate_conjugacy_classes: rank must be positive");
  if (max_len < 1) throw std::invalid_argument("enumerate_conjugacy_classes: max_len must be positive");

  // Letters in key order: a, A, b, B, ...
  std::vector<Letter> alphabet;
  for (int g = 1; g <= rank; ++g) {
    alphabet.push_back(g);
    alphabet.push_back(-g);
  }

  std::vector<Word> out;
  std::vector<Letter> cur;
  for (int len = 1; len <= max_len; ++len) {
    // Depth-first over reduced words in lexicographic order; the output for
    // each length is therefore already sorted.
    cur.clear();
    std::vector<std::size_t> idx;
    idx.push_back(0);
    while (!idx.empty()) {
      const std::size_t depth = idx.size() - 1;
      if (idx.back() == alphabet.size()) {
        idx.pop_back();
        if (!cur.empty()) cur.pop_back();
        if (!idx.empty()) ++idx.back();
        continue;
      }
      const Letter l = alphabet[idx.back()];
      if (depth > 0 && cancels(cur.back(), l)) {
        ++idx.back();
        continue;
      }
      // A least rotation never starts with a letter larger than any later one,
      // so the first letter bounds every subsequent letter from below.
      if (depth > 0 && letter_key(l) < letter_key(cur.front())) {
        ++idx.back();
        continue;
      }
      cur.push_back(l);
      if (static_cast<int>(cur.size()) == len) {
        if ((len < 2 || !cancels(cur.front(), cur.back())) && is_least_rotation(cur))
          out.emplace_back(cur);
        cur.pop_back();
        ++idx.back();
      } else {
        idx.push_back(0);
      }
    }
  }
  return out;
}

std::uint64_t conjugacy_count_oracle(int rank, int n) {
  if (rank < 1 || n < 1) throw std::invalid_argument("conjugacy_count_oracle: rank and n must be positive");
  const int letters = 2 * rank;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(letters);

  std::set<std::vector<Letter>> necklaces;
  std::vector<Letter> w(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      const int digit = static_cast<int>(c % letters);
      c /= letters;
      w[i] = digit < rank ? digit + 1 : -(digit - rank + 1);
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (n > 1 && w[i] == -w[(i + 1) % n]) ok = false;
    if (!ok) continue;
    // Smallest rotation under plain integer order; any fixed order works for
    // counting orbits.
    std::vector<Letter> best = w;
    std::vector<Letter> rot(n);
    for (int s = 1; s < n; ++s) {
      for (int i = 0; i < n; ++i) rot[i] = w[(i + s) % n];
      best = std::min(best, rot);
    }
    necklaces.insert(best);
  }
  return necklaces.size();
}

}  // namespace rigidity
