#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rigidity {

// Letters are signed generator indices: +i is the i-th generator (1-based),
// -i its inverse. Text form uses a, b, c, ... and A, B, C, ... for inverses.
using Letter = int;

// Total order on letters used for canonical rotations: a < A < b < B < ...
inline int letter_key(Letter l) { return 2 * ((l < 0 ? -l : l) - 1) + (l < 0 ? 1 : 0); }

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  // Largest generator index appearing in the word.
  int max_generator() const;

  bool is_reduced() const;
  bool is_cyclically_reduced() const;

  Word inverse() const;
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

// Free reduction of a raw letter sequence (cancels adjacent x x^-1).
Word free_reduce(std::span<const Letter> raw);

// Product in the free group, freely reduced.
Word multiply(const Word& a, const Word& b);

// Cyclically reduced core of a raw sequence. Empty result means the identity.
Word cyclic_reduce(std::span<const Letter> raw);
inline Word cyclic_reduce(const Word& w) { return cyclic_reduce(w.letters()); }

// Least cyclic rotation of a cyclically reduced word.
Word least_rotation(const Word& w);

// Canonical conjugacy-class representative: least rotation of the core.
Word conjugacy_representative(std::span<const Letter> raw);

// One representative (the least rotation) per conjugacy class of cyclically
// reduced length 1..max_len in the free group of the given rank. Classes of
// w and w^-1 are distinct. Ordered by length, then lexicographically.
std::vector<Word> enumerate_conjugacy_classes(int rank, int max_len);

// Brute-force count of conjugacy classes of cyclically reduced length exactly
// n, by exhaustive enumeration of all 2r-letter strings. Test oracle only.
std::uint64_t conjugacy_count_oracle(int rank, int n);

}  // namespace rigidity
