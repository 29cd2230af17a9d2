#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "rigidity/words.hpp"

using namespace rigidity;

namespace {

std::vector<Letter> L(std::string_view s) { return Word::parse(s).letters(); }

// Independent count: all reduced, cyclically reduced strings of length n,
// quotiented by rotation through a set of sorted rotation orbits.
std::uint64_t brute_classes(int rank, int n) {
  std::vector<Letter> alphabet;
  for (int i = 1; i <= rank; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  std::set<std::vector<Letter>> orbits;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Letter> w(n);
    for (int i = 0; i < n; ++i) w[i] = alphabet[idx[i]];
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = w[i] != -w[(i + 1) % n] || n == 1;
    if (ok) {
      std::vector<Letter> best = w;
      for (int r = 1; r < n; ++r) {
        std::rotate(w.begin(), w.begin() + 1, w.end());
        best = std::min(best, w);
      }
      orbits.insert(best);
    }
    int pos = n - 1;
    while (pos >= 0 && ++idx[pos] == alphabet.size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return orbits.size();
}

}  // namespace

TEST_CASE("parse and print round trip") {
  const Word w = Word::parse("abAB");
  CHECK(w.letters() == std::vector<Letter>{1, 2, -1, -2});
  CHECK(w.str() == "abAB");
  CHECK(w.inverse().str() == "baBA");
  CHECK_THROWS(Word::parse("a1"));
}

TEST_CASE("cyclic reduction examples") {
  CHECK(cyclic_reduce(L("abBa")).str() == "aa");
  CHECK(cyclic_reduce(L("Aba")).str() == "b");
  CHECK(cyclic_reduce(L("abAB")).str() == "abAB");
  CHECK(cyclic_reduce(L("aA")).empty());
  CHECK(free_reduce(L("abBA")).empty());
}

TEST_CASE("letter order is a < A < b < B") {
  CHECK(letter_key(1) < letter_key(-1));
  CHECK(letter_key(-1) < letter_key(2));
  CHECK(letter_key(2) < letter_key(-2));
  CHECK(least_rotation(Word::parse("Ba")).str() == "aB");
}

TEST_CASE("small enumerations") {
  const auto one = enumerate_conjugacy_classes(2, 1);
  REQUIRE(one.size() == 4);
  CHECK(one[0].str() == "a");
  CHECK(one[1].str() == "A");
  CHECK(one[2].str() == "b");
  CHECK(one[3].str() == "B");
  const auto two = enumerate_conjugacy_classes(2, 2);
  CHECK(two.size() == 12);
  CHECK(std::count_if(two.begin(), two.end(), [](const Word& w) { return w.size() == 2; }) == 8);
}

TEST_CASE("oracle values") {
  CHECK(conjugacy_count_oracle(2, 1) == 4);
  CHECK(conjugacy_count_oracle(2, 2) == 8);
  CHECK(conjugacy_count_oracle(3, 2) == brute_classes(3, 2));
  CHECK(conjugacy_count_oracle(2, 3) == brute_classes(2, 3));
}

TEST_CASE("enumeration matches the oracle per length") {
  for (int rank = 1; rank <= 3; ++rank) {
    const int max_len = rank == 3 ? 6 : 8;
    const auto classes = enumerate_conjugacy_classes(rank, max_len);
    for (int n = 1; n <= max_len; ++n) {
      const auto got = std::count_if(classes.begin(), classes.end(), [&](const Word& w) { return static_cast<int>(w.size()) == n; });
      CHECK_MESSAGE(static_cast<std::uint64_t>(got) == conjugacy_count_oracle(rank, n), "rank " << rank << " n " << n);
    }
  }
}

TEST_CASE("enumerated words are canonical, distinct and ordered") {
  const auto classes = enumerate_conjugacy_classes(2, 7);
  std::set<Word> seen;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const Word& w = classes[i];
    CHECK(w.is_cyclically_reduced());
    CHECK(least_rotation(w) == w);
    CHECK(seen.insert(w).second);
    if (i > 0) CHECK((classes[i - 1].size() < w.size() || (classes[i - 1].size() == w.size() && classes[i - 1] < w)));
  }
  CHECK(enumerate_conjugacy_classes(2, 7) == classes);
}

TEST_CASE("w and its inverse are distinct classes") {
  const auto classes = enumerate_conjugacy_classes(2, 4);
  const std::set<Word> all(classes.begin(), classes.end());
  for (const Word& w : classes) {
    const Word inv = conjugacy_representative(w.inverse().letters());
    CHECK(all.count(inv) == 1);
  }
  CHECK(conjugacy_representative(L("ab")) != conjugacy_representative(L("BA")));
}

TEST_CASE("property: conjugates and rotations share a representative") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> letter(1, 6), len(1, 8);
  auto random_word = [&](int n) {
    std::vector<Letter> w;
    for (int i = 0; i < n; ++i) {
      const int k = letter(rng);
      w.push_back(k <= 3 ? k : -(k - 3));
    }
    return w;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    const auto u = random_word(len(rng));
    const Word core = conjugacy_representative(u);
    const Word g = free_reduce(random_word(len(rng)));
    const Word conj = multiply(multiply(g, free_reduce(u)), g.inverse());
    CHECK(conjugacy_representative(conj.letters()) == core);
    auto rot = u;
    std::rotate(rot.begin(), rot.begin() + static_cast<long>(rot.size() / 2), rot.end());
    CHECK(conjugacy_representative(rot) == core);
  }
}
