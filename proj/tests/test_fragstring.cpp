#include <random>

#include "doctest.h"
#include "opmk/fragstring.hpp"
#include "support/oracles.hpp"

using namespace opmk;

namespace {

std::vector<Symbol> word(const std::string& s) { return std::vector<Symbol>(s.begin(), s.end()); }

std::vector<Symbol> random_word(std::mt19937_64& rng, std::size_t n, Symbol alphabet) {
  std::vector<Symbol> out(n);
  for (auto& c : out) c = static_cast<Symbol>(testing::uniform(rng, 1, static_cast<std::size_t>(alphabet)));
  return out;
}

std::vector<std::size_t> naive_mismatches(const std::vector<Symbol>& s, const std::vector<Symbol>& ref,
                                          std::size_t i, std::size_t limit, bool& truncated) {
  std::vector<std::size_t> out;
  truncated = false;
  for (std::size_t p = 1; p <= ref.size(); ++p) {
    if (s[i + p - 2] == ref[p - 1]) continue;
    out.push_back(p);
    if (out.size() == limit + 1) {
      truncated = true;
      break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("reference lcp examples") {
  const RefString r(word("abab"));
  CHECK(r.lcp(1, 3) == 2);
  CHECK(r.lcp(2, 4) == 1);
  CHECK(r.lcp(1, 2) == 0);
  for (std::size_t i = 1; i <= 4; ++i) CHECK(r.lcp(i, i) == 5 - i);
  CHECK(r.occurrence_of('b') != 0);
  CHECK(r.occurrence_of('z') == 0);
  CHECK_THROWS_AS(RefString(std::vector<Symbol>{}), std::invalid_argument);
}

TEST_CASE("lcp agrees with a direct comparison") {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t m = testing::uniform(rng, 1, iter < 20 ? 200 : 50);
    const auto s = random_word(rng, m, static_cast<Symbol>(testing::uniform(rng, 1, 4)));
    const RefString r(s);
    for (std::size_t i = 1; i <= m; ++i) {
      for (std::size_t j = 1; j <= m; ++j) REQUIRE(r.lcp(i, j) == testing::naive_lcp(s, i, j));
    }
  }
}

TEST_CASE("initial string round-trips") {
  const RefString r(word("abcab"));
  const auto init = word("abzcabab");
  DynString d(r, init);
  CHECK(d.materialize() == init);
  CHECK(d.fragment_count() == init.size());
  CHECK(d.tiling_ok());
  const auto frags = d.fragments();
  CHECK(frags[2].literal);
  CHECK(frags[2].symbol == 'z');
  CHECK_FALSE(frags[0].literal);
  CHECK(d.window(4, 3) == word("cab"));
  CHECK_THROWS_AS(DynString(r, word("ab")), std::invalid_argument);
}

TEST_CASE("replace splits a merged fragment") {
  const RefString r(word("abcde"));
  DynString d(r, word("abcdeabcde"));
  const MismatchStream ms = d.first_mismatches(1, 2);
  CHECK(ms.positions.empty());
  const std::size_t merged = d.fragment_count();
  CHECK(merged < 10);
  // Same character inside a reference run: nothing to do.
  d.replace(3, 'c');
  CHECK(d.fragment_count() == merged);
  d.replace(3, 'x');
  CHECK(d.fragment_count() == merged + 2);
  CHECK(d.at(3) == 'x');
  CHECK(d.tiling_ok());
  CHECK(d.first_mismatches(1, 3).positions == std::vector<std::size_t>{3});
  CHECK_THROWS_AS(d.replace(11, 'a'), std::out_of_range);
  CHECK_THROWS_AS(d.replace(0, 'a'), std::out_of_range);
  CHECK_THROWS_AS(d.first_mismatches(7, 1), std::out_of_range);
}

TEST_CASE("mismatch stream matches a shadow array under random edits") {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 10000; ++iter) {
    const std::size_t m = testing::uniform(rng, 1, 24);
    const auto alphabet = static_cast<Symbol>(testing::uniform(rng, 1, 3));
    const auto refw = random_word(rng, m, alphabet);
    const RefString r(refw);
    const std::size_t n = testing::uniform(rng, m, 2 * m);
    // Start close to repeated copies of the reference so runs actually merge.
    std::vector<Symbol> shadow(n);
    for (std::size_t x = 0; x < n; ++x) shadow[x] = refw[x % m];
    DynString d(r, shadow, iter % 2 ? DictBackend::VanEmdeBoas : DictBackend::OrderedTree);
    const int ops = static_cast<int>(testing::uniform(rng, 1, 30));
    for (int op = 0; op < ops; ++op) {
      if (testing::uniform(rng, 0, 1) == 0) {
        const std::size_t x = testing::uniform(rng, 1, n);
        const Symbol c = static_cast<Symbol>(testing::uniform(rng, 1, static_cast<std::size_t>(alphabet) + 1));
        d.replace(x, c);
        shadow[x - 1] = c;
      } else {
        const std::size_t i = testing::uniform(rng, 1, n - m + 1);
        const std::size_t limit = testing::uniform(rng, 0, 4);
        bool truncated = false;
        const auto expect = naive_mismatches(shadow, refw, i, limit, truncated);
        const MismatchStream got = d.first_mismatches(i, limit);
        REQUIRE(got.positions == expect);
        REQUIRE(got.truncated == truncated);
        const MismatchStream again = d.first_mismatches(i, limit);
        REQUIRE(again.positions == expect);
      }
      REQUIRE(d.tiling_ok());
      REQUIRE(d.materialize() == shadow);
    }
  }
}
