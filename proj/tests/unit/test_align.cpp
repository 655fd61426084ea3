#include <doctest.h>

#include <random>

#include "fairlens/align.hpp"
#include "fairlens/error.hpp"
#include "support/oracles.hpp"

using namespace fairlens;

TEST_CASE("tokenize_words splits normalized text") {
  CHECK(tokenize_words("hallo wereld") == std::vector<std::string>{"hallo", "wereld"});
  CHECK(tokenize_words("").empty());
  CHECK(tokenize_words("a b c").size() == 3);
}

TEST_CASE("tokenize_chars yields one token per scalar, spaces included") {
  CHECK(tokenize_chars("ab") == std::vector<std::string>{"a", "b"});
  CHECK(tokenize_chars("a b") == std::vector<std::string>{"a", " ", "b"});
  CHECK(tokenize_chars("").empty());
  CHECK(tokenize_chars("zé").size() == 2);
}

TEST_CASE("align on identity, deletion, and pure insertion") {
  const std::vector<std::string> ref{"de", "kat", "zat"};
  auto counts = align(ref, ref);
  CHECK(counts.substitutions == 0);
  CHECK(counts.deletions == 0);
  CHECK(counts.insertions == 0);
  CHECK(counts.hits == 3);
  CHECK(counts.reference_length == 3);

  counts = align(ref, {"de", "kat"});
  CHECK(counts.substitutions == 0);
  CHECK(counts.deletions == 1);
  CHECK(counts.insertions == 0);
  CHECK(counts.hits == 2);

  counts = align({}, {"x", "y"});
  CHECK(counts.substitutions == 0);
  CHECK(counts.deletions == 0);
  CHECK(counts.insertions == 2);
  CHECK(counts.reference_length == 0);
}

TEST_CASE("wer matches the worked examples") {
  CHECK(wer("de kat zat", "de kat zat") == 0.0);
  CHECK(wer("de kat zat", "de hond zat hier") == doctest::Approx(2.0 / 3.0));
  CHECK(wer("a", "b c d") == doctest::Approx(3.0));  // unbounded above
  CHECK_THROWS_AS(wer("", "iets"), ValidationError);
}

TEST_CASE("cer matches the worked examples") {
  CHECK(cer("ab", "ab") == 0.0);
  CHECK(cer("kat", "kas") == doctest::Approx(1.0 / 3.0));
  CHECK(cer("a", "") == doctest::Approx(1.0));
  CHECK_THROWS_AS(cer("", "x"), ValidationError);
}

TEST_CASE("alignment counts satisfy the row and column sums") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> len(0, 8);
  std::uniform_int_distribution<int> sym(0, 4);
  const std::string vocab[] = {"aa", "bb", "cc", "dd", "ee"};
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<std::string> ref;
    std::vector<std::string> hyp;
    const int nr = len(rng);
    const int nh = len(rng);
    for (int i = 0; i < nr; ++i) ref.push_back(vocab[sym(rng)]);
    for (int i = 0; i < nh; ++i) hyp.push_back(vocab[sym(rng)]);
    const auto counts = align(ref, hyp);
    CHECK(counts.substitutions + counts.deletions + counts.hits == ref.size());
    CHECK(counts.substitutions + counts.insertions + counts.hits == hyp.size());
    CHECK(counts.errors() == edit_distance(ref, hyp));
  }
}

TEST_CASE("edit distance equals the exponential-recursion oracle") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> len(0, 8);
  std::uniform_int_distribution<int> sym(0, 4);
  const std::string vocab[] = {"a", "b", "c", "d", "e"};
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<std::string> ref;
    std::vector<std::string> hyp;
    const int nr = len(rng);
    const int nh = len(rng);
    for (int i = 0; i < nr; ++i) ref.push_back(vocab[sym(rng)]);
    for (int i = 0; i < nh; ++i) hyp.push_back(vocab[sym(rng)]);
    CHECK(edit_distance(ref, hyp) == oracles::brute_force_edit_distance(ref, hyp));
  }
}

TEST_CASE("wer is zero iff the normalized strings are equal") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<int> sym(0, 2);
  const std::string vocab[] = {"aa", "bb", "cc"};
  for (int iter = 0; iter < 500; ++iter) {
    std::string a;
    std::string b;
    const int nr = len(rng);
    const int nh = len(rng);
    for (int i = 0; i < nr; ++i) a += (i ? " " : "") + vocab[sym(rng)];
    for (int i = 0; i < nh; ++i) b += (i ? " " : "") + vocab[sym(rng)];
    CHECK((wer(a, b) == 0.0) == (a == b));
    CHECK(cer(a, "") == doctest::Approx(1.0));
  }
}

TEST_CASE("backtrace tie-breaking is deterministic") {
  // "ab" vs "ba" admits either two substitutions or delete+insert around the
  // matched token; the backtrace preference must always produce the same split
  const auto counts = align({"a", "b"}, {"b", "a"});
  CHECK(counts.errors() == 2);
  for (int i = 0; i < 10; ++i) {
    const auto again = align({"a", "b"}, {"b", "a"});
    CHECK(again.substitutions == counts.substitutions);
    CHECK(again.deletions == counts.deletions);
    CHECK(again.insertions == counts.insertions);
    CHECK(again.hits == counts.hits);
  }
}
