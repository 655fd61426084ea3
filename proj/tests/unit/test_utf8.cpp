#include <doctest.h>

#include "fairlens/unicode.hpp"
#include "fairlens/utf8.hpp"

using namespace fairlens;

TEST_CASE("utf8 round-trips ascii and multibyte text") {
  const std::string s = "caf\xc3\xa9 \xe2\x89\xa0 \xf0\x9f\x99\x82";  // café ≠ 🙂
  const auto cps = utf8::decode(s);
  CHECK(utf8::encode(cps) == s);
  CHECK(cps.size() == 8);
  CHECK(cps[3] == 0xE9);
  CHECK(cps[5] == 0x2260);
  CHECK(cps[7] == 0x1F642);
}

TEST_CASE("utf8 invalid bytes decode to the replacement character") {
  const auto cps = utf8::decode("a\x80z");
  REQUIRE(cps.size() == 3);
  CHECK(cps[1] == utf8::kReplacementChar);

  // truncated two-byte sequence at end of input
  const auto tail = utf8::decode("ab\xc3");
  REQUIRE(tail.size() == 3);
  CHECK(tail[2] == utf8::kReplacementChar);

  // overlong encoding of '/'
  const auto overlong = utf8::decode("\xc0\xaf");
  for (char32_t cp : overlong) CHECK(cp == utf8::kReplacementChar);
}

TEST_CASE("unicode category tables") {
  CHECK(unicode::is_letter(U'a'));
  CHECK(unicode::is_letter(U'é'));
  CHECK(unicode::is_letter(0x0416));  // Ж
  CHECK(!unicode::is_letter(U'3'));
  CHECK(!unicode::is_letter(U'!'));
  CHECK(unicode::is_decimal_digit(U'7'));
  CHECK(!unicode::is_decimal_digit(U'a'));
  CHECK(unicode::is_mark(0x0301));  // combining acute
  CHECK(!unicode::is_mark(U'e'));
}

TEST_CASE("unicode simple lowercase") {
  CHECK(unicode::simple_lower(U'A') == U'a');
  CHECK(unicode::simple_lower(U'a') == U'a');
  CHECK(unicode::simple_lower(0x00C9) == 0x00E9);  // É -> é
  CHECK(unicode::simple_lower(0x0391) == 0x03B1);  // Α -> α
  // İ lowercases to two code points; the simple mapping leaves it unchanged
  CHECK(unicode::simple_lower(0x0130) == 0x0130);
}

TEST_CASE("unicode canonical decomposition") {
  std::vector<char32_t> out;
  unicode::canonical_decompose(0x00E9, out);  // é
  REQUIRE(out.size() == 2);
  CHECK(out[0] == U'e');
  CHECK(out[1] == 0x0301);

  out.clear();
  unicode::canonical_decompose(0x212B, out);  // angstrom sign -> A + ring
  REQUIRE(out.size() == 2);
  CHECK(out[0] == U'A');
  CHECK(out[1] == 0x030A);

  out.clear();
  unicode::canonical_decompose(0xAC00, out);  // 가 -> Jamo
  REQUIRE(out.size() == 2);
  CHECK(out[0] == 0x1100);
  CHECK(out[1] == 0x1161);

  out.clear();
  unicode::canonical_decompose(U'x', out);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == U'x');
}
