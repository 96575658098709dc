#include "crn/rational.hpp"

#include <cctype>

#include "crn/error.hpp"

namespace crn {

std::string to_string(const Rat& r) { return r.get_str(); }

Rat rat_from_string(const std::string& s) {
  if (s.empty()) fail(ErrorCode::Parse, "empty rational literal");
  // Validate shape: [-+]?digits(/digits)?  (mpq_set_str is permissive about
  // whitespace and bases; we are not).
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) fail(ErrorCode::Parse, "bad rational literal: " + s);
  if (i < s.size()) {
    if (s[i] != '/') fail(ErrorCode::Parse, "bad rational literal: " + s);
    ++i;
    size_t den_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++den_digits;
    }
    if (den_digits == 0 || i != s.size())
      fail(ErrorCode::Parse, "bad rational literal: " + s);
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    fail(ErrorCode::Parse, "bad rational literal: " + s);
  if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
    fail(ErrorCode::Parse, "zero denominator in rational literal: " + s);
  r.canonicalize();
  return r;
}

}  // namespace crn
