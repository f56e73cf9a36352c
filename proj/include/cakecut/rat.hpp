#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cakecut {

/// Exact rational number; canonical form (reduced, positive denominator) is
/// maintained by GMP.
using Rat = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" with optional sign. Anything else (floats, empty,
/// zero denominator) is rejected.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  bool seen_slash = false;
  if (i == s.size()) throw ParseError("bad rational literal: " + s);
  for (std::size_t k = i; k < s.size(); ++k) {
    char c = s[k];
    if (c == '/') {
      if (seen_slash || k == i || k + 1 == s.size())
        throw ParseError("bad rational literal: " + s);
      seen_slash = true;
    } else if (c < '0' || c > '9') {
      throw ParseError("bad rational literal: " + s);
    }
  }
  Rat r;
  // GMP rejects a leading '+'.
  if (r.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
    throw ParseError("bad rational literal: " + s);
  if (r.get_den() == 0) throw ParseError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_pow(const Rat& base, unsigned long exp) {
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  out.canonicalize();
  return out;
}

/// Ceiling of a nonnegative rational as an unsigned integer.
inline unsigned long rat_ceil_ul(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q.get_ui();
}

}  // namespace cakecut
