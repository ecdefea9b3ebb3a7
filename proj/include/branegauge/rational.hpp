#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace branegauge {

// All arithmetic in the engine is exact. Rational is GMP's mpq_class; the
// helpers below exist because mpq_class does NOT canonicalize values built
// from raw numerator/denominator pairs, and an un-normalized fraction breaks
// operator== and hashing.
using Rational = mpq_class;

// Error kinds map 1:1 onto process exit codes (invalid input -> 1,
// internal failure -> 2).
class Error : public std::runtime_error {
 public:
  enum class Kind { InvalidInput, Internal };

  Error(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error(Error::Kind::InvalidInput, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p" or "p/q" with optional sign, base 10.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw Error(Error::Kind::InvalidInput, "bad rational literal: " + text);
  if (r.get_den() == 0)
    throw Error(Error::Kind::InvalidInput, "zero denominator: " + text);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace branegauge
