#pragma once

// Shared scalar types and error machinery for the crysgar core.
//
// All arithmetic in this library is exact.  Rational scalars are GMP
// rationals (canonical form: coprime numerator/denominator, denominator
// positive), integers are GMP integers.  Nothing in the core ever touches
// floating point.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace crysgar {

using Int = mpz_class;
using Rational = mpq_class;

/// Build a rational from a numerator/denominator pair, canonicalizing.
/// (The raw mpq_class(n, d) constructor does *not* canonicalize.)
inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat(const Int& num, const Int& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

/// Base class for all errors raised by the core.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input could not be parsed (bad type string, bad word token, ...).
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// A windowed computation hit its window boundary; enlarging the window
/// may resolve it.  Never silently converted into a pass/fail verdict.
struct WindowError : Error {
  explicit WindowError(const std::string& what) : Error(what) {}
};

/// The request is well-formed but outside what this library supports
/// (e.g. an affine type whose dual interval is not treated here).
struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& what) : Error(what) {}
};

/// An internal invariant backed by the theory failed.  Always a bug
/// (either in this code or in the assumptions it encodes), never a
/// recoverable user error.
struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(what) {}
};

#define CRYSGAR_CHECK(cond, msg)                                         \
  do {                                                                   \
    if (!(cond)) throw ::crysgar::InternalError(std::string("invariant failed: ") + (msg)); \
  } while (0)

/// Three-valued verdict for divisibility queries.  `unknown` is reserved
/// for window-limited searches; callers must never map it to yes or no.
enum class Verdict { yes, no, unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "unknown";
  }
}

}  // namespace crysgar
