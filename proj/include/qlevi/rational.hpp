#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlevi {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVec>;
using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: unknown type, parabolic out of range, malformed files.
class InputError : public Error {
public:
  using Error::Error;
};

/// An invariant that the mathematics guarantees was observed to fail.
class InternalConsistencyError : public Error {
public:
  using Error::Error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p" (optional leading sign); throws InputError otherwise.
inline Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw InputError("malformed rational '" + std::string(text) + "'");
  Integer n{strip_plus(num)}, d{std::string(den)};
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw InternalConsistencyError("integer overflow converting " + z.get_str());
  return z.get_si();
}

/// Exact integer value of an integral rational; throws otherwise.
inline std::int64_t to_int64(const Rational& r) {
  if (!is_integral(r)) throw InternalConsistencyError("expected an integer, got " + to_string(r));
  return to_int64(r.get_num());
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace qlevi
