#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace heuberger {

using Integer = mpz_class;
using Vector = std::vector<Integer>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A materialization would exceed the configured vertex cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline std::string to_string(const Integer& x) { return x.get_str(); }

inline bool fits_int64(const Integer& x) { return x.fits_slong_p() != 0; }

inline std::int64_t to_int64(const Integer& x) {
  if (!fits_int64(x)) throw DomainError("integer does not fit in 64 bits: " + x.get_str());
  return x.get_si();
}

/// Quotient rounded toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Remainder in [0, |b|).
inline Integer mod_floor(const Integer& a, const Integer& b) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

struct ExtendedGcd {
  Integer g, x, y;  // x*a + y*b = g >= 0
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Vector to_vector(std::initializer_list<long> values) {
  Vector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

inline bool is_zero(std::span<const Integer> v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace heuberger
