#pragma once

// Certified real arithmetic on exact rational intervals.
//
// Every CertifiedReal holds exact rational endpoints [lo, hi]. Transcendental
// routines evaluate fixed-point series on big integers with explicit
// truncation and tail bounds, so the returned endpoints always enclose the
// true value. No hardware floating point is used on this path.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cfm {

enum class ErrorCode {
  kInvalidArgument = 1,
  kParse,
  kPrecisionCap,
  kUncertified,
  kOutOfRange,
  kDomain,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct PrecisionBudget {
  static constexpr int64_t kDefaultGuard = 10;
  static constexpr int64_t kDefaultMaxDigits = 1'000'000;

  int64_t digits = 30;
  int64_t guard = kDefaultGuard;
  // Hard cap on working digits; exceeding it raises kPrecisionCap.
  int64_t max_digits = kDefaultMaxDigits;

  int64_t working_digits() const { return digits + guard; }

  // Throws kInvalidArgument for digits < 1 or guard < 0, kPrecisionCap when
  // the working precision is above max_digits.
  void validate() const;

  PrecisionBudget with_digits(int64_t d) const {
    PrecisionBudget b = *this;
    b.digits = d;
    return b;
  }
};

// Binary digits needed to represent `decimal_digits` decimal digits, plus a
// small margin.
int64_t bits_for_digits(int64_t decimal_digits);

class CertifiedReal {
 public:
  CertifiedReal() = default;
  explicit CertifiedReal(const mpq_class& exact) : lo_(exact), hi_(exact) {}
  // Throws kInvalidArgument unless lo <= hi.
  CertifiedReal(const mpq_class& lo, const mpq_class& hi);

  static CertifiedReal from_integer(const mpz_class& v) {
    return CertifiedReal(mpq_class(v));
  }

  const mpq_class& lo() const { return lo_; }
  const mpq_class& hi() const { return hi_; }

  mpq_class width() const { return hi_ - lo_; }
  mpq_class midpoint() const;
  bool is_exact() const { return lo_ == hi_; }
  bool contains(const mpq_class& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const CertifiedReal& inner) const {
    return lo_ <= inner.lo_ && inner.hi_ <= hi_;
  }
  bool intersects(const CertifiedReal& other) const {
    return lo_ <= other.hi_ && other.lo_ <= hi_;
  }
  bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }
  bool certainly_positive() const { return lo_ > 0; }
  bool certainly_negative() const { return hi_ < 0; }
  // True once hi - lo <= 10^(-digits).
  bool width_within_digits(int64_t digits) const;

  CertifiedReal operator-() const { return CertifiedReal(-hi_, -lo_); }
  CertifiedReal abs() const;
  CertifiedReal reciprocal() const;  // kDomain if the interval contains 0
  // Widens both endpoints outward to the grid 2^(-bits).
  CertifiedReal rounded_outward(int64_t bits) const;
  CertifiedReal widened(const mpq_class& radius) const {
    return CertifiedReal(lo_ - radius, hi_ + radius);
  }

  friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator*(const CertifiedReal& a, const mpq_class& k);
  friend bool operator==(const CertifiedReal& a, const CertifiedReal& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  mpq_class lo_;
  mpq_class hi_;
};

// Enclosure of pi with width at most 2^(-bits + 2), via Machin's formula.
CertifiedReal pi_enclosure(int64_t bits);

// Enclosure of ln 2 with width at most 2^(-bits + 2).
CertifiedReal ln2_enclosure(int64_t bits);

// Enclosure of sqrt(n) for n >= 0, width at most 2^(-bits).
CertifiedReal sqrt_enclosure(const mpz_class& n, int64_t bits);

// Enclosure of x^(1/root) for a positive interval x, width about 2^(-bits).
CertifiedReal root_enclosure(const CertifiedReal& x, unsigned long root,
                             int64_t bits);

// Interval integer power; negative exponents require x to exclude 0.
CertifiedReal pow_enclosure(const CertifiedReal& x, int64_t exponent);

// sin over every point of x. Requires width(x) <= 10^(-budget.digits) and
// returns an interval of width at most 10^(-budget.digits + 2). Argument
// reduction uses a pi enclosure sized to |x|.
CertifiedReal sin_certified(const CertifiedReal& x, const PrecisionBudget& budget);

// Enclosure of sin(y) at an exact point |y| < 2, accurate to about 2^(-bits).
CertifiedReal sin_point(const mpq_class& y, int64_t bits);

// Natural log of a positive interval, endpoints accurate to about 2^(-bits).
CertifiedReal log_certified(const CertifiedReal& x, int64_t bits);

// exp of an interval, endpoints accurate to about 2^(-bits) relative to the
// output magnitude.
CertifiedReal exp_certified(const CertifiedReal& x, int64_t bits);

enum class Rounding { kHalfEven, kCeiling, kFloor };

// round(v * 10^places) as an integer under the given mode.
mpz_class round_scaled(const mpq_class& v, int places, Rounding mode);

// Fixed-point decimal text of scaled / 10^places, e.g. (1637692, 6) -> "1.637692".
std::string format_fixed(const mpz_class& scaled, int places);

// Scientific notation with `significant` digits, nearest rounding: "-1.30395598911e-01".
std::string format_scientific(const mpq_class& v, int significant);

// floor(log10 |v|) for v != 0, computed exactly.
int64_t floor_log10(const mpq_class& v);

mpz_class pow10(unsigned long e);

// num/den in canonical form. mpq_class(num, den) does not reduce, and GMP
// rational arithmetic is undefined on non-canonical operands.
inline mpq_class ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace cfm
