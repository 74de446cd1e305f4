#pragma once

// Approximate irrationality measure mu_n(alpha) = -log|alpha - p_n/q_n| / log q_n
// and the q^(mu_n - 2) column, as certified 6-decimal values.
//
// mu_n is a finite-n statistic. Values near 2 are what every convergent of
// almost every real produces (|alpha - p_n/q_n| < 1/q_n^2 always holds), so a
// table of them says nothing about the infimum mu(alpha) itself.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cf.hpp"
#include "constant.hpp"
#include "conv.hpp"
#include "kernel.hpp"

namespace cfm {

// A decimal with exactly six fractional digits, stored as micro-units.
struct Decimal6 {
  mpz_class micros;

  static Decimal6 parse(const std::string& text);
  std::string str() const { return format_fixed(micros, 6); }
  mpq_class value() const { return ratio(micros, pow10(6)); }

  friend bool operator==(const Decimal6& a, const Decimal6& b) { return a.micros == b.micros; }
  friend auto operator<=>(const Decimal6& a, const Decimal6& b) {
    const int c = cmp(a.micros, b.micros);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

// mu_n is shown rounded toward +infinity; the q^(mu-2) column is rounded to
// nearest (ties to even) from the displayed mu.
inline constexpr Rounding kMuRounding = Rounding::kCeiling;
inline constexpr Rounding kLagrangeRounding = Rounding::kHalfEven;

// Enclosure must be narrower than this before rounding.
inline const mpq_class kMuMaxWidth{1, 2'000'000};  // 5e-7

struct MeasureRow {
  size_t display_n = 0;
  mpz_class p;
  mpz_class q;
  std::optional<Decimal6> mu;  // absent when q == 1
  Decimal6 lagrange;
};

// Raw enclosure of mu for a given enclosure of alpha. Throws kUncertified if
// the error term may be zero, kDomain if it is exactly zero or q == 1.
CertifiedReal mu_enclosure(const CertifiedReal& alpha, const Convergent& conv, int64_t bits);

// Certified, rounded mu_n; absent when q == 1. Throws kUncertified when
// |alpha - p/q| cannot be separated from 0 at this budget. Precision is
// raised internally until the rounding is decided.
std::optional<Decimal6> mu_n(const ConstantSpec& alpha, const Convergent& conv,
                             const PrecisionBudget& budget);

// q^(mu - 2) rounded to 6 decimals; 1.000000 when q == 1.
Decimal6 lagrange(const mpz_class& q, const Decimal6& mu);

// Rows 1..rows of the measure table. For a terminating rational the final
// exact convergent has no defined mu and is left out.
std::vector<MeasureRow> measure_table(const ConstantSpec& alpha, size_t rows,
                                      const PrecisionBudget& budget);

}  // namespace cfm
