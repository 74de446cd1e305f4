#pragma once

#include <gmpxx.h>
#include <gtest/gtest.h>

#include <string>

#include "constant.hpp"
#include "kernel.hpp"

namespace cfm::test {

inline mpq_class dec(const std::string& text) { return ConstantSpec::decimal_literal(text).exact_value(); }

// enc lies within `tol` of the reference value at both ends and contains it up
// to the reference's own rounding (assumed below tol).
inline ::testing::AssertionResult near_value(const CertifiedReal& enc, const std::string& reference,
                                             const mpq_class& tol) {
  const mpq_class ref = dec(reference);
  if (enc.lo() > ref + tol || enc.hi() < ref - tol) {
    return ::testing::AssertionFailure() << "[" << enc.lo().get_d() << ", " << enc.hi().get_d()
                                         << "] misses " << reference;
  }
  if (enc.width() > tol) return ::testing::AssertionFailure() << "enclosure wider than tolerance";
  return ::testing::AssertionSuccess();
}

inline mpq_class tenth_pow(unsigned long e) { return mpq_class(1, pow10(e)); }

}  // namespace cfm::test
