#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "kernel.hpp"

namespace cfm {

// pi^(t/s) with t/s in lowest terms, s >= 1, t != 0.
struct PiPower {
  int64_t t = 1;
  int64_t s = 1;
};

// (a + b sqrt(d)) / c with d > 0 not a perfect square, b != 0, c != 0.
struct Surd {
  mpz_class a;
  mpz_class b;
  mpz_class d;
  mpz_class c;
};

struct DecimalLiteral {
  std::string text;
  mpq_class value;
};

class ConstantSpec {
 public:
  using Kind = std::variant<PiPower, Surd, DecimalLiteral>;

  // Reduces t/s; throws kInvalidArgument for s < 1 or t == 0.
  static ConstantSpec pi_power(int64_t t, int64_t s = 1);
  // Throws kInvalidArgument for c == 0, kDomain if the value is rational.
  static ConstantSpec surd(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                           const mpz_class& c);
  // Accepts [+-]digits[.digits][e[+-]digits]; throws kParse otherwise.
  static ConstantSpec decimal_literal(std::string_view text);

  // Command-line constant syntax: pi, pi2, pi3, pi^t/s, sqrt:d, surd:a,b,d,c,
  // lit:<decimal>, golden. Throws kParse for anything else.
  static ConstantSpec parse(std::string_view text);

  const Kind& kind() const { return kind_; }
  bool is_rational() const { return std::holds_alternative<DecimalLiteral>(kind_); }
  bool is_surd() const { return std::holds_alternative<Surd>(kind_); }
  // True for pi^2 exactly, the constant whose sine probe has a direct form.
  bool is_pi_squared() const;
  const Surd& as_surd() const { return std::get<Surd>(kind_); }
  const mpq_class& exact_value() const { return std::get<DecimalLiteral>(kind_).value; }

  // Canonical text in the command-line syntax.
  std::string name() const;

 private:
  explicit ConstantSpec(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

// Enclosure of the constant with width <= 10^(-budget.digits).
CertifiedReal eval_constant(const ConstantSpec& spec, const PrecisionBudget& budget);

}  // namespace cfm
