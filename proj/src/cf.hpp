#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "constant.hpp"
#include "kernel.hpp"

namespace cfm {

// A certified prefix [a_0; a_1, ..., a_m] of a continued fraction.
struct PartialQuotients {
  std::vector<mpz_class> terms;
  size_t certified_count = 0;
  std::optional<ConstantSpec> source;
  // Set when the expansion of a rational value ran to completion.
  bool terminated = false;

  size_t size() const { return terms.size(); }

  // Wraps a known-exact quotient list (tests, benchmarks). Throws
  // kInvalidArgument if empty or if some a_i < 1 for i >= 1.
  static PartialQuotients from_terms(std::vector<mpz_class> terms);
};

struct Period {
  size_t preperiod = 0;
  size_t length = 0;
};

struct SurdExpansion {
  PartialQuotients quotients;
  Period period;
};

// Expands an enclosure, accepting a quotient only when both interval ends
// share the same floor. Exact (degenerate) enclosures are expanded to
// completion in canonical form. Stops after max_terms.
std::vector<mpz_class> expand_enclosure(const CertifiedReal& x, size_t max_terms,
                                        bool* terminated = nullptr);

// Number of leading quotients that agree between expansions at working
// precision D and D + 2 * guard, where D = budget.working_digits().
size_t certify(const ConstantSpec& spec, size_t want_terms, const PrecisionBudget& budget);

// At least want_terms certified quotients (fewer only for a rational that
// terminates), doubling precision as needed. Throws kPrecisionCap when the
// cap is hit first.
PartialQuotients expand(const ConstantSpec& spec, size_t want_terms, const PrecisionBudget& budget);

// Exact periodic expansion of a quadratic surd from the (P, Q) recurrence.
SurdExpansion surd_expand(const ConstantSpec& spec, size_t want_terms);

}  // namespace cfm
