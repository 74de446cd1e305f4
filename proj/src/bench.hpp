#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "constant.hpp"
#include "conv.hpp"

namespace cfm {

// Quotients for benchmarking: an exact surd expansion or a seeded stream of
// random quotients in [1, 9] (a_0 included).
class QuotientSource {
 public:
  static QuotientSource surd(const ConstantSpec& spec);
  static QuotientSource random(uint64_t seed);
  // "random" selects the seeded stream; anything else must name a surd.
  static QuotientSource parse(std::string_view text, uint64_t seed);

  std::vector<mpz_class> take(size_t count) const;
  std::string name() const;

 private:
  QuotientSource() = default;
  std::optional<ConstantSpec> surd_;
  uint64_t seed_ = 0;
};

struct EngineRun {
  Engine engine = Engine::kIter;
  double wall_ms = 0.0;
  WorkCounter work;
};

struct BenchSize {
  size_t terms = 0;
  std::vector<EngineRun> runs;  // iter, matrix, fast
  size_t p_bits = 0;
  size_t q_bits = 0;
  bool engines_agree = false;
};

struct BenchReport {
  std::vector<BenchSize> sizes;

  bool all_agree() const;
};

// Term counts 10^2, 10^3, ... up to max_terms (max_terms itself is always
// the last size).
std::vector<size_t> bench_sizes(size_t max_terms);

BenchReport bench(const QuotientSource& source, size_t max_terms);

}  // namespace cfm
