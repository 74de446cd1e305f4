#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "cf.hpp"

namespace cfm {

QuotientSource QuotientSource::surd(const ConstantSpec& spec) {
  if (!spec.is_surd()) throw Error(ErrorCode::kInvalidArgument, "bench quotients need a surd or 'random'");
  QuotientSource s;
  s.surd_ = spec;
  return s;
}

QuotientSource QuotientSource::random(uint64_t seed) {
  QuotientSource s;
  s.seed_ = seed;
  return s;
}

QuotientSource QuotientSource::parse(std::string_view text, uint64_t seed) {
  if (text == "random") return random(seed);
  return surd(ConstantSpec::parse(text));
}

std::vector<mpz_class> QuotientSource::take(size_t count) const {
  if (surd_) return surd_expand(*surd_, count).quotients.terms;
  // mt19937_64 output is fixed by the standard; the modulo keeps the mapping
  // independent of the library's distribution implementation.
  std::mt19937_64 rng(seed_);
  std::vector<mpz_class> terms;
  terms.reserve(count);
  for (size_t i = 0; i < count; ++i) terms.emplace_back(static_cast<unsigned long>(1 + rng() % 9));
  return terms;
}

std::string QuotientSource::name() const {
  return surd_ ? surd_->name() : "random(seed=" + std::to_string(seed_) + ")";
}

bool BenchReport::all_agree() const {
  return std::all_of(sizes.begin(), sizes.end(), [](const BenchSize& s) { return s.engines_agree; });
}

std::vector<size_t> bench_sizes(size_t max_terms) {
  std::vector<size_t> sizes;
  for (size_t n = 100; n < max_terms; n *= 10) sizes.push_back(n);
  if (max_terms > 0) sizes.push_back(max_terms);
  return sizes;
}

BenchReport bench(const QuotientSource& source, size_t max_terms) {
  if (max_terms == 0) throw Error(ErrorCode::kInvalidArgument, "bench needs at least one term");
  const std::vector<mpz_class> all = source.take(max_terms);
  BenchReport report;
  for (size_t terms : bench_sizes(max_terms)) {
    const std::span<const mpz_class> prefix(all.data(), terms);
    BenchSize size;
    size.terms = terms;
    std::optional<Convergent> reference;
    size.engines_agree = true;
    for (Engine engine : {Engine::kIter, Engine::kMatrix, Engine::kFast}) {
      EngineRun run;
      run.engine = engine;
      const auto start = std::chrono::steady_clock::now();
      Convergent c = convergent_at(engine, prefix, terms - 1, &run.work);
      run.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (!reference) {
        reference = std::move(c);
      } else if (c != *reference) {
        size.engines_agree = false;
      }
      size.runs.push_back(run);
    }
    size.p_bits = mpz_sizeinbase(reference->p.get_mpz_t(), 2);
    size.q_bits = mpz_sizeinbase(reference->q.get_mpz_t(), 2);
    report.sizes.push_back(std::move(size));
  }
  return report;
}

}  // namespace cfm
