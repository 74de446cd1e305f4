#include "cf.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

namespace cfm {
namespace {

mpz_class floor_of(const mpq_class& v) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return r;
}

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::vector<mpz_class> expand_exact(mpq_class v, size_t max_terms, bool* terminated) {
  std::vector<mpz_class> terms;
  bool done = false;
  while (terms.size() < max_terms) {
    const mpz_class a = floor_of(v);
    terms.push_back(a);
    v -= a;
    if (v == 0) {
      done = true;
      break;
    }
    v = 1 / v;
  }
  if (terminated != nullptr) *terminated = done;
  return terms;
}

PrecisionBudget exact_digits(const PrecisionBudget& budget, int64_t digits) {
  PrecisionBudget b = budget;
  b.digits = digits;
  b.guard = 0;
  return b;
}

// Common prefix of the expansions at the two certification precisions.
std::vector<mpz_class> certified_prefix(const ConstantSpec& spec, size_t want_terms,
                                        const PrecisionBudget& budget) {
  budget.validate();
  const int64_t base = budget.working_digits();
  const PrecisionBudget fine = exact_digits(budget, base + 2 * budget.guard);
  fine.validate();
  std::vector<mpz_class> coarse_terms =
      expand_enclosure(eval_constant(spec, exact_digits(budget, base)), want_terms);
  const std::vector<mpz_class> fine_terms = expand_enclosure(eval_constant(spec, fine), want_terms);
  const auto mismatch = std::mismatch(coarse_terms.begin(), coarse_terms.end(),
                                      fine_terms.begin(), fine_terms.end());
  coarse_terms.erase(mismatch.first, coarse_terms.end());
  return coarse_terms;
}

}  // namespace

PartialQuotients PartialQuotients::from_terms(std::vector<mpz_class> terms) {
  if (terms.empty()) throw Error(ErrorCode::kInvalidArgument, "empty quotient list");
  for (size_t i = 1; i < terms.size(); ++i) {
    if (terms[i] < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "partial quotient a_" + std::to_string(i) + " must be >= 1");
    }
  }
  PartialQuotients pq;
  pq.certified_count = terms.size();
  pq.terms = std::move(terms);
  return pq;
}

std::vector<mpz_class> expand_enclosure(const CertifiedReal& x, size_t max_terms, bool* terminated) {
  if (x.is_exact()) return expand_exact(x.lo(), max_terms, terminated);
  if (terminated != nullptr) *terminated = false;
  std::vector<mpz_class> terms;
  mpq_class lo = x.lo();
  mpq_class hi = x.hi();
  while (terms.size() < max_terms) {
    const mpz_class a = floor_of(lo);
    if (floor_of(hi) != a) break;
    terms.push_back(a);
    // lo == a leaves the reciprocal unbounded above.
    if (lo == a) break;
    mpq_class next_lo = 1 / (hi - a);
    hi = 1 / (lo - a);
    lo = std::move(next_lo);
  }
  return terms;
}

size_t certify(const ConstantSpec& spec, size_t want_terms, const PrecisionBudget& budget) {
  if (want_terms == 0) throw Error(ErrorCode::kInvalidArgument, "zero-length expansion requested");
  if (spec.is_rational()) {
    bool terminated = false;
    return expand_exact(spec.exact_value(), std::numeric_limits<size_t>::max(), &terminated).size();
  }
  return certified_prefix(spec, want_terms, budget).size();
}

PartialQuotients expand(const ConstantSpec& spec, size_t want_terms, const PrecisionBudget& budget) {
  if (want_terms == 0) throw Error(ErrorCode::kInvalidArgument, "zero-length expansion requested");
  budget.validate();
  PartialQuotients pq;
  pq.source = spec;
  if (spec.is_rational()) {
    pq.terms = expand_exact(spec.exact_value(), want_terms, &pq.terminated);
    pq.certified_count = pq.terms.size();
    return pq;
  }
  PrecisionBudget b = budget;
  size_t best = 0;
  for (;;) {
    std::vector<mpz_class> terms = certified_prefix(spec, want_terms, b);
    best = std::max(best, terms.size());
    if (terms.size() >= want_terms) {
      pq.terms = std::move(terms);
      pq.certified_count = pq.terms.size();
      return pq;
    }
    const int64_t next = b.digits * 2;
    if (next + b.guard * 3 > b.max_digits) break;
    b.digits = next;
  }
  throw Error(ErrorCode::kPrecisionCap,
              "precision cap reached after certifying " + std::to_string(best) + " of " +
                  std::to_string(want_terms) + " quotients of " + spec.name());
}

SurdExpansion surd_expand(const ConstantSpec& spec, size_t want_terms) {
  if (!spec.is_surd()) throw Error(ErrorCode::kInvalidArgument, "surd expansion needs a surd constant");
  if (want_terms == 0) throw Error(ErrorCode::kInvalidArgument, "zero-length expansion requested");
  const Surd& s = spec.as_surd();
  if (mpz_perfect_square_p(s.d.get_mpz_t()) != 0) {
    throw Error(ErrorCode::kDomain, "d is a perfect square; value is rational");
  }

  // Rewrite as (P + sqrt(D)) / Q with Q | (D - P^2).
  mpz_class radicand = s.b * s.b * s.d;
  mpz_class p = s.b > 0 ? s.a : mpz_class(-s.a);
  mpz_class q = s.b > 0 ? s.c : mpz_class(-s.c);
  if (mpz_divisible_p(mpz_class(radicand - p * p).get_mpz_t(), q.get_mpz_t()) == 0) {
    const mpz_class scale = abs(q);
    p *= scale;
    radicand *= q * q;
    q *= scale;
  }
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());

  std::vector<mpz_class> cycle_terms;
  std::map<std::pair<mpz_class, mpz_class>, size_t> seen;
  Period period;
  for (;;) {
    auto [it, inserted] = seen.emplace(std::make_pair(p, q), cycle_terms.size());
    if (!inserted) {
      period.preperiod = it->second;
      period.length = cycle_terms.size() - it->second;
      break;
    }
    // sqrt(D) is irrational, so floor((P + sqrt D)/Q) only needs floor(sqrt D).
    const mpz_class a = q > 0 ? fdiv(p + root, q) : fdiv(p + root + 1, q);
    cycle_terms.push_back(a);
    p = a * q - p;
    q = (radicand - p * p) / q;
  }

  SurdExpansion out;
  out.period = period;
  out.quotients.source = spec;
  out.quotients.terms.reserve(want_terms);
  for (size_t i = 0; i < want_terms; ++i) {
    const size_t idx = i < period.preperiod
                           ? i
                           : period.preperiod + (i - period.preperiod) % period.length;
    out.quotients.terms.push_back(cycle_terms[idx]);
  }
  out.quotients.certified_count = want_terms;
  return out;
}

}  // namespace cfm
