#include "measure.hpp"

namespace cfm {
namespace {

constexpr int64_t kLagrangeMaxBits = 1 << 20;

bool mu_decided(const CertifiedReal& mu) {
  return mu.width() < kMuMaxWidth &&
         round_scaled(mu.lo(), 6, kMuRounding) == round_scaled(mu.hi(), 6, kMuRounding);
}

PrecisionBudget doubled(const PrecisionBudget& b) {
  PrecisionBudget next = b;
  next.digits = b.digits * 2;
  if (next.working_digits() > next.max_digits) {
    throw Error(ErrorCode::kPrecisionCap, "precision cap reached while certifying mu_n");
  }
  return next;
}

}  // namespace

Decimal6 Decimal6::parse(const std::string& text) {
  const ConstantSpec lit = ConstantSpec::decimal_literal(text);
  const mpq_class scaled = lit.exact_value() * mpq_class(pow10(6));
  if (scaled.get_den() != 1) throw Error(ErrorCode::kParse, "more than 6 decimals: '" + text + "'");
  return {scaled.get_num()};
}

CertifiedReal mu_enclosure(const CertifiedReal& alpha, const Convergent& conv, int64_t bits) {
  if (conv.q <= 1) throw Error(ErrorCode::kDomain, "mu_n is undefined for q = 1");
  const CertifiedReal error = (alpha - CertifiedReal(ratio(conv.p, conv.q))).abs();
  if (error.contains_zero()) {
    if (error.is_exact()) throw Error(ErrorCode::kDomain, "exact approximation: mu_n is unbounded");
    throw Error(ErrorCode::kUncertified, "error term |alpha - p/q| not separated from 0");
  }
  const CertifiedReal log_error = log_certified(error, bits);
  const CertifiedReal log_q = log_certified(CertifiedReal(mpq_class(conv.q)), bits);
  return -(log_error / log_q);
}

std::optional<Decimal6> mu_n(const ConstantSpec& alpha, const Convergent& conv,
                             const PrecisionBudget& budget) {
  if (conv.q == 1) return std::nullopt;
  PrecisionBudget b = budget;
  for (;;) {
    const CertifiedReal a = eval_constant(alpha, b);
    const CertifiedReal mu = mu_enclosure(a, conv, bits_for_digits(b.working_digits()));
    if (mu_decided(mu)) return Decimal6{round_scaled(mu.lo(), 6, kMuRounding)};
    b = doubled(b);
  }
}

Decimal6 lagrange(const mpz_class& q, const Decimal6& mu) {
  if (q < 1) throw Error(ErrorCode::kInvalidArgument, "q must be >= 1");
  if (q == 1) return {pow10(6)};
  for (int64_t bits = 64; bits <= kLagrangeMaxBits; bits *= 2) {
    const CertifiedReal exponent =
        log_certified(CertifiedReal(mpq_class(q)), bits) * (mu.value() - 2);
    const CertifiedReal value = exp_certified(exponent, bits);
    const mpz_class lo = round_scaled(value.lo(), 6, kLagrangeRounding);
    if (lo == round_scaled(value.hi(), 6, kLagrangeRounding)) return {lo};
  }
  throw Error(ErrorCode::kPrecisionCap, "could not round q^(mu-2) to 6 decimals");
}

std::vector<MeasureRow> measure_table(const ConstantSpec& alpha, size_t rows,
                                      const PrecisionBudget& budget) {
  if (rows == 0) throw Error(ErrorCode::kInvalidArgument, "rows must be >= 1");
  const PartialQuotients pq = expand(alpha, rows, budget);
  const std::vector<Convergent> convs = convergents_iter(pq, pq.certified_count - 1);
  std::vector<MeasureRow> table;
  table.reserve(convs.size());
  for (const Convergent& c : convs) {
    if (pq.terminated && c.n + 1 == convs.size() && c.q > 1) break;
    MeasureRow row{c.n + 1, c.p, c.q, std::nullopt, {pow10(6)}};
    if (c.q > 1) {
      PrecisionBudget b = budget;
      for (;;) {
        try {
          row.mu = mu_n(alpha, c, b);
          break;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kUncertified) throw;
          b = doubled(b);
        }
      }
      row.lagrange = lagrange(c.q, *row.mu);
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace cfm
