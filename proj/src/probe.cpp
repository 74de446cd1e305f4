#include "probe.hpp"

#include <algorithm>

namespace cfm {
namespace {

constexpr int64_t kEnvelopeStartBits = 128;
constexpr int64_t kEnvelopeMaxBits = 1 << 16;

int64_t decimal_digits(const mpz_class& v) {
  return static_cast<int64_t>(mpz_sizeinbase(v.get_mpz_t(), 10));
}

std::optional<Decimal6> attached_mu(const ConstantSpec& alpha, const Convergent& conv,
                                    const PrecisionBudget& budget) {
  PrecisionBudget b = budget;
  for (;;) {
    try {
      return mu_n(alpha, conv, b);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDomain) return std::nullopt;  // exact approximation
      if (e.code() != ErrorCode::kUncertified) throw;
      b.digits *= 2;
      b.validate();
    }
  }
}

enum class Side { kBelow, kAbove, kUnknown };

Side compare_half_pi(const mpq_class& v, const CertifiedReal& half_pi) {
  if (v < half_pi.lo()) return Side::kBelow;
  if (v > half_pi.hi()) return Side::kAbove;
  return Side::kUnknown;
}

// One attempt at the given precision; nullopt means "not decided yet".
std::optional<bool> envelope_attempt(const mpq_class& lo, const mpq_class& hi, int64_t bits) {
  const CertifiedReal pi = pi_enclosure(bits);
  const CertifiedReal half_pi = pi * mpq_class(1, 2);
  const Side lo_side = compare_half_pi(lo, half_pi);
  if (lo_side == Side::kAbove) {
    throw Error(ErrorCode::kDomain, "enclosure lies beyond pi/2; envelope constants do not apply");
  }
  const Side hi_side = compare_half_pi(hi, half_pi);
  if (lo_side == Side::kUnknown || hi_side == Side::kUnknown) return std::nullopt;

  // sin(x) - (2/pi) x is concave on [0, pi/2] and vanishes at both ends, so
  // its minimum over [lo, hi] sits at an endpoint; at a clipped pi/2 it is 0.
  // sin(x) - x is decreasing there, so its maximum sits at lo.
  auto lower_holds = [&](const mpq_class& x) {
    if (x == 0) return true;
    return sin_point(x, bits).lo() >= 2 * x / pi.lo();
  };
  bool decided = true;
  if (!lower_holds(lo)) decided = false;
  if (hi_side == Side::kBelow && !lower_holds(hi)) decided = false;
  if (lo != 0 && sin_point(lo, bits).hi() > lo) decided = false;
  if (decided) return true;
  return std::nullopt;
}

}  // namespace

CertifiedReal residual(const ConstantSpec& alpha, const Convergent& conv, const PrecisionBudget& budget) {
  budget.validate();
  const PrecisionBudget inner = budget.with_digits(budget.digits + 1);
  const CertifiedReal a = eval_constant(alpha, inner);
  const CertifiedReal eps = a * mpq_class(conv.q) - CertifiedReal(mpq_class(conv.p));
  if (eps.contains_zero() && !eps.is_exact()) {
    throw Error(ErrorCode::kUncertified, "residual q*alpha - p not separated from 0");
  }
  return eps;
}

bool envelope_check(const CertifiedReal& z) {
  const CertifiedReal a = z.abs();
  for (int64_t bits = kEnvelopeStartBits; bits <= kEnvelopeMaxBits; bits *= 2) {
    if (auto verdict = envelope_attempt(a.lo(), a.hi(), bits)) return *verdict;
  }
  return false;
}

ProbeRow sine_probe(const ConstantSpec& alpha, const Convergent& conv, const PrecisionBudget& budget) {
  budget.validate();
  const int64_t q_digits = decimal_digits(conv.q);
  const PrecisionBudget inner = budget.with_digits(budget.digits + q_digits + 4);

  ProbeRow row;
  row.display_n = conv.n + 1;
  row.p = conv.p;
  row.q = conv.q;
  row.epsilon = residual(alpha, conv, inner);
  row.abs_epsilon = row.epsilon.abs();

  const CertifiedReal pi = pi_enclosure(bits_for_digits(inner.working_digits()));
  row.sin_reduced = sin_certified(pi * row.epsilon, budget).abs();
  row.sin_unscaled = sin_certified(row.epsilon, budget).abs();
  if (alpha.is_pi_squared()) {
    const CertifiedReal pi_cubed = eval_constant(ConstantSpec::pi_power(3), inner);
    row.sin_direct = sin_certified(pi_cubed * mpq_class(conv.q), budget).abs();
  }

  const CertifiedReal& pi_ref = pi;
  const mpq_class half_pi_lo = pi_ref.lo() / 2;
  if (row.abs_epsilon.hi() < half_pi_lo) {
    row.envelope_ok = envelope_check(row.epsilon);
    // pi * eps stays inside [-pi/2, pi/2] only while |eps| <= 1/2.
    if (row.envelope_ok && row.abs_epsilon.hi() <= mpq_class(1, 2)) {
      row.envelope_ok = envelope_check(pi * row.epsilon);
    }
  }
  return row;
}

std::vector<BoundFlags> bound_check(const ConstantSpec& alpha, std::span<const ProbeRow> rows,
                                    std::span<const Convergent> convs, const PrecisionBudget& budget) {
  std::vector<BoundFlags> flags;
  flags.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 >= convs.size()) {
      throw Error(ErrorCode::kOutOfRange,
                  "missing successor convergent for row " + std::to_string(rows[i].display_n));
    }
    const Convergent& cur = convs[i];
    const Convergent& next = convs[i + 1];
    if (cur.n + 1 != rows[i].display_n || next.n != cur.n + 1) {
      throw Error(ErrorCode::kOutOfRange, "probe rows and convergents are not aligned");
    }
    const CertifiedReal& e = rows[i].abs_epsilon;
    BoundFlags f;
    f.upper_ok = e.hi() < mpq_class(mpz_class(1), next.q) && next.q >= cur.q;
    f.lower_ok = e.lo() > mpq_class(mpz_class(1), cur.q + next.q);
    if (cur.q > 1) f.mu = attached_mu(alpha, cur, budget);
    flags.push_back(std::move(f));
  }
  return flags;
}

std::vector<ProbeRow> probe_table(const ConstantSpec& alpha, size_t rows, const PrecisionBudget& budget) {
  if (rows == 0) throw Error(ErrorCode::kInvalidArgument, "rows must be >= 1");
  const PartialQuotients pq = expand(alpha, rows + 1, budget);
  const std::vector<Convergent> convs = convergents_iter(pq, pq.certified_count - 1);
  const size_t count = std::min(rows, convs.size());
  std::vector<ProbeRow> table;
  table.reserve(count);
  for (size_t i = 0; i < count; ++i) table.push_back(sine_probe(alpha, convs[i], budget));

  const size_t with_successor = std::min(count, convs.size() - 1);
  const std::vector<BoundFlags> flags =
      bound_check(alpha, std::span(table).first(with_successor), convs, budget);
  for (size_t i = 0; i < with_successor; ++i) {
    table[i].bounds_checked = true;
    table[i].upper_bound_ok = flags[i].upper_ok;
    table[i].lower_bound_ok = flags[i].lower_ok;
    table[i].mu = flags[i].mu;
  }
  for (size_t i = with_successor; i < count; ++i) {
    if (table[i].q > 1) table[i].mu = attached_mu(alpha, convs[i], budget);
  }
  return table;
}

}  // namespace cfm
