#include "kernel.hpp"

#include <algorithm>
#include <utility>

namespace cfm {
namespace {

// Extra fixed-point bits carried inside series evaluations, enough to absorb
// the accumulated truncation error bound of any series below.
constexpr int64_t kSeriesGuardBits = 64;

mpz_class pow2(int64_t e) {
  mpz_class r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return r;
}

// floor(v * 2^bits)
mpz_class fixed_floor(const mpq_class& v, int64_t bits) {
  mpz_class num = v.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), v.get_den_mpz_t());
  return r;
}

mpz_class fixed_ceil(const mpq_class& v, int64_t bits) {
  mpz_class num = v.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), v.get_den_mpz_t());
  return r;
}

mpq_class from_fixed(const mpz_class& v, int64_t bits) {
  mpq_class r(v, pow2(bits));
  r.canonicalize();
  return r;
}

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

mpz_class shr_floor(const mpz_class& a, int64_t bits) {
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  return r;
}

int64_t bitlen(const mpz_class& v) {
  if (v == 0) return 0;
  return static_cast<int64_t>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

// Fixed-point value plus an absolute error bound, both in units of 2^(-bits).
struct FixedApprox {
  mpz_class value;
  mpz_class error;
  int64_t bits;

  CertifiedReal enclosure() const {
    return CertifiedReal(from_fixed(value - error, bits),
                         from_fixed(value + error, bits));
  }
};

// sum_k (+-1)^k / ((2k+1) m^(2k+1)), i.e. atan(1/m) or atanh(1/m), m >= 2.
FixedApprox arc_series_inverse(unsigned long m, bool alternating, int64_t bits) {
  const mpz_class m2 = mpz_class(m) * m;
  mpz_class power = fdiv(pow2(bits), mpz_class(m));
  mpz_class sum = 0;
  unsigned long k = 0;
  for (; power != 0; ++k) {
    mpz_class term = power / (2 * k + 1);
    if (alternating && (k & 1)) {
      sum -= term;
    } else {
      sum += term;
    }
    power = fdiv(power, m2);
  }
  // Each power carries <= 2 ulps, each term <= 3; the tail after the power
  // hits zero is below 4 ulps.
  return {sum, mpz_class(3 * k + 8), bits};
}

// atanh(u) for a rational 0 <= u < 1/3.
FixedApprox atanh_small(const mpq_class& u, int64_t bits) {
  const mpz_class uf = fixed_floor(u, bits);
  const mpz_class u2 = shr_floor(uf * uf, bits);
  mpz_class power = uf;
  mpz_class sum = 0;
  unsigned long k = 0;
  for (; power != 0; ++k) {
    sum += power / (2 * k + 1);
    power = shr_floor(power * u2, bits);
  }
  return {sum, mpz_class(3 * k + 12), bits};
}

// sin(y) for a rational |y| < 2.
FixedApprox sin_series(const mpq_class& y, int64_t bits) {
  // Floor division never takes a negative term to 0, so work on |y|.
  if (y < 0) {
    FixedApprox r = sin_series(-y, bits);
    r.value = -r.value;
    return r;
  }
  const mpz_class yf = fixed_floor(y, bits);
  const mpz_class y2 = shr_floor(yf * yf, bits);
  mpz_class term = yf;
  mpz_class sum = yf;
  unsigned long k = 1;
  for (; term != 0; ++k) {
    term = fdiv(shr_floor(term * y2, bits), mpz_class((2 * k) * (2 * k + 1)));
    if (k & 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return {sum, mpz_class(16 * k + 32), bits};
}

// exp(s) for a rational |s| <= 1/2.
FixedApprox exp_series(const mpq_class& s, int64_t bits) {
  const mpz_class sf = fixed_floor(s, bits);
  mpz_class term = pow2(bits);
  mpz_class sum = term;
  unsigned long k = 1;
  for (; term != 0; ++k) {
    term = fdiv(shr_floor(term * sf, bits), mpz_class(k));
    sum += term;
  }
  return {sum, mpz_class(8 * k + 24), bits};
}

CertifiedReal log_point(const mpq_class& r, int64_t bits) {
  // r = m * 2^e with 1 <= m < 2; ln r = e ln 2 + 2 atanh((m-1)/(m+1)).
  int64_t e = bitlen(r.get_num()) - bitlen(r.get_den());
  mpq_class m = r;
  if (e > 0) {
    mpq_div_2exp(m.get_mpq_t(), m.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else if (e < 0) {
    mpq_mul_2exp(m.get_mpq_t(), m.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  if (m < 1) {
    m *= 2;
    --e;
  }
  const int64_t wide = bits + kSeriesGuardBits;
  CertifiedReal frac = atanh_small((m - 1) / (m + 1), wide).enclosure() * mpq_class(2);
  if (e == 0) return frac;
  const CertifiedReal ln2 = ln2_enclosure(wide + bitlen(mpz_class(e < 0 ? -e : e)));
  return ln2 * mpq_class(e) + frac;
}

CertifiedReal exp_point(const mpq_class& r, int64_t bits) {
  const CertifiedReal ln2_coarse = ln2_enclosure(64 + bitlen(fixed_floor(abs(r), 0)));
  mpq_class ratio = r / ln2_coarse.midpoint();
  mpz_class k = fixed_floor(ratio + mpq_class(1, 2), 0);
  const int64_t kbits = bitlen(abs(k));
  const int64_t wide = bits + kSeriesGuardBits + kbits;
  const CertifiedReal s =
      CertifiedReal(r) - ln2_enclosure(wide + kbits) * mpq_class(k);
  // exp is increasing, so the enclosure of s maps endpoint-wise.
  const CertifiedReal lo = exp_series(s.lo(), wide).enclosure();
  const CertifiedReal hi = exp_series(s.hi(), wide).enclosure();
  mpq_class out_lo = lo.lo();
  mpq_class out_hi = hi.hi();
  if (k > 0) {
    const auto shift = static_cast<mp_bitcnt_t>(k.get_ui());
    mpq_mul_2exp(out_lo.get_mpq_t(), out_lo.get_mpq_t(), shift);
    mpq_mul_2exp(out_hi.get_mpq_t(), out_hi.get_mpq_t(), shift);
  } else if (k < 0) {
    const auto shift = static_cast<mp_bitcnt_t>(mpz_class(-k).get_ui());
    mpq_div_2exp(out_lo.get_mpq_t(), out_lo.get_mpq_t(), shift);
    mpq_div_2exp(out_hi.get_mpq_t(), out_hi.get_mpq_t(), shift);
  }
  if (out_lo < 0) out_lo = 0;
  return CertifiedReal(out_lo, out_hi);
}

}  // namespace

void PrecisionBudget::validate() const {
  if (digits < 1) throw Error(ErrorCode::kInvalidArgument, "precision digits must be >= 1");
  if (guard < 0) throw Error(ErrorCode::kInvalidArgument, "guard digits must be >= 0");
  if (working_digits() > max_digits) {
    throw Error(ErrorCode::kPrecisionCap,
                "working precision " + std::to_string(working_digits()) +
                    " digits exceeds cap of " + std::to_string(max_digits));
  }
}

int64_t bits_for_digits(int64_t decimal_digits) {
  // log2(10) < 3.322
  return decimal_digits * 3322 / 1000 + 8;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

CertifiedReal::CertifiedReal(const mpq_class& lo, const mpq_class& hi) : lo_(lo), hi_(hi) {
  if (lo_ > hi_) throw Error(ErrorCode::kInvalidArgument, "interval with lo > hi");
}

mpq_class CertifiedReal::midpoint() const {
  mpq_class m = lo_ + hi_;
  mpq_div_2exp(m.get_mpq_t(), m.get_mpq_t(), 1);
  return m;
}

bool CertifiedReal::width_within_digits(int64_t digits) const {
  mpq_class scaled = width();
  if (digits >= 0) {
    scaled *= mpq_class(pow10(static_cast<unsigned long>(digits)));
  } else {
    scaled /= mpq_class(pow10(static_cast<unsigned long>(-digits)));
  }
  return scaled <= 1;
}

CertifiedReal CertifiedReal::abs() const {
  if (lo_ >= 0) return *this;
  if (hi_ <= 0) return -*this;
  return CertifiedReal(mpq_class(0), std::max(mpq_class(-lo_), hi_));
}

CertifiedReal CertifiedReal::reciprocal() const {
  if (contains_zero()) throw Error(ErrorCode::kDomain, "reciprocal of an interval containing 0");
  return CertifiedReal(1 / hi_, 1 / lo_);
}

CertifiedReal CertifiedReal::rounded_outward(int64_t bits) const {
  return CertifiedReal(from_fixed(fixed_floor(lo_, bits), bits),
                       from_fixed(fixed_ceil(hi_, bits), bits));
}

CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
  return CertifiedReal(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
  return CertifiedReal(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
  const mpq_class p1 = a.lo_ * b.lo_;
  const mpq_class p2 = a.lo_ * b.hi_;
  const mpq_class p3 = a.hi_ * b.lo_;
  const mpq_class p4 = a.hi_ * b.hi_;
  return CertifiedReal(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
  return a * b.reciprocal();
}

CertifiedReal operator*(const CertifiedReal& a, const mpq_class& k) {
  if (k >= 0) return CertifiedReal(a.lo_ * k, a.hi_ * k);
  return CertifiedReal(a.hi_ * k, a.lo_ * k);
}

CertifiedReal pi_enclosure(int64_t bits) {
  // pi = 16 atan(1/5) - 4 atan(1/239)
  const int64_t wide = bits + kSeriesGuardBits;
  const FixedApprox a5 = arc_series_inverse(5, true, wide);
  const FixedApprox a239 = arc_series_inverse(239, true, wide);
  const FixedApprox pi{16 * a5.value - 4 * a239.value,
                       16 * a5.error + 4 * a239.error, wide};
  return pi.enclosure().rounded_outward(bits);
}

CertifiedReal ln2_enclosure(int64_t bits) {
  const int64_t wide = bits + kSeriesGuardBits;
  const FixedApprox a3 = arc_series_inverse(3, false, wide);
  const FixedApprox ln2{2 * a3.value, 2 * a3.error, wide};
  return ln2.enclosure().rounded_outward(bits);
}

CertifiedReal sqrt_enclosure(const mpz_class& n, int64_t bits) {
  if (n < 0) throw Error(ErrorCode::kDomain, "square root of a negative integer");
  mpz_class scaled = n;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * bits));
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  if (root * root == scaled) return CertifiedReal(from_fixed(root, bits));
  return CertifiedReal(from_fixed(root, bits), from_fixed(root + 1, bits));
}

CertifiedReal root_enclosure(const CertifiedReal& x, unsigned long root, int64_t bits) {
  if (root == 0) throw Error(ErrorCode::kInvalidArgument, "zeroth root");
  if (root == 1) return x;
  if (x.lo() < 0) throw Error(ErrorCode::kDomain, "root of a possibly negative interval");
  const auto shift = static_cast<int64_t>(root) * bits;
  const mpz_class lo_scaled = fixed_floor(x.lo(), shift);
  const mpz_class hi_scaled = fixed_ceil(x.hi(), shift);
  mpz_class lo_root;
  mpz_root(lo_root.get_mpz_t(), lo_scaled.get_mpz_t(), root);
  mpz_class hi_root;
  if (mpz_root(hi_root.get_mpz_t(), hi_scaled.get_mpz_t(), root) == 0) hi_root += 1;
  return CertifiedReal(from_fixed(lo_root, bits), from_fixed(hi_root, bits));
}

CertifiedReal pow_enclosure(const CertifiedReal& x, int64_t exponent) {
  if (exponent < 0) return pow_enclosure(x.reciprocal(), -exponent);
  CertifiedReal result(mpq_class(1));
  CertifiedReal base = x;
  for (auto e = static_cast<uint64_t>(exponent); e != 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  if (exponent % 2 == 0 && result.lo() < 0) return CertifiedReal(mpq_class(0), result.hi());
  return result;
}

CertifiedReal sin_certified(const CertifiedReal& x, const PrecisionBudget& budget) {
  budget.validate();
  if (!x.width_within_digits(budget.digits)) {
    throw Error(ErrorCode::kUncertified,
                "sine argument enclosure is wider than 10^-" + std::to_string(budget.digits));
  }
  if (x.is_exact() && x.lo() == 0) return x;

  const int64_t bits = bits_for_digits(budget.working_digits());
  const mpq_class mid = x.midpoint();
  const int64_t magnitude_bits = bitlen(fixed_floor(abs(mid), 0)) + 2;
  // Reduction needs the integer part of x/pi exactly, which costs
  // log10|x| extra digits of pi.
  if (budget.working_digits() + magnitude_bits * 30103 / 100000 > budget.max_digits) {
    throw Error(ErrorCode::kOutOfRange, "sine argument magnitude exceeds the reducible range");
  }
  const CertifiedReal pi = pi_enclosure(bits + magnitude_bits + 16);
  const mpz_class k = fixed_floor(mid / pi.midpoint() + mpq_class(1, 2), 0);
  const CertifiedReal y = x - pi * mpq_class(k);
  const CertifiedReal half_pi = pi * mpq_class(1, 2);

  const int64_t wide = bits + kSeriesGuardBits;
  const CertifiedReal s_lo = sin_series(y.lo(), wide).enclosure();
  const CertifiedReal s_hi = sin_series(y.hi(), wide).enclosure();
  mpq_class lo;
  mpq_class hi;
  if (y.hi() >= half_pi.lo()) {
    lo = std::min(s_lo.lo(), s_hi.lo());
    hi = 1;
  } else if (y.lo() <= -half_pi.lo()) {
    lo = -1;
    hi = std::max(s_lo.hi(), s_hi.hi());
  } else {
    lo = s_lo.lo();
    hi = s_hi.hi();
  }
  lo = std::max(lo, mpq_class(-1));
  hi = std::min(hi, mpq_class(1));
  CertifiedReal result(lo, hi);
  if (mpz_odd_p(k.get_mpz_t())) result = -result;
  return result.rounded_outward(bits);
}

CertifiedReal sin_point(const mpq_class& y, int64_t bits) {
  if (abs(y) >= 2) throw Error(ErrorCode::kDomain, "sin_point needs |y| < 2");
  return sin_series(y, bits + kSeriesGuardBits).enclosure().rounded_outward(bits + 8);
}

CertifiedReal log_certified(const CertifiedReal& x, int64_t bits) {
  if (x.lo() <= 0) throw Error(ErrorCode::kDomain, "log of a non-positive interval");
  const CertifiedReal lo = log_point(x.lo(), bits);
  if (x.is_exact()) return lo.rounded_outward(bits + 8);
  return CertifiedReal(lo.lo(), log_point(x.hi(), bits).hi()).rounded_outward(bits + 8);
}

CertifiedReal exp_certified(const CertifiedReal& x, int64_t bits) {
  const CertifiedReal lo = exp_point(x.lo(), bits);
  if (x.is_exact()) return lo;
  return CertifiedReal(lo.lo(), exp_point(x.hi(), bits).hi());
}

mpz_class round_scaled(const mpq_class& v, int places, Rounding mode) {
  mpq_class x = v * mpq_class(pow10(static_cast<unsigned long>(places)));
  mpz_class q;
  switch (mode) {
    case Rounding::kFloor:
      mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      return q;
    case Rounding::kCeiling:
      mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      return q;
    case Rounding::kHalfEven: {
      mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      const mpq_class twice_frac = (x - mpq_class(q)) * 2;
      if (twice_frac > 1 || (twice_frac == 1 && mpz_odd_p(q.get_mpz_t()))) q += 1;
      return q;
    }
  }
  return q;
}

std::string format_fixed(const mpz_class& scaled, int places) {
  const bool negative = scaled < 0;
  std::string digits = mpz_class(abs(scaled)).get_str();
  if (digits.size() <= static_cast<size_t>(places)) {
    digits.insert(0, static_cast<size_t>(places) + 1 - digits.size(), '0');
  }
  if (places > 0) digits.insert(digits.size() - static_cast<size_t>(places), ".");
  return negative ? "-" + digits : digits;
}

int64_t floor_log10(const mpq_class& v) {
  if (v == 0) throw Error(ErrorCode::kDomain, "log10 of zero");
  const mpq_class a = abs(v);
  auto power = [](int64_t e) {
    return e >= 0 ? mpq_class(pow10(static_cast<unsigned long>(e)))
                  : mpq_class(mpz_class(1), pow10(static_cast<unsigned long>(-e)));
  };
  int64_t e = (bitlen(a.get_num()) - bitlen(a.get_den())) * 30103 / 100000;
  while (power(e) > a) --e;
  while (power(e + 1) <= a) ++e;
  return e;
}

std::string format_scientific(const mpq_class& v, int significant) {
  if (v == 0) return "0";
  int64_t e = floor_log10(v);
  const int64_t shift = significant - 1 - e;
  mpq_class scaled = abs(v);
  if (shift >= 0) {
    scaled *= mpq_class(pow10(static_cast<unsigned long>(shift)));
  } else {
    scaled /= mpq_class(pow10(static_cast<unsigned long>(-shift)));
  }
  mpz_class mantissa = round_scaled(scaled, 0, Rounding::kHalfEven);
  if (mantissa == pow10(static_cast<unsigned long>(significant))) {
    mantissa = pow10(static_cast<unsigned long>(significant - 1));
    ++e;
  }
  std::string digits = mantissa.get_str();
  std::string out = v < 0 ? "-" : "";
  out += digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  std::string exp = std::to_string(e < 0 ? -e : e);
  if (exp.size() < 2) exp.insert(0, "0");
  out += (e < 0 ? "e-" : "e+") + exp;
  return out;
}

}  // namespace cfm
