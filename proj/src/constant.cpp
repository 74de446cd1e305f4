#include "constant.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <vector>

namespace cfm {
namespace {

constexpr int64_t kMaxLiteralExponent = 1'000'000;

int64_t parse_int64(std::string_view text, std::string_view what) {
  int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(ErrorCode::kParse, "invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

mpz_class parse_mpz(std::string_view text, std::string_view what) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  bool ok = !s.empty();
  for (size_t i = 0; ok && i < s.size(); ++i) {
    ok = (std::isdigit(static_cast<unsigned char>(s[i])) != 0) || (i == 0 && s[i] == '-' && s.size() > 1);
  }
  if (!ok) throw Error(ErrorCode::kParse, "invalid " + std::string(what) + ": '" + std::string(text) + "'");
  return mpz_class(s, 10);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

bool digits_only(std::string_view s) {
  for (char ch : s) {
    if (std::isdigit(static_cast<unsigned char>(ch)) == 0) return false;
  }
  return true;
}

mpq_class parse_decimal(std::string_view text) {
  auto fail = [&] { throw Error(ErrorCode::kParse, "not a finite decimal: '" + std::string(text) + "'"); };
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  int64_t exponent = 0;
  if (const size_t e = rest.find_first_of("eE"); e != std::string_view::npos) {
    exponent = parse_int64(rest.substr(e + 1), "decimal exponent");
    rest = rest.substr(0, e);
    if (exponent > kMaxLiteralExponent || exponent < -kMaxLiteralExponent) fail();
  }
  std::string_view int_part = rest;
  std::string_view frac_part;
  if (const size_t dot = rest.find('.'); dot != std::string_view::npos) {
    int_part = rest.substr(0, dot);
    frac_part = rest.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) || !digits_only(int_part) || !digits_only(frac_part)) fail();
  std::string digits = std::string(int_part) + std::string(frac_part);
  if (digits.empty()) fail();
  mpq_class value{mpz_class(digits, 10)};
  exponent -= static_cast<int64_t>(frac_part.size());
  if (exponent >= 0) {
    value *= mpq_class(pow10(static_cast<unsigned long>(exponent)));
  } else {
    value /= mpq_class(pow10(static_cast<unsigned long>(-exponent)));
  }
  value.canonicalize();
  return negative ? mpq_class(-value) : value;
}

CertifiedReal eval_at_bits(const ConstantSpec& spec, int64_t bits) {
  struct Visitor {
    int64_t bits;

    CertifiedReal operator()(const PiPower& p) const {
      const int64_t magnitude = p.t < 0 ? -p.t : p.t;
      const CertifiedReal pi = pi_enclosure(bits + 2 * magnitude + 16);
      CertifiedReal power = pow_enclosure(pi, p.t);
      if (p.s > 1) power = root_enclosure(power, static_cast<unsigned long>(p.s), bits + 8);
      return power.rounded_outward(bits + 8);
    }
    CertifiedReal operator()(const Surd& s) const {
      const auto extra = static_cast<int64_t>(mpz_sizeinbase(s.b.get_mpz_t(), 2));
      const CertifiedReal root = sqrt_enclosure(s.d, bits + extra + 8);
      const CertifiedReal numerator = root * mpq_class(s.b) + CertifiedReal(mpq_class(s.a));
      return numerator * ratio(1, s.c);
    }
    CertifiedReal operator()(const DecimalLiteral& lit) const { return CertifiedReal(lit.value); }
  };
  return std::visit(Visitor{bits}, spec.kind());
}

}  // namespace

ConstantSpec ConstantSpec::pi_power(int64_t t, int64_t s) {
  if (s < 1) throw Error(ErrorCode::kInvalidArgument, "pi power denominator must be >= 1");
  if (t == 0) throw Error(ErrorCode::kInvalidArgument, "pi^0 is rational");
  const int64_t g = std::gcd(t, s);
  return ConstantSpec(PiPower{t / g, s / g});
}

ConstantSpec ConstantSpec::surd(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                                const mpz_class& c) {
  if (c == 0) throw Error(ErrorCode::kInvalidArgument, "surd denominator c must be nonzero");
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "surd radicand d must be positive");
  if (b == 0 || mpz_perfect_square_p(d.get_mpz_t()) != 0) {
    throw Error(ErrorCode::kDomain, "surd is rational: d is a perfect square or b is zero");
  }
  return ConstantSpec(Surd{a, b, d, c});
}

ConstantSpec ConstantSpec::decimal_literal(std::string_view text) {
  return ConstantSpec(DecimalLiteral{std::string(text), parse_decimal(text)});
}

ConstantSpec ConstantSpec::parse(std::string_view text) {
  if (text == "pi") return pi_power(1);
  if (text == "pi2") return pi_power(2);
  if (text == "pi3") return pi_power(3);
  if (text == "golden") return surd(1, 1, 5, 2);
  if (text.starts_with("pi^")) {
    const std::string_view exponent = text.substr(3);
    const size_t slash = exponent.find('/');
    const int64_t t = parse_int64(exponent.substr(0, slash), "pi exponent");
    const int64_t s = slash == std::string_view::npos ? 1 : parse_int64(exponent.substr(slash + 1), "pi exponent");
    return pi_power(t, s);
  }
  if (text.starts_with("sqrt:")) return surd(0, 1, parse_mpz(text.substr(5), "radicand"), 1);
  if (text.starts_with("surd:")) {
    const auto parts = split(text.substr(5), ',');
    if (parts.size() != 4) throw Error(ErrorCode::kParse, "surd expects a,b,d,c");
    return surd(parse_mpz(parts[0], "surd a"), parse_mpz(parts[1], "surd b"),
                parse_mpz(parts[2], "surd d"), parse_mpz(parts[3], "surd c"));
  }
  if (text.starts_with("lit:")) return decimal_literal(text.substr(4));
  throw Error(ErrorCode::kParse, "unknown constant '" + std::string(text) + "'");
}

bool ConstantSpec::is_pi_squared() const {
  const auto* p = std::get_if<PiPower>(&kind_);
  return p != nullptr && p->t == 2 && p->s == 1;
}

std::string ConstantSpec::name() const {
  struct Visitor {
    std::string operator()(const PiPower& p) const {
      if (p.s == 1 && p.t == 1) return "pi";
      if (p.s == 1 && (p.t == 2 || p.t == 3)) return "pi" + std::to_string(p.t);
      std::string out = "pi^" + std::to_string(p.t);
      if (p.s != 1) out += "/" + std::to_string(p.s);
      return out;
    }
    std::string operator()(const Surd& s) const {
      if (s.a == 1 && s.b == 1 && s.d == 5 && s.c == 2) return "golden";
      if (s.a == 0 && s.b == 1 && s.c == 1) return "sqrt:" + s.d.get_str();
      return "surd:" + s.a.get_str() + "," + s.b.get_str() + "," + s.d.get_str() + "," + s.c.get_str();
    }
    std::string operator()(const DecimalLiteral& lit) const { return "lit:" + lit.text; }
  };
  return std::visit(Visitor{}, kind_);
}

CertifiedReal eval_constant(const ConstantSpec& spec, const PrecisionBudget& budget) {
  budget.validate();
  const int64_t max_bits = bits_for_digits(budget.max_digits);
  int64_t bits = bits_for_digits(budget.working_digits());
  for (;;) {
    CertifiedReal value = eval_at_bits(spec, bits);
    if (value.width_within_digits(budget.digits)) return value;
    if (bits >= max_bits) break;
    bits = std::min(max_bits, bits + bits / 2 + 64);
  }
  throw Error(ErrorCode::kPrecisionCap,
              "could not enclose " + spec.name() + " to " + std::to_string(budget.digits) +
                  " digits within the precision cap");
}

}  // namespace cfm
