#pragma once

// Residuals eps_n = q_n alpha - p_n and the sine probes built from them:
// |sin(pi^3 q_n)| (pi^2 only), |sin(pi eps_n)| and |sin(eps_n)|. Since
// pi^3 q_n - pi p_n = pi eps_n, the first two enclose the same number.
// Asymptotic relations are replaced by the explicit constants of
// (2/pi)|z| <= |sin z| <= |z| on |z| <= pi/2, and by the classical bounds
// 1/(q_n + q_{n+1}) < |eps_n| < 1/q_{n+1}.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "constant.hpp"
#include "conv.hpp"
#include "kernel.hpp"
#include "measure.hpp"

namespace cfm {

struct ProbeRow {
  size_t display_n = 0;
  mpz_class p;
  mpz_class q;
  CertifiedReal epsilon;
  CertifiedReal abs_epsilon;
  std::optional<CertifiedReal> sin_direct;
  CertifiedReal sin_reduced;
  CertifiedReal sin_unscaled;
  bool bounds_checked = false;
  bool lower_bound_ok = false;
  bool upper_bound_ok = false;
  bool envelope_ok = false;
  std::optional<Decimal6> mu;
};

struct BoundFlags {
  bool upper_ok = false;
  bool lower_ok = false;
  std::optional<Decimal6> mu;
};

// q alpha - p with width <= 10^(-digits + ceil(log10 q)). Throws kUncertified
// if the enclosure straddles 0 without being exactly 0.
CertifiedReal residual(const ConstantSpec& alpha, const Convergent& conv, const PrecisionBudget& budget);

ProbeRow sine_probe(const ConstantSpec& alpha, const Convergent& conv, const PrecisionBudget& budget);

// Certifies (2/pi)|z| <= |sin z| <= |z| for every point of the enclosure.
// An enclosure straddling pi/2 is clipped to [.., pi/2]; one lying wholly
// beyond pi/2 throws kDomain.
bool envelope_check(const CertifiedReal& z);

// Flags for rows[i] against convs[i] and its successor convs[i + 1].
// Throws kOutOfRange if a successor is missing or rows and convs disagree.
std::vector<BoundFlags> bound_check(const ConstantSpec& alpha, std::span<const ProbeRow> rows,
                                    std::span<const Convergent> convs,
                                    const PrecisionBudget& budget = PrecisionBudget{60});

// Probe rows 1..rows with bound flags wherever a successor convergent exists.
std::vector<ProbeRow> probe_table(const ConstantSpec& alpha, size_t rows, const PrecisionBudget& budget);

}  // namespace cfm
