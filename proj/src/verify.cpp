#include "verify.hpp"

#include <algorithm>

#include "cf.hpp"
#include "conv.hpp"
#include "probe.hpp"

namespace cfm {
namespace {

std::string row_label(size_t internal_n) { return "row " + std::to_string(internal_n + 1); }

CheckResult check_engines(const PartialQuotients& pq, size_t upto) {
  CheckResult r{"cross-engine equivalence", true, {}};
  const auto iter = convergents_iter(pq, upto);
  const auto matrix = convergents_matrix(pq, upto);
  // The tree engine rebuilds from scratch per index, so long runs are sampled.
  const size_t stride = std::max<size_t>(1, (upto + 1) / 512);
  for (size_t n = 0; n <= upto && r.passed; ++n) {
    const bool sample = n % stride == 0 || n == upto;
    const Convergent fast = sample ? convergents_fast(pq, n) : iter[n];
    if (iter[n] != matrix[n] || iter[n] != fast) {
      r.passed = false;
      r.counterexample = row_label(n) + ": iter " + iter[n].p.get_str() + "/" + iter[n].q.get_str() +
                         ", matrix " + matrix[n].p.get_str() + "/" + matrix[n].q.get_str() +
                         ", fast " + fast.p.get_str() + "/" + fast.q.get_str();
    }
  }
  return r;
}

CheckResult check_determinants(const std::vector<Convergent>& seq) {
  CheckResult r{"determinant identity", true, {}};
  for (size_t i = 1; i < seq.size(); ++i) {
    if (!check_determinant(std::span(seq).subspan(i - 1, 2))) {
      r.passed = false;
      r.counterexample = row_label(i) + ": p_n q_(n-1) - p_(n-1) q_n = " +
                         mpz_class(seq[i].p * seq[i - 1].q - seq[i - 1].p * seq[i].q).get_str();
      break;
    }
  }
  return r;
}

CheckResult check_telescoping(const PartialQuotients& pq, const std::vector<Convergent>& seq) {
  CheckResult r{"telescoping identity", true, {}};
  for (size_t n = 1; n < seq.size(); ++n) {
    const mpq_class sum = telescoping_sum(pq, n);
    if (sum != ratio(seq[n].p, seq[n].q)) {
      r.passed = false;
      r.counterexample = row_label(n) + ": sum = " + sum.get_str();
      break;
    }
  }
  return r;
}

CheckResult check_coprime(const std::vector<Convergent>& seq) {
  CheckResult r{"coprime convergents", true, {}};
  for (const Convergent& c : seq) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.p.get_mpz_t(), c.q.get_mpz_t());
    if (g != 1) {
      r.passed = false;
      r.counterexample = row_label(c.n) + ": gcd = " + g.get_str();
      break;
    }
  }
  return r;
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport verify(const ConstantSpec& spec, size_t terms, const PrecisionBudget& budget) {
  VerifyReport report;
  const PartialQuotients pq = expand(spec, terms + 1, budget);
  if (pq.terminated) {
    report.notes.push_back("terminating expansion: " + std::to_string(pq.size()) + " terms");
  }
  if (spec.is_surd()) {
    const SurdExpansion exact = surd_expand(spec, pq.size());
    report.notes.push_back("period: " + std::to_string(exact.period.length) +
                           " (preperiod " + std::to_string(exact.period.preperiod) + ")");
    CheckResult agree{"surd exact/interval agreement", true, {}};
    for (size_t i = 0; i < pq.size(); ++i) {
      if (pq.terms[i] != exact.quotients.terms[i]) {
        agree.passed = false;
        agree.counterexample = "a_" + std::to_string(i) + ": interval " + pq.terms[i].get_str() +
                               ", exact " + exact.quotients.terms[i].get_str();
        break;
      }
    }
    report.checks.push_back(agree);
  }

  // One extra quotient supplies the successor for the residual bounds.
  const size_t rows = std::min(terms, pq.size());
  const std::vector<Convergent> all = convergents_iter(pq, pq.size() - 1);
  const std::vector<Convergent> seq(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(rows));
  report.checks.push_back(check_determinants(seq));
  report.checks.push_back(check_telescoping(pq, seq));
  report.checks.push_back(check_coprime(seq));
  report.checks.push_back(check_engines(pq, rows - 1));

  CheckResult bounds{"residual bounds 1/(q_n+q_(n+1)) < |eps_n| < 1/q_(n+1)", true, {}};
  CheckResult envelope{"sine envelope (2/pi)|z| <= |sin z| <= |z|", true, {}};
  // For a terminating expansion the last two rows meet the bounds with
  // equality or vanish, so they are left out.
  size_t last = pq.terminated ? std::min(rows, all.size() >= 2 ? all.size() - 2 : 0) : rows;
  last = std::min(last, all.size() - 1);
  size_t bound_rows = 0;
  for (size_t n = 2; n < last; ++n) {
    const ProbeRow row = sine_probe(spec, all[n], budget);
    const auto flags = bound_check(spec, std::span(&row, 1), std::span(all).subspan(n, 2), budget);
    ++bound_rows;
    if (bounds.passed && !(flags[0].upper_ok && flags[0].lower_ok)) {
      bounds.passed = false;
      bounds.counterexample = row_label(n) + (flags[0].upper_ok ? ": lower bound" : ": upper bound");
    }
    if (envelope.passed && !row.envelope_ok) {
      envelope.passed = false;
      envelope.counterexample = row_label(n);
    }
  }
  report.checks.push_back(bounds);
  report.checks.push_back(envelope);
  report.notes.push_back("residual rows checked: " + std::to_string(bound_rows));
  return report;
}

}  // namespace cfm
