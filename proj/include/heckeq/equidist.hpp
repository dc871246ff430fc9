#ifndef HECKEQ_EQUIDIST_HPP
#define HECKEQ_EQUIDIST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heckeq/rational.hpp"
#include "heckeq/spectra.hpp"

namespace heckeq::equidist {

// Two-sided Kolmogorov-Smirnov discrepancy of the multiset against mu_p:
// max over sorted samples of max(i/n - F(x_i), F(x_i) - (i-1)/n), F
// evaluated to tol. DomainError on empty input and on ms.p != p.
double ks_statistic(const spectra::EigenMultiset& ms, std::uint64_t p,
                    double tol = 1e-10);

struct MomentRow {
  unsigned n = 0;
  double empirical = 0.0;
  Rat predicted;  // [2 | n] p^{-n/2}, exact
  double abs_error = 0.0;
};

struct MomentDiagnostic {
  unsigned n_max = 0;
  std::vector<MomentRow> rows;  // n = 0 .. n_max
  double max_abs_error = 0.0;
};

// |empirical_moment(n) - [2|n] p^{-n/2}| for 0 <= n <= n_max.
MomentDiagnostic moment_test(const spectra::EigenMultiset& ms, unsigned n_max);

struct TraceRatioPrediction {
  Rat predicted;              // [2 | n] p^{-n/2}
  Rat main_term_numerator;    // main term of Tr T_{p^n}^new
  Rat main_term_denominator;  // main term of Tr T_1^new
};

// Finite-level main-term quotient behind the limit above. Pre: f | N, the
// space is not exceptional (else DomainError citing dim = 0), k >= 2.
TraceRatioPrediction trace_ratio_prediction(std::uint64_t N, std::uint64_t f,
                                            std::int64_t k, std::uint64_t p,
                                            unsigned n);

struct SpaceResult {
  std::uint64_t level = 1;
  std::int64_t weight = 2;
  std::string char_label;
  std::uint64_t p = 2;
  std::size_t count = 0;
  std::size_t dimension = 0;
  double ks = 0.0;
  MomentDiagnostic moments;
  std::optional<spectra::DegreeHistogram> degrees;
};

struct EquidistReport {
  std::uint64_t p = 2;
  unsigned n_max = 10;
  double ks_tol = 1e-10;
  std::string branch_convention;
  std::vector<SpaceResult> family;  // sorted by N + k ascending
  double first_ks = 0.0;
  double last_ks = 0.0;
  bool ks_strictly_decreasing = false;
};

// KS and moment diagnostics per space, family sorted by N + k. Every
// multiset must be nonempty and share p. Members are evaluated in parallel
// and merged in sorted order.
EquidistReport build_report(const std::vector<spectra::EigenMultiset>& family,
                            std::uint64_t p, unsigned n_max,
                            double tol = 1e-10);

nlohmann::json report_to_json(const EquidistReport& report);

// One "moment" row per (space, n) and one "ks" row per space; see README
// for the column list.
std::string report_to_csv(const EquidistReport& report);

}  // namespace heckeq::equidist

#endif
