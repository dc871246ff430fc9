#include "heckeq/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>

#include "heckeq/errors.hpp"
#include "heckeq/measures.hpp"
#include "heckeq/numtheory.hpp"

namespace heckeq::equidist {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double ks_statistic(const spectra::EigenMultiset& ms, std::uint64_t p,
                    double tol) {
  if (ms.values.empty())
    throw DomainError("ks_statistic: empty multiset for " + ms.space_name());
  if (ms.p != p)
    throw DomainError("ks_statistic: multiset prime " + std::to_string(ms.p) +
                      " does not match requested p = " + std::to_string(p));
  std::vector<double> sorted(ms.values);
  std::sort(sorted.begin(), sorted.end());
  cheb::CdfTable table(cheb::Measure::mu_p(p), std::min(tol, 1e-12));
  double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double f = table.cdf(sorted[i]);
    double hi = (static_cast<double>(i) + 1.0) / n - f;
    double lo = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

MomentDiagnostic moment_test(const spectra::EigenMultiset& ms,
                             unsigned n_max) {
  if (n_max < 1) throw DomainError("moment_test: n_max must be >= 1");
  MomentDiagnostic diag;
  diag.n_max = n_max;
  for (unsigned n = 0; n <= n_max; ++n) {
    MomentRow row;
    row.n = n;
    row.empirical = spectra::empirical_moment(ms, n);
    row.predicted = nt::predicted_moment(n, ms.p);
    row.abs_error = std::abs(row.empirical - rat_double(row.predicted));
    diag.max_abs_error = std::max(diag.max_abs_error, row.abs_error);
    diag.rows.push_back(std::move(row));
  }
  return diag;
}

TraceRatioPrediction trace_ratio_prediction(std::uint64_t N, std::uint64_t f,
                                            std::int64_t k, std::uint64_t p,
                                            unsigned n) {
  auto facN = nt::factorize(N);
  auto facF = nt::factorize(f);
  if (!nt::divides(facF, facN))
    throw DomainError("trace_ratio_prediction: f does not divide N");
  if (nt::is_exceptional(facN, facF))
    throw DomainError(
        "trace_ratio_prediction: exceptional case 2 | f, 2 || N/f has "
        "dim S_k^new(N,k,chi) = 0");
  if (k < 2) throw DomainError("trace_ratio_prediction: k must be >= 2");
  TraceRatioPrediction out;
  out.predicted = nt::predicted_moment(n, p);
  out.main_term_numerator = nt::main_term_trace_prime_power(p, n, facN, facF, k);
  out.main_term_denominator =
      nt::main_term_trace_prime_power(p, 0, facN, facF, k);
  return out;
}

EquidistReport build_report(const std::vector<spectra::EigenMultiset>& family,
                            std::uint64_t p, unsigned n_max, double tol) {
  if (family.empty()) throw DomainError("build_report: empty family");
  for (const auto& ms : family) {
    if (ms.p != p)
      throw DomainError("build_report: mixed primes (" + ms.space_name() +
                        " vs p = " + std::to_string(p) + ")");
    if (ms.values.empty())
      throw DomainError("build_report: empty multiset for " +
                        ms.space_name());
  }

  std::vector<const spectra::EigenMultiset*> order;
  for (const auto& ms : family) order.push_back(&ms);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    auto ka = a->level + static_cast<std::uint64_t>(a->weight);
    auto kb = b->level + static_cast<std::uint64_t>(b->weight);
    return std::tie(ka, a->level, a->weight, a->char_label) <
           std::tie(kb, b->level, b->weight, b->char_label);
  });

  EquidistReport report;
  report.p = p;
  report.n_max = n_max;
  report.ks_tol = tol;
  report.branch_convention = chars::kBranchConvention;

  // members are independent; evaluate them concurrently, merge in order
  std::vector<std::future<SpaceResult>> jobs;
  jobs.reserve(order.size());
  for (const auto* ms : order) {
    jobs.push_back(std::async(std::launch::async, [ms, p, n_max, tol] {
      SpaceResult r;
      r.level = ms->level;
      r.weight = ms->weight;
      r.char_label = ms->char_label;
      r.p = ms->p;
      r.count = ms->values.size();
      r.dimension = ms->effective_dim();
      r.ks = ks_statistic(*ms, p, tol);
      r.moments = moment_test(*ms, n_max);
      return r;
    }));
  }
  for (auto& job : jobs) report.family.push_back(job.get());

  report.first_ks = report.family.front().ks;
  report.last_ks = report.family.back().ks;
  report.ks_strictly_decreasing = report.family.size() > 1;
  for (std::size_t i = 1; i < report.family.size(); ++i)
    if (report.family[i].ks >= report.family[i - 1].ks)
      report.ks_strictly_decreasing = false;
  return report;
}

nlohmann::json report_to_json(const EquidistReport& report) {
  nlohmann::json fam = nlohmann::json::array();
  for (const auto& s : report.family) {
    nlohmann::json moments = nlohmann::json::array();
    for (const auto& row : s.moments.rows) {
      moments.push_back({{"n", row.n},
                         {"empirical", row.empirical},
                         {"predicted", rat_str(row.predicted)},
                         {"predicted_value", rat_double(row.predicted)},
                         {"abs_error", row.abs_error}});
    }
    nlohmann::json j{{"level", s.level},
                     {"weight", s.weight},
                     {"char", s.char_label},
                     {"p", s.p},
                     {"count", s.count},
                     {"dimension", s.dimension},
                     {"ks", s.ks},
                     {"moments", moments},
                     {"max_abs_error", s.moments.max_abs_error}};
    if (s.degrees) {
      nlohmann::json counts = nlohmann::json::object();
      nlohmann::json props = nlohmann::json::object();
      for (const auto& [r, c] : s.degrees->counts)
        counts[std::to_string(r)] = c;
      for (const auto& [r, v] : s.degrees->proportions)
        props[std::to_string(r)] = v;
      j["degree_histogram"] = {{"counts", counts},
                               {"proportions", props},
                               {"total", s.degrees->total},
                               {"missing", s.degrees->missing}};
    }
    fam.push_back(std::move(j));
  }
  return nlohmann::json{
      {"schema", 1},
      {"p", report.p},
      {"n_max", report.n_max},
      {"ks_tol", report.ks_tol},
      {"branch_convention", report.branch_convention},
      {"family", fam},
      {"trend",
       {{"first_ks", report.first_ks},
        {"last_ks", report.last_ks},
        {"strictly_decreasing", report.ks_strictly_decreasing}}}};
}

std::string report_to_csv(const EquidistReport& report) {
  std::string out =
      "kind,level,weight,char,p,n,empirical_moment,predicted_moment,"
      "abs_error,ks,dimension\n";
  for (const auto& s : report.family) {
    std::string space = std::to_string(s.level) + "," +
                        std::to_string(s.weight) + "," + s.char_label + "," +
                        std::to_string(s.p);
    for (const auto& row : s.moments.rows) {
      out += "moment," + space + "," + std::to_string(row.n) + "," +
             fmt17(row.empirical) + "," + rat_str(row.predicted) + "," +
             fmt17(row.abs_error) + ",,\n";
    }
    out += "ks," + space + ",,,,," + fmt17(s.ks) + "," +
           std::to_string(s.dimension) + "\n";
  }
  return out;
}

}  // namespace heckeq::equidist
