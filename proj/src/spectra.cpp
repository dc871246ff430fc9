#include "heckeq/spectra.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "heckeq/errors.hpp"

namespace heckeq::spectra {

namespace {

double normalize_from_ap(const EigenRecord& rec, double im_tol,
                         double edge_tol) {
  auto chi_p = rec.character->evaluate(static_cast<std::int64_t>(rec.p));
  std::complex<double> root = chars::principal_inv_sqrt(chi_p);
  double scale =
      std::pow(static_cast<double>(rec.p), -0.5 * (rec.weight - 1));
  std::complex<double> lam = *rec.ap * root * scale;
  if (std::abs(lam.imag()) > im_tol)
    throw DataError("normalize: |Im lambda| = " + std::to_string(lam.imag()) +
                    " exceeds im_tol for form " + rec.form_id +
                    " (branch-convention mismatch?)");
  if (std::abs(lam.real()) > 2.0 + edge_tol)
    throw DataError("normalize: |lambda| = " + std::to_string(lam.real()) +
                    " > 2 for form " + rec.form_id +
                    " (Ramanujan violation: corrupted data or wrong branch)");
  return std::clamp(lam.real(), -2.0, 2.0);
}

}  // namespace

double normalize(const EigenRecord& rec, double im_tol, double edge_tol) {
  if (rec.level % rec.p == 0)
    throw DomainError("normalize: p = " + std::to_string(rec.p) +
                      " divides the level " + std::to_string(rec.level));
  if (rec.lambda) {
    double lam = *rec.lambda;
    if (std::abs(lam) > 2.0 + edge_tol)
      throw DataError("normalize: |lambda| = " + std::to_string(lam) +
                      " > 2 for form " + rec.form_id +
                      " (Ramanujan violation)");
    lam = std::clamp(lam, -2.0, 2.0);
    if (rec.ap && rec.character) {
      double from_ap = normalize_from_ap(rec, im_tol, edge_tol);
      if (std::abs(from_ap - lam) > std::max(im_tol, 1e-8))
        throw DataError("normalize: lambda and a_p disagree for form " +
                        rec.form_id + " (" + std::to_string(lam) + " vs " +
                        std::to_string(from_ap) + ")");
    }
    return lam;
  }
  if (!rec.ap)
    throw DataError("normalize: record " + rec.form_id +
                    " carries neither lambda nor a_p");
  if (!rec.character)
    throw DataError("normalize: raw a_p for form " + rec.form_id +
                    " needs a serialized character to evaluate chi(p)");
  return normalize_from_ap(rec, im_tol, edge_tol);
}

std::size_t EigenMultiset::effective_dim() const {
  if (dimension) return *dimension;
  if (!complete)
    throw DomainError("multiset " + space_name() +
                      " is incomplete and no dimension was supplied");
  return values.size();
}

std::string EigenMultiset::space_name() const {
  return "(N=" + std::to_string(level) + ", k=" + std::to_string(weight) +
         ", chi=" + char_label + ", p=" + std::to_string(p) + ")";
}

double sum_Xn(const EigenMultiset& ms, unsigned n) {
  const auto& v = ms.values;
  if (v.empty()) return 0.0;
  if (n == 0) return static_cast<double>(v.size());

  std::vector<double> prev(v.size(), 1.0);  // X_0
  std::vector<double> cur(v);               // X_1
  for (unsigned k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      double next = v[i] * cur[i] - prev[i];
      prev[i] = cur[i];
      cur[i] = next;
    }
  }
  // compensated sum: sizes reach 1e4 and the acceptance tolerance is tight
  double s = 0.0, c = 0.0;
  for (double x : cur) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

double empirical_moment(const EigenMultiset& ms, unsigned n) {
  if (ms.values.empty())
    throw DomainError(
        "empirical_moment: empty multiset for " + ms.space_name() +
        "; dim S_k^new(N,k,chi) = 0 spaces have no eigenvalues to average");
  return sum_Xn(ms, n) / static_cast<double>(ms.effective_dim());
}

DegreeHistogram degree_histogram(std::span<const EigenRecord> records,
                                 int r_max) {
  DegreeHistogram h;
  h.total = records.size();
  for (const auto& rec : records) {
    if (!rec.field_degree) {
      ++h.missing;
      continue;
    }
    if (*rec.field_degree <= r_max) ++h.counts[*rec.field_degree];
  }
  if (h.total > 0) {
    for (const auto& [r, c] : h.counts)
      h.proportions[r] =
          static_cast<double>(c) / static_cast<double>(h.total);
  }
  return h;
}

}  // namespace heckeq::spectra
