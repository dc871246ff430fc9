#ifndef HECKEQ_SPECTRA_HPP
#define HECKEQ_SPECTRA_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heckeq/character.hpp"

namespace heckeq::spectra {

// One newform's Hecke datum at a prime p coprime to the level: either the
// raw coefficient a_p (to be normalized against chi(p) and p^{(k-1)/2}) or
// an already-normalized eigenvalue lambda in [-2, 2].
struct EigenRecord {
  std::uint64_t level = 1;
  std::int64_t weight = 2;
  std::shared_ptr<const chars::DirichletCharacter> character;  // may be null
  std::string char_label;
  std::uint64_t p = 2;
  std::optional<std::complex<double>> ap;
  std::optional<double> lambda;
  std::optional<int> field_degree;  // [K_f : Q]
  std::string form_id;
};

inline constexpr double kDefaultImTol = 1e-8;
inline constexpr double kDefaultEdgeTol = 1e-8;

// lambda = Re( a_p * chi(p)^{-1/2} * p^{-(k-1)/2} ) with the fixed branch.
// Checks, in order: p coprime to the level (DomainError), imaginary residue
// below im_tol (DataError: usually a branch mismatch), real part within
// 2 + edge_tol (DataError: Ramanujan violation), then clamps to [-2, 2].
// When both lambda and a_p are present, lambda wins and a_p is cross-checked.
double normalize(const EigenRecord& rec, double im_tol = kDefaultImTol,
                 double edge_tol = kDefaultEdgeTol);

// Normalized eigenvalue multiset for one space (N, k, chi) at one prime p.
struct EigenMultiset {
  std::uint64_t level = 1;
  std::int64_t weight = 2;
  std::string char_label = "1.0";
  std::uint64_t p = 2;
  std::vector<double> values;
  bool complete = true;
  std::optional<std::size_t> dimension;  // explicit dim S_k^new when known

  // Divisor used by dimension-normalized moments: the explicit dimension if
  // supplied, otherwise the multiset size (complete datasets only).
  std::size_t effective_dim() const;
  std::string space_name() const;
};

// Sum over the multiset of X_n(lambda), by running the three-term
// recurrence vectorially. Empty multisets give n == 0 ? 0 : 0 (sum of none).
double sum_Xn(const EigenMultiset& ms, unsigned n);

// sum_Xn / dim. DomainError on an empty multiset (the exceptional case has
// dim S_k^new(N, k, chi) = 0 and no eigenvalues to average).
double empirical_moment(const EigenMultiset& ms, unsigned n);

// s(N,k,chi)_r for r <= r_max plus proportions of the total form count.
// Records without a field_degree stay in the total but are counted as
// missing, so proportions sum to at most 1.
struct DegreeHistogram {
  std::map<int, std::size_t> counts;
  std::map<int, double> proportions;
  std::size_t total = 0;
  std::size_t missing = 0;
};

DegreeHistogram degree_histogram(std::span<const EigenRecord> records,
                                 int r_max);

}  // namespace heckeq::spectra

#endif
