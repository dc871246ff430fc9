#ifndef HECKEQ_MEASURES_HPP
#define HECKEQ_MEASURES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "heckeq/rational.hpp"

namespace heckeq::cheb {

// The measure family on [-2, 2]:
//   mu_p   = (p+1)/pi * (1 - x^2/4)^{1/2} / ((p^{1/2} + p^{-1/2})^2 - x^2) dx
//   mu_inf = (1/pi) (1 - x^2/4)^{1/2} dx
class Measure {
 public:
  static Measure mu_p(std::uint64_t p);
  static Measure mu_infinity();

  bool infinite() const { return p_ == 0; }
  std::uint64_t p() const;

  // Pointwise density; throws DomainError for |x| > 2.
  double density(double x) const;

  // Density after the substitution x = 2 cos(theta): the factor multiplying
  // d(theta) on [0, pi]. Smooth (trigonometric) for every member.
  double weight_theta(double theta) const;

  // Integral of the density over [-2, x], by substitution quadrature.
  double cdf(double x, double tol = 1e-10) const;

  std::string name() const;

 private:
  explicit Measure(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;  // 0 marks mu_infinity
};

// Quadrature of int_{-2}^{2} g(x) dmu(x) via x = 2 cos(theta) and composite
// Gauss-Legendre, panels doubled until successive estimates differ by at
// most tol/2. Throws NumericError (carrying the last estimate) if the
// refinement budget runs out.
double integrate(const std::function<double(double)>& g, const Measure& mu,
                 double tol = 1e-12);

// Exact moment of X_n against mu_p: [2 | n] p^{-n/2}.
Rat moment_closed_form(unsigned n, std::uint64_t p);

// Absolute defect of the truncated even-part identity at x:
//   | sum_{k <= K, 2|k} X_k(x) 2 p^{-k/2}  -  2 mu_p(x) / mu_inf(x) |
// Pre: |x| < 2 (the density quotient has a removable form at the endpoints
// that this routine does not handle).
double even_part_identity_check(std::uint64_t p, double x, unsigned K);

// Panel-cached CDF with inverse lookup, for samplers and discrepancy scans
// that evaluate the same measure many times. Construction certifies the
// total mass to `accuracy`.
class CdfTable {
 public:
  explicit CdfTable(const Measure& mu, double accuracy = 1e-12);

  double cdf(double x) const;
  // Inverse CDF by bisection on [-2, 2] to xtol.
  double quantile(double u, double xtol = 1e-10) const;

 private:
  Measure mu_;
  std::vector<double> cum_;  // cum_[j] = integral over [theta_j, pi]
  double h_;                 // panel width pi / panels
};

// count i.i.d. draws from mu by inverse-CDF bisection (to 1e-10 in x),
// deterministic for a fixed seed across platforms.
std::vector<double> sample(const Measure& mu, std::size_t count,
                           std::uint64_t seed);

}  // namespace heckeq::cheb

#endif
