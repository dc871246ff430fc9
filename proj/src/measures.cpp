#include "heckeq/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "heckeq/chebyshev.hpp"
#include "heckeq/errors.hpp"
#include "heckeq/factorization.hpp"

namespace heckeq::cheb {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussRule {
  std::array<double, 16> x;  // nodes on [-1, 1]
  std::array<double, 16> w;
};

// 16-point Gauss-Legendre rule, nodes by Newton iteration on P_16.
const GaussRule& gl16() {
  static const GaussRule rule = [] {
    GaussRule r{};
    const int n = 16;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        double dx = p0 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.x[i] = -x;
      r.x[n - 1 - i] = x;
      r.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
      r.w[n - 1 - i] = r.w[i];
    }
    return r;
  }();
  return rule;
}

double gl16_panel(const std::function<double(double)>& f, double a, double b) {
  const auto& r = gl16();
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += r.w[i] * f(mid + half * r.x[i]);
  return s * half;
}

double composite(const std::function<double(double)>& f, double a, double b,
                 int panels) {
  double h = (b - a) / panels;
  double s = 0.0;
  for (int i = 0; i < panels; ++i) s += gl16_panel(f, a + i * h, a + (i + 1) * h);
  return s;
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double tol) {
  if (b <= a) return 0.0;
  int panels = 1;
  double prev = composite(f, a, b, panels);
  for (int level = 0; level < 14; ++level) {
    panels *= 2;
    double cur = composite(f, a, b, panels);
    if (std::abs(cur - prev) <= 0.5 * tol) return cur;
    prev = cur;
  }
  throw NumericError("quadrature did not converge to tol", prev);
}

}  // namespace

Measure Measure::mu_p(std::uint64_t p) {
  if (!nt::is_prime(p)) throw DomainError("Measure::mu_p: p must be prime");
  return Measure(p);
}

Measure Measure::mu_infinity() { return Measure(0); }

std::uint64_t Measure::p() const {
  if (infinite()) throw DomainError("Measure: mu_infinity has no prime");
  return p_;
}

double Measure::density(double x) const {
  if (std::abs(x) > 2.0)
    throw DomainError("Measure::density: x outside [-2, 2]");
  double semi = std::sqrt(std::max(0.0, 1.0 - 0.25 * x * x));
  if (infinite()) return semi / kPi;
  double p = static_cast<double>(p_);
  double c2 = p + 2.0 + 1.0 / p;  // (p^{1/2} + p^{-1/2})^2
  return (p + 1.0) / kPi * semi / (c2 - x * x);
}

double Measure::weight_theta(double theta) const {
  double s = std::sin(theta);
  if (infinite()) return 2.0 / kPi * s * s;
  double p = static_cast<double>(p_);
  double c2 = p + 2.0 + 1.0 / p;
  double x = 2.0 * std::cos(theta);
  return 2.0 * (p + 1.0) / kPi * s * s / (c2 - x * x);
}

double Measure::cdf(double x, double tol) const {
  if (std::abs(x) > 2.0) throw DomainError("Measure::cdf: x outside [-2, 2]");
  double t = std::acos(std::clamp(0.5 * x, -1.0, 1.0));
  double v = adaptive([this](double th) { return weight_theta(th); }, t, kPi,
                      tol);
  return std::clamp(v, 0.0, 1.0);
}

std::string Measure::name() const {
  return infinite() ? "mu_inf" : "mu_" + std::to_string(p_);
}

double integrate(const std::function<double(double)>& g, const Measure& mu,
                 double tol) {
  if (tol <= 0.0) throw DomainError("integrate: tol must be positive");
  auto f = [&](double theta) {
    return g(2.0 * std::cos(theta)) * mu.weight_theta(theta);
  };
  return adaptive(f, 0.0, kPi, tol);
}

Rat moment_closed_form(unsigned n, std::uint64_t p) {
  if (!nt::is_prime(p))
    throw DomainError("moment_closed_form: p must be prime");
  if (n % 2 != 0) return Rat(0);
  return Rat(BigInt(1), pow_big(p, n / 2));
}

double even_part_identity_check(std::uint64_t p, double x, unsigned K) {
  if (std::abs(x) >= 2.0)
    throw DomainError("even_part_identity_check: requires |x| < 2");
  if (!nt::is_prime(p))
    throw DomainError("even_part_identity_check: p must be prime");
  double pd = static_cast<double>(p);
  double sum = 0.0;
  for (unsigned k = 0; k <= K; k += 2)
    sum += cheb_eval(k, x) * 2.0 * std::pow(pd, -0.5 * k);
  double target = 2.0 * (pd + 1.0) / (pd + 2.0 + 1.0 / pd - x * x);
  return std::abs(sum - target);
}

CdfTable::CdfTable(const Measure& mu, double accuracy) : mu_(mu) {
  auto w = [&](double th) { return mu_.weight_theta(th); };
  int panels = 256;
  for (;; panels *= 2) {
    h_ = kPi / panels;
    cum_.assign(panels + 1, 0.0);
    for (int j = panels - 1; j >= 0; --j)
      cum_[j] = cum_[j + 1] + gl16_panel(w, j * h_, (j + 1) * h_);
    if (std::abs(cum_[0] - 1.0) <= accuracy) break;
    if (panels >= (1 << 15))
      throw NumericError("CdfTable: mass check failed", cum_[0]);
  }
}

double CdfTable::cdf(double x) const {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  double theta = std::acos(0.5 * x);
  auto j = static_cast<std::size_t>(theta / h_);
  if (j >= cum_.size() - 1) j = cum_.size() - 2;
  auto w = [this](double th) { return mu_.weight_theta(th); };
  double partial = gl16_panel(w, theta, (j + 1) * h_);
  return std::clamp(partial + cum_[j + 1], 0.0, 1.0);
}

double CdfTable::quantile(double u, double xtol) const {
  double lo = -2.0, hi = 2.0;
  while (hi - lo > xtol) {
    double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> sample(const Measure& mu, std::size_t count,
                           std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(count);
  if (count == 0) return out;
  CdfTable table(mu);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    // uniform in [0,1) built directly from the engine so draws are
    // bit-reproducible across standard libraries
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out.push_back(table.quantile(u));
  }
  return out;
}

}  // namespace heckeq::cheb
