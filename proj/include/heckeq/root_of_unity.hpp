#ifndef HECKEQ_ROOT_OF_UNITY_HPP
#define HECKEQ_ROOT_OF_UNITY_HPP

#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>

namespace heckeq::chars {

// exp(2*pi*i * num/den) in canonical form: den >= 1, 0 <= num < den,
// gcd(num, den) = 1 (num = 0 forces den = 1).
struct RootOfUnity {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static RootOfUnity make(std::uint64_t a, std::uint64_t m) {
    a %= m;
    std::uint64_t g = std::gcd(a, m);
    return RootOfUnity{a / g, m / g};
  }
  static RootOfUnity one() { return RootOfUnity{0, 1}; }

  bool is_one() const { return num == 0; }
  // order of the root in the unit circle group
  std::uint64_t order() const { return den; }

  RootOfUnity operator*(const RootOfUnity& o) const {
    std::uint64_t m = std::lcm(den, o.den);
    using u128 = unsigned __int128;
    std::uint64_t a = static_cast<std::uint64_t>(
        (u128(num) * (m / den) + u128(o.num) * (m / o.den)) % m);
    return make(a, m);
  }

  RootOfUnity pow(std::int64_t e) const {
    using u128 = unsigned __int128;
    std::int64_t r = e % static_cast<std::int64_t>(den);
    if (r < 0) r += static_cast<std::int64_t>(den);
    return make(static_cast<std::uint64_t>(u128(num) * r % den), den);
  }

  RootOfUnity inverse() const {
    return num == 0 ? one() : RootOfUnity{den - num, den};
  }

  // t in [0, 1) with value = exp(2*pi*i*t)
  double angle() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::complex<double> value() const {
    double t = 2.0 * std::numbers::pi * angle();
    return {std::cos(t), std::sin(t)};
  }

  std::string str() const {
    if (num == 0) return "1";
    return "e(" + std::to_string(num) + "/" + std::to_string(den) + ")";
  }

  bool operator==(const RootOfUnity&) const = default;
};

}  // namespace heckeq::chars

#endif
