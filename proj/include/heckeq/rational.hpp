#ifndef HECKEQ_RATIONAL_HPP
#define HECKEQ_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace heckeq {

// Exact arithmetic for the psi-family of multiplicative functions and the
// (k-1)/12 main-term scaling. cpp_rational keeps gcd(|num|, den) = 1 and
// den > 0 as invariants, and streams as "num/den" (plain "num" when den = 1).
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt pow_big(std::uint64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

inline std::string rat_str(const Rat& r) { return r.str(); }

inline double rat_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace heckeq

#endif
