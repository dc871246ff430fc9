#ifndef HECKEQ_CHARACTER_HPP
#define HECKEQ_CHARACTER_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "heckeq/root_of_unity.hpp"

namespace heckeq::chars {

struct UnitGenerator {
  std::uint64_t g;
  std::uint64_t order;
  bool operator==(const UnitGenerator&) const = default;
};

// Cyclic decomposition of (Z/N)^*: 2-part first ({-1, 3} for 8 | N, {3} for
// N = 4), then one primitive root per odd prime power, CRT-lifted so each
// generator is 1 modulo the other prime-power blocks. Product of orders
// equals phi(N).
std::vector<UnitGenerator> unit_group_structure(std::uint64_t N);

// A Dirichlet character mod N, stored as images of the canonical generating
// set above. Values on all units are tabulated at construction, so a built
// character is immutable and safe for shared concurrent reads.
class DirichletCharacter {
 public:
  DirichletCharacter(std::uint64_t modulus, std::vector<RootOfUnity> images);

  static DirichletCharacter principal(std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<UnitGenerator>& generators() const { return gens_; }
  const std::vector<RootOfUnity>& images() const { return images_; }

  // nullopt encodes chi(a) = 0, i.e. gcd(a, N) > 1.
  std::optional<RootOfUnity> evaluate(std::int64_t a) const;

  // Least f | N through which chi factors.
  std::uint64_t conductor() const;

  // chi(-1) as +1 / -1.
  int parity() const;

  // Compact canonical label "<N>.<e1>_<e2>..." where e_i is the exponent of
  // the i-th image with respect to the full generator order.
  std::string label() const;

  nlohmann::json to_json() const;
  static DirichletCharacter from_json(const nlohmann::json& j);

  bool operator==(const DirichletCharacter& o) const {
    return modulus_ == o.modulus_ && images_ == o.images_;
  }

 private:
  std::uint64_t modulus_;
  std::vector<UnitGenerator> gens_;
  std::vector<RootOfUnity> images_;
  std::unordered_map<std::uint64_t, RootOfUnity> values_;
};

// Character mod N induced by chi_f (pre: chi_f.modulus() | N).
DirichletCharacter induce(const DirichletCharacter& chi_f, std::uint64_t N);

// Character mod f defining the same values on units (pre: conductor | f | N).
DirichletCharacter restrict_to(const DirichletCharacter& chi, std::uint64_t f);

// All phi(N) characters mod N (image exponents enumerated in mixed radix).
std::vector<DirichletCharacter> all_characters(std::uint64_t N);

// chi(p)^{-1/2} with the branch fixed across the whole artifact:
// for z = exp(2*pi*i*t), t in [0,1), the value is exp(-i*pi*t).
std::complex<double> principal_inv_sqrt(const RootOfUnity& z);
std::complex<double> principal_inv_sqrt(const std::optional<RootOfUnity>& z);

// The matching square root exp(+i*pi*t), used when synthesising raw a_p data.
std::complex<double> principal_sqrt(const RootOfUnity& z);

// Human-readable tag recorded in datasets and reports.
inline const char* kBranchConvention =
    "chi(p)^(-1/2) = exp(-i*pi*t) for chi(p) = exp(2*pi*i*t), t in [0,1)";

}  // namespace heckeq::chars

#endif
