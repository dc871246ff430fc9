#include "heckeq/character.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "heckeq/errors.hpp"
#include "heckeq/factorization.hpp"

namespace heckeq::chars {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  // extended Euclid; pre: gcd(a, m) = 1
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m),
               nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<u64>(t);
}

u64 smallest_primitive_root(u64 p) {
  // p odd prime
  auto fac = nt::factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [q, e] : fac.factors) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

// Generator of (Z/p^e)^* for odd p: a primitive root mod p that stays
// primitive mod p^2 works for every exponent.
u64 primitive_root_prime_power(u64 p, int e) {
  u64 g = smallest_primitive_root(p);
  if (e == 1) return g;
  u64 p2 = p * p;
  if (powmod(g, p - 1, p2) == 1) g += p;
  return g;
}

u64 crt_lift(u64 local, u64 pe, u64 N) {
  // x = local (mod pe), x = 1 (mod N/pe)
  u64 M = N / pe;
  if (M == 1) return local % N;
  u64 diff = (local % pe + pe - 1 % pe) % pe;
  u64 t = mulmod(diff, invmod(M % pe, pe), pe);
  return (1 + mulmod(M, t, N)) % N;
}

}  // namespace

std::vector<UnitGenerator> unit_group_structure(u64 N) {
  if (N == 0) throw DomainError("unit_group_structure: N must be positive");
  std::vector<UnitGenerator> gens;
  if (N <= 2) return gens;
  auto fac = nt::factorize(N);
  for (const auto& [p, e] : fac.factors) {
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;
      if (e == 2) {
        gens.push_back({crt_lift(3, pe, N), 2});
      } else {
        gens.push_back({crt_lift(pe - 1, pe, N), 2});
        gens.push_back({crt_lift(3, pe, N), pe / 4});
      }
    } else {
      u64 g = primitive_root_prime_power(p, e);
      gens.push_back({crt_lift(g % pe, pe, N), pe / p * (p - 1)});
    }
  }
  return gens;
}

DirichletCharacter::DirichletCharacter(u64 modulus,
                                       std::vector<RootOfUnity> images)
    : modulus_(modulus),
      gens_(unit_group_structure(modulus)),
      images_(std::move(images)) {
  if (modulus_ == 0)
    throw DomainError("DirichletCharacter: modulus must be positive");
  if (images_.size() != gens_.size())
    throw DomainError("DirichletCharacter: expected " +
                      std::to_string(gens_.size()) + " generator images, got " +
                      std::to_string(images_.size()));
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].order % images_[i].order() != 0)
      throw DomainError(
          "DirichletCharacter: image order does not divide generator order");
  }

  // Tabulate chi on all units with an odometer over generator exponents;
  // each increment is one modular multiplication.
  std::size_t t = gens_.size();
  std::vector<u64> exps(t, 0);
  u64 residue = 1 % modulus_;
  RootOfUnity value = RootOfUnity::one();
  values_.reserve(64);
  while (true) {
    values_.emplace(residue, value);
    std::size_t i = 0;
    for (; i < t; ++i) {
      residue = mulmod(residue, gens_[i].g, modulus_);
      value = value * images_[i];
      if (++exps[i] < gens_[i].order) break;
      exps[i] = 0;  // g^order = 1 and image^order = 1, so products reset too
    }
    if (i == t) break;
  }
}

DirichletCharacter DirichletCharacter::principal(u64 modulus) {
  std::vector<RootOfUnity> ones(unit_group_structure(modulus).size(),
                                RootOfUnity::one());
  return DirichletCharacter(modulus, std::move(ones));
}

std::optional<RootOfUnity> DirichletCharacter::evaluate(std::int64_t a) const {
  std::int64_t m = static_cast<std::int64_t>(modulus_);
  u64 r = static_cast<u64>(((a % m) + m) % m);
  if (modulus_ == 1) return RootOfUnity::one();
  if (std::gcd(r, modulus_) != 1) return std::nullopt;
  return values_.at(r);
}

u64 DirichletCharacter::conductor() const {
  auto divs = nt::divisors(nt::factorize(modulus_));
  for (u64 f : divs) {
    // f is an induced modulus iff chi(a) = 1 for every unit a = 1 (mod f)
    bool ok = true;
    for (u64 a = 1 % modulus_; a < modulus_; a += f) {
      if (std::gcd(a, modulus_) != 1) continue;
      if (!values_.at(a).is_one()) {
        ok = false;
        break;
      }
      if (modulus_ == 1) break;
    }
    if (ok) return std::max<u64>(f, 1);
  }
  return modulus_;  // unreachable: f = N always qualifies
}

int DirichletCharacter::parity() const {
  auto v = evaluate(-1);
  return v->is_one() ? 1 : -1;
}

std::string DirichletCharacter::label() const {
  std::string out = std::to_string(modulus_) + ".";
  if (gens_.empty()) return out + "0";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    // exponent with respect to the full generator order
    u64 e = images_[i].num * (gens_[i].order / images_[i].den);
    if (i) out += "_";
    out += std::to_string(e);
  }
  return out;
}

nlohmann::json DirichletCharacter::to_json() const {
  nlohmann::json imgs = nlohmann::json::array();
  for (std::size_t i = 0; i < gens_.size(); ++i)
    imgs.push_back({gens_[i].g, images_[i].num, images_[i].den});
  return nlohmann::json{{"modulus", modulus_}, {"images", imgs}};
}

DirichletCharacter DirichletCharacter::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("modulus") || !j.contains("images"))
    throw DataError("character: expected {\"modulus\", \"images\"}");
  u64 N = j.at("modulus").get<u64>();
  auto gens = unit_group_structure(N);
  const auto& imgs = j.at("images");
  if (!imgs.is_array() || imgs.size() != gens.size())
    throw DataError("character mod " + std::to_string(N) + ": expected " +
                    std::to_string(gens.size()) + " generator images");
  std::vector<RootOfUnity> images;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& e = imgs[i];
    if (!e.is_array() || e.size() != 3)
      throw DataError("character: image entries must be [g, a, m]");
    if (e[0].get<u64>() != gens[i].g)
      throw DataError("character mod " + std::to_string(N) + ": generator " +
                      std::to_string(e[0].get<u64>()) +
                      " does not match canonical generator " +
                      std::to_string(gens[i].g));
    u64 m = e[2].get<u64>();
    if (m == 0) throw DataError("character: image order must be positive");
    images.push_back(RootOfUnity::make(e[1].get<u64>(), m));
  }
  return DirichletCharacter(N, std::move(images));
}

DirichletCharacter induce(const DirichletCharacter& chi_f, u64 N) {
  u64 f = chi_f.modulus();
  if (f == 0 || N % f != 0)
    throw DomainError("induce: modulus " + std::to_string(f) +
                      " does not divide " + std::to_string(N));
  auto gens = unit_group_structure(N);
  std::vector<RootOfUnity> images;
  images.reserve(gens.size());
  for (const auto& gen : gens) {
    auto v = chi_f.evaluate(static_cast<std::int64_t>(gen.g % f));
    // gen is a unit mod N, hence a unit mod f
    images.push_back(*v);
  }
  return DirichletCharacter(N, std::move(images));
}

DirichletCharacter restrict_to(const DirichletCharacter& chi, u64 f) {
  u64 N = chi.modulus();
  if (f == 0 || N % f != 0)
    throw DomainError("restrict_to: f must divide the modulus");
  if (chi.conductor() != 0 && f % chi.conductor() != 0)
    throw DomainError("restrict_to: f is smaller than the conductor");
  auto gens_f = unit_group_structure(f);
  std::vector<RootOfUnity> images;
  images.reserve(gens_f.size());
  for (const auto& gen : gens_f) {
    // lift g to a unit mod N congruent to g mod f
    u64 g = gen.g;
    u64 lift = g;
    while (std::gcd(lift, N) != 1) lift += f;
    images.push_back(*chi.evaluate(static_cast<std::int64_t>(lift)));
  }
  return DirichletCharacter(f, std::move(images));
}

std::vector<DirichletCharacter> all_characters(u64 N) {
  auto gens = unit_group_structure(N);
  std::vector<DirichletCharacter> out;
  std::vector<u64> exps(gens.size(), 0);
  while (true) {
    std::vector<RootOfUnity> images;
    images.reserve(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
      images.push_back(RootOfUnity::make(exps[i], gens[i].order));
    out.emplace_back(N, std::move(images));
    std::size_t i = 0;
    for (; i < gens.size(); ++i) {
      if (++exps[i] < gens[i].order) break;
      exps[i] = 0;
    }
    if (i == gens.size()) break;
  }
  return out;
}

std::complex<double> principal_inv_sqrt(const RootOfUnity& z) {
  double t = z.angle();
  return {std::cos(std::numbers::pi * t), -std::sin(std::numbers::pi * t)};
}

std::complex<double> principal_inv_sqrt(const std::optional<RootOfUnity>& z) {
  if (!z)
    throw DomainError(
        "principal_inv_sqrt: chi(p) = 0 (p divides the modulus)");
  return principal_inv_sqrt(*z);
}

std::complex<double> principal_sqrt(const RootOfUnity& z) {
  double t = z.angle();
  return {std::cos(std::numbers::pi * t), std::sin(std::numbers::pi * t)};
}

}  // namespace heckeq::chars
