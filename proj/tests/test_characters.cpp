#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "heckeq/character.hpp"
#include "heckeq/errors.hpp"
#include "heckeq/factorization.hpp"
#include "oracles.hpp"

using namespace heckeq;
using chars::DirichletCharacter;
using chars::RootOfUnity;

namespace {

DirichletCharacter chi5_i() {
  // mod 5: generator 2 of order 4, image i
  return DirichletCharacter(5, {RootOfUnity::make(1, 4)});
}

}  // namespace

TEST_CASE("root of unity arithmetic") {
  auto i = RootOfUnity::make(1, 4);
  CHECK((i * i) == RootOfUnity::make(1, 2));
  CHECK(i.pow(4) == RootOfUnity::one());
  CHECK(i.pow(-1) == RootOfUnity::make(3, 4));
  CHECK((i * i.inverse()) == RootOfUnity::one());
  CHECK(RootOfUnity::make(6, 8) == RootOfUnity::make(3, 4));
  CHECK(RootOfUnity::make(1, 2).value().real() == doctest::Approx(-1.0));
}

TEST_CASE("unit group structure examples") {
  CHECK(chars::unit_group_structure(1).empty());
  CHECK(chars::unit_group_structure(2).empty());

  auto g5 = chars::unit_group_structure(5);
  REQUIRE(g5.size() == 1);
  CHECK(g5[0] == chars::UnitGenerator{2, 4});

  auto g8 = chars::unit_group_structure(8);
  REQUIRE(g8.size() == 2);
  CHECK(g8[0] == chars::UnitGenerator{7, 2});
  CHECK(g8[1] == chars::UnitGenerator{3, 2});
}

TEST_CASE("unit group generators decompose (Z/N)^* for N <= 200") {
  for (std::uint64_t N = 1; N <= 200; ++N) {
    auto gens = chars::unit_group_structure(N);
    std::uint64_t phi = nt::euler_phi(nt::factorize(N));
    std::uint64_t prod = 1;
    for (const auto& gen : gens) {
      CHECK(std::gcd(gen.g, N) == 1);
      // claimed order is the true order
      std::uint64_t r = gen.g % N, ord = 1;
      while (r != 1 % N) {
        r = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(r) * gen.g) % N);
        ++ord;
      }
      CHECK(ord == gen.order);
      prod *= gen.order;
    }
    CHECK(prod == phi);

    // the exponent map is a bijection onto the units
    std::set<std::uint64_t> seen;
    std::vector<std::uint64_t> exps(gens.size(), 0);
    while (true) {
      std::uint64_t r = 1 % N;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        std::uint64_t ge = 1 % N;
        for (std::uint64_t e = 0; e < exps[i]; ++e)
          ge = static_cast<std::uint64_t>(
              (static_cast<unsigned __int128>(ge) * gens[i].g) % N);
        r = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(r) * ge) % N);
      }
      CHECK(seen.insert(r).second);
      std::size_t i = 0;
      for (; i < gens.size(); ++i) {
        if (++exps[i] < gens[i].order) break;
        exps[i] = 0;
      }
      if (i == gens.size()) break;
    }
    CHECK(seen.size() == phi);
  }
}

TEST_CASE("evaluate examples") {
  auto triv1 = DirichletCharacter::principal(1);
  CHECK(triv1.evaluate(7) == RootOfUnity::one());

  auto chi = chi5_i();
  CHECK(chi.evaluate(2) == RootOfUnity::make(1, 4));
  CHECK(chi.evaluate(4) == RootOfUnity::make(1, 2));  // chi(2)^2 = -1

  auto chi6 = DirichletCharacter::principal(6);
  CHECK_FALSE(chi6.evaluate(3).has_value());
  CHECK(chi6.evaluate(5).has_value());
}

TEST_CASE("evaluate is completely multiplicative on units") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    std::uint64_t N = rng() % 1000 + 1;
    auto family = chars::all_characters(N);
    const auto& chi = family[rng() % family.size()];
    for (int s = 0; s < 40; ++s) {
      std::uint64_t a = rng() % N, b = rng() % N;
      if (N == 1) a = b = 0;
      auto va = chi.evaluate(static_cast<std::int64_t>(a));
      auto vb = chi.evaluate(static_cast<std::int64_t>(b));
      auto vab = chi.evaluate(static_cast<std::int64_t>(a * b));
      if (va && vb) {
        REQUIRE(vab.has_value());
        CHECK(*vab == (*va) * (*vb));
      } else {
        CHECK_FALSE(vab.has_value());
      }
    }
  }
}

TEST_CASE("conductor examples") {
  CHECK(DirichletCharacter::principal(12).conductor() == 1);
  CHECK(chi5_i().conductor() == 5);

  // chi mod 10 induced from the nontrivial quadratic character mod 5
  auto chi5 = DirichletCharacter(5, {RootOfUnity::make(1, 2)});
  auto chi10 = chars::induce(chi5, 10);
  CHECK(chi10.conductor() == 5);
}

TEST_CASE("parity examples") {
  CHECK(DirichletCharacter::principal(7).parity() == 1);
  CHECK(chi5_i().parity() == -1);

  // mod 8 with chi(7) = -1, chi(3) = 1
  auto chi8 = DirichletCharacter(
      8, {RootOfUnity::make(1, 2), RootOfUnity::one()});
  CHECK(chi8.parity() == -1);
}

TEST_CASE("conductor and parity match brute-force oracles, N <= 100") {
  for (std::uint64_t N = 1; N <= 100; ++N) {
    for (const auto& chi : chars::all_characters(N)) {
      auto values = oracles::value_table(chi);
      CHECK(chi.conductor() == oracles::conductor_by_definition(N, values));
      CHECK(chi.parity() == oracles::parity_by_search(chi));
      CHECK(chi.parity() * chi.parity() == 1);
      CHECK(N % chi.conductor() == 0);
    }
  }
}

TEST_CASE("restrict to conductor and induce back re-evaluates identically") {
  for (std::uint64_t N = 1; N <= 200; ++N) {
    for (const auto& chi : chars::all_characters(N)) {
      auto prim = chars::restrict_to(chi, chi.conductor());
      CHECK(prim.conductor() == chi.conductor());
      auto back = chars::induce(prim, N);
      for (std::uint64_t a = 0; a < std::max<std::uint64_t>(N, 1); ++a)
        CHECK(chi.evaluate(static_cast<std::int64_t>(a)) ==
              back.evaluate(static_cast<std::int64_t>(a)));
    }
  }
}

TEST_CASE("principal_inv_sqrt branch") {
  auto close = [](std::complex<double> a, std::complex<double> b) {
    return std::abs(a.real() - b.real()) <= 1e-14 &&
           std::abs(a.imag() - b.imag()) <= 1e-14;
  };
  CHECK(close(chars::principal_inv_sqrt(RootOfUnity::one()), {1.0, 0.0}));
  CHECK(close(chars::principal_inv_sqrt(RootOfUnity::make(1, 2)),
              {0.0, -1.0}));  // e^{i pi} -> -i
  CHECK(close(chars::principal_inv_sqrt(RootOfUnity::make(1, 4)),
              {std::cos(std::numbers::pi / 4), -std::sin(std::numbers::pi / 4)}));

  CHECK_THROWS_AS(chars::principal_inv_sqrt(std::optional<RootOfUnity>{}),
                  DomainError);
}

TEST_CASE("inverse square root squares back to the inverse, orders <= 100") {
  for (std::uint64_t m = 1; m <= 100; ++m) {
    for (std::uint64_t a = 0; a < m; ++a) {
      auto z = RootOfUnity::make(a, m);
      auto r = chars::principal_inv_sqrt(z);
      auto v = r * r * z.value();
      CHECK(std::abs(v.real() - 1.0) <= 1e-14);
      CHECK(std::abs(v.imag()) <= 1e-14);
    }
  }
}

TEST_CASE("serialization round trip and canonical labels") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 50; ++t) {
    std::uint64_t N = rng() % 300 + 1;
    auto family = chars::all_characters(N);
    const auto& chi = family[rng() % family.size()];
    auto back = DirichletCharacter::from_json(chi.to_json());
    CHECK(back == chi);
    CHECK(back.label() == chi.label());
  }
  CHECK(DirichletCharacter::principal(5).label() == "5.0");
  CHECK(chi5_i().label() == "5.1");

  // generator mismatch is rejected
  auto j = chi5_i().to_json();
  j["images"][0][0] = 3;
  CHECK_THROWS_AS(DirichletCharacter::from_json(j), DataError);
}

TEST_CASE("image order must divide generator order") {
  CHECK_THROWS_AS(DirichletCharacter(5, {RootOfUnity::make(1, 3)}),
                  DomainError);
  CHECK_THROWS_AS(DirichletCharacter(5, {}), DomainError);
}
