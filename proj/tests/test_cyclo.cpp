#include <doctest.h>

#include "nfc/error.hpp"
#include "support.hpp"

using namespace nfc;
using test::Q;

namespace {

CycloScalar xi(int k) { return CycloScalar::xi_pow(k, 1); }
CycloScalar num(int k, long n) { return CycloScalar(k, Rational(n)); }

CycloScalar random_scalar(std::mt19937_64& rng, int k) {
  std::uniform_int_distribution<long> c(-5, 5);
  std::vector<Rational> poly(k + 1);
  for (auto& x : poly) x = Q(c(rng), 1 + (c(rng) + 5) % 3);
  return CycloScalar(k, poly);
}

}  // namespace

TEST_SUITE("exact-arith") {
  TEST_CASE("field operations on small contexts") {
    CHECK(xi(2) * xi(2) == num(2, 1));
    for (int k = 1; k <= 6; ++k) {
      const CycloScalar a = xi(k) * Q(3, 7) + num(k, 2);
      CHECK(a + CycloScalar(k) == a);
    }
    CHECK((num(4, 1) + xi(4)) * (num(4, 1) - xi(4)) == num(4, 2));
  }

  TEST_CASE("inverse") {
    CHECK(num(1, 1).inv() == num(1, 1));
    CHECK(xi(3).inv() == CycloScalar::xi_pow(3, 2));
    const CycloScalar a = num(4, 1) + xi(4);
    const CycloScalar expect = (num(4, 1) - xi(4)) / Rational(2);
    CHECK(a.inv() == expect);
    CHECK(a * a.inv() == num(4, 1));
    CHECK_THROWS_AS(CycloScalar(5).inv(), DivisionByZero);
  }

  TEST_CASE("powers of xi") {
    CHECK(CycloScalar::xi_pow(5, 5) == num(5, 1));
    CHECK(CycloScalar::xi_pow(2, 1) == num(2, -1));
    CHECK(CycloScalar::xi_pow(3, -1) == CycloScalar::xi_pow(3, 2));
    CHECK(CycloScalar::xi_pow(6, 13) == xi(6));
  }

  TEST_CASE("mixed contexts are rejected") {
    CHECK_THROWS_AS(xi(3) + xi(4), ContextError);
    CHECK_THROWS_AS(xi(3) * xi(2), ContextError);
  }

  TEST_CASE("cyclotomic polynomials") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(4) == 2);
    CHECK(euler_phi(12) == 4);
    // Phi_12 = x^4 - x^2 + 1
    const std::vector<Rational> phi12{1, 0, -1, 0, 1};
    CHECK(cyclotomic_polynomial(12) == phi12);
  }

  TEST_CASE("numeric evaluation agrees with exact products") {
    std::mt19937_64 rng(11);
    for (int k = 1; k <= 8; ++k)
      for (int rep = 0; rep < 20; ++rep) {
        const CycloScalar a = random_scalar(rng, k), b = random_scalar(rng, k);
        CHECK(std::abs(test::numeric(a * b) - test::numeric(a) * test::numeric(b)) < 1e-6);
        CHECK(std::abs(test::numeric(a + b) - test::numeric(a) - test::numeric(b)) < 1e-9);
        if (!a.is_zero()) CHECK(a * a.inv() == num(k, 1));
      }
  }

  TEST_CASE("ring axioms") {
    std::mt19937_64 rng(5);
    for (int k = 1; k <= 6; ++k)
      for (int rep = 0; rep < 10; ++rep) {
        const CycloScalar a = random_scalar(rng, k), b = random_scalar(rng, k), c = random_scalar(rng, k);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == CycloScalar(k));
      }
  }

  TEST_CASE("text round trip") {
    std::mt19937_64 rng(3);
    for (int k = 1; k <= 7; ++k) {
      const CycloScalar a = random_scalar(rng, k);
      CHECK(CycloScalar::parse(k, a.to_string()) == a);
    }
    CHECK(CycloScalar::parse(3, "1/2*xi^2 - xi") == xi(3) * xi(3) * Q(1, 2) - xi(3));
  }

  TEST_CASE("integer helpers") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(3, 5) == 0);
    CHECK(falling_factorial(5, 2) == 20);
    CHECK(falling_factorial(2, 3) == 0);
    CHECK(parse_rational("-6/4") == Q(-3, 2));
  }
}
