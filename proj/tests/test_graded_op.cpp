#include <doctest.h>

#include "nfc/error.hpp"
#include "support.hpp"

using namespace nfc;
using test::op;
using test::Q;

namespace {

XdMonomial mono(long a, long b, long c = 1) { return {a, b, CycloScalar(1, c)}; }

Rational coefficient_of(const XSeries& s, long n) {
  return n < static_cast<long>(s.coeffs.size()) ? s.coeffs[n].rational_part() : Rational(0);
}

}  // namespace

TEST_SUITE("diffop") {
  TEST_CASE("monomial products") {
    CHECK(mono_mul(mono(0, 1), mono(1, 0)) == op("x*d + 1"));
    CHECK(mono_mul(mono(0, 2), mono(2, 0)) == op("x^2*d^2 + 4*x*d + 2"));
    CHECK(mono_mul(mono(1, 1), mono(1, 1)) == op("x^2*d^2 + x*d"));
  }

  TEST_CASE("sums, products and commutators") {
    CHECK(commutator(op("d^2"), op("x")) == op("2*d"));
    CHECK(op_mul(op("d^2 + x"), GradedOp::identity(1)) == op("d^2 + x"));
    CHECK(commutator(op("d^2 + x"), op("d^3 + (3/2)*x*d + 3/4")) == op("-(3/2)*x"));
    test::Weyl q, p;
    q.add(0, 2, 1);
    q.add(1, 0, 1);
    p.add(0, 3, 1);
    p.add(1, 1, Q(3, 2));
    p.add(0, 0, Q(3, 4));
    CHECK(commutator(q.to_op(), p.to_op()) == (q * p).to_op() - (p * q).to_op());
    CHECK(op_add(op("d"), op("-d")).is_zero_in_window());
  }

  TEST_CASE("order, symbol, monic and normalized") {
    const GradedOp a = op("d^2 + x");
    CHECK(ord(a) == 2);
    CHECK(sigma(a) == op("d^2"));
    CHECK(is_monic(a));
    CHECK(is_normalized(a));
    CHECK(ord(op("x*d^2")) == 1);
    CHECK_FALSE(is_normalized(op("d^3 + x*d^2")));
    CHECK_THROWS_AS(ord(GradedOp(1)), UndefinedOrd);
  }

  TEST_CASE("action on polynomials") {
    const auto x3 = apply_to_poly(op("d^2"), monomial_series(1, 3));
    CHECK(coefficient_of(x3, 1) == 6);
    CHECK(coefficient_of(x3, 3) == 0);
    CHECK(coefficient_of(apply_to_poly(op("x*d"), monomial_series(1, 5)), 5) == 5);
    CHECK(coefficient_of(apply_to_poly(op("d*x*d"), monomial_series(1, 2)), 1) == 4);
  }

  TEST_CASE("iterated commutators") {
    CHECK(ad_pow(2, op("x"), 1) == op("2*d"));
    CHECK(ad_pow(3, op("d^4"), 2).is_zero_in_window());
    CHECK(ad_pow(2, op("x^2*d"), 2) == op("8*d^3"));
  }

  TEST_CASE("products agree with the Leibniz oracle") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 40; ++rep) {
      const auto a = test::random_weyl(rng, 4, 4), b = test::random_weyl(rng, 4, 4);
      CHECK(op_mul(a.to_op(), b.to_op()) == (a * b).to_op());
    }
  }

  TEST_CASE("associativity and action compatibility") {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 15; ++rep) {
      const GradedOp a = test::random_weyl(rng, 3, 3).to_op();
      const GradedOp b = test::random_weyl(rng, 3, 3).to_op();
      const GradedOp c = test::random_weyl(rng, 3, 3).to_op();
      CHECK(op_mul(op_mul(a, b), c) == op_mul(a, op_mul(b, c)));
      const XSeries p = monomial_series(1, 4);
      const XSeries lhs = apply_to_poly(op_mul(a, b), p);
      const XSeries rhs = apply_to_poly(a, apply_to_poly(b, p));
      for (long n = 0; n < 12; ++n) CHECK(coefficient_of(lhs, n) == coefficient_of(rhs, n));
    }
  }

  TEST_CASE("windows") {
    GradedOp s = op("1 + x");
    s.set_floor(-3);
    // Orders -1 .. -3 of (1 + x)^2 are exact, order -4 is not.
    const GradedOp sq = op_mul(s, s);
    CHECK(sq.coeff(2, 0) == CycloScalar(1, 1));
    CHECK_THROWS_AS(sq.coeff(5, 0), TruncationError);
    CHECK(agree_on_common_window(sq, op("1 + 2*x + x^2")));
  }

  TEST_CASE("action and coefficient forms are inverse") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> c(-3, 3);
    for (long t = -3; t <= 3; ++t) {
      std::vector<CycloScalar> coeffs;
      for (int i = 0; i < 6; ++i) coeffs.push_back(CycloScalar(1, c(rng)));
      const long m0 = GradedOp::first_xdeg(t);
      const auto act = coeffs_to_action(1, t, coeffs, m0 + 5 + std::max(t, 0L));
      const auto back = action_to_coeffs(1, t, act, m0 + 5);
      CHECK(back == coeffs);
    }
  }
}
