#include <doctest.h>

#include "nfc/powerform.hpp"
#include "support.hpp"

using namespace nfc;
using test::op;

namespace {

StdFormExpansion single(std::vector<long> derivs, long dpow, const Rational& c) {
  StdFormExpansion e;
  e.add({std::move(derivs), dpow}, c);
  return e;
}

}  // namespace

TEST_SUITE("powerform") {
  TEST_CASE("g values") {
    for (long t = 0; t < 5; ++t) CHECK(g_value({t}) == 1);
    CHECK(g_value({0, 0, 0, 0}) == 1);
    CHECK(g_value({0, 1}) == 2);
    CHECK(g_value({1, 0}) == 1);
  }

  TEST_CASE("blocks") {
    for (long k = 1; k <= 6; ++k) CHECK(t_block(1, 0, k) == single({0}, 0, k));
    for (long k = 2; k <= 6; ++k)
      for (long s = 1; s <= k; ++s) CHECK(t_block(s, s - 1, k) == single({s - 1}, 0, binomial(k, s)));
    StdFormExpansion t313;
    t313.add({{0, 1}, 0}, 2);
    t313.add({{1, 0}, 0}, 1);
    CHECK(t_block(3, 1, 3) == t313);
  }

  TEST_CASE("small powers") {
    CHECK(to_string(expand_power(1)) == "D + L(0)");
    CHECK(to_string(expand_power(2)) == "D^2 + 2*L(0)*D + L(0,0) + L(1)");
    CHECK(to_string(expand_power(3)) ==
          "D^3 + 3*L(0)*D^2 + 3*L(0,0)*D + 3*L(1)*D + L(0,0,0) + 2*L(0,1) + L(1,0) + L(2)");
  }

  TEST_CASE("closed form matches the rewriting oracle") {
    for (long k = 1; k <= 8; ++k) CHECK(expand_power(k) == expand_power_oracle(k));
  }

  TEST_CASE("specialization") {
    CHECK(specialize(expand_power(2), op("d"), op("x")) == op("d^2 + 2*x*d + 1 + x^2"));
    CHECK(specialize(expand_power(4), op("d"), GradedOp(1)) == op("d^4"));
    CHECK(specialize(expand_power(3), op("d^2"), op("x")) == op_pow(op("d^2 + x"), 3));
    const HcpSeries d = HcpSeries::d_pow(1, 1);
    const HcpSeries l = test::series("G{r=2; f[1,0]=2} + G{r=0; f[2,0]=1}");
    CHECK(specialize(expand_power(3), d, l) == series_pow(d + l, 3));
  }

  TEST_CASE("grading and positivity") {
    for (long k = 1; k <= 8; ++k)
      for (const auto& [w, c] : expand_power(k).terms) {
        CHECK(w.multiple_index() + w.pdeg() + w.dpow == k);
        CHECK(c > 0);
      }
  }
}
