#include <doctest.h>

#include "nfc/error.hpp"
#include "support.hpp"

using namespace nfc;
using test::op;
using test::Q;

namespace {

CycloScalar one(int k = 1) { return CycloScalar(k, 1); }

Hcp gamma(int k, long l, long i, long r, const CycloScalar& c) { return Hcp::monomial(k, l, i, r, c); }

// sum_m c^m/m! x^m d^m, the expansion of exp(c x d) as a normal-ordered series.
GradedOp exp_series(long c, long cap) {
  GradedOp out(1);
  Rational fact = 1, pw = 1;
  for (long m = 0; m <= cap; ++m) {
    out.add_term(m, m, CycloScalar(1, pw / fact));
    pw *= c;
    fact *= m + 1;
  }
  return out;
}

HcpSeries random_series(std::mt19937_64& rng, int k) {
  std::uniform_int_distribution<long> l(0, 2), r(0, 3), i(0, k - 1), c(-3, 3);
  HcpSeries s(k);
  for (int t = 0; t < 3; ++t) {
    const long v = c(rng);
    if (v != 0) s.add(gamma(k, l(rng), i(rng), r(rng), CycloScalar(k, v) * CycloScalar::xi_pow(k, i(rng))));
  }
  return s;
}

}  // namespace

TEST_SUITE("gform") {
  TEST_CASE("expansion of G-form monomials") {
    CHECK(agree_on_common_window(expand_hcp(gamma(1, 1, 0, 0, one()), 10), op("x*d")));
    // xi = -1 for k = 2, so A_1 = exp(-2 x d).
    const GradedOp a1 = expand_hcp(gamma(2, 0, 1, 0, one(2)), 8);
    CHECK(agree_on_common_window(a1, exp_series(-2, 8).in_context(2)));
    CHECK(a1.coeff(3, 3) == CycloScalar(2, Q(-4, 3)));
  }

  TEST_CASE("projector B_2") {
    const GradedOp b2 = expand_hcp(Hcp::projector(1, 2, 0, one()), 8);
    CHECK(b2.coeff(1, 1) == one());
    CHECK(b2.coeff(2, 2) == CycloScalar(1, -1));
    CHECK(b2.coeff(3, 3) == CycloScalar(1, Q(1, 2)));
    for (long n = 0; n <= 6; ++n) {
      const XSeries img = apply_to_poly(b2, monomial_series(1, n));
      const Rational c = n < static_cast<long>(img.coeffs.size()) ? img.coeffs[n].rational_part() : Rational(0);
      CHECK(c == (n == 1 ? 1 : 0));
    }
  }

  TEST_CASE("eigenvalues") {
    CHECK(eigen_eval(eigen(gamma(1, 2, 0, 0, one())), 3) == CycloScalar(1, 9));
    for (long n = 0; n < 6; ++n)
      CHECK(eigen_eval(eigen(gamma(2, 0, 1, 0, one(2))), n) == CycloScalar(2, n % 2 ? -1 : 1));
    const EigenFunction b = eigen(Hcp::projector(1, 2, 0, one()));
    CHECK(eigen_eval(b, 1) == one());
    CHECK(eigen_eval(b, 2) == CycloScalar(1));
  }

  TEST_CASE("fitting recovers G-forms") {
    const Hcp h = fit_hcp(op("x*d"), 0, 2);
    CHECK(h == gamma(1, 1, 0, 0, one()));
    const Hcp g = gamma(2, 1, 1, 2, one(2));
    CHECK(fit_hcp(expand_hcp(g, 30), 2, 2) == g);
    // x^2 d maps x^n to n x^(n+1): as an order -1 component its shifted eigenvalue is quadratic.
    CHECK_THROWS_AS(fit_hcp(op("x^2*d"), -1, 1), NotHcpError);
    CHECK(fit_hcp(op("x^2*d"), -1, 2).r == -1);
  }

  TEST_CASE("fitting rejects components that are not HCPs") {
    // x^3 d^3 + x^5 d^5 has eigenvalues n^(3) + n^(5), degree 5 > dmax = 2.
    CHECK_THROWS_AS(fit_hcp(op("x^3*d^3 + x^5*d^5"), 0, 2), NotHcpError);
  }

  TEST_CASE("G-form products") {
    const Hcp g1d1 = gamma(1, 1, 0, 1, one());
    Hcp expect(1, 2);
    expect.add_gamma(2, 0, one());
    expect.add_gamma(1, 0, one());
    CHECK(hcp_mul(g1d1, g1d1) == expect);
    const Hcp h = gamma(3, 2, 1, 1, CycloScalar::xi_pow(3, 1));
    CHECK(hcp_mul(h, gamma(3, 0, 0, 0, one(3))) == h);
    CHECK(hcp_mul(gamma(2, 0, 1, 1, one(2)), gamma(2, 0, 1, 0, one(2))) == gamma(2, 0, 0, 1, CycloScalar(2, -1)));
  }

  TEST_CASE("series products agree with operator products") {
    std::mt19937_64 rng(4);
    for (int k = 1; k <= 3; ++k)
      for (int rep = 0; rep < 8; ++rep) {
        const HcpSeries a = random_series(rng, k), b = random_series(rng, k);
        const GradedOp lhs = to_graded(a * b, 14);
        const GradedOp rhs = op_mul(to_graded(a, 20), to_graded(b, 20)).truncated(kNoFloor, 14);
        CHECK(agree_on_common_window(lhs, rhs));
      }
  }

  TEST_CASE("stable degrees and condition A") {
    Hcp h(2, 1);
    h.add_gamma(3, 1, one(2));
    h.add_b(2, one(2));
    CHECK(sdeg(h).a == 3);
    CHECK(sdeg(h).b == 2);
    CHECK(contains_ai(h));

    CHECK(check_Aqk(HcpSeries::d_pow(1, 5), 0).holds);
    HcpSeries bad = HcpSeries::d_pow(1, 5);
    bad.add(gamma(1, 2, 0, 4, one()));
    const AqkReport r = check_Aqk(bad, 0);
    CHECK_FALSE(r.holds);
    CHECK(r.clause == 3);
    HcpSeries withb = HcpSeries::d_pow(1, 5);
    withb.add(Hcp::projector(1, 1, 3, one()));
    CHECK(check_Aqk(withb, 0).clause == 2);
  }

  TEST_CASE("text form") {
    CHECK(to_string(gamma(1, 2, 0, 3, one())) == "G{r=3; f[2,0]=1}");
    CHECK(to_string(HcpSeries::d_pow(1, 2)) == "G{r=2; f[0,0]=1}");
  }
}
