#include <doctest.h>

#include "nfc/error.hpp"
#include "nfc/parser.hpp"
#include "support.hpp"

using namespace nfc;
using test::op;
using test::Q;

namespace {

const std::vector<std::string> kCorpus = {
    "d",
    "x",
    "3/4",
    "-2",
    "d^2 + x",
    "d^3 + (3/2)*x*d + 3/4",
    "d^3 + x*d^2 + x",
    "x*d - d*x",
    "(d + x)^3",
    "(d^2 + x)*(d^3 + x)",
    "-(x*d)^2",
    "d*x*d",
    "x^2*d^5 - 7/3*x*d + 1",
    "(1/2)^2*d",
    "-d^2 - -x",
    "2*(d - 1)*(d + 1)",
    "((d))",
    "d^0 + x^0",
    "x*(x*(x*d))",
    "d^2 + x^2 - x*d^2",
    "G{r=3; f[2,0]=1}",
    "G{r=0; f[1,0]=-1/2; f[0,0]=3}",
    "G{r=2; f[1,1]=xi}",
    "G{r=1; f[0,1]=1 - xi^2; g[2]=1}",
    "d^5 + G{r=3; f[2,0]=1} + G{r=3; f[1,1]=1}",
    "xi*d + xi^2*x",
    "(xi - 1)*d^2",
    "G{r=4; f[0,0]=1}*G{r=1; f[1,0]=2}",
    "3*G{r=0; f[2,0]=1}^2",
    "d^3*x - x*d^3",
    "-(d + x)*(d - x)",
    "1/3*x^4 + 2/5*x^3*d",
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("print and reparse give the same tree") {
    CHECK(kCorpus.size() >= 30);
    for (const auto& src : kCorpus) {
      CAPTURE(src);
      const ExprPtr e = parse_expr(src, 3);
      const std::string printed = print_expr(e);
      CAPTURE(printed);
      CHECK(same_tree(parse_expr(printed, 3), e));
      CHECK(print_expr(parse_expr(printed, 3)) == printed);
    }
  }

  TEST_CASE("operators") {
    CHECK(op("d^2 + x") == GradedOp::d_pow(1, 2) + GradedOp::x(1));
    GradedOp airy = GradedOp::d_pow(1, 3);
    airy.add_term(1, 1, CycloScalar(1, Q(3, 2)));
    airy.add_term(0, 0, CycloScalar(1, Q(3, 4)));
    CHECK(op("d^3 + (3/2)*x*d + 3/4") == airy);
    CHECK(op("G{r=3; f[2,0]=1}") == op("x*d^4 + x^2*d^5"));
    CHECK(op("(d + x)^2") == op("d^2 + 2*x*d + 1 + x^2"));
  }

  TEST_CASE("G-literals") {
    const ExprPtr e = parse_expr("G{r=3; f[2,0]=1}", 1);
    REQUIRE(e->kind == Expr::Kind::Gform);
    CHECK(e->hcp == Hcp::monomial(1, 2, 0, 3, CycloScalar(1, 1)));
    const HcpSeries s = evaluate_series(parse_expr("d^2 + G{r=1; f[1,1]=xi}", 3), 3);
    CHECK(s.components().size() == 2);
    CHECK_THROWS_AS(evaluate_series(parse_expr("d + x", 1), 1), PreconditionError);
  }

  TEST_CASE("bivariate polynomials") {
    const BivarPoly f = parse_bivar("X^2 - Y^3 - 1/16");
    CHECK(to_string(f) == "X^2 - Y^3 - 1/16");
    CHECK(parse_bivar("X*Y - Y*X").is_zero());
    CHECK_THROWS_AS(parse_bivar("X + Z"), ParseError);
  }

  TEST_CASE("errors carry positions") {
    try {
      parse_expr("d^2 +\n  * x", 1);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 3);
      CHECK(e.exit_code() == 2);
    }
    CHECK_THROWS_AS(parse_expr("xi*d", 0), ParseError);
    CHECK_THROWS_AS(parse_expr("1/0", 1), ParseError);
    CHECK_THROWS_AS(parse_expr("d^", 1), ParseError);
    CHECK_THROWS_AS(parse_expr("G{r=2; h[1,0]=1}", 1), ParseError);
    CHECK_THROWS_AS(parse_expr("(d + x", 1), ParseError);
    CHECK_THROWS_AS(parse_expr("y", 1), ParseError);
  }
}
