#include <doctest.h>

#include "nfc/error.hpp"
#include "nfc/newton.hpp"
#include "nfc/schur.hpp"
#include "support.hpp"

using namespace nfc;
using test::op;
using test::Q;
using test::series;

namespace {

using Pts = std::vector<LatticePoint>;

// Sdeg_A(P_{p-i}) = i - 1 for i = 1..depth, the generic pattern.
HcpSeries generic_pattern(long p, long depth) {
  HcpSeries s = HcpSeries::d_pow(1, p);
  for (long i = 1; i <= depth; ++i) s.add(Hcp::monomial(1, i - 1, 0, p - i, CycloScalar(1, 1)));
  s.set_floor(p - depth);
  return s;
}

}  // namespace

TEST_SUITE("newton") {
  TEST_CASE("points of the Newton region") {
    CHECK(e_set(HcpSeries::d_pow(1, 5)).points == std::vector<NewtonPoint>{{0, 5, false}});
    const HcpSeries p = series("d^5 + G{r=3; f[2,0]=1} + G{r=3; f[1,1]=1}", 2);
    const NewtonData nd = e_set(p);
    CHECK(nd.points.size() == 3);
    CHECK(nd.find(1, 3)->contains_ai);
    CHECK_FALSE(nd.find(2, 3)->contains_ai);
    HcpSeries b = HcpSeries::d_pow(1, 5);
    b.add(Hcp::projector(1, 2, 2, CycloScalar(1, 1)));
    CHECK(e_set(b).points.size() == 1);
  }

  TEST_CASE("weights and top terms") {
    const HcpSeries p = series("d^5 + G{r=3; f[2,0]=1}");
    const WeightValue v = weight_of(p, Weight(1, 1));
    CHECK(v.exact());
    CHECK(v.value == 5);
    CHECK(top_term(p, Weight(1, 1)) == p);
    CHECK(weight_of(HcpSeries::d_pow(1, 5), Weight(3, 2)).value == 10);
    CHECK(top_term(p, Weight(2, 1)) == series("G{r=3; f[2,0]=1}"));
    CHECK(weight_of(HcpSeries(1), Weight(1)).kind == WeightValue::Kind::MinusInf);
    CHECK_THROWS_AS(Weight(-1, 1), PreconditionError);
  }

  TEST_CASE("windowed series under condition A have finite weight") {
    const HcpSeries nf = normal_form(op("d^3 + x"), op("d^2 + x"), 8);
    const WeightValue v = weight_of(nf, Weight(1, 1));
    CHECK(v.exact());
    CHECK(v.value == 3);
    CHECK_FALSE(weight_of(nf, Weight(2, 1)).exact());
  }

  TEST_CASE("up-edge") {
    CHECK(up_edge(series("d^5 + G{r=3; f[2,0]=1}")) == Pts{{0, 5}, {2, 3}});
    CHECK(up_edge(HcpSeries::d_pow(1, 5)) == Pts{{0, 5}});
    CHECK(up_edge(series("d^5 + G{r=4; f[1,0]=1} + G{r=3; f[1,0]=1}")) == Pts{{0, 5}, {1, 4}});
  }

  TEST_CASE("top line classification") {
    const TopLineClass r = classify_top_line(series("d^5 + G{r=3; f[2,0]=1}"));
    CHECK(r.kind == TopLineClass::Kind::Restriction);
    CHECK(r.sigma == 1);
    CHECK(r.vertices == Pts{{0, 5}, {2, 3}});
    CHECK(classify_top_line(HcpSeries::d_pow(1, 5)).kind == TopLineClass::Kind::SdegZero);

    const TopLineClass a = classify_top_line(generic_pattern(5, 8));
    CHECK(a.kind == TopLineClass::Kind::Asymptotic);
    CHECK(a.sigma == 1);
    CHECK(a.tentative);
  }

  TEST_CASE("filtrations") {
    const HcpSeries l = series("d^5 + G{r=3; f[2,0]=1}");
    const Weight w(1, 1);
    CHECK(filtration_H(l, 6, w).is_zero());
    CHECK(filtration_H(series("d^5 + G{r=3; f[2,0]=1} + G{r=3; f[1,0]=1}"), 5, w) == l);
    CHECK(filtration_H(l, -100, w) == l);
    CHECK(filtration_HS(l, 5, 0, w) == HcpSeries::d_pow(1, 5));
    CHECK(filtration_HS(l, 5, 2, w) == l);
    CHECK(filtration_HS(l, 5, 1, w) == HcpSeries::d_pow(1, 5));
  }

  TEST_CASE("convex hull") {
    CHECK(hull({{0, 0}, {2, 0}, {1, 1}, {0, 2}, {2, 2}, {1, 0}}) == Pts{{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    CHECK(hull({{1, 1}}) == Pts{{1, 1}});
  }

  TEST_CASE("up-edge points of true normal forms carry no A_i") {
    for (const auto& [ps, qs] : std::vector<std::pair<std::string, std::string>>{
             {"d^3 + x", "d^2 + x"}, {"d^5 + x^2*d", "d^2 + x"}, {"d^3 + x", "d^3 + x*d + x^2"}}) {
      const HcpSeries nf = normal_form(op(ps), op(qs), 8);
      const NewtonData nd = e_set(nf);
      for (const auto& [l, j] : up_edge(nd)) CHECK_FALSE(nd.find(l, j)->contains_ai);
      const TopLineClass c = classify_top_line(nf);
      for (const auto& [l, j] : c.vertices) CHECK_FALSE(nd.find(l, j)->contains_ai);
    }
  }

  TEST_CASE("svg rendering is deterministic") {
    const HcpSeries nf = normal_form(op("d^3 + x"), op("d^2 + x"), 8);
    const NewtonData nd = e_set(nf);
    const TopLineClass c = classify_top_line(nf);
    const std::string a = render_svg(nd, c), b = render_svg(e_set(nf), classify_top_line(nf));
    CHECK(a == b);
    CHECK(a.find("Sdeg_A") != std::string::npos);
    CHECK(a.find("ord") != std::string::npos);
    CHECK(a.find("red") != std::string::npos);
  }
}
