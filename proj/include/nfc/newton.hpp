#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nfc/gform.hpp"

namespace nfc {

struct NewtonPoint {
  long l = 0;  // Sdeg position (power of Gamma)
  long j = 0;  // order
  bool contains_ai = false;
  friend bool operator==(const NewtonPoint&, const NewtonPoint&) = default;
};

struct NewtonData {
  int k = 1;
  long floor = kNoFloor;  // window of the underlying series
  std::vector<NewtonPoint> points;  // by order descending, then l ascending

  const NewtonPoint* find(long l, long j) const;
  long top_order() const;  // kNoFloor when empty
};

NewtonData e_set(const HcpSeries& p);

struct Weight {
  Rational sigma = 0;
  Rational rho = 1;
  Weight() = default;
  Weight(Rational s, Rational r = 1);
  Weight normalized() const;  // (sigma / rho, 1)
  Rational operator()(long l, long j) const { return sigma * l + rho * j; }
};

struct WeightValue {
  enum class Kind { Value, MinusInf, LowerBound };
  Kind kind = Kind::MinusInf;
  Rational value = 0;  // the sup, or the best lower bound from the window
  bool exact() const { return kind != Kind::LowerBound; }
  friend bool operator==(const WeightValue&, const WeightValue&) = default;
};

WeightValue weight_of(const HcpSeries& p, const Weight& w);
HcpSeries top_term(const HcpSeries& p, const Weight& w);

using LatticePoint = std::pair<long, long>;  // (l, j)

std::vector<LatticePoint> up_edge(const HcpSeries& p);
std::vector<LatticePoint> up_edge(const NewtonData& nd);

struct TopLineClass {
  enum class Kind { SdegZero, Restriction, Asymptotic, Undetermined };
  Kind kind = Kind::Undetermined;
  Rational sigma = 0;         // restriction slope, or the asymptotic estimate
  Rational window_sigma = 0;  // min (p - j) / l over window points with l > 0
  std::vector<LatticePoint> vertices;
  bool tentative = true;
  friend bool operator==(const TopLineClass&, const TopLineClass&) = default;
};

std::string kind_name(TopLineClass::Kind k);
std::string to_string(const TopLineClass& c);

// assume_total: the caller guarantees no components exist below the window.
TopLineClass classify_top_line(const HcpSeries& p, bool assume_total = false);

HcpSeries filtration_H(const HcpSeries& l, const Rational& d, const Weight& w);
HcpSeries filtration_HS(const HcpSeries& l, const Rational& d, long m, const Weight& w);

// Convex hull in the (l, j) plane, counterclockwise, collinear points dropped.
std::vector<LatticePoint> hull(const std::vector<LatticePoint>& pts);

std::string render_svg(const NewtonData& nd, const TopLineClass& cls);

}  // namespace nfc
