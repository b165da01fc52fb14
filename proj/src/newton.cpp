#include "nfc/newton.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "nfc/error.hpp"

namespace nfc {

const NewtonPoint* NewtonData::find(long l, long j) const {
  for (const auto& pt : points)
    if (pt.l == l && pt.j == j) return &pt;
  return nullptr;
}

long NewtonData::top_order() const { return points.empty() ? kNoFloor : points.front().j; }

NewtonData e_set(const HcpSeries& p) {
  NewtonData nd;
  nd.k = p.k();
  nd.floor = p.floor();
  const auto& comps = p.components();
  for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
    std::map<long, bool> row;  // l -> contains A_i
    for (const auto& [key, c] : it->second.gamma) row[key.first] = row[key.first] || key.second != 0;
    for (const auto& [l, ai] : row) nd.points.push_back({l, it->first, ai});
  }
  return nd;
}

Weight::Weight(Rational s, Rational r) : sigma(std::move(s)), rho(std::move(r)) {
  sigma.canonicalize();
  rho.canonicalize();
  if (sgn(sigma) < 0) throw PreconditionError("weight sigma must be nonnegative");
  if (sgn(rho) <= 0) throw PreconditionError("weight rho must be positive");
}

Weight Weight::normalized() const { return Weight(sigma / rho, 1); }

namespace {

// Largest weight a component below the window could carry, if finite.
// Under A_q(0) an order j < p has Sdeg_A <= p - j - 1.
bool deep_bound(const HcpSeries& p, const Weight& w, Rational& bound) {
  const long f = p.floor();
  if (sgn(w.sigma) == 0) {
    bound = w.rho * (f - 1);
    return true;
  }
  if (p.is_zero() || !check_Aqk(p, 0).holds) return false;
  if (w.sigma > w.rho) return false;
  const long top = p.top_order();
  // sigma (top - j - 1) + rho j is nondecreasing in j when sigma <= rho.
  bound = w.sigma * (top - f) + w.rho * (f - 1);
  return true;
}

}  // namespace

WeightValue weight_of(const HcpSeries& p, const Weight& w) {
  WeightValue out;
  bool any = false;
  for (const auto& [t, h] : p.components())
    for (const auto& [key, c] : h.gamma) {
      Rational v = w(key.first, t);
      if (!any || v > out.value) out.value = v;
      any = true;
    }
  out.kind = any ? WeightValue::Kind::Value : WeightValue::Kind::MinusInf;
  if (p.complete()) return out;
  Rational bound;
  if (deep_bound(p, w, bound) && (any && out.value >= bound)) return out;
  if (!any) out.value = bound;  // only meaningful when deep_bound succeeded
  out.kind = WeightValue::Kind::LowerBound;
  return out;
}

HcpSeries top_term(const HcpSeries& p, const Weight& w) {
  HcpSeries out(p.k());
  const WeightValue v = weight_of(p, w);
  if (v.kind == WeightValue::Kind::MinusInf) return out;
  if (!v.exact() && p.is_zero()) return out;
  Rational best;
  bool any = false;
  for (const auto& [t, h] : p.components())
    for (const auto& [key, c] : h.gamma) {
      Rational x = w(key.first, t);
      if (!any || x > best) best = x;
      any = true;
    }
  for (const auto& [t, h] : p.components()) {
    Hcp part(p.k(), t);
    for (const auto& [key, c] : h.gamma)
      if (w(key.first, t) == best) part.add_gamma(key.first, key.second, c);
    if (!part.is_zero()) out.add(part);
  }
  return out;
}

std::vector<LatticePoint> up_edge(const NewtonData& nd) {
  std::vector<LatticePoint> out;
  long best = kNoFloor;
  long row = kNoFloor;
  long row_max = kNoFloor;
  auto flush = [&] {
    if (row != kNoFloor && row_max > best) {
      out.push_back({row_max, row});
      best = row_max;
    }
  };
  for (const auto& pt : nd.points) {
    if (pt.j != row) {
      flush();
      row = pt.j;
      row_max = kNoFloor;
    }
    row_max = std::max(row_max, pt.l);
  }
  flush();
  return out;
}

std::vector<LatticePoint> up_edge(const HcpSeries& p) { return up_edge(e_set(p)); }

std::string kind_name(TopLineClass::Kind k) {
  switch (k) {
    case TopLineClass::Kind::SdegZero: return "SdegZero";
    case TopLineClass::Kind::Restriction: return "Restriction";
    case TopLineClass::Kind::Asymptotic: return "Asymptotic";
    case TopLineClass::Kind::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::string to_string(const TopLineClass& c) {
  std::string out = kind_name(c.kind);
  if (c.kind == TopLineClass::Kind::Restriction) {
    out += "(sigma=" + c.sigma.get_str() + "; vertices";
    for (const auto& [l, j] : c.vertices) out += " (" + std::to_string(l) + "," + std::to_string(j) + ")";
    out += ")";
  } else if (c.kind == TopLineClass::Kind::Asymptotic) {
    out += "(sigma0=" + c.sigma.get_str() + ")";
  }
  if (c.tentative) out += " tentative";
  return out;
}

TopLineClass classify_top_line(const HcpSeries& p, bool assume_total) {
  if (p.is_zero()) throw PreconditionError("classify_top_line on the zero series");
  const bool total = p.complete() || assume_total;
  if (!total) {
    const AqkReport rep = check_Aqk(p, 0);
    if (!rep.holds)
      throw PreconditionError("classify_top_line needs condition A_q(0): clause " +
                              std::to_string(rep.clause) + " fails at order " + std::to_string(rep.order));
  }
  const NewtonData nd = e_set(p);
  const long top = p.top_order();
  TopLineClass out;
  out.tentative = !total;
  if (!total && p.floor() >= top) return out;  // nothing below the highest symbol is known

  bool first = true;
  long deepest = 0;
  for (const auto& pt : nd.points) {
    if (pt.l == 0) continue;
    Rational s(top - pt.j, pt.l);
    s.canonicalize();
    if (first || s < out.window_sigma) out.window_sigma = s;
    deepest = first ? pt.j : std::min(deepest, pt.j);
    first = false;
  }
  if (first) {
    out.kind = TopLineClass::Kind::SdegZero;
    return out;
  }
  const Rational& s = out.window_sigma;
  std::vector<LatticePoint> on_line;
  bool above_bottom = false;
  for (const auto& pt : nd.points) {
    if (pt.l == 0 || s * pt.l + pt.j != top) continue;
    on_line.push_back({pt.l, pt.j});
    if (pt.j > deepest) above_bottom = true;
  }
  std::sort(on_line.begin(), on_line.end());
  if (total || above_bottom) {
    out.kind = TopLineClass::Kind::Restriction;
    out.sigma = s;
    out.vertices.push_back({0, top});
    out.vertices.insert(out.vertices.end(), on_line.begin(), on_line.end());
    // Deeper points obey l <= p - j - 1, so they stay strictly below the line iff sigma <= 1.
    if (!total && s <= 1) out.tentative = false;
    return out;
  }
  // The minimum sits at the bottom of the window: the line keeps tilting.
  out.kind = TopLineClass::Kind::Asymptotic;
  out.sigma = s;
  const auto edge = up_edge(nd);
  if (edge.size() >= 2) {
    const auto& [a1, b1] = edge[edge.size() - 2];
    const auto& [a2, b2] = edge.back();
    if (a2 > a1) {
      Rational slope(b1 - b2, a2 - a1);
      slope.canonicalize();
      out.sigma = std::clamp(slope, Rational(1), s);
    }
  }
  return out;
}

namespace {

HcpSeries filter(const HcpSeries& l, const Rational& d, long m, const Weight& w) {
  HcpSeries out(l.k(), l.floor());
  for (const auto& [t, h] : l.components()) {
    Hcp part(l.k(), t);
    for (const auto& [key, c] : h.gamma)
      if (key.first <= m && w(key.first, t) >= d) part.add_gamma(key.first, key.second, c);
    if (!part.is_zero()) out.add(part);
  }
  return out;
}

}  // namespace

HcpSeries filtration_H(const HcpSeries& l, const Rational& d, const Weight& w) {
  return filter(l, d, kUnbounded, w);
}

HcpSeries filtration_HS(const HcpSeries& l, const Rational& d, long m, const Weight& w) {
  return filter(l, d, m, w);
}

std::vector<LatticePoint> hull(const std::vector<LatticePoint>& input) {
  std::vector<LatticePoint> pts(input);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t n = 0;
  for (const auto& pt : pts) {
    while (n >= 2 && cross(h[n - 2], h[n - 1], pt) <= 0) --n;
    h[n++] = pt;
  }
  for (std::size_t i = pts.size() - 1, lower = n + 1; i-- > 0;) {
    while (n >= lower && cross(h[n - 2], h[n - 1], pts[i]) <= 0) --n;
    h[n++] = pts[i];
  }
  h.resize(n - 1);
  return h;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const NewtonData& nd, const TopLineClass& cls) {
  long lmax = 1, jmax = 1, jmin = -1;
  for (const auto& pt : nd.points) {
    lmax = std::max(lmax, pt.l + 1);
    jmax = std::max(jmax, pt.j + 1);
    jmin = std::min(jmin, pt.j - 1);
  }
  if (nd.floor != kNoFloor) jmin = std::min(jmin, nd.floor - 1);
  const double left = 60, top = 30, cell = 40;
  const double width = left + cell * lmax + 40, height = top + cell * (jmax - jmin) + 50;
  auto X = [&](double l) { return left + cell * l; };
  auto Y = [&](double j) { return top + cell * (jmax - j); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // grid and axes
  for (long l = 0; l <= lmax; ++l) {
    s += "<line x1=\"" + fmt(X(l)) + "\" y1=\"" + fmt(Y(jmax)) + "\" x2=\"" + fmt(X(l)) + "\" y2=\"" +
         fmt(Y(jmin)) + "\" stroke=\"#eeeeee\"/>\n";
    s += "<text x=\"" + fmt(X(l) - 4) + "\" y=\"" + fmt(Y(jmin) + 16) + "\">" + std::to_string(l) + "</text>\n";
  }
  for (long j = jmin; j <= jmax; ++j) {
    s += "<line x1=\"" + fmt(X(0)) + "\" y1=\"" + fmt(Y(j)) + "\" x2=\"" + fmt(X(lmax)) + "\" y2=\"" +
         fmt(Y(j)) + "\" stroke=\"#eeeeee\"/>\n";
    s += "<text x=\"" + fmt(left - 28) + "\" y=\"" + fmt(Y(j) + 4) + "\">" + std::to_string(j) + "</text>\n";
  }
  s += "<line x1=\"" + fmt(X(0)) + "\" y1=\"" + fmt(Y(0)) + "\" x2=\"" + fmt(X(lmax)) + "\" y2=\"" + fmt(Y(0)) +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fmt(X(0)) + "\" y1=\"" + fmt(Y(jmin)) + "\" x2=\"" + fmt(X(0)) + "\" y2=\"" +
       fmt(Y(jmax)) + "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + fmt(X(lmax) - 30) + "\" y=\"" + fmt(Y(jmin) + 34) + "\">Sdeg_A</text>\n";
  s += "<text x=\"" + fmt(left - 50) + "\" y=\"" + fmt(top - 12) + "\">ord</text>\n";
  if (nd.floor != kNoFloor)
    s += "<line x1=\"" + fmt(X(0)) + "\" y1=\"" + fmt(Y(nd.floor - 0.5)) + "\" x2=\"" + fmt(X(lmax)) +
         "\" y2=\"" + fmt(Y(nd.floor - 0.5)) + "\" stroke=\"#999999\" stroke-dasharray=\"2,3\"/>\n";

  std::vector<LatticePoint> pts;
  for (const auto& pt : nd.points) pts.push_back({pt.l, pt.j});
  const auto h = hull(pts);
  if (h.size() >= 3) {
    s += "<polygon points=\"";
    for (std::size_t i = 0; i < h.size(); ++i)
      s += (i ? " " : "") + fmt(X(h[i].first)) + "," + fmt(Y(h[i].second));
    s += "\" fill=\"#dde6f5\" stroke=\"#6b84b5\"/>\n";
  } else if (h.size() == 2) {
    s += "<line x1=\"" + fmt(X(h[0].first)) + "\" y1=\"" + fmt(Y(h[0].second)) + "\" x2=\"" +
         fmt(X(h[1].first)) + "\" y2=\"" + fmt(Y(h[1].second)) + "\" stroke=\"#6b84b5\"/>\n";
  }

  const auto edge = up_edge(nd);
  if (edge.size() >= 2) {
    s += "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < edge.size(); ++i)
      s += (i ? " " : "") + fmt(X(edge[i].first)) + "," + fmt(Y(edge[i].second));
    s += "\"/>\n";
  }

  const long p = nd.top_order();
  if (p != kNoFloor && (cls.kind == TopLineClass::Kind::Restriction ||
                        cls.kind == TopLineClass::Kind::Asymptotic) && sgn(cls.sigma) > 0) {
    // sigma X + Y = p, clipped to the plot
    const double sg = cls.sigma.get_d();
    double l1 = lmax, j1 = p - sg * lmax;
    if (j1 < jmin) {
      j1 = jmin;
      l1 = (p - jmin) / sg;
    }
    s += "<line x1=\"" + fmt(X(0)) + "\" y1=\"" + fmt(Y(p)) + "\" x2=\"" + fmt(X(l1)) + "\" y2=\"" + fmt(Y(j1)) +
         "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
  }

  for (const auto& pt : nd.points) {
    s += "<circle cx=\"" + fmt(X(pt.l)) + "\" cy=\"" + fmt(Y(pt.j)) + "\" r=\"4\" ";
    s += pt.contains_ai ? "fill=\"white\" stroke=\"black\"/>\n" : "fill=\"black\"/>\n";
  }
  s += "<text x=\"" + fmt(left) + "\" y=\"" + fmt(height - 8) + "\">" + to_string(cls) + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace nfc
