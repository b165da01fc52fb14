#include "nfc/graded_op.hpp"

#include <algorithm>
#include <set>

#include "nfc/error.hpp"

namespace nfc {

namespace {

long sat_sub(long cap, long t) { return cap >= kUnbounded ? kUnbounded : cap - t; }

void check_context(const GradedOp& a, const GradedOp& b) {
  if (a.k() != b.k())
    throw ContextError("operators live in different cyclotomic contexts (" +
                       std::to_string(a.k()) + " vs " + std::to_string(b.k()) + ")");
}

bool all_zero(const std::vector<CycloScalar>& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

}  // namespace

std::vector<CycloScalar> coeffs_to_action(int k, long t, const std::vector<CycloScalar>& coeffs,
                                          long nmax) {
  std::vector<CycloScalar> out(nmax + 1, CycloScalar(k));
  const long m0 = GradedOp::first_xdeg(t);
  const long smin = m0 + t;
  const long last = m0 + static_cast<long>(coeffs.size()) - 1;
  for (long n = std::max(0L, smin); n <= nmax; ++n) {
    Integer ff = falling_factorial(n, smin);
    const long mtop = std::min(last, n - t);
    CycloScalar acc(k);
    for (long m = m0; m <= mtop; ++m) {
      if (m > m0) ff *= (n - (m + t) + 1);
      const CycloScalar& c = coeffs[m - m0];
      if (!c.is_zero()) acc += c * Rational(ff);
    }
    out[n] = std::move(acc);
  }
  return out;
}

std::vector<CycloScalar> action_to_coeffs(int /*k*/, long t, const std::vector<CycloScalar>& action,
                                          long mmax) {
  const long m0 = GradedOp::first_xdeg(t);
  std::vector<CycloScalar> out;
  if (mmax < m0) return out;
  out.reserve(mmax - m0 + 1);
  const long smin = m0 + t;
  for (long m = m0; m <= mmax; ++m) {
    const long n = m + t;
    CycloScalar r = action.at(n);
    Integer ff = falling_factorial(n, smin);
    for (long mp = m0; mp < m; ++mp) {
      if (mp > m0) ff *= (n - (mp + t) + 1);
      const CycloScalar& c = out[mp - m0];
      if (!c.is_zero()) r -= c * Rational(ff);
    }
    r /= Rational(falling_factorial(n, n));
    out.push_back(std::move(r));
  }
  return out;
}

GradedOp GradedOp::identity(int k) { return scalar(CycloScalar(k, 1)); }

GradedOp GradedOp::scalar(const CycloScalar& c) {
  GradedOp out(c.k());
  if (!c.is_zero()) out.add_term(0, 0, c);
  return out;
}

GradedOp GradedOp::x(int k) { return monomial(k, {1, 0, CycloScalar(k, 1)}); }
GradedOp GradedOp::d(int k) { return monomial(k, {0, 1, CycloScalar(k, 1)}); }
GradedOp GradedOp::d_pow(int k, long p) { return monomial(k, {0, p, CycloScalar(k, 1)}); }

GradedOp GradedOp::monomial(int k, const XdMonomial& m) {
  GradedOp out(k);
  out.add_term(m.xdeg, m.ddeg, m.coeff.in_context(k));
  return out;
}

bool GradedOp::is_total() const {
  if (floor_ != kNoFloor) return false;
  for (const auto& [t, c] : comps_)
    if (c.xcap != kUnbounded) return false;
  return true;
}

const GradedOp::Component* GradedOp::component(long t) const {
  auto it = comps_.find(t);
  return it == comps_.end() ? nullptr : &it->second;
}

void GradedOp::add_term(long xdeg, long ddeg, const CycloScalar& c) {
  if (xdeg < 0 || ddeg < 0) throw PreconditionError("negative exponent in monomial");
  if (c.k() != k_) throw ContextError("monomial coefficient in wrong context");
  const long t = ddeg - xdeg;
  if (t < floor_) throw TruncationError("term below operator window");
  auto& comp = comps_[t];
  if (xdeg > comp.xcap) throw TruncationError("term beyond component x-cap");
  const std::size_t idx = static_cast<std::size_t>(xdeg - first_xdeg(t));
  if (comp.coeffs.size() <= idx) comp.coeffs.resize(idx + 1, CycloScalar(k_));
  comp.coeffs[idx] += c;
  while (!comp.coeffs.empty() && comp.coeffs.back().is_zero()) comp.coeffs.pop_back();
  if (comp.coeffs.empty() && comp.xcap == kUnbounded) comps_.erase(t);
}

void GradedOp::set_component(long t, Component comp) {
  comps_[t] = std::move(comp);
  canonicalize();
}

void GradedOp::set_floor(long f) {
  floor_ = f;
  canonicalize();
}

void GradedOp::canonicalize() {
  for (auto it = comps_.begin(); it != comps_.end();) {
    auto& comp = it->second;
    if (floor_ != kNoFloor && it->first < floor_) {
      it = comps_.erase(it);
      continue;
    }
    if (comp.xcap != kUnbounded) {
      const long keep = comp.xcap - first_xdeg(it->first) + 1;
      if (keep < static_cast<long>(comp.coeffs.size()))
        comp.coeffs.resize(std::max(0L, keep), CycloScalar(k_));
    }
    while (!comp.coeffs.empty() && comp.coeffs.back().is_zero()) comp.coeffs.pop_back();
    if (comp.coeffs.empty() && comp.xcap == kUnbounded)
      it = comps_.erase(it);
    else
      ++it;
  }
}

CycloScalar GradedOp::coeff(long xdeg, long ddeg) const {
  const long t = ddeg - xdeg;
  if (t < floor_) throw TruncationError("order " + std::to_string(t) + " is below the window");
  const Component* c = component(t);
  if (!c) return CycloScalar(k_);
  if (xdeg > c->xcap)
    throw TruncationError("x-degree " + std::to_string(xdeg) + " beyond x-cap at order " +
                          std::to_string(t));
  const long idx = xdeg - first_xdeg(t);
  if (idx < 0 || idx >= static_cast<long>(c->coeffs.size())) return CycloScalar(k_);
  return c->coeffs[idx];
}

long GradedOp::action_cap(long t) const {
  if (t < floor_) return -1;
  const Component* c = component(t);
  if (!c || c->xcap == kUnbounded) return kUnbounded;
  return c->xcap + t;
}

std::vector<CycloScalar> GradedOp::action(long t, long nmax) const {
  if (nmax > action_cap(t))
    throw TruncationError("action at order " + std::to_string(t) + " needed to n=" +
                          std::to_string(nmax) + " beyond the window");
  const Component* c = component(t);
  if (!c) return std::vector<CycloScalar>(nmax + 1, CycloScalar(k_));
  return coeffs_to_action(k_, t, c->coeffs, nmax);
}

long GradedOp::top_bound() const {
  long top = kNoFloor;
  if (!comps_.empty()) top = comps_.rbegin()->first;
  if (floor_ != kNoFloor) top = std::max(top, floor_ - 1);
  return top;
}

bool GradedOp::is_zero_in_window() const {
  for (const auto& [t, c] : comps_)
    if (!all_zero(c.coeffs)) return false;
  return true;
}

GradedOp GradedOp::in_context(int k) const {
  if (k == k_) return *this;
  GradedOp out(k, floor_);
  for (const auto& [t, c] : comps_) {
    Component nc{c.xcap, {}};
    for (const auto& v : c.coeffs) nc.coeffs.push_back(v.in_context(k));
    out.comps_[t] = std::move(nc);
  }
  return out;
}

GradedOp GradedOp::truncated(long floor, long xcap) const {
  GradedOp out = *this;
  out.floor_ = std::max(floor_, floor);
  if (xcap != kUnbounded) {
    // Absent orders inside the new window stay exact zeros; stored ones get capped.
    for (auto& [t, c] : out.comps_) c.xcap = std::min(c.xcap, xcap);
  }
  out.canonicalize();
  return out;
}

GradedOp& GradedOp::operator+=(const GradedOp& b) {
  check_context(*this, b);
  floor_ = std::max(floor_, b.floor_);
  for (const auto& [t, cb] : b.comps_) {
    if (t < floor_) continue;
    auto it = comps_.find(t);
    if (it == comps_.end()) {
      comps_[t] = cb;
      continue;
    }
    auto& ca = it->second;
    ca.xcap = std::min(ca.xcap, cb.xcap);
    if (ca.coeffs.size() < cb.coeffs.size()) ca.coeffs.resize(cb.coeffs.size(), CycloScalar(k_));
    for (std::size_t i = 0; i < cb.coeffs.size(); ++i) ca.coeffs[i] += cb.coeffs[i];
  }
  canonicalize();
  return *this;
}

GradedOp& GradedOp::operator-=(const GradedOp& b) { return *this += -b; }

GradedOp& GradedOp::operator*=(const CycloScalar& c) {
  for (auto& [t, comp] : comps_)
    for (auto& v : comp.coeffs) v *= c;
  canonicalize();
  return *this;
}

GradedOp GradedOp::operator-() const {
  GradedOp out = *this;
  for (auto& [t, comp] : out.comps_)
    for (auto& v : comp.coeffs) v = -v;
  return out;
}

bool operator==(const GradedOp& a, const GradedOp& b) {
  if (a.k_ != b.k_ || a.floor_ != b.floor_ || a.comps_.size() != b.comps_.size()) return false;
  auto ib = b.comps_.begin();
  for (const auto& [t, ca] : a.comps_) {
    if (t != ib->first || ca.xcap != ib->second.xcap || !(ca.coeffs == ib->second.coeffs))
      return false;
    ++ib;
  }
  return true;
}

GradedOp operator+(GradedOp a, const GradedOp& b) { return a += b; }
GradedOp operator-(GradedOp a, const GradedOp& b) { return a -= b; }
GradedOp operator*(const GradedOp& a, const GradedOp& b) { return op_mul(a, b); }
GradedOp operator*(const CycloScalar& c, GradedOp a) { return a *= c; }
GradedOp op_add(const GradedOp& a, const GradedOp& b) { return a + b; }

GradedOp op_mul(const GradedOp& A, const GradedOp& B) {
  check_context(A, B);
  const int k = A.k();
  const long topA = A.top_bound(), topB = B.top_bound();
  if (topA == kNoFloor || topB == kNoFloor) {
    // One factor is the exact zero operator.
    if ((topA == kNoFloor && A.floor() == kNoFloor) || (topB == kNoFloor && B.floor() == kNoFloor))
      return GradedOp(k);
  }
  long floor = kNoFloor;
  if (A.floor() != kNoFloor && topB != kNoFloor) floor = std::max(floor, A.floor() + topB);
  if (B.floor() != kNoFloor && topA != kNoFloor) floor = std::max(floor, B.floor() + topA);
  GradedOp out(k, floor);
  if (A.components().empty() || B.components().empty()) return out;
  const long top = A.components().rbegin()->first + B.components().rbegin()->first;
  const long low = floor != kNoFloor
                       ? floor
                       : A.components().begin()->first + B.components().begin()->first;
  if (floor != kNoFloor && floor > topA + topB)
    throw TruncationError("product window is empty: deepen the factors below orders " +
                          std::to_string(A.floor()) + " / " + std::to_string(B.floor()));

  struct Plan {
    long t;
    long cap;       // exact x-cap of the result component
    long compute;   // x-degree up to which to compute
    std::vector<std::pair<long, long>> pairs;
  };
  std::vector<Plan> plans;
  std::map<long, long> needA, needB;  // largest n needed in each factor's action
  for (long t = top; t >= low; --t) {
    Plan pl{t, kUnbounded, -1, {}};
    long support = -1;
    for (const auto& [t1, c1] : A.components()) {
      const long t2 = t - t1;
      const auto* c2 = B.component(t2);
      if (!c2) continue;
      pl.pairs.emplace_back(t1, t2);
      pl.cap = std::min({pl.cap, c1.xcap, sat_sub(c2->xcap, t1)});
      const long d1 = GradedOp::first_xdeg(t1) + static_cast<long>(c1.coeffs.size()) - 1;
      const long d2 = GradedOp::first_xdeg(t2) + static_cast<long>(c2->coeffs.size()) - 1;
      support = std::max(support, d1 + d2);
    }
    if (pl.pairs.empty()) continue;
    pl.compute = pl.cap == kUnbounded ? support : pl.cap;
    if (pl.compute + t < 0 && pl.cap == kUnbounded) continue;
    for (auto [t1, t2] : pl.pairs) {
      const long n = pl.compute + t;
      if (n < 0) continue;
      needB[t2] = std::max(needB.count(t2) ? needB[t2] : -1, n);
      needA[t1] = std::max(needA.count(t1) ? needA[t1] : -1, n - t2);
    }
    plans.push_back(std::move(pl));
  }
  std::map<long, std::vector<CycloScalar>> lamA, lamB;
  for (auto [t1, n] : needA) lamA[t1] = A.action(t1, n);
  for (auto [t2, n] : needB) lamB[t2] = B.action(t2, n);

  for (const auto& pl : plans) {
    const long t = pl.t;
    const long nmax = pl.compute + t;
    GradedOp::Component comp{pl.cap, {}};
    if (nmax >= 0 && pl.compute >= GradedOp::first_xdeg(t)) {
      std::vector<CycloScalar> lam(nmax + 1, CycloScalar(k));
      for (auto [t1, t2] : pl.pairs) {
        const auto& la = lamA[t1];
        const auto& lb = lamB[t2];
        for (long n = std::max(0L, t2); n <= nmax; ++n) {
          if (lb[n].is_zero()) continue;
          const auto& a = la[n - t2];
          if (!a.is_zero()) lam[n] += lb[n] * a;
        }
      }
      comp.coeffs = action_to_coeffs(k, t, lam, pl.compute);
    }
    out.set_component(t, std::move(comp));
  }
  out.canonicalize();
  return out;
}

GradedOp commutator(const GradedOp& a, const GradedOp& b) { return op_mul(a, b) - op_mul(b, a); }

GradedOp op_pow(const GradedOp& a, long e) {
  if (e < 0) throw PreconditionError("negative operator power");
  GradedOp out = GradedOp::identity(a.k());
  for (long i = 0; i < e; ++i) out = op_mul(out, a);
  return out;
}

GradedOp ad_pow(long q, const GradedOp& a, long times) {
  const GradedOp dq = GradedOp::d_pow(a.k(), q);
  GradedOp out = a;
  for (long i = 0; i < times; ++i) out = commutator(dq, out);
  return out;
}

GradedOp mono_mul(const XdMonomial& a, const XdMonomial& b) {
  const int k = a.coeff.k();
  GradedOp out(k);
  const CycloScalar c = a.coeff * b.coeff;
  for (long j = 0; j <= std::min(a.ddeg, b.xdeg); ++j) {
    Rational w = binomial(a.ddeg, j) * Rational(falling_factorial(b.xdeg, j));
    out.add_term(a.xdeg + b.xdeg - j, a.ddeg + b.ddeg - j, c * w);
  }
  return out;
}

long ord(const GradedOp& a) {
  const auto& comps = a.components();
  for (auto it = comps.rbegin(); it != comps.rend(); ++it)
    if (!all_zero(it->second.coeffs)) return it->first;
  throw UndefinedOrd("ord of an operator that vanishes on its window");
}

GradedOp sigma(const GradedOp& a) {
  const long p = ord(a);
  GradedOp out(a.k());
  out.set_component(p, *a.component(p));
  return out;
}

bool is_monic(const GradedOp& a) {
  const long p = ord(a);
  if (p < 0) return false;
  const auto* c = a.component(p);
  return c->coeffs.size() == 1 && c->coeffs[0].is_one();
}

bool is_normalized(const GradedOp& a) {
  if (!is_monic(a)) return false;
  const long p = ord(a);
  if (p == 0) return true;
  for (const auto& [t, c] : a.components()) {
    if (t > p - 1) continue;
    const long m = p - 1 - t;  // x-degree of the x^m d^(p-1) term
    if (m > c.xcap) continue;
    const long idx = m - GradedOp::first_xdeg(t);
    if (idx >= 0 && idx < static_cast<long>(c.coeffs.size()) && !c.coeffs[idx].is_zero())
      return false;
  }
  return true;
}

long ddeg(const GradedOp& a) {
  long best = -1;
  for (const auto& [t, c] : a.components()) {
    const long m0 = GradedOp::first_xdeg(t);
    for (std::size_t i = 0; i < c.coeffs.size(); ++i)
      if (!c.coeffs[i].is_zero()) best = std::max(best, m0 + static_cast<long>(i) + t);
  }
  if (best < 0) throw UndefinedOrd("deg of the zero operator");
  return best;
}

bool agree_on_common_window(const GradedOp& a, const GradedOp& b) {
  check_context(a, b);
  const long floor = std::max(a.floor(), b.floor());
  std::set<long> orders;
  for (const auto& [t, c] : a.components()) orders.insert(t);
  for (const auto& [t, c] : b.components()) orders.insert(t);
  for (long t : orders) {
    if (t < floor) continue;
    const auto* ca = a.component(t);
    const auto* cb = b.component(t);
    const long cap = std::min(ca ? ca->xcap : kUnbounded, cb ? cb->xcap : kUnbounded);
    const long m0 = GradedOp::first_xdeg(t);
    const long la = ca ? static_cast<long>(ca->coeffs.size()) : 0;
    const long lb = cb ? static_cast<long>(cb->coeffs.size()) : 0;
    const long len = std::min(std::max(la, lb), sat_sub(cap, m0 - 1));
    for (long i = 0; i < len; ++i) {
      CycloScalar va = i < la ? ca->coeffs[i] : CycloScalar(a.k());
      CycloScalar vb = i < lb ? cb->coeffs[i] : CycloScalar(a.k());
      if (!(va == vb)) return false;
    }
  }
  return true;
}

XSeries monomial_series(int k, long n) {
  XSeries s;
  s.coeffs.assign(n + 1, CycloScalar(k));
  s.coeffs[n] = CycloScalar(k, 1);
  return s;
}

XSeries apply_to_poly(const GradedOp& a, const XSeries& p) {
  const int k = a.k();
  XSeries out;
  out.exact_to = kUnbounded;
  const long top = a.top_bound();
  if (p.exact_to != kUnbounded && top != kNoFloor) out.exact_to = p.exact_to - top;
  std::map<long, CycloScalar> acc;
  for (long n = 0; n < static_cast<long>(p.coeffs.size()) && n <= p.exact_to; ++n) {
    if (p.coeffs[n].is_zero()) continue;
    if (a.floor() != kNoFloor) out.exact_to = std::min(out.exact_to, n - a.floor());
    for (const auto& [t, c] : a.components()) {
      if (t > n) break;
      if (n > a.action_cap(t)) {
        out.exact_to = std::min(out.exact_to, n - t - 1);
        continue;
      }
      auto lam = coeffs_to_action(k, t, c.coeffs, n);
      if (lam[n].is_zero()) continue;
      auto [it, fresh] = acc.try_emplace(n - t, CycloScalar(k));
      it->second += lam[n] * p.coeffs[n];
    }
  }
  if (out.exact_to < 0) throw TruncationError("operator window too shallow for this input");
  for (auto& [deg, v] : acc) {
    if (deg > out.exact_to || v.is_zero()) continue;
    if (static_cast<long>(out.coeffs.size()) <= deg) out.coeffs.resize(deg + 1, CycloScalar(k));
    out.coeffs[deg] = v;
  }
  return out;
}

std::string to_string(const GradedOp& a) {
  std::string out;
  const auto& comps = a.components();
  for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
    const long t = it->first;
    const long m0 = GradedOp::first_xdeg(t);
    for (std::size_t i = 0; i < it->second.coeffs.size(); ++i) {
      const CycloScalar& c = it->second.coeffs[i];
      if (c.is_zero()) continue;
      const long xd = m0 + static_cast<long>(i);
      const long dd = xd + t;
      std::string mono;
      if (xd > 0) mono = xd == 1 ? "x" : "x^" + std::to_string(xd);
      if (dd > 0) {
        if (!mono.empty()) mono += "*";
        mono += dd == 1 ? "d" : "d^" + std::to_string(dd);
      }
      std::string term;
      bool neg = false;
      if (c.is_rational()) {
        Rational r = c.rational_part();
        neg = r < 0;
        if (neg) r = -r;
        if (mono.empty())
          term = r.get_str();
        else
          term = r == 1 ? mono : r.get_str() + "*" + mono;
      } else {
        term = "(" + c.to_string() + ")";
        if (!mono.empty()) term += "*" + mono;
      }
      if (out.empty())
        out = neg ? "-" + term : term;
      else
        out += (neg ? " - " : " + ") + term;
    }
  }
  if (out.empty()) out = "0";
  if (!a.is_total()) {
    out += " + O(...)";
  }
  return out;
}

}  // namespace nfc
