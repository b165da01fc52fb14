#include "nfc/gform.hpp"

#include <algorithm>
#include <set>

#include "nfc/error.hpp"

namespace nfc {

namespace {

long mod(long a, long k) { return ((a % k) + k) % k; }

CycloScalar int_pow(int k, long n, long l) {
  Integer v = 1;
  for (long j = 0; j < l; ++j) v *= n;
  return CycloScalar(k, Rational(v));
}

// Newton divided differences on nodes xs, then expansion into the monomial basis.
std::vector<CycloScalar> interpolate(int k, const std::vector<long>& xs,
                                     std::vector<CycloScalar> ys) {
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      ys[i] = (ys[i] - ys[i - 1]) / Rational(xs[i] - xs[i - level]);
      if (i == level) break;
    }
  // Horner on the Newton form: p = ys[n-1]; p = p*(x - xs[i]) + ys[i].
  std::vector<CycloScalar> poly{ys[n - 1]};
  for (std::size_t ii = n - 1; ii-- > 0;) {
    std::vector<CycloScalar> next(poly.size() + 1, CycloScalar(k));
    for (std::size_t e = 0; e < poly.size(); ++e) {
      next[e + 1] += poly[e];
      next[e] -= poly[e] * Rational(xs[ii]);
    }
    next[0] += ys[ii];
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

Hcp Hcp::monomial(int k, long l, long i, long r, const CycloScalar& c) {
  Hcp h(k, r);
  h.add_gamma(l, i, c);
  return h;
}

Hcp Hcp::projector(int k, long j, long r, const CycloScalar& c) {
  Hcp h(k, r);
  h.add_b(j, c);
  return h;
}

void Hcp::canonicalize() {
  for (auto it = gamma.begin(); it != gamma.end();)
    it = it->second.is_zero() ? gamma.erase(it) : std::next(it);
  for (auto it = bpart.begin(); it != bpart.end();)
    it = it->second.is_zero() ? bpart.erase(it) : std::next(it);
}

void Hcp::add_gamma(long l, long i, const CycloScalar& c) {
  if (l < 0) throw PreconditionError("negative Gamma index");
  if (c.k() != k) throw ContextError("Hcp coefficient in wrong context");
  auto [it, fresh] = gamma.try_emplace({l, mod(i, k)}, CycloScalar(k));
  it->second += c;
  if (it->second.is_zero()) gamma.erase(it);
}

void Hcp::add_b(long j, const CycloScalar& c) {
  if (j < 1) throw PreconditionError("B_j needs j >= 1");
  if (c.k() != k) throw ContextError("Hcp coefficient in wrong context");
  auto [it, fresh] = bpart.try_emplace(j, CycloScalar(k));
  it->second += c;
  if (it->second.is_zero()) bpart.erase(it);
}

Hcp& Hcp::operator+=(const Hcp& o) {
  if (o.k != k) throw ContextError("Hcp context mismatch");
  if (o.r != r) throw PreconditionError("adding Hcps of different order");
  for (const auto& [key, c] : o.gamma) add_gamma(key.first, key.second, c);
  for (const auto& [j, c] : o.bpart) add_b(j, c);
  return *this;
}

Hcp& Hcp::operator-=(const Hcp& o) { return *this += -o; }

Hcp& Hcp::operator*=(const CycloScalar& c) {
  for (auto& [key, v] : gamma) v *= c;
  for (auto& [j, v] : bpart) v *= c;
  canonicalize();
  return *this;
}

Hcp Hcp::operator-() const {
  Hcp out = *this;
  for (auto& [key, v] : out.gamma) v = -v;
  for (auto& [j, v] : out.bpart) v = -v;
  return out;
}

Sdeg sdeg(const Hcp& h) {
  Sdeg s;
  for (const auto& [key, c] : h.gamma) s.a = std::max(s.a, key.first);
  for (const auto& [j, c] : h.bpart) s.b = std::max(s.b, j);
  return s;
}

bool contains_ai(const Hcp& h) {
  for (const auto& [key, c] : h.gamma)
    if (key.second != 0) return true;
  return false;
}

EigenFunction eigen(const Hcp& h) {
  EigenFunction e;
  e.k = h.k;
  e.qp = h.gamma;
  for (const auto& [j, c] : h.bpart) e.correction[j - 1] = c;
  return e;
}

CycloScalar qp_eval(int k, const std::map<Hcp::Key, CycloScalar>& qp, long n) {
  CycloScalar out(k);
  for (const auto& [key, c] : qp) out += c * int_pow(k, n, key.first) * CycloScalar::xi_pow(k, key.second * n);
  return out;
}

CycloScalar eigen_eval(const EigenFunction& e, long n) {
  CycloScalar out = qp_eval(e.k, e.qp, n);
  auto it = e.correction.find(n);
  if (it != e.correction.end()) out += it->second;
  return out;
}

Rational order_factor(long n, long r) {
  // lambda(n) = order_factor(n, r) * mu(n - r); for r < 0 this is n! / (n + s)!.
  if (r >= 0) return Rational(falling_factorial(n, r));
  return Rational(1) / Rational(falling_factorial(n - r, -r));
}

GradedOp expand_hcp(const Hcp& h, long xcap) {
  GradedOp out(h.k);
  const EigenFunction e = eigen(h);
  const long nmax = xcap + h.r;
  std::vector<CycloScalar> lam(std::max(0L, nmax + 1), CycloScalar(h.k));
  for (long n = std::max(0L, h.r); n <= nmax; ++n) {
    CycloScalar mu = eigen_eval(e, n - h.r);
    if (!mu.is_zero()) lam[n] = mu * order_factor(n, h.r);
  }
  GradedOp::Component comp{xcap, action_to_coeffs(h.k, h.r, lam, xcap)};
  out.set_component(h.r, std::move(comp));
  return out;
}

Hcp hcp_mul(const Hcp& a, const Hcp& b) {
  if (a.k != b.k) throw ContextError("Hcp context mismatch");
  if (a.r < 0 || b.r < 0) throw PreconditionError("Hcp products need nonnegative orders");
  const int k = a.k;
  const long r1 = a.r;
  Hcp out(k, a.r + b.r);
  // Quasi-polynomial part: n^l xi^(i n) * (n + r1)^m xi^(j (n + r1)).
  for (const auto& [ka, ca] : a.gamma)
    for (const auto& [kb, cb] : b.gamma) {
      const auto [l, i] = ka;
      const auto [m, j] = kb;
      const CycloScalar base = ca * cb * CycloScalar::xi_pow(k, j * r1);
      Integer rpow = 1;
      // term s: binom(m, s) r1^(m-s) n^(l+s); iterate s downward so r1 powers build up.
      for (long s = m; s >= 0; --s) {
        if (rpow != 0) out.add_gamma(l + s, i + j, base * (binomial(m, s) * Rational(rpow)));
        rpow *= r1;
      }
    }
  // Corrections on their finite support.
  std::set<long> support;
  for (const auto& [j, c] : a.bpart) support.insert(j - 1);
  for (const auto& [j, c] : b.bpart)
    if (j - 1 - r1 >= 0) support.insert(j - 1 - r1);
  if (!support.empty()) {
    const EigenFunction ea = eigen(a), eb = eigen(b);
    for (long n : support) {
      CycloScalar v = eigen_eval(ea, n) * eigen_eval(eb, n + r1) - qp_eval(k, out.gamma, n);
      if (!v.is_zero()) out.add_b(n + 1, v);
    }
  }
  return out;
}

Hcp fit_hcp(const GradedOp& c, long r, long dmax, long nbmax, long margin) {
  if (dmax < 0 || nbmax < 0 || margin < 0) throw PreconditionError("fit_hcp: negative bound");
  const int k = c.k();
  Hcp out(k, r);
  const auto* comp = c.component(r);
  if (r < c.floor()) throw TruncationError("fit_hcp: order below the operator window");
  if (!comp) return out;
  // For r < 0 the eigenvalues below -r never act; sampling starts past them.
  const long skip = r < 0 ? -r : 0;
  const long base = skip + nbmax;
  const long need = base + k * (dmax + 1) + margin - 1;  // last sampled eigenvalue index
  long mu_cap;
  if (comp->xcap == kUnbounded) {
    const long deg = static_cast<long>(comp->coeffs.size()) + GradedOp::first_xdeg(r);
    mu_cap = base + k * (std::max(deg, dmax) + 1) + margin;
  } else {
    mu_cap = comp->xcap;
    if (mu_cap < need)
      throw TruncationError("fit_hcp at order " + std::to_string(r) + ": component exact to x^" +
                            std::to_string(mu_cap) + ", need x^" + std::to_string(need));
  }
  const auto lam = c.action(r, mu_cap + r);
  std::vector<CycloScalar> mu(mu_cap + 1, CycloScalar(k));
  for (long n = skip; n <= mu_cap; ++n) mu[n] = lam[n + r] / order_factor(n + r, r);

  // Per residue class polynomial, then inverse DFT over the classes.
  std::vector<std::vector<CycloScalar>> cls(k);
  for (long rho = 0; rho < k; ++rho) {
    std::vector<long> xs;
    std::vector<CycloScalar> ys;
    for (long n = base; n < base + k * (dmax + 1); ++n)
      if (mod(n, k) == rho) {
        xs.push_back(n);
        ys.push_back(mu[n]);
      }
    cls[rho] = interpolate(k, xs, ys);
  }
  for (long l = 0; l <= dmax; ++l)
    for (long i = 0; i < k; ++i) {
      CycloScalar f(k);
      for (long rho = 0; rho < k; ++rho)
        if (l < static_cast<long>(cls[rho].size()))
          f += cls[rho][l] * CycloScalar::xi_pow(k, -i * rho);
      f /= Rational(k);
      if (!f.is_zero()) out.add_gamma(l, i, f);
    }
  for (long n = base; n <= mu_cap; ++n)
    if (!(qp_eval(k, out.gamma, n) == mu[n]))
      throw NotHcpError("component at order " + std::to_string(r) +
                        " is not a quasi-polynomial of degree <= " + std::to_string(dmax) +
                        " beyond n = " + std::to_string(base) + " (mismatch at n = " +
                        std::to_string(n) + ")");
  for (long j = skip + 1; j <= base; ++j) {
    CycloScalar g = mu[j - 1] - qp_eval(k, out.gamma, j - 1);
    if (!g.is_zero()) out.add_b(j, g);
  }
  return out;
}

std::string to_string(const Hcp& h) {
  std::string out = "G{r=" + std::to_string(h.r);
  auto scalar = [](const CycloScalar& c) {
    return c.is_rational() ? c.rational_part().get_str() : "(" + c.to_string() + ")";
  };
  for (const auto& [key, c] : h.gamma)
    out += "; f[" + std::to_string(key.first) + "," + std::to_string(key.second) + "]=" + scalar(c);
  for (const auto& [j, c] : h.bpart) out += "; g[" + std::to_string(j) + "]=" + scalar(c);
  return out + "}";
}

HcpSeries HcpSeries::from_hcp(const Hcp& h) {
  HcpSeries s(h.k);
  s.add(h);
  return s;
}

HcpSeries HcpSeries::d_pow(int k, long p) {
  return from_hcp(Hcp::monomial(k, 0, 0, p, CycloScalar(k, 1)));
}

const Hcp* HcpSeries::component(long t) const {
  auto it = comps_.find(t);
  return it == comps_.end() ? nullptr : &it->second;
}

void HcpSeries::add(const Hcp& h) {
  if (h.k != k_) throw ContextError("Hcp context differs from series context");
  if (floor_ != kNoFloor && h.r < floor_) return;
  auto [it, fresh] = comps_.try_emplace(h.r, Hcp(k_, h.r));
  it->second += h;
  if (it->second.is_zero()) comps_.erase(it);
}

void HcpSeries::set_floor(long f) {
  floor_ = f;
  if (f == kNoFloor) return;
  comps_.erase(comps_.begin(), comps_.lower_bound(f));
}

long HcpSeries::top_order() const {
  if (comps_.empty()) throw UndefinedOrd("ord of the zero series");
  return comps_.rbegin()->first;
}

long HcpSeries::top_bound() const {
  long top = comps_.empty() ? kNoFloor : comps_.rbegin()->first;
  if (floor_ != kNoFloor) top = std::max(top, floor_ - 1);
  return top;
}

HcpSeries& HcpSeries::operator+=(const HcpSeries& o) {
  if (o.k_ != k_) throw ContextError("series context mismatch");
  set_floor(std::max(floor_, o.floor_));
  for (const auto& [t, h] : o.comps_) add(h);
  return *this;
}

HcpSeries& HcpSeries::operator-=(const HcpSeries& o) { return *this += -o; }

HcpSeries& HcpSeries::operator*=(const CycloScalar& c) {
  for (auto it = comps_.begin(); it != comps_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? comps_.erase(it) : std::next(it);
  }
  return *this;
}

HcpSeries HcpSeries::operator-() const {
  HcpSeries out = *this;
  for (auto& [t, h] : out.comps_) h = -h;
  return out;
}

HcpSeries operator+(HcpSeries a, const HcpSeries& b) { return a += b; }
HcpSeries operator-(HcpSeries a, const HcpSeries& b) { return a -= b; }

HcpSeries operator*(const HcpSeries& a, const HcpSeries& b) {
  if (a.k() != b.k()) throw ContextError("series context mismatch");
  long floor = kNoFloor;
  const long ta = a.top_bound(), tb = b.top_bound();
  if (a.floor() != kNoFloor && tb != kNoFloor) floor = std::max(floor, a.floor() + tb);
  if (b.floor() != kNoFloor && ta != kNoFloor) floor = std::max(floor, b.floor() + ta);
  HcpSeries out(a.k(), floor);
  for (const auto& [t1, h1] : a.components())
    for (const auto& [t2, h2] : b.components()) {
      if (floor != kNoFloor && t1 + t2 < floor) continue;
      out.add(hcp_mul(h1, h2));
    }
  return out;
}

HcpSeries commutator(const HcpSeries& a, const HcpSeries& b) { return a * b - b * a; }

HcpSeries series_pow(const HcpSeries& a, long e) {
  HcpSeries out = HcpSeries::d_pow(a.k(), 0);
  for (long i = 0; i < e; ++i) out = out * a;
  return out;
}

bool contains_b(const HcpSeries& s) {
  for (const auto& [t, h] : s.components())
    if (!h.bpart.empty()) return true;
  return false;
}

GradedOp to_graded(const HcpSeries& s, long xcap) {
  GradedOp out(s.k());
  for (const auto& [t, h] : s.components()) out += expand_hcp(h, xcap);
  if (s.floor() != kNoFloor) {
    // Orders in the window with no stored Hcp are exact zeros; still mark the floor.
    out.set_floor(s.floor());
  }
  return out;
}

std::string to_string(const HcpSeries& s) {
  std::string out;
  const auto& comps = s.components();
  for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += to_string(it->second);
  }
  if (out.empty()) out = "0";
  if (!s.complete()) out += " + O(ord < " + std::to_string(s.floor()) + ")";
  return out;
}

AqkReport check_Aqk(const HcpSeries& p, long kk) {
  AqkReport rep;
  auto fail = [&](int clause, long order, std::string detail) {
    rep.holds = false;
    rep.clause = clause;
    rep.order = order;
    rep.detail = std::move(detail);
    return rep;
  };
  if (p.is_zero()) return fail(4, 0, "zero operator has no highest symbol");
  for (const auto& [t, h] : p.components())
    if (h.k != p.k() || h.r != t) return fail(1, t, "component is not an Hcp of the series context");
  const long top = p.top_order();
  for (auto it = p.components().rbegin(); it != p.components().rend(); ++it)
    if (!it->second.bpart.empty())
      return fail(2, it->first, "component contains B_j terms");
  for (auto it = p.components().rbegin(); it != p.components().rend(); ++it) {
    const long i = top - it->first;
    if (i == 0) continue;
    const long s = sdeg_a(it->second);
    if (s >= i + kk)
      return fail(3, it->first,
                  "Sdeg_A = " + std::to_string(s) + " is not below " + std::to_string(i + kk));
  }
  const Hcp& sig = *p.component(top);
  if (contains_ai(sig)) return fail(4, top, "highest symbol contains A_i");
  if (sdeg_a(sig) != kk)
    return fail(4, top, "Sdeg_A of highest symbol is " + std::to_string(sdeg_a(sig)));
  return rep;
}

}  // namespace nfc
