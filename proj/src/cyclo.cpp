#include "nfc/cyclo.hpp"

#include <cctype>
#include <map>
#include <mutex>

#include "nfc/error.hpp"

namespace nfc {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo monic m.
void reduce_mod(Poly& a, const Poly& m) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    if (a[i] == 0) continue;
    Rational c = a[i];
    for (std::size_t j = 0; j < dm; ++j) a[i - dm + j] -= c * m[j];
    a[i] = 0;
  }
  a.resize(dm);
}

// Quotient and remainder for a general (nonzero) divisor.
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational& lead = b.back();
  while (r.size() >= b.size() && !r.empty()) {
    std::size_t shift = r.size() - b.size();
    Rational c = r.back() / lead;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

std::mutex g_cyclo_mutex;
std::map<int, std::unique_ptr<Poly>> g_cyclo_cache;

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw ParseError("empty rational", 1, 1);
  Rational r;
  if (r.set_str(str, 10) != 0) throw ParseError("malformed rational '" + str + "'", 1, 1);
  if (r.get_den() == 0) throw DivisionByZero("zero denominator in '" + str + "'");
  r.canonicalize();
  return r;
}

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(out);
}

Integer falling_factorial(long n, long s) {
  Integer out = 1;
  for (long j = 0; j < s; ++j) out *= (n - j);
  return out;
}

const std::vector<Rational>& cyclotomic_polynomial(int k) {
  if (k < 1) throw ContextError("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  auto it = g_cyclo_cache.find(k);
  if (it != g_cyclo_cache.end()) return *it->second;
  // Phi_k = (x^k - 1) / prod_{d | k, d < k} Phi_d, computed without recursion into the lock.
  std::map<int, Poly> local;
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    Poly num(d + 1, Rational(0));
    num[0] = -1;
    num[d] = 1;
    for (auto& [e, pe] : local) {
      if (d % e != 0 || e == d) continue;
      Poly q, r;
      divmod(num, pe, q, r);
      num = q;
    }
    local[d] = num;
  }
  auto& slot = g_cyclo_cache[k];
  slot = std::make_unique<Poly>(local[k]);
  return *slot;
}

int euler_phi(int k) { return static_cast<int>(cyclotomic_polynomial(k).size()) - 1; }

CycloScalar::CycloScalar(int k) : k_(k), c_(euler_phi(k), Rational(0)) {}

CycloScalar::CycloScalar(int k, const Rational& r) : CycloScalar(k) { c_[0] = r; }

CycloScalar::CycloScalar(int k, std::vector<Rational> poly) : k_(k) {
  const Poly& m = cyclotomic_polynomial(k);
  if (poly.size() < m.size() - 1) poly.resize(m.size() - 1, Rational(0));
  reduce_mod(poly, m);
  c_ = std::move(poly);
}

CycloScalar CycloScalar::xi_pow(int k, long e) {
  long r = ((e % k) + k) % k;
  Poly p(r + 1, Rational(0));
  p[r] = 1;
  return CycloScalar(k, std::move(p));
}

bool CycloScalar::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool CycloScalar::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool CycloScalar::is_one() const { return is_rational() && c_[0] == 1; }

void CycloScalar::check_context(const CycloScalar& b) const {
  if (k_ != b.k_)
    throw ContextError("mismatched cyclotomic order " + std::to_string(k_) + " vs " +
                       std::to_string(b.k_));
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& b) {
  check_context(b);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& b) {
  check_context(b);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
  return *this;
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& b) {
  check_context(b);
  if (b.is_rational()) return *this *= b.c_[0];
  if (is_rational()) {
    Rational r = c_[0];
    c_ = b.c_;
    return *this *= r;
  }
  Poly prod = poly_mul(c_, b.c_);
  reduce_mod(prod, cyclotomic_polynomial(k_));
  c_ = std::move(prod);
  return *this;
}

CycloScalar& CycloScalar::operator*=(const Rational& r) {
  for (auto& c : c_) c *= r;
  return *this;
}

CycloScalar& CycloScalar::operator/=(const Rational& r) {
  if (r == 0) throw DivisionByZero("division of cyclotomic scalar by zero");
  for (auto& c : c_) c /= r;
  return *this;
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

CycloScalar CycloScalar::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (is_rational()) return CycloScalar(k_, Rational(1) / c_[0]);
  // Extended Euclid: track s with s * a == r (mod Phi_k).
  const Poly& m = cyclotomic_polynomial(k_);
  Poly r0 = m, r1 = c_;
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    Poly q, r;
    divmod(r0, r1, q, r);
    Poly s = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    if (r1.empty()) throw InternalError("cyclotomic polynomial is not irreducible?");
  }
  for (auto& c : s1) c /= r1[0];
  return CycloScalar(k_, std::move(s1));
}

CycloScalar CycloScalar::in_context(int k) const {
  if (k == k_) return *this;
  if (!is_rational())
    throw ContextError("cannot move a non-rational scalar between cyclotomic contexts");
  return CycloScalar(k, c_[0]);
}

std::string CycloScalar::to_string() const {
  std::string out;
  for (std::size_t e = 0; e < c_.size(); ++e) {
    const Rational& c = c_[e];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    std::string term;
    if (e == 0) {
      term = a.get_str();
    } else {
      std::string base = e == 1 ? "xi" : "xi^" + std::to_string(e);
      term = a == 1 ? base : a.get_str() + "*" + base;
    }
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

CycloScalar CycloScalar::parse(int k, std::string_view src) {
  std::string s;
  for (char ch : src)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty scalar", 1, 1);
  CycloScalar out(k);
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError(what + " in scalar '" + std::string(src) + "'", 1,
                     static_cast<int>(pos) + 1);
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'");
    }
    Rational coef = 1;
    bool have_coef = false;
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
      ++pos;
    if (pos > start) {
      coef = parse_rational(s.substr(start, pos - start));
      have_coef = true;
    }
    long e = 0;
    bool star = pos < s.size() && s[pos] == '*';
    if (star) {
      if (!have_coef) fail("dangling '*'");
      ++pos;
    }
    if (s.compare(pos, 2, "xi") == 0) {
      pos += 2;
      e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t es = pos;
        if (pos < s.size() && s[pos] == '-') ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == es) fail("missing exponent");
        e = std::stol(s.substr(es, pos - es));
      }
    } else if (star || !have_coef) {
      fail("expected a rational or 'xi'");
    }
    out += xi_pow(k, e) * Rational(coef * sign);
  }
  return out;
}

}  // namespace nfc
