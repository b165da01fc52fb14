#pragma once

#include <complex>
#include <map>
#include <random>
#include <utility>

#include "nfc/cyclo.hpp"
#include "nfc/gform.hpp"
#include "nfc/graded_op.hpp"
#include "nfc/parser.hpp"

namespace test {

using nfc::CycloScalar;
using nfc::GradedOp;
using nfc::HcpSeries;
using nfc::Rational;

inline Rational Q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline GradedOp op(const std::string& s, int k = 1) {
  nfc::EvalOptions o;
  o.k = k;
  return nfc::parse_operator(s, o);
}

inline HcpSeries series(const std::string& s, int k = 1) {
  return nfc::evaluate_series(nfc::parse_expr(s, k), k);
}

// Polynomial-coefficient operators sum c[a,b] x^a d^b with the Leibniz rule,
// written independently of the library's action-based product.
struct Weyl {
  std::map<std::pair<long, long>, Rational> t;

  void add(long a, long b, const Rational& c) {
    Rational& s = t[{a, b}];
    s += c;
    if (sgn(s) == 0) t.erase({a, b});
  }

  friend Weyl operator*(const Weyl& u, const Weyl& v) {
    Weyl out;
    for (const auto& [ab, c1] : u.t)
      for (const auto& [cd, c2] : v.t) {
        // x^a d^b x^c d^d = sum_m binom(b,m) c!/(c-m)! x^(a+c-m) d^(b+d-m)
        const auto [a, b] = ab;
        const auto [c, d] = cd;
        Rational binom = 1, fall = 1;
        for (long m = 0; m <= std::min(b, c); ++m) {
          out.add(a + c - m, b + d - m, c1 * c2 * binom * fall);
          binom = binom * (b - m) / (m + 1);
          fall *= c - m;
        }
      }
    return out;
  }

  GradedOp to_op() const {
    GradedOp out(1);
    for (const auto& [ab, c] : t) out.add_term(ab.first, ab.second, CycloScalar(1, c));
    return out;
  }
};

inline Weyl random_weyl(std::mt19937_64& rng, int terms, long maxdeg) {
  std::uniform_int_distribution<long> deg(0, maxdeg), coef(-4, 4);
  Weyl w;
  for (int i = 0; i < terms; ++i) {
    const long c = coef(rng);
    if (c != 0) w.add(deg(rng), deg(rng), Q(c));
  }
  return w;
}

// Numeric value of a cyclotomic scalar at xi = exp(2 pi i / k).
inline std::complex<double> numeric(const CycloScalar& a) {
  const double pi = 3.14159265358979323846;
  const std::complex<double> xi = std::polar(1.0, 2 * pi / a.k());
  std::complex<double> out = 0, p = 1;
  for (const auto& c : a.coeffs()) {
    out += c.get_d() * p;
    p *= xi;
  }
  return out;
}

}  // namespace test
