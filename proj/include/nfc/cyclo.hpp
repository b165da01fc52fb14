#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace nfc {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view s);
Rational binomial(long n, long k);
Integer falling_factorial(long n, long s);  // n (n-1) ... (n-s+1), zero when s > n >= 0

// Coefficients of the k-th cyclotomic polynomial, ascending; monic of degree phi(k).
const std::vector<Rational>& cyclotomic_polynomial(int k);
int euler_phi(int k);

// Element of Q(xi), xi a primitive k-th root of unity, stored as the reduced
// residue modulo Phi_k. The context k travels with the value.
class CycloScalar {
 public:
  CycloScalar() : CycloScalar(1) {}
  explicit CycloScalar(int k);
  CycloScalar(int k, const Rational& r);
  CycloScalar(int k, long r) : CycloScalar(k, Rational(r)) {}
  // Arbitrary polynomial in xi; reduced on construction.
  CycloScalar(int k, std::vector<Rational> poly);

  static CycloScalar xi_pow(int k, long e);

  int k() const noexcept { return k_; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  const Rational& rational_part() const { return c_[0]; }

  CycloScalar inv() const;
  // Re-embed into another context; only valid for rational values.
  CycloScalar in_context(int k) const;

  CycloScalar& operator+=(const CycloScalar& b);
  CycloScalar& operator-=(const CycloScalar& b);
  CycloScalar& operator*=(const CycloScalar& b);
  CycloScalar& operator*=(const Rational& r);
  CycloScalar& operator/=(const Rational& r);
  CycloScalar operator-() const;

  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }
  friend CycloScalar operator*(CycloScalar a, const Rational& r) { return a *= r; }
  friend CycloScalar operator*(const Rational& r, CycloScalar a) { return a *= r; }
  friend CycloScalar operator/(CycloScalar a, const Rational& r) { return a /= r; }
  friend bool operator==(const CycloScalar& a, const CycloScalar& b) {
    return a.k_ == b.k_ && a.c_ == b.c_;
  }

  std::string to_string() const;
  // Accepts the to_string format: sums of terms "c", "c*xi", "c*xi^e", "xi^e".
  static CycloScalar parse(int k, std::string_view s);

 private:
  void check_context(const CycloScalar& b) const;
  int k_;
  std::vector<Rational> c_;
};

inline std::string to_string(const CycloScalar& a) { return a.to_string(); }

}  // namespace nfc
