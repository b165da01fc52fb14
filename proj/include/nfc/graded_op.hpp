#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "nfc/cyclo.hpp"

namespace nfc {

// Sentinels for "no truncation": an x-cap beyond every coefficient, and a floor
// below every order.
inline constexpr long kUnbounded = std::numeric_limits<long>::max() / 4;
inline constexpr long kNoFloor = std::numeric_limits<long>::min() / 4;

struct XdMonomial {
  long xdeg = 0;
  long ddeg = 0;
  CycloScalar coeff;
};

// Truncated operator sum_t sum_n c_t[n] x^n d^(n+t), graded by the order t = ddeg - xdeg.
//
// Window semantics: every order t >= floor() is known. A stored component is exact
// up to x-degree xcap; an order >= floor with no stored component is exactly zero.
// A total operator (floor() == kNoFloor, all xcaps kUnbounded) is a finite
// differential operator.
class GradedOp {
 public:
  struct Component {
    long xcap = kUnbounded;
    // coeffs[i] is the coefficient of x^(m0+i) d^(m0+i+t), m0 = first_xdeg(t).
    std::vector<CycloScalar> coeffs;
  };

  GradedOp() : GradedOp(1) {}
  explicit GradedOp(int k, long floor = kNoFloor) : k_(k), floor_(floor) {}

  static GradedOp identity(int k);
  static GradedOp scalar(const CycloScalar& c);
  static GradedOp x(int k);
  static GradedOp d(int k);
  static GradedOp d_pow(int k, long p);
  static GradedOp monomial(int k, const XdMonomial& m);

  static long first_xdeg(long t) { return t < 0 ? -t : 0; }

  int k() const noexcept { return k_; }
  long floor() const noexcept { return floor_; }
  bool is_total() const;
  const std::map<long, Component>& components() const noexcept { return comps_; }
  const Component* component(long t) const;

  // Adds c * x^xdeg d^ddeg; only meaningful on operators whose component is total.
  void add_term(long xdeg, long ddeg, const CycloScalar& c);
  void set_component(long t, Component comp);
  void set_floor(long f);

  // Coefficient of x^xdeg d^ddeg; throws TruncationError outside the window.
  CycloScalar coeff(long xdeg, long ddeg) const;

  // Exact action values lambda_t(n), n = 0..nmax, for the order-t component:
  // the component maps x^n to lambda_t(n) x^(n-t).
  std::vector<CycloScalar> action(long t, long nmax) const;
  // Largest n with lambda_t(n) exact.
  long action_cap(long t) const;

  // Largest order that may be nonzero; kNoFloor for the exact zero operator.
  long top_bound() const;
  bool is_zero_in_window() const;

  GradedOp in_context(int k) const;
  // Restrict to orders >= floor and x-degrees <= xcap.
  GradedOp truncated(long floor, long xcap = kUnbounded) const;

  GradedOp& operator+=(const GradedOp& b);
  GradedOp& operator-=(const GradedOp& b);
  GradedOp& operator*=(const CycloScalar& c);
  GradedOp operator-() const;

  friend bool operator==(const GradedOp& a, const GradedOp& b);

  void canonicalize();

 private:
  int k_;
  long floor_;
  std::map<long, Component> comps_;
};

GradedOp operator+(GradedOp a, const GradedOp& b);
GradedOp operator-(GradedOp a, const GradedOp& b);
GradedOp operator*(const GradedOp& a, const GradedOp& b);
GradedOp operator*(const CycloScalar& c, GradedOp a);

GradedOp op_add(const GradedOp& a, const GradedOp& b);
GradedOp op_mul(const GradedOp& a, const GradedOp& b);
GradedOp commutator(const GradedOp& a, const GradedOp& b);
GradedOp op_pow(const GradedOp& a, long e);
GradedOp ad_pow(long q, const GradedOp& a, long times);

// Leibniz product of two monomials; result is total.
GradedOp mono_mul(const XdMonomial& a, const XdMonomial& b);

long ord(const GradedOp& a);
GradedOp sigma(const GradedOp& a);
bool is_monic(const GradedOp& a);
bool is_normalized(const GradedOp& a);
// Largest d-power with a nonzero coefficient in the window (deg of a differential operator).
long ddeg(const GradedOp& a);

// Compare two operators on the intersection of their windows.
bool agree_on_common_window(const GradedOp& a, const GradedOp& b);

// Conversion between coefficient and action form of one order-t component.
// coeffs indexed from m0 = first_xdeg(t); action indexed by n from 0.
std::vector<CycloScalar> coeffs_to_action(int k, long t, const std::vector<CycloScalar>& coeffs,
                                          long nmax);
std::vector<CycloScalar> action_to_coeffs(int k, long t, const std::vector<CycloScalar>& action,
                                          long mmax);

// Power series in x known up to x-degree exact_to.
struct XSeries {
  std::vector<CycloScalar> coeffs;
  long exact_to = kUnbounded;
};

XSeries monomial_series(int k, long n);
XSeries apply_to_poly(const GradedOp& a, const XSeries& p);

std::string to_string(const GradedOp& a);

}  // namespace nfc
