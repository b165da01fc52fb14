#pragma once

#include <map>
#include <string>
#include <utility>

#include "nfc/cyclo.hpp"
#include "nfc/graded_op.hpp"

namespace nfc {

// Stable degree of an empty part.
inline constexpr long kMinusInf = kNoFloor;

// Homogeneous operator sum f[l,i] Gamma_l A_i D^r + sum g[j] B_j D^r.
// Gamma_l = (x d)^l, A_i = exp((xi^i - 1) x*d), B_j the projector onto x^(j-1).
struct Hcp {
  using Key = std::pair<long, long>;  // (l, i)

  int k = 1;
  long r = 0;
  std::map<Key, CycloScalar> gamma;
  std::map<long, CycloScalar> bpart;

  Hcp() = default;
  Hcp(int k_, long r_) : k(k_), r(r_) {}
  static Hcp monomial(int k, long l, long i, long r, const CycloScalar& c);
  static Hcp projector(int k, long j, long r, const CycloScalar& c);

  bool is_zero() const { return gamma.empty() && bpart.empty(); }
  void canonicalize();
  void add_gamma(long l, long i, const CycloScalar& c);
  void add_b(long j, const CycloScalar& c);

  Hcp& operator+=(const Hcp& o);
  Hcp& operator-=(const Hcp& o);
  Hcp& operator*=(const CycloScalar& c);
  Hcp operator-() const;
  friend bool operator==(const Hcp& a, const Hcp& b) {
    return a.k == b.k && a.r == b.r && a.gamma == b.gamma && a.bpart == b.bpart;
  }
};

struct Sdeg {
  long a = kMinusInf;
  long b = kMinusInf;
};
Sdeg sdeg(const Hcp& h);
inline long sdeg_a(const Hcp& h) { return sdeg(h).a; }
bool contains_ai(const Hcp& h);

struct EigenFunction {
  int k = 1;
  std::map<Hcp::Key, CycloScalar> qp;
  std::map<long, CycloScalar> correction;
};

// Writing H = M D^r, M x^n = eigen_eval(eigen(H), n) x^n.
EigenFunction eigen(const Hcp& h);
CycloScalar eigen_eval(const EigenFunction& e, long n);
CycloScalar qp_eval(int k, const std::map<Hcp::Key, CycloScalar>& qp, long n);

GradedOp expand_hcp(const Hcp& h, long xcap);
Hcp hcp_mul(const Hcp& a, const Hcp& b);

// Recover the order-r component of c as an Hcp; see README for the sampling scheme.
Hcp fit_hcp(const GradedOp& c, long r, long dmax, long nbmax = 0, long margin = 8);

std::string to_string(const Hcp& h);

// Stack of Hcp components. Orders >= floor are exact; floor == kNoFloor means the
// series is complete (no unknown components at all).
class HcpSeries {
 public:
  explicit HcpSeries(int k = 1, long floor = kNoFloor) : k_(k), floor_(floor) {}
  static HcpSeries from_hcp(const Hcp& h);
  static HcpSeries d_pow(int k, long p);

  int k() const noexcept { return k_; }
  long floor() const noexcept { return floor_; }
  bool complete() const noexcept { return floor_ == kNoFloor; }
  const std::map<long, Hcp>& components() const noexcept { return comps_; }
  const Hcp* component(long t) const;

  void add(const Hcp& h);
  void set_floor(long f);
  long top_order() const;  // throws UndefinedOrd on zero
  long top_bound() const;
  bool is_zero() const { return comps_.empty(); }

  HcpSeries& operator+=(const HcpSeries& o);
  HcpSeries& operator-=(const HcpSeries& o);
  HcpSeries& operator*=(const CycloScalar& c);
  HcpSeries operator-() const;
  friend bool operator==(const HcpSeries& a, const HcpSeries& b) {
    return a.k_ == b.k_ && a.floor_ == b.floor_ && a.comps_ == b.comps_;
  }

 private:
  int k_;
  long floor_;
  std::map<long, Hcp> comps_;
};

HcpSeries operator+(HcpSeries a, const HcpSeries& b);
HcpSeries operator-(HcpSeries a, const HcpSeries& b);
HcpSeries operator*(const HcpSeries& a, const HcpSeries& b);
HcpSeries commutator(const HcpSeries& a, const HcpSeries& b);
HcpSeries series_pow(const HcpSeries& a, long e);

bool contains_b(const HcpSeries& s);
GradedOp to_graded(const HcpSeries& s, long xcap);
std::string to_string(const HcpSeries& s);

struct AqkReport {
  bool holds = true;
  int clause = 0;   // first violated clause, 1..4
  long order = 0;   // component where it was detected
  std::string detail;
};
AqkReport check_Aqk(const HcpSeries& p, long kk);

}  // namespace nfc
