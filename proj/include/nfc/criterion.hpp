#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfc/gform.hpp"
#include "nfc/graded_op.hpp"
#include "nfc/newton.hpp"

namespace nfc {

// Commutative polynomial sum c[u,v] X^u Y^v.
struct BivarPoly {
  std::map<std::pair<long, long>, Rational> terms;

  void add(long u, long v, const Rational& c);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const BivarPoly&, const BivarPoly&) = default;
};
std::string to_string(const BivarPoly& f);

struct HomogTerm {
  Rational k;
  long u = 0;
  long v = 0;
};

struct HomogPiece {
  long weight = 0;               // p u + q v for every term
  std::vector<HomogTerm> terms;  // u strictly decreasing
};

std::vector<HomogPiece> weighted_decompose(const BivarPoly& f, long p, long q);
Rational type_identity(const HomogPiece& piece, long i);

// sum c P^u Q^v with the P powers on the left.
GradedOp evaluate_poly(const BivarPoly& f, const GradedOp& p, const GradedOp& q);
HcpSeries evaluate_poly(const BivarPoly& f, const HcpSeries& p, const HcpSeries& q);

struct BcCertificate {
  BivarPoly poly;
  long depth_found = 0;     // orders below the top weight used by the nullspace solve
  long depth_verified = 0;  // orders on which F(P, Q) was rechecked to vanish
};

std::optional<BcCertificate> bc_certificate(const GradedOp& p, const GradedOp& q, long wmax, long depth);

struct HsCheck {
  HcpSeries lhs;
  HcpSeries rhs;
  bool asserted = false;  // equality is claimed (s = 0, or type identities below s vanish)
  bool equal = false;
  long a0 = 0, b0 = 0;
  long weight = 0;  // N_F
};

// pprime is the normal form of P with respect to d^q.
HsCheck hs_coefficient_check(const HcpSeries& pprime, long q, const BivarPoly& f, long s);

struct PairReport {
  std::string p_src, q_src;
  long depth = 0;
  bool commutes = false;
  TopLineClass classification;
  long normal_form_floor = 0;
  std::optional<bool> stable_at_double_depth;
  std::optional<BcCertificate> certificate;
  long certificate_wmax = 0;
  std::vector<std::pair<long, Rational>> type_identities;
  bool sigma_is_p_over_q = false;
  std::string verdict;
  bool tentative = true;
};

PairReport classify_pair(const GradedOp& p, const GradedOp& q, long depth,
                         const std::optional<BivarPoly>& candidate = std::nullopt);

// Stationary KdV fixture: u'' = -3 u^2, u(0) = 0, u'(0) = 1, known to x-degree xdeg.
std::vector<Rational> kdv_potential(long xdeg);
// (P, Q) = (d^3 + 3/2 u d + 3/4 u', d^2 + u) with windows set by the truncation.
std::pair<GradedOp, GradedOp> kdv_pair(long xdeg = 24);

}  // namespace nfc
