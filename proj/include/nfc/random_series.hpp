#pragma once

#include <cstdint>
#include <random>

#include "nfc/criterion.hpp"
#include "nfc/gform.hpp"
#include "nfc/newton.hpp"

namespace nfc {

using Rng = std::mt19937_64;

// Independent stream per case, so results do not depend on the worker count.
std::uint64_t case_seed(std::uint64_t seed, long index);

struct SeriesShape {
  int k = 1;
  long top = 6;    // highest order that may appear
  long span = 6;   // orders in [top - span, top]
  long lmax = 4;
  bool allow_ai = true;
  int max_terms = 6;
};

CycloScalar random_scalar(Rng& rng, int k, bool allow_xi);

// Complete, B-free, nonzero; every order is nonnegative.
HcpSeries random_series(Rng& rng, const SeriesShape& shape);
HcpSeries random_monomial(Rng& rng, int k, long lmax, long rmax, bool allow_ai);

// Terms of weight <= p only, with at least one term of weight exactly p.
// Returns an empty series if no lattice point of the shape sits on weight p.
HcpSeries random_with_weight(Rng& rng, const SeriesShape& shape, const Weight& w, const Rational& p);

struct SyntheticRestriction {
  HcpSeries pprime;
  long p = 0, q = 0;
  long a0 = 0, b0 = 0;  // the vertex next to (0, p)
};

// d^p plus a Gamma_{a0} D^{b0} term and filler strictly under the line through both.
SyntheticRestriction random_restriction(Rng& rng, int k);

// At most max_terms monomials, always containing a term of the top weight p u + q v.
// With type0 the top piece has vanishing coefficient sum.
BivarPoly random_bivar(Rng& rng, long p, long q, int max_terms, bool type0);

}  // namespace nfc
