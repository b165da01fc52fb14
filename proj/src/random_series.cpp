#include "nfc/random_series.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace nfc {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational small_rational(Rng& rng) {
  long n = 0;
  while (n == 0) n = uniform(rng, -3, 3);
  Rational q(n, uniform(rng, 1, 2));
  q.canonicalize();
  return q;
}

long pick_ai(Rng& rng, int k, bool allow_ai) { return allow_ai && k > 1 ? uniform(rng, 0, k - 1) : 0; }

}  // namespace

std::uint64_t case_seed(std::uint64_t seed, long index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x6e6663u};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

CycloScalar random_scalar(Rng& rng, int k, bool allow_xi) {
  if (!allow_xi || k <= 2 || uniform(rng, 0, 2) != 0) return CycloScalar(k, small_rational(rng));
  std::vector<Rational> poly(euler_phi(k));
  for (auto& c : poly) c = uniform(rng, -2, 2);
  poly[uniform(rng, 0, static_cast<long>(poly.size()) - 1)] = small_rational(rng);
  return CycloScalar(k, std::move(poly));
}

HcpSeries random_series(Rng& rng, const SeriesShape& s) {
  const long lo = std::max(0L, s.top - s.span);
  HcpSeries out(s.k);
  while (out.is_zero()) {
    const long n = uniform(rng, 1, s.max_terms);
    for (long t = 0; t < n; ++t) {
      const long r = uniform(rng, lo, s.top);
      const long l = uniform(rng, 0, s.lmax);
      out.add(Hcp::monomial(s.k, l, pick_ai(rng, s.k, s.allow_ai), r, random_scalar(rng, s.k, s.allow_ai)));
    }
  }
  return out;
}

HcpSeries random_monomial(Rng& rng, int k, long lmax, long rmax, bool allow_ai) {
  const long l = uniform(rng, 0, lmax);
  const long r = uniform(rng, 0, rmax);
  return HcpSeries::from_hcp(Hcp::monomial(k, l, pick_ai(rng, k, allow_ai), r, random_scalar(rng, k, allow_ai)));
}

HcpSeries random_with_weight(Rng& rng, const SeriesShape& s, const Weight& w, const Rational& p) {
  const long lo = std::max(0L, s.top - s.span);
  std::vector<std::pair<long, long>> on_line, below;
  for (long r = lo; r <= s.top; ++r)
    for (long l = 0; l <= s.lmax; ++l) {
      const Rational v = w(l, r);
      if (v == p) on_line.push_back({l, r});
      else if (v < p) below.push_back({l, r});
    }
  HcpSeries out(s.k);
  if (on_line.empty()) return out;
  const auto add = [&](const std::pair<long, long>& pt) {
    out.add(Hcp::monomial(s.k, pt.first, pick_ai(rng, s.k, s.allow_ai), pt.second,
                          random_scalar(rng, s.k, s.allow_ai)));
  };
  while (out.is_zero()) {
    add(on_line[uniform(rng, 0, static_cast<long>(on_line.size()) - 1)]);
    const long extra = uniform(rng, 0, s.max_terms - 1);
    for (long t = 0; t < extra; ++t) {
      const bool top = below.empty() || uniform(rng, 0, 3) == 0;
      const auto& pool = top ? on_line : below;
      add(pool[uniform(rng, 0, static_cast<long>(pool.size()) - 1)]);
    }
    if (weight_of(out, w).value != p) out = HcpSeries(s.k);
  }
  return out;
}

SyntheticRestriction random_restriction(Rng& rng, int k) {
  SyntheticRestriction out;
  out.q = uniform(rng, 2, 3);
  out.p = uniform(rng, out.q + 1, 5);
  out.a0 = uniform(rng, 1, 2);
  const long i0 = uniform(rng, out.a0 + 1, out.p);
  out.b0 = out.p - i0;
  HcpSeries s = HcpSeries::d_pow(k, out.p);
  s.add(Hcp::monomial(k, out.a0, 0, out.b0, CycloScalar(k, small_rational(rng))));
  const bool ai = uniform(rng, 0, 1) == 1;
  for (long i = 1; i <= out.p; ++i)
    for (long l = 0; l <= std::min(i - 1, 4L); ++l) {
      if (l * i0 >= i * out.a0 || uniform(rng, 0, 2) != 0) continue;
      s.add(Hcp::monomial(k, l, pick_ai(rng, k, ai), out.p - i, random_scalar(rng, k, ai)));
    }
  out.pprime = std::move(s);
  return out;
}

BivarPoly random_bivar(Rng& rng, long p, long q, int max_terms, bool type0) {
  const long lcm = std::lcm(p, q);
  const long top = lcm * uniform(rng, 1, 2);
  std::vector<std::pair<long, long>> on_top;
  for (long u = 0; u * p <= top; u += lcm / p) on_top.push_back({u, (top - u * p) / q});

  BivarPoly f;
  long budget = uniform(rng, type0 ? 2 : 1, max_terms);
  std::shuffle(on_top.begin(), on_top.end(), rng);
  const long ntop = std::min<long>(type0 ? std::max(2L, uniform(rng, 2, budget)) : uniform(rng, 1, budget),
                                   static_cast<long>(on_top.size()));
  Rational sum = 0;
  for (long t = 0; t < ntop; ++t) {
    Rational c = small_rational(rng);
    if (type0 && t == ntop - 1) c = -sum;
    if (sgn(c) == 0) c = 1;  // only when type0 and the partial sum vanished
    sum += c;
    f.add(on_top[t].first, on_top[t].second, c);
  }
  if (type0 && sgn(sum) != 0) {
    // The fallback above broke the identity; rebalance on the first term.
    f.add(on_top[0].first, on_top[0].second, -sum);
  }
  for (long t = ntop; t < budget; ++t) {
    const long u = uniform(rng, 0, top / p);
    const long v = uniform(rng, 0, (top - u * p) / q);
    if (u * p + v * q < top) f.add(u, v, small_rational(rng));
  }
  return f;
}

}  // namespace nfc
