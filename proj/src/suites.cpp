#include "nfc/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "nfc/error.hpp"
#include "nfc/graded_op.hpp"
#include "nfc/newton.hpp"
#include "nfc/powerform.hpp"
#include "nfc/random_series.hpp"

namespace nfc {

namespace {

constexpr std::size_t kMaxMessages = 20;

// nullopt is -infinity.
using V = std::optional<Rational>;

struct Ctx {
  Ctx(long i, std::uint64_t seed) : index(i), rng(seed) {}
  long index;
  Rng rng;
  long checks = 0, skipped = 0, violations = 0;
  std::vector<std::string> messages;
  std::string tag;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++violations;
    if (messages.size() < kMaxMessages) messages.push_back("case " + std::to_string(index) + " [" + tag + "] " + what);
  }
  void skip() { ++skipped; }
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  bool coin() { return uniform(0, 1) == 1; }
};

const Rational& pick_sigma(Ctx& c) {
  static const Rational sigmas[] = {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2)};
  return sigmas[c.uniform(0, 3)];
}

V v_of(const HcpSeries& s, const Weight& w) {
  const WeightValue v = weight_of(s, w);
  if (!v.exact()) throw InternalError("suite series must be complete");
  if (v.kind == WeightValue::Kind::MinusInf) return std::nullopt;
  return v.value;
}

bool le(const V& a, const V& b) { return !a || (b && *a <= *b); }
bool le(const V& a, const Rational& b) { return !a || *a <= b; }
V vmax(const V& a, const V& b) { return le(a, b) ? b : a; }

std::string str(const V& v) { return v ? v->get_str() : std::string("-inf"); }

bool has_ai(const HcpSeries& s) {
  for (const auto& [t, h] : s.components())
    if (contains_ai(h)) return true;
  return false;
}

long sdeg_a(const HcpSeries& s) {
  long a = kMinusInf;
  for (const auto& [t, h] : s.components()) a = std::max(a, nfc::sdeg_a(h));
  return a;
}

SeriesShape shape_for(Ctx& c, int k, bool allow_ai) {
  SeriesShape s;
  s.k = k;
  s.top = c.uniform(6, 7);
  s.allow_ai = allow_ai;
  return s;
}

// ---- appendix ---------------------------------------------------------------

void lemma_sum(Ctx& c, const HcpSeries& l, const HcpSeries& m, const Weight& w) {
  c.tag = "v of a sum";
  const V vl = v_of(l, w), vm = v_of(m, w);
  const HcpSeries s = l + m;
  const V vs = v_of(s, w);
  c.check(le(vs, vmax(vl, vm)), "v(L+M)=" + str(vs) + " exceeds max(" + str(vl) + "," + str(vm) + ")");
  const HcpSeries fl = top_term(l, w), fm = top_term(m, w), fs = top_term(s, w);
  if (vl != vm) {
    c.check(vs == vmax(vl, vm), "v(L+M) differs from the larger value");
    c.check(fs == (le(vm, vl) ? fl : fm), "f(L+M) is not the top term of the heavier summand");
    c.check(fs == top_term(fl + fm, w), "f(L+M) != f(f(L)+f(M))");
  } else {
    c.skip();
  }
  if (vl == vm && vs == vl) c.check(fs == fl + fm, "f(L+M) != f(L)+f(M) at equal weights");
  else c.skip();

  c.tag = "top term split";
  if (!s.is_zero()) {
    const HcpSeries rest = s - fs;
    const V vr = v_of(rest, w);
    const bool lower = !vr || *vr < *vs;
    c.check(lower || (vr == vs && top_term(rest, w).is_zero()), "H - f(H) does not drop");
  }
}

void two_monomials(Ctx& c, int k, const Weight& w) {
  c.tag = "two monomials";
  const bool ai = c.coin();
  const HcpSeries a = random_monomial(c.rng, k, 4, 6, ai);
  HcpSeries b = random_monomial(c.rng, k, 4, 6, ai);
  const bool dpow = c.uniform(0, 2) == 0;
  if (dpow) {
    b = HcpSeries::d_pow(k, k * c.uniform(1, 2));
    b *= random_scalar(c.rng, k, true);
  }
  const V va = v_of(a, w), vb = v_of(b, w);
  const Rational sum = *va + *vb;
  c.check(v_of(a * b, w) == V(sum), "v(LM) != v(L)+v(M) for monomials");
  const V vc = v_of(commutator(a, b), w);
  c.check(le(vc, sum), "v([L,M]) exceeds v(L)+v(M)");
  if (dpow || (!has_ai(a) && !has_ai(b)))
    c.check(le(vc, Rational(sum - w.sigma)), "commutator does not drop by sigma: " + str(vc) + " vs " + Rational(sum - w.sigma).get_str());
  else
    c.skip();
}

void lemma_products(Ctx& c, const HcpSeries& l, const HcpSeries& m, const Weight& w) {
  const HcpSeries lm = l * m;
  const V vl = v_of(l, w), vm = v_of(m, w), vlm = v_of(lm, w);
  const Rational sum = *vl + *vm;

  c.tag = "domination";
  const NewtonData el = e_set(l), em = e_set(m), elm = e_set(lm);
  for (const auto& pt : elm.points) {
    bool found = false;
    for (const auto& a : el.points)
      for (const auto& b : em.points) found = found || (pt.l <= a.l + b.l && pt.j <= a.j + b.j);
    c.check(found, "point (" + std::to_string(pt.l) + "," + std::to_string(pt.j) + ") of E(LM) is not dominated");
  }

  c.tag = "v of a product";
  const HcpSeries fl = top_term(l, w), fm = top_term(m, w);
  c.check(le(vlm, sum), "v(LM) exceeds v(L)+v(M)");
  if (!has_ai(fl) && !has_ai(fm)) c.check(vlm == V(sum), "v(LM) != v(L)+v(M) with A-free top terms");
  else c.skip();

  c.tag = "v of a commutator";
  const V vc = v_of(commutator(l, m), w);
  c.check(le(vc, sum), "v([L,M]) exceeds v(L)+v(M)");
  if (!has_ai(l) && !has_ai(m)) c.check(le(vc, Rational(sum - w.sigma)), "A-free commutator does not drop by sigma");
  else c.skip();
  const long e = c.uniform(1, 2);
  HcpSeries dk = HcpSeries::d_pow(l.k(), e * l.k());
  dk *= random_scalar(c.rng, l.k(), true);
  const V vd = v_of(dk, w);
  c.check(le(v_of(commutator(dk, m), w), Rational(*vd + *vm - w.sigma)), "[g d^(ak), M] does not drop by sigma");

  c.tag = "top term of a product";
  const HcpSeries ff = filtration_H(fl * fm, sum, w);
  c.check((vlm == V(sum)) == !ff.is_zero(), "v(LM)=v(L)+v(M) disagrees with H(f(L)f(M)) != 0");
  if (vlm == V(sum)) {
    const HcpSeries flm = top_term(lm, w);
    c.check(v_of(flm, w) == V(sum), "v(f(LM)) != v(L)+v(M)");
    c.check(flm == ff, "f(LM) != H(f(L)f(M))");
    c.check(flm == top_term(fl * fm, w), "f(LM) != f(f(L)f(M))");
  } else {
    c.skip();
  }
}

void appendix_case(Ctx& c) {
  const int k = static_cast<int>(c.uniform(1, 4));
  const Weight w(pick_sigma(c));
  const bool ai = c.coin();
  const SeriesShape sh = shape_for(c, k, ai);
  const HcpSeries l = random_series(c.rng, sh);
  const HcpSeries m = random_series(c.rng, shape_for(c, k, ai));
  lemma_sum(c, l, m, w);
  // Equal weights exercise the cancellation branches.
  const HcpSeries m2 = random_with_weight(c.rng, sh, w, *v_of(l, w));
  if (!m2.is_zero()) lemma_sum(c, l, m2, w);
  lemma_sum(c, l, -top_term(l, w) + m2, w);
  two_monomials(c, k, w);
  lemma_products(c, l, m, w);
}

// ---- filtration -------------------------------------------------------------

Rational half_steps(Ctx& c, long lo, long hi) {
  Rational r(c.uniform(2 * lo, 2 * hi), 2);
  r.canonicalize();
  return r;
}

void hd_sum(Ctx& c, const HcpSeries& l, const HcpSeries& m, const Weight& w) {
  c.tag = "H_d of a sum";
  const V vl = v_of(l, w);
  c.check(filtration_H(l, *vl + half_steps(c, 1, 2) / 2, w).is_zero(), "H_d(L) != 0 above v(L)");
  const Rational d = half_steps(c, 0, 12);
  c.check(filtration_H(l + m, d, w) == filtration_H(l, d, w) + filtration_H(m, d, w), "H_d not additive");
  const Rational d2 = half_steps(c, 0, 10);
  const Rational d1 = d2 + half_steps(c, 1, 4);
  const HcpSeries h1 = filtration_H(l, d1, w), h2 = filtration_H(l, d2, w);
  c.check(le(v_of(h2 - h1, w), d1), "v(H_d2(L) - H_d1(L)) exceeds d1");
  c.check(filtration_H(h2, d1, w) == h1, "H_d1(H_d2(L)) != H_d1(L)");
  c.check(filtration_H(h1, d2, w) == h1, "H_d2(H_d1(L)) != H_d1(L)");
}

void hd_mul(Ctx& c, const HcpSeries& l, const HcpSeries& m, const Weight& w) {
  const Rational vl = *v_of(l, w), vm = *v_of(m, w);
  const HcpSeries lm = l * m, ml = m * l;

  c.tag = "H_d of a product";
  {
    const Rational d1 = vl + half_steps(c, 0, 1), d2 = vm + half_steps(c, 0, 1);
    c.check(filtration_H(lm, d1 + d2, w) == filtration_H(filtration_H(l, d1, w) * filtration_H(m, d2, w), d1 + d2, w),
            "H(LM) != H(H(L)H(M))");
  }

  c.tag = "H_d of a commutator";
  const Rational cut = vl + vm - w.sigma;
  const HcpSeries hl = filtration_H(l, vl - w.sigma, w), hm = filtration_H(m, vm - w.sigma, w);
  const HcpSeries comm = lm - ml;
  if (!has_ai(hl) && !has_ai(hm)) {
    c.check(filtration_H(comm, cut, w) == filtration_H(commutator(hl, hm), cut, w), "H([L,M]) != H([H(L),H(M)])");
    c.check(le(v_of(comm, w), cut), "v([L,M]) exceeds v(L)+v(M)-sigma");
  } else {
    c.skip();
  }

  c.tag = "H_d symmetric product";
  if (le(v_of(comm, w), cut)) {
    const Rational eps(1, 4);
    c.check(filtration_H(lm, cut + eps, w) == filtration_H(ml, cut + eps, w), "H(LM) != H(ML) above the cut");
    // Only a consequence of the cut when sigma > 0.
    if (sgn(w.sigma) > 0)
      c.check(filtration_H(lm, vl + vm, w) == filtration_H(ml, vl + vm, w), "H(LM) != H(ML) at v(L)+v(M)");
  } else {
    c.skip();
  }
}

void hs_items(Ctx& c, const HcpSeries& l, const HcpSeries& m, const SeriesShape& sh, const Weight& w) {
  const Rational vl = *v_of(l, w), vm = *v_of(m, w);
  const long mm = c.uniform(0, 4);

  c.tag = "HS item 1";
  const HcpSeries l2 = random_with_weight(c.rng, sh, w, vl);
  if (!l2.is_zero())
    c.check(filtration_HS(l, vl, mm, w) + filtration_HS(l2, vl, mm, w) == filtration_HS(l + l2, vl, mm, w),
            "HS not additive");
  else
    c.skip();

  c.tag = "HS item 2";
  const Rational d = half_steps(c, 0, 12);
  const HcpSeries hs = filtration_HS(l, d, mm, w);
  c.check(filtration_H(hs, d, w) == hs, "H_d(HS_d(L)) != HS_d(L)");
  c.check(filtration_HS(filtration_H(l, d, w), d, mm, w) == hs, "HS_d(H_d(L)) != HS_d(L)");

  c.tag = "HS item 3";
  const long a = c.uniform(0, 4);
  const HcpSeries hd = filtration_H(l, d, w);
  c.check((sdeg_a(hd) <= a) == (filtration_HS(l, d, a, w) == hd), "Sdeg_A bound disagrees with HS = H");

  c.tag = "HS item 4";
  {
    const long a1 = sdeg_a(filtration_H(l, vl, w)), a2 = sdeg_a(filtration_H(m, vm, w));
    const HcpSeries lhs = filtration_HS(l * m, vl + vm, a1 + a2, w);
    const HcpSeries rhs = filtration_H(filtration_HS(l, vl, a1, w) * filtration_HS(m, vm, a2, w), vl + vm, w);
    c.check(lhs == rhs, "HS(LM) != H(HS(L) HS(M))");
  }

  c.tag = "HS item 5";
  if (sgn(w.sigma) > 0) {
    const HcpSeries mono = random_monomial(c.rng, l.k(), 4, 6, sh.allow_ai);
    const auto pt = e_set(mono).points.front();
    long lowest = kUnbounded;
    const HcpSeries top_m = filtration_H(m, vm, w);
    for (const auto& [t, h] : top_m.components())
      for (const auto& [key, cc] : h.gamma) lowest = std::min(lowest, key.first);
    if (lowest >= 1) {
      const long a2 = c.uniform(0, lowest - 1);
      const Rational d1 = w(pt.l, pt.j);
      c.check(filtration_HS(m, vm, a2, w).is_zero(), "generator: HS(M) should vanish");
      c.check(filtration_HS(mono * m, d1 + vm, pt.l + a2, w).is_zero(), "HS(LM) != 0 for a single-point L");
    } else {
      c.skip();
    }
  } else {
    c.skip();
  }
}

void corollary(Ctx& c, int k, const Weight& w) {
  c.tag = "power of a sum";
  if (sgn(w.sigma) == 0) {
    c.skip();
    return;
  }
  const long a = c.uniform(1, std::max(1, 6 / k));
  const long p = a * k;
  const HcpSeries l = HcpSeries::d_pow(k, p);
  SeriesShape sh;
  sh.k = k;
  sh.top = p;
  sh.allow_ai = false;
  sh.max_terms = 4;
  const HcpSeries m = random_with_weight(c.rng, sh, w, Rational(p));
  if (m.is_zero()) {
    c.skip();
    return;
  }
  c.check(filtration_H(commutator(l, m), Rational(2 * p), w).is_zero(), "H_2p([d^(ak), M]) != 0");
  const HcpSeries s = l + m;
  std::vector<HcpSeries> lp{HcpSeries::d_pow(k, 0)}, mp{HcpSeries::d_pow(k, 0)};
  for (long d = 1; d <= 4; ++d) {
    lp.push_back(lp.back() * l);
    mp.push_back(mp.back() * m);
    const Rational cut(d * p);
    HcpSeries rhs(k);
    for (long j = 0; j <= d; ++j) {
      HcpSeries term = filtration_H(mp[d - j] * lp[j], cut, w);
      term *= CycloScalar(k, binomial(d, j));
      rhs += term;
    }
    c.check(filtration_H(series_pow(s, d), cut, w) == rhs, "binomial expansion fails for d=" + std::to_string(d));
  }
}

// Remark: A-free top parts of equal weight p force H_2p([L,M]) = 0 (sigma > 0).
void commuting_tops(Ctx& c, int k, const Weight& w) {
  c.tag = "A-free tops commute";
  if (sgn(w.sigma) == 0) {
    c.skip();
    return;
  }
  SeriesShape sh;
  sh.k = k;
  sh.top = 6;
  sh.allow_ai = true;
  const Rational p(6);
  const HcpSeries l = random_with_weight(c.rng, sh, w, p), m = random_with_weight(c.rng, sh, w, p);
  if (l.is_zero() || m.is_zero() || has_ai(filtration_H(l, p, w)) || has_ai(filtration_H(m, p, w))) {
    c.skip();
    return;
  }
  c.check(filtration_H(commutator(l, m), 2 * p, w).is_zero(), "H_2p([L,M]) != 0 with A-free tops");
}

void filtration_case(Ctx& c) {
  const int k = static_cast<int>(c.uniform(1, 4));
  const Weight w(pick_sigma(c));
  const bool ai = c.coin();
  const SeriesShape sh = shape_for(c, k, ai);
  const HcpSeries l = random_series(c.rng, sh);
  const HcpSeries m = random_series(c.rng, shape_for(c, k, ai));
  hd_sum(c, l, m, w);
  hd_mul(c, l, m, w);
  hs_items(c, l, m, sh, w);
  corollary(c, k, w);
  commuting_tops(c, k, w);
}

// ---- powerform --------------------------------------------------------------

void powerform_case(Ctx& c) {
  const long k = c.index % kOracleCap + 1;
  const StdFormExpansion e = expand_power(k);
  c.tag = "closed form vs oracle";
  c.check(e == expand_power_oracle(k), "expand_power(" + std::to_string(k) + ") differs from the oracle");

  c.tag = "grading";
  for (const auto& [word, coef] : e.terms) {
    c.check(word.multiple_index() + word.pdeg() + word.dpow == k, "word off the grade");
    c.check(sgn(coef) > 0, "nonpositive coefficient");
  }
  std::vector<long> t(c.uniform(1, 4));
  for (auto& x : t) x = c.uniform(0, 3);
  c.check(sgn(g_value(t)) > 0, "g is not positive");

  c.tag = "specialization";
  const long ks = c.index % 4 + 1;
  GradedOp l(1);
  const long nterms = c.uniform(1, 4);
  for (long i = 0; i < nterms; ++i)
    l.add_term(c.uniform(0, 3), c.uniform(0, 2), CycloScalar(1, Rational(c.uniform(1, 3) * (c.coin() ? 1 : -1))));
  const GradedOp d = GradedOp::d(1);
  c.check(specialize(expand_power(ks), d, l) == op_pow(d + l, ks), "specialized expansion != (D+L)^k");
}

using CaseFn = void (*)(Ctx&);

CaseFn case_fn(const std::string& name) {
  if (name == "appendix") return appendix_case;
  if (name == "filtration") return filtration_case;
  if (name == "powerform") return powerform_case;
  throw PreconditionError("unknown suite '" + name + "'");
}

}  // namespace

std::vector<std::string> suite_names() { return {"appendix", "filtration", "powerform"}; }

SuiteResult run_suite(const std::string& name, long cases, std::uint64_t seed, unsigned threads) {
  const CaseFn fn = case_fn(name);
  if (cases < 0) throw PreconditionError("case count must be nonnegative");
  const auto start = std::chrono::steady_clock::now();
  std::vector<Ctx> results;
  results.reserve(cases);
  for (long i = 0; i < cases; ++i) results.emplace_back(i, case_seed(seed, i));

  std::atomic<long> next{0};
  const auto worker = [&] {
    for (long i = next++; i < cases; i = next++) {
      Ctx& c = results[i];
      try {
        fn(c);
      } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
      }
    }
  };
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<long>(n, std::max(1L, cases)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteResult out;
  out.name = name;
  out.cases = cases;
  for (const auto& c : results) {
    out.checks += c.checks;
    out.skipped += c.skipped;
    out.violations += c.violations;
    for (const auto& m : c.messages)
      if (out.messages.size() < kMaxMessages) out.messages.push_back(m);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace nfc
