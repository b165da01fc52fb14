#include "nfc/powerform.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "nfc/error.hpp"

namespace nfc {

long StdWord::pdeg() const { return std::accumulate(derivs.begin(), derivs.end(), 0L); }

bool StdWordOrder::operator()(const StdWord& a, const StdWord& b) const {
  if (a.dpow != b.dpow) return a.dpow > b.dpow;
  if (a.derivs.size() != b.derivs.size()) return a.derivs.size() > b.derivs.size();
  return a.derivs < b.derivs;
}

void StdFormExpansion::add(const StdWord& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms.try_emplace(w, 0);
  it->second += c;
  if (sgn(it->second) == 0) terms.erase(it);
}

namespace {

std::mutex g_mutex;
std::map<std::vector<long>, Integer> g_memo;

Integer g_rec(const std::vector<long>& t) {
  for (long v : t)
    if (v < 0) return 0;
  if (t.size() <= 1) return 1;
  if (std::all_of(t.begin(), t.end(), [](long v) { return v == 0; })) return 1;
  {
    std::lock_guard lock(g_mutex);
    auto it = g_memo.find(t);
    if (it != g_memo.end()) return it->second;
  }
  Integer out = 0;
  std::vector<long> u = t;
  if (t[0] == 0) out += g_rec(std::vector<long>(t.begin() + 1, t.end()));
  for (std::size_t i = t[0] == 0 ? 1 : 0; i < t.size(); ++i) {
    --u[i];
    out += g_rec(u);
    ++u[i];
  }
  std::lock_guard lock(g_mutex);
  g_memo.emplace(t, out);
  return out;
}

// All compositions of j into m nonnegative parts, lexicographic.
void compositions(long j, long m, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
  if (m == 0) {
    if (j == 0) out.push_back(cur);
    return;
  }
  if (m == 1) {
    cur.push_back(j);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long t = 0; t <= j; ++t) {
    cur.push_back(t);
    compositions(j - t, m - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Integer g_value(const std::vector<long>& t) { return g_rec(t); }

StdFormExpansion t_block(long i, long j, long k) {
  if (k < 1 || i < 1 || i > k || j < 0 || j > i - 1)
    throw PreconditionError("t_block needs 1 <= i <= k and 0 <= j <= i-1");
  StdFormExpansion out;
  const Rational b = binomial(k, i);
  std::vector<std::vector<long>> comps;
  std::vector<long> cur;
  compositions(j, i - j, cur, comps);
  for (const auto& t : comps) out.add(StdWord{t, 0}, b * Rational(g_value(t)));
  return out;
}

StdFormExpansion expand_power(long k) {
  if (k < 1) throw PreconditionError("expand_power needs k >= 1");
  StdFormExpansion out;
  out.add(StdWord{{}, k}, 1);
  for (long i = 1; i <= k; ++i)
    for (long j = 0; j <= i - 1; ++j)
      for (const auto& [w, c] : t_block(i, j, k).terms) out.add(StdWord{w.derivs, k - i}, c);
  return out;
}

StdFormExpansion expand_power_oracle(long k, long cap) {
  if (k < 1) throw PreconditionError("expand_power_oracle needs k >= 1");
  if (k > cap) throw PreconditionError("expand_power_oracle: k exceeds the cap " + std::to_string(cap));
  // Letters: -1 is D, t >= 0 is L^(t).
  using Word = std::vector<long>;
  std::map<Word, Rational> work;
  for (long mask = 0; mask < (1L << k); ++mask) {
    Word w;
    for (long b = 0; b < k; ++b) w.push_back((mask >> b) & 1 ? 0 : -1);
    work[w] += 1;
  }
  // Rewrite D L^(t) -> L^(t) D + L^(t+1) at the leftmost offending position until none is left.
  StdFormExpansion out;
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    Word w = std::move(node.key());
    const Rational c = node.mapped();
    std::size_t pos = 0;
    while (pos + 1 < w.size() && !(w[pos] == -1 && w[pos + 1] >= 0)) ++pos;
    if (pos + 1 >= w.size()) {
      StdWord sw;
      for (long a : w)
        if (a >= 0) sw.derivs.push_back(a);
        else ++sw.dpow;
      out.add(sw, c);
      continue;
    }
    Word swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    Word raised = w;
    raised[pos] = w[pos + 1] + 1;
    raised.erase(raised.begin() + pos + 1);
    for (Word* nw : {&swapped, &raised}) {
      auto [it, fresh] = work.try_emplace(*nw, 0);
      it->second += c;
      if (sgn(it->second) == 0) work.erase(it);
    }
  }
  return out;
}

namespace {

template <class Op, class Comm, class Mul>
Op specialize_impl(const StdFormExpansion& e, const Op& d, const Op& l, Op one, Comm comm, Mul mul) {
  std::vector<Op> derived{l};
  std::vector<Op> dpows{one};
  Op out = one - one;
  for (const auto& [w, c] : e.terms) {
    Op term = one;
    for (long t : w.derivs) {
      while (static_cast<long>(derived.size()) <= t) derived.push_back(comm(d, derived.back()));
      term = mul(term, derived[t]);
    }
    while (static_cast<long>(dpows.size()) <= w.dpow) dpows.push_back(mul(dpows.back(), d));
    term = mul(term, dpows[w.dpow]);
    term *= CycloScalar(d.k(), c);
    out += term;
  }
  return out;
}

}  // namespace

GradedOp specialize(const StdFormExpansion& e, const GradedOp& d, const GradedOp& l) {
  if (d.k() != l.k()) throw ContextError("specialize: operators in different contexts");
  return specialize_impl<GradedOp>(
      e, d, l, GradedOp::identity(d.k()),
      [](const GradedOp& a, const GradedOp& b) { return commutator(a, b); },
      [](const GradedOp& a, const GradedOp& b) { return op_mul(a, b); });
}

HcpSeries specialize(const StdFormExpansion& e, const HcpSeries& d, const HcpSeries& l) {
  if (d.k() != l.k()) throw ContextError("specialize: series in different contexts");
  return specialize_impl<HcpSeries>(
      e, d, l, HcpSeries::d_pow(d.k(), 0),
      [](const HcpSeries& a, const HcpSeries& b) { return commutator(a, b); },
      [](const HcpSeries& a, const HcpSeries& b) { return a * b; });
}

std::string to_string(const StdFormExpansion& e) {
  std::string out;
  for (const auto& [w, c] : e.terms) {
    std::string word;
    if (!w.derivs.empty()) {
      word = "L(";
      for (std::size_t i = 0; i < w.derivs.size(); ++i) word += (i ? "," : "") + std::to_string(w.derivs[i]);
      word += ")";
    }
    if (w.dpow > 0) {
      if (!word.empty()) word += "*";
      word += w.dpow == 1 ? "D" : "D^" + std::to_string(w.dpow);
    }
    if (word.empty()) word = "1";
    Rational mag = abs(c);
    std::string body = mag == 1 ? word : mag.get_str() + "*" + word;
    if (out.empty()) out = sgn(c) < 0 ? "-" + body : body;
    else out += (sgn(c) < 0 ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

}  // namespace nfc
