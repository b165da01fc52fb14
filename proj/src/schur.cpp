#include "nfc/schur.hpp"

#include <algorithm>

#include "nfc/error.hpp"

namespace nfc {

namespace {

GradedOp single(const GradedOp& a, long t) {
  GradedOp out(a.k());
  if (const auto* c = a.component(t)) out.set_component(t, *c);
  return out;
}

void check_schur_input(const GradedOp& Q) {
  if (!is_monic(Q)) throw PreconditionError("Q is not monic");
  if (!is_normalized(Q)) throw PreconditionError("Q is not normalized");
  const long q = ord(Q);
  if (q <= 0) throw PreconditionError("ord(Q) must be positive");
  if (ddeg(Q) != q) throw PreconditionError("deg(Q) differs from ord(Q)");
}

}  // namespace

GradedOp invert_unit(const GradedOp& S) {
  const auto* c0 = S.component(0);
  if (S.top_bound() > 0 || !c0 || c0->coeffs.size() != 1 || !c0->coeffs[0].is_one() ||
      c0->xcap != kUnbounded)
    throw PreconditionError("invert_unit needs an order-0 operator with S_0 = 1");
  const int k = S.k();
  GradedOp T(k, S.floor());
  T.set_component(0, *c0);
  const long low = S.floor() == kNoFloor ? S.components().begin()->first : S.floor();
  if (S.floor() == kNoFloor && low < 0)
    throw PreconditionError("invert_unit needs a window floor when S has negative orders");
  for (long t = -1; t >= low; --t) {
    GradedOp acc(k);
    bool any = false;
    for (const auto& [a, ca] : S.components()) {
      if (a >= 0 || a < t) continue;
      const auto* cb = T.component(t - a);
      if (!cb) continue;
      acc -= op_mul(single(S, a), single(T, t - a));
      any = true;
    }
    if (!any) continue;
    if (const auto* c = acc.component(t)) T.set_component(t, *c);
  }
  return T;
}

SchurPair schur_operator(const GradedOp& Q, long depth, const SchurOptions& opt) {
  check_schur_input(Q);
  if (depth <= 0) throw PreconditionError("depth must be positive");
  const int k = Q.k();
  const long q = ord(Q);
  if (Q.floor() != kNoFloor) depth = std::min(depth, q - Q.floor());
  if (depth <= 0) throw TruncationError("Q window too shallow for a Schur operator");
  const long X = opt.xcap > 0 ? opt.xcap : 2 * depth + 2 * q + 16;
  if (X < depth) throw PreconditionError("x-cap must be at least the depth");

  // Lower components of Q and their action values.
  std::map<long, std::vector<CycloScalar>> lamQ;
  std::map<long, long> capQ;
  for (const auto& [j, c] : Q.components()) {
    if (j >= q || j < q - depth) continue;
    const long cap = std::min(Q.action_cap(j), X + depth + q);
    capQ[j] = cap;
    lamQ[j] = Q.action(j, cap);
  }

  std::map<long, std::vector<CycloScalar>> lamS;  // order -> lambda_S(n), n = 0..cap
  lamS[0] = std::vector<CycloScalar>(X + 1, CycloScalar(k, 1));
  GradedOp S(k, -depth);
  S.set_component(0, GradedOp::Component{kUnbounded, {CycloScalar(k, 1)}});

  for (long t = -1; t >= -depth; --t) {
    // R(n) = -sum_j lambda_{S_t'}(n) lambda_{Q_j}(n - t'), t' = t + q - j.
    long cap = X + t;
    for (const auto& [j, lq] : lamQ) {
      const long tp = t + q - j;
      if (tp > 0 || !lamS.count(tp)) continue;
      cap = std::min(cap, static_cast<long>(lamS[tp].size()) - 1);
      cap = std::min(cap, capQ[j] + tp);
    }
    if (cap < 0) throw TruncationError("Schur solve ran out of window at order " + std::to_string(t));
    std::vector<CycloScalar> R(cap + 1, CycloScalar(k));
    for (const auto& [j, lq] : lamQ) {
      const long tp = t + q - j;
      if (tp > 0 || !lamS.count(tp)) continue;
      const auto& ls = lamS[tp];
      for (long n = 0; n <= cap; ++n) {
        const long m = n - tp;
        if (m < 0 || ls[n].is_zero() || lq[m].is_zero()) continue;
        R[n] -= ls[n] * lq[m];
      }
    }
    std::vector<CycloScalar> lam(cap + 1, CycloScalar(k));
    for (long n = 0; n <= cap; ++n) {
      const Integer lead = falling_factorial(n - t, q);
      const Integer sub = falling_factorial(n, q);
      CycloScalar prev = n - q >= 0 ? lam[n - q] : CycloScalar(k);
      if (lead == 0) {
        // Centralizer direction: the gauge picks the value, the equation must be consistent.
        if (!R[n].is_zero())
          throw InternalError("Schur recurrence obstruction at order " + std::to_string(t) +
                              ", n = " + std::to_string(n));
        if (t == -1 && n == 0) lam[n] = CycloScalar(k, opt.gauge);
        continue;
      }
      lam[n] = (R[n] + prev * Rational(sub)) / Rational(lead);
    }
    const long xc = cap - t;
    S.set_component(t, GradedOp::Component{xc, action_to_coeffs(k, t, lam, xc)});
    lamS[t] = std::move(lam);
  }

  SchurPair out;
  out.q = q;
  out.depth = depth;
  out.S = S;
  out.Sinv = invert_unit(S);
  const GradedOp check = op_mul(out.Sinv, op_mul(Q, S)) - GradedOp::d_pow(k, q);
  if (!check.is_zero_in_window() || check.floor() > q - depth)
    throw InternalError("Schur verification failed: Sinv Q S differs from d^q in the window");
  return out;
}

NormalForm normal_form_detailed(const GradedOp& Pin, const GradedOp& Qin, long depth,
                                const NormalFormOptions& opt) {
  if (!is_monic(Pin)) throw PreconditionError("P is not monic");
  const long p = ord(Pin);
  if (ddeg(Pin) != p) throw PreconditionError("deg(P) differs from ord(P)");
  check_schur_input(Qin);
  const long q = ord(Qin);
  const int k = static_cast<int>(q);
  const GradedOp P = Pin.in_context(k);
  const GradedOp Q = Qin.in_context(k);

  // The deepest order p - depth has i = depth; below order 0 the first -t eigenvalues are skipped.
  const long skip = std::max(0L, depth - p);
  const long need = skip + q * (depth + 1) + opt.margin;
  const long nb_hi = q + 1;
  const long X = opt.xcap > 0 ? opt.xcap : std::max(need + p + q + 2, 2 * (depth + p) + 2);

  NormalForm nf;
  SchurOptions so;
  so.xcap = X;
  so.gauge = opt.gauge;
  nf.schur = schur_operator(Q, depth, so);
  nf.conjugated = op_mul(nf.schur.Sinv, op_mul(P, nf.schur.S));
  const long floor = std::max(nf.conjugated.floor(), p - depth);
  HcpSeries series(k, floor);
  for (long t = p; t >= floor; --t) {
    const long i = p - t;
    const long dmax = std::max(0L, i - 1);
    Hcp h;
    try {
      h = fit_hcp(nf.conjugated, t, dmax, 0, opt.margin);
    } catch (const NotHcpError&) {
      try {
        // A rare coincidence in the first samples; retry with more room.
        h = fit_hcp(nf.conjugated, t, 2 * dmax + 2, nb_hi, opt.margin);
      } catch (const NotHcpError& e) {
        throw TruncationError(std::string("normal form component not fitted after escalation; "
                                          "increase depth or x-cap: ") +
                              e.what());
      }
    }
    if (!h.is_zero()) series.add(h);
  }
  const AqkReport rep = check_Aqk(series, 0);
  if (!rep.holds)
    throw PropertyViolation("normal form fails A_q(0): clause " + std::to_string(rep.clause) +
                            " at order " + std::to_string(rep.order) + " (" + rep.detail + ")");
  nf.series = std::move(series);
  return nf;
}

HcpSeries normal_form(const GradedOp& P, const GradedOp& Q, long depth) {
  return normal_form_detailed(P, Q, depth).series;
}

}  // namespace nfc
