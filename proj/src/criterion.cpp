#include "nfc/criterion.hpp"

#include <algorithm>

#include "nfc/error.hpp"
#include "nfc/schur.hpp"

namespace nfc {

void BivarPoly::add(long u, long v, const Rational& c) {
  if (u < 0 || v < 0) throw PreconditionError("negative exponent in polynomial");
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms.try_emplace({u, v}, 0);
  it->second += c;
  if (sgn(it->second) == 0) terms.erase(it);
}

std::string to_string(const BivarPoly& f) {
  if (f.is_zero()) return "0";
  // Larger X power first, then larger Y power.
  std::vector<std::pair<std::pair<long, long>, Rational>> ts(f.terms.rbegin(), f.terms.rend());
  std::string out;
  for (const auto& [uv, c] : ts) {
    const auto [u, v] = uv;
    std::string mono;
    auto var = [&](const char* name, long e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    var("X", u);
    var("Y", v);
    Rational mag = abs(c);
    std::string body;
    if (mono.empty()) body = mag.get_str();
    else if (mag == 1) body = mono;
    else body = mag.get_str() + "*" + mono;
    if (out.empty()) out = sgn(c) < 0 ? "-" + body : body;
    else out += (sgn(c) < 0 ? " - " : " + ") + body;
  }
  return out;
}

std::vector<HomogPiece> weighted_decompose(const BivarPoly& f, long p, long q) {
  if (f.is_zero()) throw PreconditionError("weighted_decompose of the zero polynomial");
  if (p <= 0 || q <= 0) throw PreconditionError("weights must be positive");
  std::map<long, HomogPiece> by_weight;
  for (const auto& [uv, c] : f.terms) {
    const long w = p * uv.first + q * uv.second;
    auto& piece = by_weight[w];
    piece.weight = w;
    piece.terms.push_back({c, uv.first, uv.second});
  }
  std::vector<HomogPiece> out;
  for (auto it = by_weight.rbegin(); it != by_weight.rend(); ++it) {
    auto piece = it->second;
    std::sort(piece.terms.begin(), piece.terms.end(),
              [](const HomogTerm& a, const HomogTerm& b) { return a.u > b.u; });
    out.push_back(std::move(piece));
  }
  return out;
}

Rational type_identity(const HomogPiece& piece, long i) {
  if (i < 0) throw PreconditionError("type index must be nonnegative");
  Rational s = 0;
  for (const auto& t : piece.terms) s += binomial(t.u, i) * t.k;
  return s;
}

namespace {

template <class Op, class Mul>
Op evaluate_impl(const BivarPoly& f, const Op& p, const Op& q, Op one, Mul mul) {
  std::vector<Op> pp{one}, qp{one};
  Op out = one - one;
  for (const auto& [uv, c] : f.terms) {
    while (static_cast<long>(pp.size()) <= uv.first) pp.push_back(mul(pp.back(), p));
    while (static_cast<long>(qp.size()) <= uv.second) qp.push_back(mul(qp.back(), q));
    Op term = mul(pp[uv.first], qp[uv.second]);
    term *= CycloScalar(p.k(), c);
    out += term;
  }
  return out;
}

}  // namespace

GradedOp evaluate_poly(const BivarPoly& f, const GradedOp& p, const GradedOp& q) {
  if (p.k() != q.k()) throw ContextError("evaluate_poly: operators in different contexts");
  return evaluate_impl<GradedOp>(f, p, q, GradedOp::identity(p.k()),
                                 [](const GradedOp& a, const GradedOp& b) { return op_mul(a, b); });
}

HcpSeries evaluate_poly(const BivarPoly& f, const HcpSeries& p, const HcpSeries& q) {
  if (p.k() != q.k()) throw ContextError("evaluate_poly: series in different contexts");
  return evaluate_impl<HcpSeries>(f, p, q, HcpSeries::d_pow(p.k(), 0),
                                  [](const HcpSeries& a, const HcpSeries& b) { return a * b; });
}

namespace {

// Incremental row reduction over Q.
class RowReducer {
 public:
  explicit RowReducer(std::size_t n) : n_(n) {}

  void add(std::vector<Rational> row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = pivots_[r];
      if (sgn(row[c]) == 0) continue;
      const Rational f = row[c];
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(rows_[r][j]) != 0) row[j] -= f * rows_[r][j];
    }
    std::size_t c = 0;
    while (c < n_ && sgn(row[c]) == 0) ++c;
    if (c == n_) return;
    const Rational inv = 1 / row[c];
    for (auto& x : row) x *= inv;
    for (auto& other : rows_) {
      if (sgn(other[c]) == 0) continue;
      const Rational f = other[c];
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(row[j]) != 0) other[j] -= f * row[j];
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(c);
  }

  std::size_t rank() const { return rows_.size(); }

  // Nullspace vector for the last free column, or empty if the rank is full.
  std::vector<Rational> last_null_vector() const {
    std::vector<bool> is_pivot(n_, false);
    for (auto c : pivots_) is_pivot[c] = true;
    std::size_t free = n_;
    for (std::size_t c = n_; c-- > 0;)
      if (!is_pivot[c]) {
        free = c;
        break;
      }
    if (free == n_) return {};
    std::vector<Rational> v(n_, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][free];
    return v;
  }

 private:
  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

// Exact coefficient positions of order t shared by every operator: x-degrees m0..hi.
long common_xmax(const std::vector<const GradedOp*>& ops, long t) {
  long cap = kUnbounded, extent = -1;
  for (const auto* op : ops) {
    if (t < op->floor())
      throw TruncationError("order " + std::to_string(t) + " is below an operator window (floor " +
                            std::to_string(op->floor()) + ")");
    const auto* c = op->component(t);
    if (!c) continue;
    cap = std::min(cap, c->xcap);
    extent = std::max(extent, GradedOp::first_xdeg(t) + static_cast<long>(c->coeffs.size()) - 1);
  }
  return std::min(cap, extent);
}

struct Mono {
  long u, v, w;
};

bool vanishes_on(const GradedOp& op, long tmin, long tmax) {
  for (long t = tmin; t <= tmax; ++t) {
    const long hi = common_xmax({&op}, t);
    for (long x = GradedOp::first_xdeg(t); x <= hi; ++x)
      if (!op.coeff(x, x + t).is_zero()) return false;
  }
  return true;
}

}  // namespace

std::optional<BcCertificate> bc_certificate(const GradedOp& p, const GradedOp& q, long wmax, long depth) {
  if (!is_monic(p) || !is_monic(q)) throw PreconditionError("bc_certificate needs monic operators");
  if (p.k() != q.k()) throw ContextError("bc_certificate: operators in different contexts");
  if (depth <= 0) throw PreconditionError("depth must be positive");
  const long pp = ord(p), qq = ord(q);
  if (pp <= 0 || qq <= 0) throw PreconditionError("bc_certificate needs positive orders");
  const int k = p.k();

  std::vector<Mono> monos;
  for (long u = 0; u * pp <= wmax; ++u)
    for (long v = 0; u * pp + v * qq <= wmax; ++v) monos.push_back({u, v, u * pp + v * qq});
  std::stable_sort(monos.begin(), monos.end(), [](const Mono& a, const Mono& b) {
    return a.w != b.w ? a.w < b.w : a.u < b.u;
  });

  std::vector<GradedOp> ppow{GradedOp::identity(k)}, qpow{GradedOp::identity(k)};
  std::vector<GradedOp> evals;
  std::size_t used = 0;
  while (used < monos.size()) {
    const long W = monos[used].w;
    while (used < monos.size() && monos[used].w == W) {
      const auto& m = monos[used++];
      while (static_cast<long>(ppow.size()) <= m.u) ppow.push_back(op_mul(ppow.back(), p));
      while (static_cast<long>(qpow.size()) <= m.v) qpow.push_back(op_mul(qpow.back(), q));
      evals.push_back(op_mul(ppow[m.u], qpow[m.v]));
    }
    if (used < 2) continue;
    std::vector<const GradedOp*> ops;
    for (const auto& e : evals) ops.push_back(&e);
    RowReducer rr(used);
    for (long t = W; t >= W - depth && rr.rank() < used; --t) {
      const long hi = common_xmax(ops, t);
      for (long x = GradedOp::first_xdeg(t); x <= hi && rr.rank() < used; ++x) {
        std::vector<std::vector<Rational>> coords(euler_phi(k), std::vector<Rational>(used, 0));
        for (std::size_t i = 0; i < used; ++i) {
          const CycloScalar c = evals[i].coeff(x, x + t);
          for (std::size_t a = 0; a < c.coeffs().size(); ++a) coords[a][i] = c.coeffs()[a];
        }
        for (auto& row : coords) rr.add(std::move(row));
      }
    }
    if (rr.rank() == used) continue;
    const auto vec = rr.last_null_vector();
    BcCertificate cert;
    for (std::size_t i = 0; i < used; ++i) cert.poly.add(monos[i].u, monos[i].v, vec[i]);
    // Scale so the heaviest term with the largest X power has coefficient 1.
    const Mono* lead = nullptr;
    for (std::size_t i = 0; i < used; ++i)
      if (sgn(vec[i]) != 0 && (!lead || monos[i].w > lead->w || (monos[i].w == lead->w && monos[i].u > lead->u)))
        lead = &monos[i];
    const Rational scale = 1 / cert.poly.terms.at({lead->u, lead->v});
    BivarPoly scaled;
    for (const auto& [uv, c] : cert.poly.terms) scaled.add(uv.first, uv.second, c * scale);
    cert.poly = std::move(scaled);
    cert.depth_found = depth;

    // Recheck on twice the depth, as far as the windows reach.
    const GradedOp val = evaluate_poly(cert.poly, p, q);
    long deep = W - 2 * depth;
    if (val.floor() != kNoFloor) deep = std::max(deep, val.floor());
    if (!vanishes_on(val, deep, W)) return std::nullopt;
    cert.depth_verified = W - deep;
    return cert;
  }
  return std::nullopt;
}

HsCheck hs_coefficient_check(const HcpSeries& pprime, long q, const BivarPoly& f, long s) {
  if (s < 0) throw PreconditionError("s must be nonnegative");
  if (q <= 0) throw PreconditionError("q must be positive");
  const TopLineClass cls = classify_top_line(pprime);
  if (cls.kind != TopLineClass::Kind::Restriction || cls.vertices.size() < 2)
    throw PreconditionError("hs_coefficient_check needs a restriction top line");
  const int k = pprime.k();
  const long p = pprime.top_order();
  const auto [a0, b0] = cls.vertices[1];
  const Hcp* comp = pprime.component(b0);
  for (const auto& [key, c] : comp->gamma)
    if (key.first == a0 && key.second != 0)
      throw PreconditionError("top-line vertex contains A_i");
  const CycloScalar t0 = comp->gamma.at({a0, 0});

  const auto pieces = weighted_decompose(f, p, q);
  const HomogPiece& top = pieces.front();
  HsCheck out;
  out.a0 = a0;
  out.b0 = b0;
  out.weight = top.weight;
  const Weight w(cls.sigma, 1);

  const HcpSeries qprime = HcpSeries::d_pow(k, q);
  const HcpSeries value = evaluate_poly(f, pprime, qprime);
  out.lhs = filtration_HS(value, Rational(top.weight), s * a0, w);

  Rational sum = 0;
  for (const auto& t : top.terms) sum += binomial(t.u, s) * t.k;
  out.rhs = HcpSeries(k);
  if (sgn(sum) != 0) {
    const HcpSeries l0 = HcpSeries::from_hcp(Hcp::monomial(k, a0, 0, b0, t0));
    HcpSeries r = series_pow(l0, s) * HcpSeries::d_pow(k, top.weight - s * p);
    r *= CycloScalar(k, sum);
    out.rhs = r;
  }
  out.asserted = true;
  for (long i = 0; i < s; ++i)
    if (sgn(type_identity(top, i)) != 0) out.asserted = false;
  out.equal = out.lhs == out.rhs;
  return out;
}

PairReport classify_pair(const GradedOp& p, const GradedOp& q, long depth,
                         const std::optional<BivarPoly>& candidate) {
  if (!is_monic(p) || !is_monic(q)) throw PreconditionError("classify_pair needs monic operators");
  if (!is_normalized(q)) throw PreconditionError("Q is not normalized");
  if (ddeg(p) != ord(p) || ddeg(q) != ord(q)) throw PreconditionError("deg differs from ord");
  PairReport rep;
  rep.p_src = to_string(p);
  rep.q_src = to_string(q);
  rep.depth = depth;
  const long pp = ord(p), qq = ord(q);

  const GradedOp comm = commutator(p, q);
  rep.commutes = comm.is_zero_in_window();

  const NormalForm nf = normal_form_detailed(p, q, depth);
  rep.normal_form_floor = nf.series.floor();
  const bool total = p.is_total() && q.is_total();
  rep.classification = classify_top_line(nf.series, rep.commutes && total);
  try {
    const TopLineClass deeper = classify_top_line(normal_form(p, q, 2 * depth));
    rep.stable_at_double_depth = deeper.kind == rep.classification.kind;
  } catch (const TruncationError&) {
    rep.stable_at_double_depth.reset();
  }
  Rational pq(pp, qq);
  pq.canonicalize();
  rep.sigma_is_p_over_q = rep.classification.kind == TopLineClass::Kind::Restriction &&
                          rep.classification.sigma == pq;

  if (rep.commutes) {
    rep.certificate_wmax = pp * qq;
    rep.certificate = bc_certificate(p, q, rep.certificate_wmax, std::max(depth, pp * qq));
  }
  std::optional<BivarPoly> f = candidate;
  if (!f && rep.certificate) f = rep.certificate->poly;
  if (f && !f->is_zero()) {
    const auto top = weighted_decompose(*f, pp, qq).front();
    long umax = 0;
    for (const auto& t : top.terms) umax = std::max(umax, t.u);
    for (long i = 0; i <= umax; ++i) rep.type_identities.push_back({i, type_identity(top, i)});
  }

  using K = TopLineClass::Kind;
  const auto& c = rep.classification;
  rep.tentative = c.tentative;
  if (rep.commutes) {
    if (rep.certificate)
      rep.verdict = "commuting pair; Burchnall-Chaundy relation found and rechecked on " +
                    std::to_string(rep.certificate->depth_verified) + " orders";
    else
      rep.verdict = "commuting pair; no relation of weight <= " + std::to_string(rep.certificate_wmax) +
                    " found in the window (bounded evidence only)";
    if (!total) rep.tentative = true;
  } else if (c.kind == K::Restriction && !c.tentative) {
    rep.verdict = "algebraically independent; no Burchnall-Chaundy relation exists";
  } else if (c.kind == K::Restriction) {
    rep.verdict = "restriction top line in the window (tentative); independence not certified";
  } else if (c.kind == K::Asymptotic) {
    rep.verdict = "criterion out of scope (asymptotic top line)";
  } else if (c.kind == K::SdegZero) {
    rep.verdict = "Sdeg_A = 0 throughout the window; no conclusion for a noncommuting pair";
  } else {
    rep.verdict = "undetermined: window too shallow";
  }
  return rep;
}

std::vector<Rational> kdv_potential(long xdeg) {
  if (xdeg < 1) throw PreconditionError("kdv_potential needs x-degree >= 1");
  std::vector<Rational> a(xdeg + 1, 0);
  a[1] = 1;
  // (n+2)(n+1) a[n+2] = -3 sum_{i+j=n} a[i] a[j]
  for (long n = 0; n + 2 <= xdeg; ++n) {
    Rational s = 0;
    for (long i = 0; i <= n; ++i) s += a[i] * a[n - i];
    a[n + 2] = -3 * s / Rational((n + 2) * (n + 1));
  }
  return a;
}

std::pair<GradedOp, GradedOp> kdv_pair(long xdeg) {
  const auto u = kdv_potential(xdeg);
  GradedOp q = GradedOp::d_pow(1, 2);
  GradedOp p = GradedOp::d_pow(1, 3);
  for (long n = 0; n <= xdeg; ++n) {
    if (sgn(u[n]) == 0) continue;
    q.add_term(n, 0, CycloScalar(1, u[n]));
    p.add_term(n, 1, CycloScalar(1, Rational(3, 2) * u[n]));
    if (n >= 1) p.add_term(n - 1, 0, CycloScalar(1, Rational(3, 4) * n * u[n]));
  }
  q.set_floor(-xdeg);
  p.set_floor(1 - xdeg);
  return {p, q};
}

}  // namespace nfc
