#include "nfc/parser.hpp"

#include <cctype>

#include "nfc/error.hpp"

namespace nfc {

namespace {

// Character-level recursive descent; keeps line/column for diagnostics.
class Parser {
 public:
  Parser(const std::string& src, int k, bool bivar) : s_(src), k_(k), bivar_(bivar) {}

  ExprPtr parse_all() {
    auto e = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  int k_;
  bool bivar_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      const char got = peek();
      fail(std::string("expected '") + c + "'" + (got ? std::string(", found '") + got + "'" : ", found end of input"));
    }
  }

  std::shared_ptr<Expr> node(Expr::Kind kind, int line, int col) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->line = line;
    e->column = col;
    return e;
  }

  std::string digits() {
    skip_ws();
    std::string out;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      out.push_back(s_[pos_]);
      advance();
    }
    return out;
  }

  long nat() {
    const std::string d = digits();
    if (d.empty()) fail("expected a nonnegative integer");
    if (d.size() > 9) fail("integer too large");
    return std::stol(d);
  }

  long integer() {
    const bool neg = accept('-');
    const long v = nat();
    return neg ? -v : v;
  }

  ExprPtr expr() {
    auto left = unary();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return left;
      const int l = line_, col = col_;
      advance();
      auto n = node(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, l, col);
      n->kids = {left, unary()};
      left = n;
    }
  }

  // term with an optional leading sign
  ExprPtr unary() {
    if (peek() == '-') {
      const int l = line_, col = col_;
      advance();
      auto n = node(Expr::Kind::Neg, l, col);
      n->kids = {unary()};
      return n;
    }
    return term();
  }

  ExprPtr term() {
    auto left = factor();
    while (peek() == '*') {
      const int l = line_, col = col_;
      advance();
      auto n = node(Expr::Kind::Mul, l, col);
      ExprPtr right;
      if (peek() == '-') {
        const int l2 = line_, c2 = col_;
        advance();
        auto neg = node(Expr::Kind::Neg, l2, c2);
        neg->kids = {factor()};
        right = neg;
      } else {
        right = factor();
      }
      n->kids = {left, right};
      left = n;
    }
    return left;
  }

  ExprPtr factor() {
    auto base = atom();
    if (peek() == '^') {
      const int l = line_, col = col_;
      advance();
      auto n = node(Expr::Kind::Pow, l, col);
      n->exponent = nat();
      n->kids = {base};
      return n;
    }
    return base;
  }

  std::string ident() {
    skip_ws();
    std::string out;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      out.push_back(s_[pos_]);
      advance();
    }
    return out;
  }

  ExprPtr atom() {
    const char c = peek();
    const int l = line_, col = col_;
    if (c == '(') {
      advance();
      auto e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (peek() == '/') {
        advance();
        const std::string den = digits();
        if (den.empty()) fail("expected a denominator");
        num += "/" + den;
      }
      auto n = node(Expr::Kind::Rational, l, col);
      try {
        n->value = parse_rational(num);
      } catch (const DivisionByZero&) {
        throw ParseError("zero denominator", l, col);
      }
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      if (c == '\0') fail("unexpected end of input");
      fail("unexpected '" + std::string(1, c) + "'");
    }
    const std::string id = ident();
    if (bivar_) {
      if (id == "X") return node(Expr::Kind::X, l, col);
      if (id == "Y") return node(Expr::Kind::D, l, col);
      throw ParseError("unknown variable '" + id + "' (use X and Y)", l, col);
    }
    if (id == "x") return node(Expr::Kind::X, l, col);
    if (id == "d") return node(Expr::Kind::D, l, col);
    if (id == "xi") {
      if (k_ == 0) throw ParseError("xi needs a cyclotomic context (set --k)", l, col);
      return node(Expr::Kind::Xi, l, col);
    }
    if (id == "G") return gform(l, col);
    throw ParseError("unknown identifier '" + id + "'", l, col);
  }

  // Raw scalar text up to ';' or '}' outside parentheses.
  CycloScalar scalar() {
    skip_ws();
    const int l = line_, col = col_;
    std::string raw;
    int depth = 0;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (depth == 0 && (c == ';' || c == '}')) break;
      if (c == '(') ++depth;
      if (c == ')' && --depth < 0) fail("unbalanced ')'");
      raw.push_back(c);
      advance();
    }
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.pop_back();
    if (raw.size() >= 2 && raw.front() == '(' && raw.back() == ')') raw = raw.substr(1, raw.size() - 2);
    if (raw.find("xi") != std::string::npos && k_ == 0)
      throw ParseError("xi needs a cyclotomic context (set --k)", l, col);
    try {
      return CycloScalar::parse(k_ == 0 ? 1 : k_, raw);
    } catch (const ParseError& e) {
      throw ParseError("bad coefficient '" + raw + "'", l, col);
    }
  }

  ExprPtr gform(int l, int col) {
    const int k = k_ == 0 ? 1 : k_;
    expect('{');
    if (ident() != "r") fail("expected 'r=' in G-literal");
    expect('=');
    auto n = node(Expr::Kind::Gform, l, col);
    n->hcp = Hcp(k, integer());
    while (accept(';')) {
      const int el = line_, ec = col_;
      const std::string tag = ident();
      if (tag == "f") {
        expect('[');
        const long li = nat();
        expect(',');
        const long ii = nat();
        expect(']');
        expect('=');
        n->hcp.add_gamma(li, ii, scalar());
      } else if (tag == "g") {
        expect('[');
        const long j = nat();
        if (j < 1) throw ParseError("g index must be >= 1", el, ec);
        expect(']');
        expect('=');
        n->hcp.add_b(j, scalar());
      } else {
        throw ParseError("expected 'f[' or 'g[' in G-literal", el, ec);
      }
    }
    expect('}');
    return n;
  }
};

int prec(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const ExprPtr& e, int min_prec) {
  const std::string s = print_expr(e);
  return prec(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

ExprPtr parse_expr(const std::string& src, int k) { return Parser(src, k, false).parse_all(); }

std::string print_expr(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Rational: return e->value.get_str();
    case Expr::Kind::Xi: return "xi";
    case Expr::Kind::X: return "x";
    case Expr::Kind::D: return "d";
    case Expr::Kind::Gform: return to_string(e->hcp);
    case Expr::Kind::Add: return wrap(e->kids[0], 1) + " + " + wrap(e->kids[1], 2);
    case Expr::Kind::Sub: return wrap(e->kids[0], 1) + " - " + wrap(e->kids[1], 2);
    case Expr::Kind::Mul: {
      // a leading sign on the left factor would bind to the whole product
      const auto& a = e->kids[0];
      const std::string left = a->kind == Expr::Kind::Neg ? "(" + print_expr(a) + ")" : wrap(a, 2);
      return left + "*" + wrap(e->kids[1], 4);
    }
    case Expr::Kind::Neg: return "-" + wrap(e->kids[0], 3);
    case Expr::Kind::Pow: {
      // rationals a/b need parentheses as a base
      const auto& b = e->kids[0];
      std::string base = print_expr(b);
      if (prec(b) < 5 || (b->kind == Expr::Kind::Rational && base.find('/') != std::string::npos))
        base = "(" + base + ")";
      return base + "^" + std::to_string(e->exponent);
    }
  }
  return "";
}

bool same_tree(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
  if (a->kind == Expr::Kind::Rational && a->value != b->value) return false;
  if (a->kind == Expr::Kind::Gform && !(a->hcp == b->hcp)) return false;
  if (a->kind == Expr::Kind::Pow && a->exponent != b->exponent) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!same_tree(a->kids[i], b->kids[i])) return false;
  return true;
}

namespace {

GradedOp gform_operator(const Hcp& h, const EvalOptions& opt) {
  if (h.k != opt.k) throw ContextError("G-literal context differs from evaluation context");
  const Hcp& hk = h;
  bool finite = hk.bpart.empty() && hk.r >= 0;
  long lmax = 0;
  for (const auto& [key, c] : hk.gamma) {
    if (key.second != 0) finite = false;
    lmax = std::max(lmax, key.first);
  }
  if (!finite) return expand_hcp(hk, opt.xcap);
  // Gamma_l d^r has x-degree at most l, so the expansion to x^lmax is the whole component.
  GradedOp g = expand_hcp(hk, lmax);
  GradedOp out(g.k());
  if (const auto* c = g.component(hk.r)) out.set_component(hk.r, GradedOp::Component{kUnbounded, c->coeffs});
  return out;
}

}  // namespace

GradedOp evaluate(const ExprPtr& e, const EvalOptions& opt) {
  const int k = opt.k;
  switch (e->kind) {
    case Expr::Kind::Rational: return GradedOp::scalar(CycloScalar(k, e->value));
    case Expr::Kind::Xi: return GradedOp::scalar(CycloScalar::xi_pow(k, 1));
    case Expr::Kind::X: return GradedOp::x(k);
    case Expr::Kind::D: return GradedOp::d(k);
    case Expr::Kind::Gform: return gform_operator(e->hcp, opt);
    case Expr::Kind::Add: return evaluate(e->kids[0], opt) + evaluate(e->kids[1], opt);
    case Expr::Kind::Sub: return evaluate(e->kids[0], opt) - evaluate(e->kids[1], opt);
    case Expr::Kind::Neg: return -evaluate(e->kids[0], opt);
    case Expr::Kind::Mul: return op_mul(evaluate(e->kids[0], opt), evaluate(e->kids[1], opt));
    case Expr::Kind::Pow: return op_pow(evaluate(e->kids[0], opt), e->exponent);
  }
  throw InternalError("unknown expression node");
}

HcpSeries evaluate_series(const ExprPtr& e, int k) {
  switch (e->kind) {
    case Expr::Kind::Rational:
      return HcpSeries::from_hcp(Hcp::monomial(k, 0, 0, 0, CycloScalar(k, e->value)));
    case Expr::Kind::Xi: return HcpSeries::from_hcp(Hcp::monomial(k, 0, 0, 0, CycloScalar::xi_pow(k, 1)));
    case Expr::Kind::X:
      throw PreconditionError("x has negative order and no Hcp series form here", "precondition");
    case Expr::Kind::D: return HcpSeries::d_pow(k, 1);
    case Expr::Kind::Gform:
      if (e->hcp.k != k) throw ContextError("G-literal context differs from evaluation context");
      return HcpSeries::from_hcp(e->hcp);
    case Expr::Kind::Add: return evaluate_series(e->kids[0], k) + evaluate_series(e->kids[1], k);
    case Expr::Kind::Sub: return evaluate_series(e->kids[0], k) - evaluate_series(e->kids[1], k);
    case Expr::Kind::Neg: return -evaluate_series(e->kids[0], k);
    case Expr::Kind::Mul: return evaluate_series(e->kids[0], k) * evaluate_series(e->kids[1], k);
    case Expr::Kind::Pow: return series_pow(evaluate_series(e->kids[0], k), e->exponent);
  }
  throw InternalError("unknown expression node");
}

GradedOp parse_operator(const std::string& src, const EvalOptions& opt) {
  return evaluate(parse_expr(src, opt.k == 1 ? 0 : opt.k), opt);
}

namespace {

BivarPoly bivar_eval(const ExprPtr& e) {
  BivarPoly out;
  auto mul = [](const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r;
    for (const auto& [ua, ca] : a.terms)
      for (const auto& [ub, cb] : b.terms) r.add(ua.first + ub.first, ua.second + ub.second, ca * cb);
    return r;
  };
  switch (e->kind) {
    case Expr::Kind::Rational: out.add(0, 0, e->value); return out;
    case Expr::Kind::X: out.add(1, 0, 1); return out;
    case Expr::Kind::D: out.add(0, 1, 1); return out;
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      out = bivar_eval(e->kids[0]);
      const Rational sign = e->kind == Expr::Kind::Add ? 1 : -1;
      for (const auto& [uv, c] : bivar_eval(e->kids[1]).terms) out.add(uv.first, uv.second, sign * c);
      return out;
    }
    case Expr::Kind::Neg:
      for (const auto& [uv, c] : bivar_eval(e->kids[0]).terms) out.add(uv.first, uv.second, -c);
      return out;
    case Expr::Kind::Mul: return mul(bivar_eval(e->kids[0]), bivar_eval(e->kids[1]));
    case Expr::Kind::Pow: {
      out.add(0, 0, 1);
      const BivarPoly b = bivar_eval(e->kids[0]);
      for (long i = 0; i < e->exponent; ++i) out = mul(out, b);
      return out;
    }
    default: throw InternalError("unexpected node in polynomial");
  }
}

}  // namespace

BivarPoly parse_bivar(const std::string& src) { return bivar_eval(Parser(src, 0, true).parse_all()); }

}  // namespace nfc
