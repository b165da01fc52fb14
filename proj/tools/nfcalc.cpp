// nfcalc: command-line driver for the normal-form calculator.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nfc/criterion.hpp"
#include "nfc/json_io.hpp"
#include "nfc/newton.hpp"
#include "nfc/parser.hpp"
#include "nfc/powerform.hpp"
#include "nfc/schur.hpp"
#include "nfc/suites.hpp"

namespace {

using namespace nfc;

struct Globals {
  int k = 1;
  long depth = 8;
  std::uint64_t seed = 1;
  std::string format = "text";
};

GradedOp op(const Globals& g, const std::string& src) {
  EvalOptions opt;
  opt.k = g.k;
  return parse_operator(src, opt);
}

void emit(const Globals& g, const Json& j, const std::string& text) {
  if (g.format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << text << "\n";
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out << body;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON in '") + path + "': " + e.what(), 1, 1);
  }
}

std::string pair_text(const PairReport& r) {
  std::ostringstream out;
  out << "commutes: " << (r.commutes ? "yes" : "no") << "\n";
  out << "classification: " << to_string(r.classification) << "\n";
  out << "certificate: " << (r.certificate ? to_string(r.certificate->poly) : std::string("none")) << "\n";
  if (!r.type_identities.empty()) {
    out << "type identities:";
    for (const auto& [i, v] : r.type_identities) out << " " << i << ":" << v.get_str();
    out << "\n";
  }
  out << "verdict: " << r.verdict << (r.tentative ? " [tentative]" : "");
  return out.str();
}

int run(int argc, char** argv) {
  Globals g;
  CLI::App app{"Normal forms, Newton regions and commutativity checks for differential operators"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--k", g.k, "cyclotomic context (xi is a primitive k-th root of unity)")->check(CLI::PositiveNumber);
  app.add_option("--depth", g.depth, "orders below the top kept exactly")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text", "svg"}));

  std::string a_src, b_src, p_src, q_src, f_src, fixture, input, svg_out, json_out, nf_out, suite = "all";
  long wmax = 0, power = 3, cases = 200;
  unsigned threads = 0;
  bool oracle = false;

  auto* eval = app.add_subcommand("eval", "print an operator in normal order");
  eval->add_option("expr", a_src)->required();
  auto* mul = app.add_subcommand("mul", "product of two operators");
  mul->add_option("a", a_src)->required();
  mul->add_option("b", b_src)->required();
  auto* comm = app.add_subcommand("commutator", "commutator [a, b]");
  comm->add_option("a", a_src)->required();
  comm->add_option("b", b_src)->required();

  auto* schur = app.add_subcommand("schur", "Schur operator S with S^-1 Q S = d^q");
  schur->add_option("--q", q_src)->required();

  auto* nform = app.add_subcommand("normal-form", "normal form of P with respect to Q");
  nform->add_option("--p", p_src)->required();
  nform->add_option("--q", q_src)->required();
  nform->add_option("--out", nf_out, "write the JSON cache here");

  auto* newton = app.add_subcommand("newton", "Newton region of a cached normal form");
  newton->add_option("--input", input)->required();
  newton->add_option("--svg", svg_out);
  newton->add_option("--json", json_out);

  auto* classify = app.add_subcommand("classify", "commutativity criterion for a pair");
  classify->add_option("--p", p_src);
  classify->add_option("--q", q_src);
  classify->add_option("--f", f_src, "candidate relation in X, Y");
  classify->add_option("--fixture", fixture, "built-in pair instead of --p/--q")->check(CLI::IsMember({"kdv"}));

  auto* bc = app.add_subcommand("bc-find", "search for a Burchnall-Chaundy relation");
  bc->add_option("--p", p_src)->required();
  bc->add_option("--q", q_src)->required();
  bc->add_option("--wmax", wmax)->required();

  auto* expand = app.add_subcommand("expand-power", "standard form of (D + L)^k");
  expand->add_option("--k", power)->check(CLI::Range(0L, 64L));
  expand->add_flag("--oracle", oracle, "also expand by direct rewriting and compare");

  auto* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"appendix", "filtration", "powerform", "all"}));
  verify->add_option("--cases", cases)->check(CLI::NonNegativeNumber);
  verify->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json j;
    j["error"] = "usage";
    j["message"] = e.what();
    j["exitCode"] = 2;
    std::cerr << j.dump() << "\n";
    return 2;
  }

  if (g.format == "svg" && !newton->parsed()) throw PreconditionError("--format svg is only available for newton");

  if (eval->parsed()) {
    const GradedOp a = op(g, a_src);
    emit(g, to_json(a), to_string(a));
  } else if (mul->parsed() || comm->parsed()) {
    const GradedOp a = op(g, a_src), b = op(g, b_src);
    const GradedOp r = mul->parsed() ? op_mul(a, b) : commutator(a, b);
    emit(g, to_json(r), to_string(r));
  } else if (schur->parsed()) {
    const SchurPair s = schur_operator(op(g, q_src), g.depth);
    Json j;
    j["q"] = s.q;
    j["depth"] = s.depth;
    j["S"] = to_json(s.S);
    j["Sinv"] = to_json(s.Sinv);
    emit(g, j, "S = " + to_string(s.S) + "\nS^-1 = " + to_string(s.Sinv) + "\nverified orders: " + std::to_string(s.depth));
  } else if (nform->parsed()) {
    const NormalForm nf = normal_form_detailed(op(g, p_src), op(g, q_src), g.depth);
    const Json doc = normal_form_document(p_src, q_src, g.depth, nf);
    if (!nf_out.empty()) write_file(nf_out, doc.dump(2) + "\n");
    const AqkReport a = check_Aqk(nf.series, 0);
    emit(g, doc, to_string(nf.series) + "\ncondition A_q(0): " + (a.holds ? "holds" : "fails: " + a.detail));
  } else if (newton->parsed()) {
    const Json doc = read_json_file(input);
    const HcpSeries s = series_from_json(doc.contains("series") ? doc.at("series") : doc);
    const NewtonData nd = e_set(s);
    const TopLineClass cls = classify_top_line(s);
    const Json rep = newton_report(nd, cls);
    const std::string svg = render_svg(nd, cls);
    if (!svg_out.empty()) write_file(svg_out, svg);
    if (!json_out.empty()) write_file(json_out, rep.dump(2) + "\n");
    if (g.format == "svg") std::cout << svg;
    else emit(g, rep, to_string(cls));
  } else if (classify->parsed()) {
    GradedOp p(g.k), q(g.k);
    if (fixture == "kdv") {
      std::tie(p, q) = kdv_pair();
    } else {
      if (p_src.empty() || q_src.empty()) throw PreconditionError("classify needs --p and --q, or --fixture");
      p = op(g, p_src);
      q = op(g, q_src);
    }
    std::optional<BivarPoly> f;
    if (!f_src.empty()) f = parse_bivar(f_src);
    PairReport r = classify_pair(p, q, g.depth, f);
    if (fixture == "kdv") {
      r.p_src = "kdv P";
      r.q_src = "kdv Q";
    } else {
      r.p_src = p_src;
      r.q_src = q_src;
    }
    emit(g, to_json(r), pair_text(r));
  } else if (bc->parsed()) {
    const auto cert = bc_certificate(op(g, p_src), op(g, q_src), wmax, g.depth);
    Json j;
    j["wmax"] = wmax;
    j["depth"] = g.depth;
    if (cert) {
      j["certificate"] = to_json(cert->poly);
      j["depthVerified"] = cert->depth_verified;
    } else {
      j["certificate"] = nullptr;
    }
    emit(g, j, cert ? to_string(cert->poly) : "no relation of weight <= " + std::to_string(wmax) + " in the window");
  } else if (expand->parsed()) {
    const StdFormExpansion e = expand_power(power);
    Json j;
    j["k"] = power;
    j["expansion"] = to_json(e);
    std::string text = to_string(e);
    bool match = true;
    if (oracle) {
      const StdFormExpansion o = expand_power_oracle(power);
      match = o == e;
      j["oracle"] = to_json(o);
      j["match"] = match;
      text = "closed form: " + text + "\noracle:      " + to_string(o) + "\nmatch: " + (match ? "yes" : "no");
    }
    emit(g, j, text);
    if (!match) return static_cast<int>(ErrorKind::Property);
  } else if (verify->parsed()) {
    std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
    Json all = Json::array();
    std::string text;
    bool ok = true;
    for (const auto& n : names) {
      const SuiteResult r = run_suite(n, cases, g.seed, threads);
      ok = ok && r.ok();
      Json j;
      j["suite"] = r.name;
      j["cases"] = r.cases;
      j["checks"] = r.checks;
      j["skipped"] = r.skipped;
      j["violations"] = r.violations;
      j["messages"] = r.messages;
      all.push_back(j);
      std::ostringstream line;
      line << r.name << ": " << r.cases << " cases, " << r.checks << " checks, " << r.skipped
           << " skipped, " << r.violations << " violations";
      text += (text.empty() ? "" : "\n") + line.str();
      for (const auto& m : r.messages) text += "\n  " + m;
    }
    emit(g, all, text);
    if (!ok) return static_cast<int>(ErrorKind::Property);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nfc::Error& e) {
    std::cerr << nfc::error_json(e).dump() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    nlohmann::ordered_json j;
    j["error"] = "internal";
    j["message"] = e.what();
    j["exitCode"] = 5;
    std::cerr << j.dump() << "\n";
    return 5;
  }
}
