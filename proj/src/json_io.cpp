#include "nfc/json_io.hpp"

namespace nfc {

namespace {

Json floor_json(long f) { return f == kNoFloor ? Json(nullptr) : Json(f); }
long floor_from(const Json& j) { return j.is_null() ? kNoFloor : j.get<long>(); }

std::string scalar_str(const CycloScalar& c) { return c.to_string(); }

CycloScalar scalar_from(int k, const Json& j) {
  if (!j.is_string()) throw ParseError("coefficient must be a string", 1, 1);
  return CycloScalar::parse(k, j.get<std::string>());
}

Json points_json(const std::vector<LatticePoint>& pts) {
  Json a = Json::array();
  for (const auto& [l, j] : pts) a.push_back({l, j});
  return a;
}

template <class F>
auto guarded(F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON document: ") + e.what(), 1, 1);
  }
}

}  // namespace

Json to_json(const GradedOp& a) {
  Json j;
  j["k"] = a.k();
  j["floor"] = floor_json(a.floor());
  Json comps = Json::array();
  for (auto it = a.components().rbegin(); it != a.components().rend(); ++it) {
    Json c;
    c["order"] = it->first;
    c["xcap"] = it->second.xcap == kUnbounded ? Json(nullptr) : Json(it->second.xcap);
    Json co = Json::array();
    for (const auto& v : it->second.coeffs) co.push_back(scalar_str(v));
    c["coeffs"] = co;
    comps.push_back(c);
  }
  j["components"] = comps;
  j["text"] = to_string(a);
  return j;
}

GradedOp graded_op_from_json(const Json& j) {
  return guarded([&] {
    const int k = j.at("k").get<int>();
    GradedOp out(k);
    for (const auto& c : j.at("components")) {
      GradedOp::Component comp;
      comp.xcap = c.at("xcap").is_null() ? kUnbounded : c.at("xcap").get<long>();
      for (const auto& v : c.at("coeffs")) comp.coeffs.push_back(scalar_from(k, v));
      out.set_component(c.at("order").get<long>(), std::move(comp));
    }
    out.set_floor(floor_from(j.at("floor")));
    return out;
  });
}

Json to_json(const Hcp& h) {
  Json j;
  j["r"] = h.r;
  Json f = Json::array();
  for (const auto& [key, c] : h.gamma) f.push_back({key.first, key.second, scalar_str(c)});
  j["f"] = f;
  Json g = Json::array();
  for (const auto& [jj, c] : h.bpart) g.push_back({jj, scalar_str(c)});
  j["g"] = g;
  return j;
}

Hcp hcp_from_json(const Json& j, int k) {
  return guarded([&] {
    Hcp h(k, j.at("r").get<long>());
    for (const auto& e : j.at("f")) h.add_gamma(e.at(0).get<long>(), e.at(1).get<long>(), scalar_from(k, e.at(2)));
    if (j.contains("g"))
      for (const auto& e : j.at("g")) h.add_b(e.at(0).get<long>(), scalar_from(k, e.at(1)));
    return h;
  });
}

Json to_json(const HcpSeries& s) {
  Json j;
  j["k"] = s.k();
  j["floor"] = floor_json(s.floor());
  Json comps = Json::array();
  for (auto it = s.components().rbegin(); it != s.components().rend(); ++it) comps.push_back(to_json(it->second));
  j["components"] = comps;
  j["text"] = to_string(s);
  return j;
}

HcpSeries series_from_json(const Json& j) {
  return guarded([&] {
    const int k = j.at("k").get<int>();
    HcpSeries s(k, floor_from(j.at("floor")));
    for (const auto& c : j.at("components")) s.add(hcp_from_json(c, k));
    return s;
  });
}

Json to_json(const TopLineClass& c) {
  Json j;
  j["kind"] = kind_name(c.kind);
  j["sigma"] = c.sigma.get_str();
  j["windowSigma"] = c.window_sigma.get_str();
  j["vertices"] = points_json(c.vertices);
  j["tentative"] = c.tentative;
  j["text"] = to_string(c);
  return j;
}

Json newton_report(const NewtonData& nd, const TopLineClass& c) {
  Json j;
  Json pts = Json::array();
  for (const auto& p : nd.points) pts.push_back({{"l", p.l}, {"j", p.j}, {"containsAi", p.contains_ai}});
  j["points"] = pts;
  j["upEdge"] = points_json(up_edge(nd));
  j["classification"] = to_json(c);
  j["tentative"] = c.tentative;
  j["sigma"] = c.sigma.get_str();
  j["floor"] = floor_json(nd.floor);
  return j;
}

Json to_json(const BivarPoly& f) {
  Json j;
  j["text"] = to_string(f);
  Json terms = Json::array();
  for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it)
    terms.push_back({it->first.first, it->first.second, it->second.get_str()});
  j["terms"] = terms;
  return j;
}

Json to_json(const PairReport& r) {
  Json j;
  j["p"] = r.p_src;
  j["q"] = r.q_src;
  j["commutes"] = r.commutes;
  j["classification"] = to_json(r.classification);
  if (r.certificate) {
    Json c = to_json(r.certificate->poly);
    c["wmax"] = r.certificate_wmax;
    c["depthFound"] = r.certificate->depth_found;
    c["depthVerified"] = r.certificate->depth_verified;
    j["certificate"] = c;
  } else {
    j["certificate"] = nullptr;
  }
  Json ti = Json::array();
  for (const auto& [i, v] : r.type_identities) ti.push_back({i, v.get_str()});
  j["typeIdentities"] = ti;
  Json w;
  w["depth"] = r.depth;
  w["normalFormFloor"] = floor_json(r.normal_form_floor);
  w["stableAtDoubleDepth"] = r.stable_at_double_depth ? Json(*r.stable_at_double_depth) : Json(nullptr);
  w["sigmaIsPOverQ"] = r.sigma_is_p_over_q;
  j["windows"] = w;
  j["verdict"] = r.verdict;
  j["tentative"] = r.tentative;
  return j;
}

Json to_json(const StdFormExpansion& e) {
  Json j;
  Json terms = Json::array();
  for (const auto& [w, c] : e.terms) terms.push_back({{"derivs", w.derivs}, {"dpow", w.dpow}, {"coeff", c.get_str()}});
  j["terms"] = terms;
  j["text"] = to_string(e);
  return j;
}

Json to_json(const AqkReport& r) {
  Json j;
  j["holds"] = r.holds;
  if (!r.holds) {
    j["clause"] = r.clause;
    j["order"] = r.order;
    j["detail"] = r.detail;
  }
  return j;
}

Json normal_form_document(const std::string& p, const std::string& q, long depth, const NormalForm& nf) {
  Json j;
  j["kind"] = "normal-form";
  j["p"] = p;
  j["q"] = q;
  j["depth"] = depth;
  j["series"] = to_json(nf.series);
  j["conditionA"] = to_json(check_Aqk(nf.series, 0));
  return j;
}

Json error_json(const Error& e) {
  Json j;
  j["error"] = e.name();
  j["message"] = e.what();
  j["exitCode"] = e.exit_code();
  return j;
}

}  // namespace nfc
