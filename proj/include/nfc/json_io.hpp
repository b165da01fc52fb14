#pragma once

#include <json.hpp>

#include "nfc/criterion.hpp"
#include "nfc/error.hpp"
#include "nfc/gform.hpp"
#include "nfc/graded_op.hpp"
#include "nfc/newton.hpp"
#include "nfc/powerform.hpp"
#include "nfc/schur.hpp"

namespace nfc {

using Json = nlohmann::ordered_json;

// Scalars and rationals travel as strings so they stay exact.
Json to_json(const GradedOp& a);
GradedOp graded_op_from_json(const Json& j);

Json to_json(const Hcp& h);
Hcp hcp_from_json(const Json& j, int k);
Json to_json(const HcpSeries& s);
HcpSeries series_from_json(const Json& j);

Json to_json(const TopLineClass& c);
Json newton_report(const NewtonData& nd, const TopLineClass& c);
Json to_json(const BivarPoly& f);
Json to_json(const PairReport& r);
Json to_json(const StdFormExpansion& e);
Json to_json(const AqkReport& r);

// Cached normal form, so newton/classify can skip the Schur step.
Json normal_form_document(const std::string& p, const std::string& q, long depth, const NormalForm& nf);

Json error_json(const Error& e);

}  // namespace nfc
