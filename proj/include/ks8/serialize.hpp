#pragma once

#include "ks8/catalog.hpp"
#include "ks8/ks_set.hpp"
#include "ks8/transformer.hpp"
#include "ks8/verifier.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace ks8 {

using nlohmann::json;

// {"bases":[{"index":1,"kind":"pure","projectors":[[1,7],...]},...],
//  "profile":"30_2 - 15_4","parity_proof":true}
json ks_set_to_json(const KSSet& set);
// Ray indices are resolved against `catalog`. Throws std::invalid_argument
// (or a nlohmann::json exception) on malformed input.
KSSet ks_set_from_json(const json& j, const Catalog& catalog);

// {"rays":[{"index":1,"coords":"10000000"},...],"bases":[...same as above...]}
json catalog_to_json(const Catalog& catalog);
Catalog catalog_from_json(const json& j);

// Lines "index: item item ..." where an item is a ray index (rank-1) or a
// parenthesized pair "(a,b)" (rank-2). Bases 1..5 are pure.
KSSet parse_ks_set_text(std::string_view text, const Catalog& catalog);
// One line per basis, e.g. "6: (1,2) (3,4) (13,16) (14,15)".
std::string format_ks_set_text(const KSSet& set);

json choice_to_json(const StepChoice& choice);
json report_to_json(const VerificationReport& rep);
std::string report_to_text(const VerificationReport& rep);

} // namespace ks8
