#pragma once

#include <json.hpp>

#include "surfree/baumslag.hpp"
#include "surfree/homomorphism.hpp"
#include "surfree/presentation.hpp"
#include "surfree/representation.hpp"
#include "surfree/word.hpp"

namespace surfree::io {

using nlohmann::json;

// Words serialize as token arrays, e.g. ["a1","a1'","a1-","a1'-"].
json word_to_json(const Word& w);
Word word_from_json(const json& j);

json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const json& j);

json hom_to_json(const Homomorphism& h);
Homomorphism hom_from_json(const json& j);

json family_to_json(const HomFamily& f);
HomFamily family_from_json(const json& j);

json instance_to_json(const BaumslagInstance& inst);
BaumslagInstance instance_from_json(const json& j);

json element_to_json(const GroupElement& g);

json rep_to_json(const MatrixRep& rep);
MatrixRep rep_from_json(const json& j);

json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

json parse_json_text(const std::string& text);  // ParseError on bad JSON

}  // namespace surfree::io
