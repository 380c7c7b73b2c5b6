#pragma once

#include <string>

#include "json.hpp"

#include "flatchain/flatnorm.hpp"
#include "flatchain/groups.hpp"
#include "flatchain/plateau.hpp"
#include "flatchain/slicing.hpp"

namespace flatchain {

using OrderedJson = nlohmann::ordered_json;

// Reads a whole file as JSON. Throws IoFailure or InvalidInput.
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// {"kind":"finite","orders":[n1,...],"norms":{"(r1,...)":"p/q",...}} or
// {"kind":"int","scale":"p/q","bound":N}
GroupSpec group_spec_from_json(const nlohmann::json& j);
OrderedJson group_spec_to_json(const GroupSpec& spec);

Element element_from_json(const NormedGroup& group, const nlohmann::json& j);

// Either an array of {"base":[...],"axes":[...],"coef":...} or
// {"dim":m,"ambient":d,"cells":[...]}; the object form is needed for empty
// chains. `ambient` and `dim` fill in what the data cannot tell (-1: infer).
Chain chain_from_json(const GroupPtr& group, const nlohmann::json& j, int ambient = -1,
                      int dim = -1);
OrderedJson chain_to_json(const Chain& c);

// {"lo":[...],"hi":[...]} with an optional "U": {"lo","hi"} (open box) or
// {"center":[...],"radius":"p/q"} (open ball).
Window window_from_json(const nlohmann::json& j);
Box box_from_json(const nlohmann::json& j);

// {"group":..., "boundary":[cells], "window":{"lo","hi"}, "bound":N} plus
// optional "dim", "multiplicity", "graph_axis".
PlateauProblem problem_from_json(const nlohmann::json& j);

// Cell key -> level.
LevelFunction level_function_from_json(const nlohmann::json& j);

OrderedJson flatnorm_result_to_json(const FlatNormResult& r);
OrderedJson plateau_result_to_json(const PlateauResult& r);
OrderedJson sti_report_to_json(const NormedGroup& group, const StiReport& r);

}  // namespace flatchain
