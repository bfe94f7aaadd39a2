// JSON input/output: schema-1 loading of basic objects, id-triples, and
// embedded-variety inputs; report serialization with rationals as "p/q".
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "equires/driver.hpp"

namespace equires::io {

using nlohmann::json;

// Schema-1 loaders; a malformed document throws BadInput with a field path.
// `m_override` replaces the document's truncation order when set.
BasicObject load_basic_object(const json& j, std::optional<int> m_override = {});
IdTriple load_idtriple(const json& j, std::optional<int> m_override = {});
// Embedded input: the ambient pair and the ideal of the subvariety.
std::pair<Ideal, SPair> load_embedded(const json& j, std::optional<int> m_override = {});

// Serializers ("schema": 1 throughout; rationals as "p/q" strings).
json center_to_json(const CenterSpec& C);
json object_to_json(const BasicObject& B);
json tree_to_json(const ResolutionTree& T, bool full_trace = false);
json equires_to_json(const EquiresReport& rep, bool full_trace = false);
json embedded_to_json(const EmbeddedReport& rep, bool full_trace = false);

}  // namespace equires::io
