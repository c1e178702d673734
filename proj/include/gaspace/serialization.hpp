#pragma once

// JSON forms of schemas and chromosomes.
//
//   schema:     {"id": "...", "loci": [{"kind": "bit"},
//                                      {"kind": "integer", "min": -3, "max": 3},
//                                      {"kind": "real", "min": -1.5, "max": 1.5}]}
//   chromosome: {"schema": "<schema id>", "genes": [1, 0, -2, 0.25]}

#include <json.hpp>

#include "gaspace/genospace.hpp"

namespace gaspace {

nlohmann::json schema_to_json(const Schema& schema);
SchemaPtr schema_from_json(const nlohmann::json& j);

nlohmann::json chromosome_to_json(const Chromosome& c);
/// The "schema" field must name `schema`; genes are validated against it.
Chromosome chromosome_from_json(const nlohmann::json& j, SchemaPtr schema);

}  // namespace gaspace
