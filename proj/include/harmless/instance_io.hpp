#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "harmless/graph.hpp"

namespace harmless {

// Line-based instance format, 1-indexed ids:
//
//   c <comment>
//   p hs <n> <m>
//   e <u> <v>            (m lines)
//   t <v> <threshold>    (n lines)
//   k <k>                (optional, defaults to 0)

Instance load_instance(std::istream &in);
void save_instance(const Instance &instance, std::ostream &out);

Instance load_instance_file(const std::string &path);
void save_instance_file(const Instance &instance, const std::string &path);

// Structured-object format: one JSON document per instance with 0-indexed ids.
//
//   {"format": "harmless-instance", "n": 3, "edges": [[0,1],...],
//    "thresholds": [2,2,2], "k": 1,
//    "core": [...], "labels": [...], "names": [...], "roles": [...]}
//
// `core`/`labels` are present for annotated instances, `names` carries an optional
// vertex name table and `roles` the role registry of a generated reduction.

nlohmann::json instance_to_json(const Instance &instance);
Instance instance_from_json(const nlohmann::json &doc);

nlohmann::json annotated_to_json(const AnnotatedInstance &ann);
AnnotatedInstance annotated_from_json(const nlohmann::json &doc);

/// Loads either format, choosing JSON when the first non-blank character is '{'.
Instance load_any_instance_file(const std::string &path);

} // namespace harmless
