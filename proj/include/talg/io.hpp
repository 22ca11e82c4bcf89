#pragma once

#include "talg/csp.hpp"
#include "talg/digraph.hpp"

#include "json.hpp"

#include <string>

namespace talg::io {

using Json = nlohmann::ordered_json;

/// Reads a whole file and parses it; InvalidInput on I/O or syntax errors.
Json load(const std::string& path);

FiniteAlgebra algebra_from_json(const Json& j);
Json to_json(const FiniteAlgebra& a);
Json to_json(const OperationTable& op);

/// ["var", i] or ["app", name, [children]].
Term term_from_json(const Json& j);
/// Nested arrays when the expanded tree has at most `max_tree` nodes;
/// otherwise {"dag": {"nodes": [...], "root": r}} where nodes are
/// ["var", i], ["app", name, [node ids]] or ["sub", outer id, [node ids]].
Json to_json(const Term& t, std::size_t max_tree = 20'000);

Relation relation_from_json(const Json& j);
Json to_json(const Relation& r);

Digraph digraph_from_json(const Json& j);
Json to_json(const Digraph& g);

RelationalStructure structure_from_json(const Json& j);
Json to_json(const RelationalStructure& s);

struct Instance {
    RelationalStructure tmpl;
    RelationalStructure structure;
};

/// {"template": path or inline template, "structure": {...}}; relative
/// template paths resolve against `base_dir`.
Instance instance_from_json(const Json& j, const std::string& base_dir = ".");

/// A structure file may also be a digraph file.
RelationalStructure template_from_json(const Json& j);

} // namespace talg::io
