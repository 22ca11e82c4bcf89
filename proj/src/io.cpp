#include "talg/io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace talg::io {

namespace {

template <class T>
T field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string(what) + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidInput(std::string(what) + ": field \"" + key + "\" has the wrong type");
    }
}

std::vector<Tuple> tuples_of(const Json& j, const char* what) {
    try {
        return j.get<std::vector<Tuple>>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidInput(std::string(what) + ": tuples must be arrays of non-negative integers");
    }
}

} // namespace

Json load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

FiniteAlgebra algebra_from_json(const Json& j) {
    const auto n = field<std::uint32_t>(j, "size", "algebra");
    if (!j.contains("operations") || !j["operations"].is_array()) throw InvalidInput("algebra: missing operations");
    std::vector<OperationTable> ops;
    for (const auto& o : j["operations"]) {
        ops.emplace_back(field<std::string>(o, "name", "operation"), field<std::size_t>(o, "arity", "operation"), n,
                         field<std::vector<Element>>(o, "table", "operation"));
    }
    return FiniteAlgebra(n, std::move(ops));
}

Json to_json(const OperationTable& op) {
    return Json{{"name", op.name()}, {"arity", op.arity()}, {"table", std::vector<Element>(op.table().begin(), op.table().end())}};
}

Json to_json(const FiniteAlgebra& a) {
    Json ops = Json::array();
    for (const auto& op : a.operations()) ops.push_back(to_json(op));
    return Json{{"size", a.size()}, {"operations", ops}};
}

Term term_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_string()) throw InvalidInput("term: expected [\"var\", i] or [\"app\", name, [...]]");
    const auto tag = j[0].get<std::string>();
    if (tag == "var" && j.size() == 2 && j[1].is_number_unsigned()) return Term::var(j[1].get<std::size_t>());
    if (tag == "app" && j.size() == 3 && j[1].is_string() && j[2].is_array()) {
        std::vector<Term> ch;
        for (const auto& c : j[2]) ch.push_back(term_from_json(c));
        return Term::apply(j[1].get<std::string>(), std::move(ch));
    }
    throw InvalidInput("term: malformed node " + j.dump());
}

namespace {

Json tree_json(const Term& t) {
    if (t.kind() == Term::Kind::Variable) return Json::array({"var", t.var_index()});
    Json ch = Json::array();
    for (const auto& c : t.children()) ch.push_back(tree_json(c));
    return Json::array({"app", t.symbol(), ch});
}

std::size_t dag_json(const Term& t, Json& nodes, std::map<const void*, std::size_t>& ids) {
    if (auto it = ids.find(t.id()); it != ids.end()) return it->second;
    Json node;
    if (t.kind() == Term::Kind::Variable) {
        node = Json::array({"var", t.var_index()});
    } else {
        Json ch = Json::array();
        for (const auto& c : t.children()) ch.push_back(dag_json(c, nodes, ids));
        if (t.kind() == Term::Kind::Apply) {
            node = Json::array({"app", t.symbol(), ch});
        } else {
            std::size_t outer = dag_json(t.outer(), nodes, ids);
            node = Json::array({"sub", outer, ch});
        }
    }
    nodes.push_back(std::move(node));
    return ids[t.id()] = nodes.size() - 1;
}

} // namespace

Json to_json(const Term& t, std::size_t max_tree) {
    if (t.tree_size(max_tree + 1) <= max_tree) return tree_json(expand(t, max_tree));
    Json nodes = Json::array();
    std::map<const void*, std::size_t> ids;
    std::size_t root = dag_json(t, nodes, ids);
    return Json{{"dag", Json{{"nodes", nodes}, {"root", root}}}};
}

Relation relation_from_json(const Json& j) {
    const auto arity = field<std::size_t>(j, "arity", "relation");
    auto sizes = j.contains("sizes") ? field<std::vector<std::uint32_t>>(j, "sizes", "relation")
                                     : std::vector<std::uint32_t>(arity, field<std::uint32_t>(j, "size", "relation"));
    if (sizes.size() != arity) throw InvalidInput("relation: sizes do not match the arity");
    if (!j.contains("tuples")) throw InvalidInput("relation: missing field \"tuples\"");
    return Relation(std::move(sizes), tuples_of(j["tuples"], "relation"));
}

Json to_json(const Relation& r) {
    return Json{{"arity", r.arity()}, {"sizes", r.sizes()}, {"tuples", r.tuples()}};
}

Digraph digraph_from_json(const Json& j) {
    const auto n = field<std::uint32_t>(j, "vertices", "digraph");
    std::vector<Digraph::Edge> edges;
    if (!j.contains("edges")) throw InvalidInput("digraph: missing field \"edges\"");
    for (const auto& t : tuples_of(j["edges"], "digraph")) {
        if (t.size() != 2) throw InvalidInput("digraph: edges must be pairs");
        edges.emplace_back(t[0], t[1]);
    }
    return Digraph(n, std::move(edges));
}

Json to_json(const Digraph& g) {
    Json e = Json::array();
    for (auto [u, v] : g.edges()) e.push_back({u, v});
    return Json{{"vertices", g.vertices()}, {"edges", e}};
}

RelationalStructure structure_from_json(const Json& j) {
    const auto n = field<std::uint32_t>(j, "size", "structure");
    if (!j.contains("relations") || !j["relations"].is_array()) throw InvalidInput("structure: missing relations");
    std::vector<RelationalStructure::Named> rels;
    for (const auto& r : j["relations"]) {
        const auto arity = field<std::size_t>(r, "arity", "relation");
        if (!r.contains("tuples")) throw InvalidInput("relation: missing field \"tuples\"");
        auto ts = tuples_of(r["tuples"], "relation");
        for (const auto& t : ts)
            if (t.size() != arity) throw InvalidInput("relation " + field<std::string>(r, "name", "relation") + ": tuple of wrong arity");
        rels.push_back({field<std::string>(r, "name", "relation"), Relation(std::vector<std::uint32_t>(arity, n), std::move(ts))});
    }
    return RelationalStructure(n, std::move(rels));
}

Json to_json(const RelationalStructure& s) {
    Json rels = Json::array();
    for (const auto& r : s.relations())
        rels.push_back(Json{{"name", r.name}, {"arity", r.relation.arity()}, {"tuples", r.relation.tuples()}});
    return Json{{"size", s.size()}, {"relations", rels}};
}

RelationalStructure template_from_json(const Json& j) {
    if (j.is_object() && j.contains("vertices")) return digraph_from_json(j).structure();
    return structure_from_json(j);
}

Instance instance_from_json(const Json& j, const std::string& base_dir) {
    if (!j.is_object() || !j.contains("template") || !j.contains("structure"))
        throw InvalidInput("instance: expected {\"template\": ..., \"structure\": ...}");
    Json t = j["template"];
    if (t.is_string()) {
        std::filesystem::path p = t.get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        t = load(p.string());
    }
    return {template_from_json(t), template_from_json(j["structure"])};
}

} // namespace talg::io
