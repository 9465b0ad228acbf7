#include "rosa/graph.hpp"

#include "rosa/error.hpp"
#include "rosa/kb_io.hpp"

#include <algorithm>

namespace rosa {

RoleVocabulary::RoleVocabulary(std::vector<Role> roles)
{
    for (auto & r : roles) {
        if (r.name.empty())
            fail(ErrorCode::UnknownRole, "role name must not be empty");
        auto name = r.name;
        if (!roles_.emplace(name, std::move(r)).second)
            fail(ErrorCode::DuplicateId, "duplicate role '" + name + "'");
    }
}

RoleVocabulary RoleVocabulary::defaults()
{
    return RoleVocabulary({{"sujet", false}, {"objet", false}});
}

bool RoleVocabulary::repeatable(const std::string & name) const
{
    auto it = roles_.find(name);
    return it != roles_.end() && it->second.repeatable;
}

const EntityVertex * FarmGraph::find_entity(const VertexId & vid) const
{
    auto it = std::find_if(entities.begin(), entities.end(), [&](const auto & e) { return e.id == vid; });
    return it == entities.end() ? nullptr : &*it;
}

const RelationVertex * FarmGraph::find_relation(const VertexId & vid) const
{
    auto it = std::find_if(relations.begin(), relations.end(), [&](const auto & r) { return r.id == vid; });
    return it == relations.end() ? nullptr : &*it;
}

std::optional<VertexSort> FarmGraph::sort_of(const VertexId & vid) const
{
    if (find_entity(vid))
        return VertexSort::Entity;
    if (find_relation(vid))
        return VertexSort::Relation;
    return std::nullopt;
}

const ConceptId & FarmGraph::concept_of(const VertexId & vid) const
{
    if (auto e = find_entity(vid))
        return e->concept_id;
    if (auto r = find_relation(vid))
        return r->concept_id;
    fail(ErrorCode::UnknownVertex, "graph '" + id + "' has no vertex '" + vid + "'");
}

const std::string & FarmGraph::label_of(const VertexId & vid) const
{
    if (auto e = find_entity(vid))
        return e->label;
    if (auto r = find_relation(vid))
        return r->label;
    fail(ErrorCode::UnknownVertex, "graph '" + id + "' has no vertex '" + vid + "'");
}

std::set<VertexId> FarmGraph::vertex_ids() const
{
    std::set<VertexId> out;
    for (const auto & e : entities)
        out.insert(e.id);
    for (const auto & r : relations)
        out.insert(r.id);
    return out;
}

bool equivalent(const FarmGraph & a, const FarmGraph & b)
{
    auto sorted = [](auto v, auto key) {
        std::sort(v.begin(), v.end(), [&](const auto & x, const auto & y) { return key(x) < key(y); });
        return v;
    };
    auto by_id = [](const auto & v) { return v.id; };
    auto by_self = [](const Edge & e) { return e; };
    return a.id == b.id && a.metadata == b.metadata && sorted(a.entities, by_id) == sorted(b.entities, by_id) &&
           sorted(a.relations, by_id) == sorted(b.relations, by_id) &&
           sorted(a.edges, by_self) == sorted(b.edges, by_self);
}

std::string_view to_string(Rule rule)
{
    switch (rule) {
    case Rule::EmptyId: return "EmptyId";
    case Rule::DuplicateVertex: return "DuplicateVertex";
    case Rule::UnknownConcept: return "UnknownConcept";
    case Rule::KindMismatch: return "KindMismatch";
    case Rule::UndeclaredAttribute: return "UndeclaredAttribute";
    case Rule::DanglingEdge: return "DanglingEdge";
    case Rule::BipartiteViolation: return "BipartiteViolation";
    case Rule::UnknownRole: return "UnknownRole";
    case Rule::DuplicateRole: return "DuplicateRole";
    case Rule::DuplicateEdge: return "DuplicateEdge";
    case Rule::IsolatedRelation: return "IsolatedRelation";
    case Rule::InconsistentArity: return "InconsistentArity";
    case Rule::UnknownGraph: return "UnknownGraph";
    case Rule::UnknownCaseVertex: return "UnknownCaseVertex";
    case Rule::OpenFragment: return "OpenFragment";
    case Rule::UnresolvedPlaceholder: return "UnresolvedPlaceholder";
    case Rule::PolicyConflict: return "PolicyConflict";
    case Rule::PolicyUnknownConcept: return "PolicyUnknownConcept";
    case Rule::PolicyKindMismatch: return "PolicyKindMismatch";
    case Rule::InvalidThreshold: return "InvalidThreshold";
    }
    return "Unknown";
}

std::string describe(const Violation & v)
{
    std::string out = v.severity == Severity::Error ? "error" : "warning";
    out += " [";
    out += to_string(v.rule);
    out += "] ";
    out += v.subject;
    out += ": ";
    out += v.message;
    return out;
}

namespace {

std::string edge_name(const std::string & graph, const Edge & e)
{
    return graph + ":" + e.relation + "-" + e.role + "->" + e.entity;
}

} // namespace

std::vector<Violation> validate_structure(const FarmGraph & g)
{
    std::vector<Violation> out;
    if (g.id.empty())
        out.push_back({Rule::EmptyId, "<graph>", "graph id is empty"});

    std::map<VertexId, VertexSort> sorts;
    auto declare = [&](const VertexId & vid, VertexSort s) {
        if (vid.empty()) {
            out.push_back({Rule::EmptyId, g.id, "vertex with empty id"});
            return;
        }
        if (!sorts.emplace(vid, s).second)
            out.push_back({Rule::DuplicateVertex, g.id + ":" + vid, "vertex id declared more than once"});
    };
    for (const auto & e : g.entities)
        declare(e.id, VertexSort::Entity);
    for (const auto & r : g.relations)
        declare(r.id, VertexSort::Relation);

    std::set<Edge> seen;
    std::set<VertexId> related;
    for (const auto & e : g.edges) {
        auto name = edge_name(g.id, e);
        auto rs = sorts.find(e.relation);
        auto es = sorts.find(e.entity);
        if (rs == sorts.end() || es == sorts.end()) {
            out.push_back({Rule::DanglingEdge, name, "edge endpoint does not exist"});
            continue;
        }
        if (rs->second != VertexSort::Relation || es->second != VertexSort::Entity) {
            out.push_back({Rule::BipartiteViolation, name, "edges must join a relation vertex to an entity vertex"});
            continue;
        }
        if (!seen.insert(e).second)
            out.push_back({Rule::DuplicateEdge, name, "edge declared more than once"});
        related.insert(e.relation);
    }
    for (const auto & r : g.relations)
        if (!r.id.empty() && !related.contains(r.id))
            out.push_back({Rule::IsolatedRelation, g.id + ":" + r.id, "relation vertex has no incident edge"});
    return out;
}

std::vector<Violation> validate_graph(const Taxonomy & tax, const RoleVocabulary & roles, const FarmGraph & g)
{
    auto out = validate_structure(g);

    auto check_concept = [&](const VertexId & vid, const ConceptId & cid, ConceptKind expected) {
        auto subject = g.id + ":" + vid;
        if (!tax.contains(cid)) {
            out.push_back({Rule::UnknownConcept, subject, "concept '" + cid + "' is not in the taxonomy"});
            return false;
        }
        if (tax.at(cid).kind != expected) {
            out.push_back({Rule::KindMismatch, subject,
                "concept '" + cid + "' is not a" + std::string(expected == ConceptKind::Entity ? "n entity" : " relation") +
                    " concept"});
            return false;
        }
        return true;
    };

    for (const auto & e : g.entities) {
        if (!check_concept(e.id, e.concept_id, ConceptKind::Entity))
            continue;
        auto declared = tax.inherited_attributes(e.concept_id);
        for (const auto & [name, value] : e.attribute_values)
            if (!declared.contains(name))
                out.push_back({Rule::UndeclaredAttribute, g.id + ":" + e.id,
                    "attribute '" + name + "' is not declared on '" + e.concept_id + "' or its ancestors"});
    }
    for (const auto & r : g.relations)
        check_concept(r.id, r.concept_id, ConceptKind::Relation);

    std::map<std::pair<VertexId, std::string>, int> role_use;
    for (const auto & e : g.edges) {
        if (!roles.contains(e.role)) {
            out.push_back({Rule::UnknownRole, edge_name(g.id, e), "role '" + e.role + "' is not in the vocabulary"});
            continue;
        }
        if (++role_use[{e.relation, e.role}] == 2 && !roles.repeatable(e.role))
            out.push_back({Rule::DuplicateRole, g.id + ":" + e.relation,
                "non-repeatable role '" + e.role + "' used more than once"});
    }
    return out;
}

bool has_errors(const std::vector<Violation> & violations)
{
    return std::any_of(
        violations.begin(), violations.end(), [](const Violation & v) { return v.severity == Severity::Error; });
}

std::set<VertexId> relation_closure(const FarmGraph & g, const std::set<VertexId> & seeds)
{
    for (const auto & s : seeds)
        if (!g.has_vertex(s))
            fail(ErrorCode::UnknownVertex, "graph '" + g.id + "' has no vertex '" + s + "'");
    std::set<VertexId> out = seeds;
    for (const auto & e : g.edges)
        if (seeds.contains(e.relation))
            out.insert(e.entity);
    return out;
}

FarmGraph induced_case_fragment(const FarmGraph & g, const std::set<VertexId> & seeds)
{
    auto keep = relation_closure(g, seeds);
    FarmGraph out;
    out.id = g.id;
    out.metadata = g.metadata;
    for (const auto & e : g.entities)
        if (keep.contains(e.id))
            out.entities.push_back(e);
    for (const auto & r : g.relations)
        if (keep.contains(r.id))
            out.relations.push_back(r);
    for (const auto & e : g.edges)
        if (keep.contains(e.relation))
            out.edges.push_back(e);
    return out;
}

std::string canonical_form(const FarmGraph & g)
{
    auto violations = validate_structure(g);
    if (has_errors(violations))
        fail(ErrorCode::InvalidGraph, "cannot canonicalise graph '" + g.id + "': " + describe(violations.front()));
    return graph_to_json(g).dump();
}

} // namespace rosa
