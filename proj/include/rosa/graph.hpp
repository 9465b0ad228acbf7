#pragma once

#include "rosa/taxonomy.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rosa {

using VertexId = std::string;

struct EntityVertex {
    VertexId id;
    ConceptId concept_id;
    std::string label;
    std::map<std::string, std::string> attribute_values;

    bool operator==(const EntityVertex &) const = default;
};

struct RelationVertex {
    VertexId id;
    ConceptId concept_id;
    std::string label;

    bool operator==(const RelationVertex &) const = default;
};

// Edges always run from a relation vertex to one of its entity arguments.
struct Edge {
    VertexId relation;
    std::string role;
    VertexId entity;

    auto operator<=>(const Edge &) const = default;
};

struct Role {
    std::string name;
    bool repeatable = false;

    bool operator==(const Role &) const = default;
};

class RoleVocabulary {
public:
    RoleVocabulary() = default;
    explicit RoleVocabulary(std::vector<Role> roles);

    static RoleVocabulary defaults();

    bool contains(const std::string & name) const { return roles_.contains(name); }
    bool repeatable(const std::string & name) const;
    const std::map<std::string, Role> & roles() const { return roles_; }
    std::size_t size() const { return roles_.size(); }

    bool operator==(const RoleVocabulary &) const = default;

private:
    std::map<std::string, Role> roles_;
};

struct GraphMetadata {
    std::string farm;
    std::string zone;
    std::optional<std::string> choreme_image;

    bool operator==(const GraphMetadata &) const = default;
};

enum class VertexSort { Entity, Relation };

struct FarmGraph {
    std::string id;
    GraphMetadata metadata;
    std::vector<EntityVertex> entities;
    std::vector<RelationVertex> relations;
    std::vector<Edge> edges;

    const EntityVertex * find_entity(const VertexId & id) const;
    const RelationVertex * find_relation(const VertexId & id) const;
    std::optional<VertexSort> sort_of(const VertexId & id) const;
    bool has_vertex(const VertexId & id) const { return sort_of(id).has_value(); }
    // Concept and display label of any vertex; throws UnknownVertex.
    const ConceptId & concept_of(const VertexId & id) const;
    const std::string & label_of(const VertexId & id) const;
    std::set<VertexId> vertex_ids() const;
    std::size_t vertex_count() const { return entities.size() + relations.size(); }
    bool empty() const { return entities.empty() && relations.empty(); }
};

// Structural equality, independent of declaration order.
bool equivalent(const FarmGraph & a, const FarmGraph & b);

enum class Severity { Error, Warning };

enum class Rule {
    EmptyId,
    DuplicateVertex,
    UnknownConcept,
    KindMismatch,
    UndeclaredAttribute,
    DanglingEdge,
    BipartiteViolation,
    UnknownRole,
    DuplicateRole,
    DuplicateEdge,
    IsolatedRelation,
    InconsistentArity,
    UnknownGraph,
    UnknownCaseVertex,
    OpenFragment,
    UnresolvedPlaceholder,
    PolicyConflict,
    PolicyUnknownConcept,
    PolicyKindMismatch,
    InvalidThreshold,
};

std::string_view to_string(Rule rule);

struct Violation {
    Rule rule;
    std::string subject; // vertex, edge, case or concept the rule is about
    std::string message;
    Severity severity = Severity::Error;
};

std::string describe(const Violation & v);

// Checks that need no taxonomy: unique ids, bipartiteness, edge endpoints,
// relation vertices with at least one edge.
std::vector<Violation> validate_structure(const FarmGraph & g);

// Full check against the knowledge model.
std::vector<Violation> validate_graph(const Taxonomy & tax, const RoleVocabulary & roles, const FarmGraph & g);

bool has_errors(const std::vector<Violation> & violations);

// Relation-complete closure of `seeds`: every relation vertex included brings
// all its incident entity vertices.
std::set<VertexId> relation_closure(const FarmGraph & g, const std::set<VertexId> & seeds);

// Subgraph induced by the closure of `seeds`; keeps g's id and metadata.
FarmGraph induced_case_fragment(const FarmGraph & g, const std::set<VertexId> & seeds);

// Deterministic byte serialisation (sorted vertices, sorted edges).
std::string canonical_form(const FarmGraph & g);

} // namespace rosa
