#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rosa {

using ConceptId = std::string;

enum class ConceptKind { Entity, Relation };

std::string_view to_string(ConceptKind kind);
std::optional<ConceptKind> parse_concept_kind(std::string_view text);

struct Concept {
    ConceptId id;
    std::string label;
    ConceptKind kind = ConceptKind::Entity;
    std::set<ConceptId> parents;
    std::set<std::string> attributes;

    bool operator==(const Concept &) const = default;
};

// Concept hierarchy: two disjoint forests (entities, relations), each with a
// single root. Values are immutable; every edit returns a new taxonomy whose
// invariants have been re-checked.
class Taxonomy {
public:
    Taxonomy() = default;

    // Builds from an unordered list, checking every invariant.
    static Taxonomy from_concepts(std::vector<Concept> concepts);

    Taxonomy with_concept(Concept c) const;
    // Replaces the parent set of an existing concept (hierarchy edit).
    Taxonomy with_parents(const ConceptId & id, std::set<ConceptId> parents) const;

    bool contains(const ConceptId & id) const { return concepts_.contains(id); }
    const Concept & at(const ConceptId & id) const;
    const std::map<ConceptId, Concept> & concepts() const { return concepts_; }
    std::size_t size() const { return concepts_.size(); }
    bool empty() const { return concepts_.empty(); }

    std::optional<ConceptId> root(ConceptKind kind) const;

    bool subsumes(const ConceptId & ancestor, const ConceptId & descendant) const;
    std::size_t depth(const ConceptId & id) const;
    // Reflexive: includes `id` itself.
    const std::set<ConceptId> & ancestors(const ConceptId & id) const;
    std::set<ConceptId> least_common_subsumers(const ConceptId & a, const ConceptId & b) const;
    // Wu-Palmer over longest-path depth.
    double similarity(const ConceptId & a, const ConceptId & b) const;

    // Attributes declared on the concept or any ancestor.
    std::set<std::string> inherited_attributes(const ConceptId & id) const;

    bool operator==(const Taxonomy & other) const { return concepts_ == other.concepts_; }

private:
    void rebuild();
    void require_same_kind(const ConceptId & a, const ConceptId & b) const;

    std::map<ConceptId, Concept> concepts_;
    std::map<ConceptId, std::size_t> depth_;
    std::map<ConceptId, std::set<ConceptId>> ancestors_;
};

} // namespace rosa
